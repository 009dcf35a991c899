#include <gtest/gtest.h>

#include "geotrack/filter/rule.hpp"

using namespace geotrack::filter;

namespace {

FilterRule rule_of(std::string_view line) {
    auto outcome = parse_filter_line(line, 7);
    if (auto* r = std::get_if<FilterRule>(&outcome)) {
        return *r;
    }
    ADD_FAILURE() << "not a rule: " << line;
    return {};
}

std::optional<SkipReason> skip_of(std::string_view line) {
    auto outcome = parse_filter_line(line, 1);
    if (auto* s = std::get_if<Skipped>(&outcome)) {
        return s->reason;
    }
    return std::nullopt;
}

bool is_error(std::string_view line) { return std::holds_alternative<ParseError>(parse_filter_line(line, 1)); }

}  // namespace

TEST(ParseRule, DomainAnchorWithSeparator) {
    const auto r = rule_of("||zanox.com^");
    EXPECT_EQ(r.pattern, "zanox.com^");
    EXPECT_EQ(r.anchor_kind, AnchorKind::domain);
    EXPECT_FALSE(r.anchored_end);
    EXPECT_FALSE(r.is_exception);
    EXPECT_EQ(r.line_number, 7u);
    EXPECT_EQ(r.raw_text, "||zanox.com^");
    EXPECT_EQ(r.option_third_party, ThirdParty::unspecified);
    EXPECT_FALSE(r.option_types);
}

TEST(ParseRule, ExceptionWithOptions) {
    const auto r = rule_of("@@||Example.com/ads.js$script,domain=a.com|~b.a.com,third-party,match-case");
    EXPECT_TRUE(r.is_exception);
    EXPECT_EQ(r.pattern, "Example.com/ads.js");
    EXPECT_TRUE(r.case_sensitive);
    EXPECT_EQ(r.option_third_party, ThirdParty::required);
    ASSERT_TRUE(r.option_types);
    EXPECT_TRUE(r.option_types->contains(ResourceType::script));
    EXPECT_FALSE(r.option_types->contains(ResourceType::image));
    const std::vector<DomainConstraint> domains{{"a.com", false}, {"b.a.com", true}};
    EXPECT_EQ(r.option_domains, domains);
}

TEST(ParseRule, StartAndEndAnchors) {
    const auto r = rule_of("|https://x.com/a.js|");
    EXPECT_EQ(r.anchor_kind, AnchorKind::start);
    EXPECT_TRUE(r.anchored_end);
    EXPECT_EQ(r.pattern, "https://x.com/a.js");
    const auto e = rule_of(".swf|");
    EXPECT_EQ(e.anchor_kind, AnchorKind::end);
    EXPECT_TRUE(e.anchored_end);
}

TEST(ParseRule, NegatedTypesAndThirdParty) {
    const auto r = rule_of("/pix$~image,~third-party");
    ASSERT_TRUE(r.option_types);
    EXPECT_FALSE(r.option_types->contains(ResourceType::image));
    EXPECT_TRUE(r.option_types->contains(ResourceType::script));
    EXPECT_EQ(r.option_third_party, ThirdParty::forbidden);
}

TEST(ParseRule, SplitsOptionsAtLastDollar) {
    const auto r = rule_of("/a/c$image");
    EXPECT_EQ(r.pattern, "/a/c");
    ASSERT_TRUE(r.option_types);
    EXPECT_TRUE(is_error("/a$b/c$image"));
    EXPECT_TRUE(is_error("/a$"));
}

TEST(ParseRule, SkipReasons) {
    EXPECT_EQ(skip_of(""), SkipReason::blank);
    EXPECT_EQ(skip_of("   "), SkipReason::blank);
    EXPECT_EQ(skip_of("! Title: EasyList"), SkipReason::comment);
    EXPECT_EQ(skip_of("[Adblock Plus 2.0]"), SkipReason::header);
    EXPECT_EQ(skip_of("example.com##.ad"), SkipReason::element_hiding);
    EXPECT_EQ(skip_of("##.banner"), SkipReason::element_hiding);
    EXPECT_EQ(skip_of("example.com#@#.ad"), SkipReason::element_hiding);
    EXPECT_EQ(skip_of("/ad[0-9]+\\.js/"), SkipReason::regex_literal);
    EXPECT_EQ(skip_of("||x.com^$popup"), SkipReason::unsupported_option);
    EXPECT_EQ(skip_of("||x.com^$csp=script-src 'none'"), SkipReason::unsupported_option);
}

TEST(ParseRule, SkipReasonNames) {
    EXPECT_EQ(to_string(SkipReason::unsupported_option), "unsupported_option");
    EXPECT_EQ(to_string(SkipReason::element_hiding), "element_hiding");
}

TEST(ParseRule, ErrorsAreValuesNotExceptions) {
    EXPECT_TRUE(is_error("@@"));
    EXPECT_TRUE(is_error("||x.com^$domain="));
    EXPECT_NO_THROW(parse_filter_line("\xff\xfe", 1));
}

TEST(ParseRule, ResourceTypeNames) {
    for (auto t : {ResourceType::script, ResourceType::image, ResourceType::stylesheet, ResourceType::xmlhttprequest,
                   ResourceType::subdocument, ResourceType::other}) {
        EXPECT_EQ(resource_type_from_string(to_string(t)), t);
    }
    EXPECT_FALSE(resource_type_from_string("popup"));
}
