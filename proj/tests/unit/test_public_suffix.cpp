#include <gtest/gtest.h>

#include <fstream>
#include <regex>
#include <sstream>

#include "geotrack/domain/public_suffix.hpp"
#include "support/paths.hpp"

using namespace geotrack::domain;
using geotrack::testing::data_file;
using geotrack::testing::fixture;

namespace {

const PublicSuffixTable& real_table() {
    static const auto table = PublicSuffixTable::load(data_file("public_suffix_list.dat"));
    return table;
}

// nullopt when the host has no registrable domain (or is not a hostname).
std::optional<std::string> etld1(const std::string& host) {
    try {
        auto r = registrable_domain(host, real_table());
        if (!r.registrable) {
            return std::nullopt;
        }
        return r.domain;
    } catch (const MalformedHostname&) {
        return std::nullopt;
    }
}

}  // namespace

TEST(PublicSuffix, ReferenceVectors) {
    std::ifstream in(fixture("psl_test_vectors.txt"));
    const std::regex call(R"(^checkPublicSuffix\('([^']*)', (null|'([^']*)')\);)");
    std::string line;
    int checked = 0;
    while (std::getline(in, line)) {
        std::smatch m;
        if (!std::regex_search(line, m, call)) {
            continue;
        }
        const std::optional<std::string> expected =
            m[2] == "null" ? std::nullopt : std::optional<std::string>(m[3].str());
        std::string expected_lower = expected.value_or("");
        EXPECT_EQ(etld1(m[1]), expected ? std::optional<std::string>(expected_lower) : std::nullopt) << m[1];
        ++checked;
    }
    EXPECT_GE(checked, 70);
}

TEST(PublicSuffix, WorkedExamples) {
    EXPECT_EQ(etld1("fls-eu.amazon.de"), "amazon.de");
    EXPECT_EQ(etld1("www.zanox.com"), "zanox.com");
    EXPECT_EQ(etld1("a.b.bbc.co.uk"), "bbc.co.uk");
    EXPECT_EQ(etld1("www.yahoo.co.jp"), "yahoo.co.jp");
    EXPECT_EQ(etld1("www.news.com.au"), "news.com.au");
}

TEST(PublicSuffix, RuleKindsFromSmallList) {
    std::istringstream list("// comment\ncom\n*.ck\n!www.ck\nco.uk\n");
    const auto t = PublicSuffixTable::parse(list);
    EXPECT_EQ(t.size(), 4u);
    EXPECT_EQ(t.public_suffix("a.b.com"), "com");
    EXPECT_EQ(t.public_suffix("x.test.ck"), "test.ck");
    EXPECT_EQ(t.public_suffix("www.ck"), "ck");
    EXPECT_EQ(t.public_suffix("x.bbc.co.uk"), "co.uk");
    EXPECT_EQ(t.public_suffix("host.unlisted"), "unlisted");
}

TEST(PublicSuffix, IpLiteralsAreNotRegistrable) {
    const auto r = registrable_domain("192.0.2.10", real_table());
    EXPECT_EQ(r.domain, "192.0.2.10");
    EXPECT_FALSE(r.registrable);
}

TEST(PublicSuffix, NormalizationAndErrors) {
    EXPECT_EQ(normalize_hostname("WWW.Example.COM."), "www.example.com");
    EXPECT_THROW(normalize_hostname(""), MalformedHostname);
    EXPECT_THROW(normalize_hostname("a..b"), MalformedHostname);
    EXPECT_THROW(registrable_domain("bad host", real_table()), MalformedHostname);
    EXPECT_THROW(PublicSuffixTable::load("/nonexistent/list.dat"), std::runtime_error);
}

TEST(PublicSuffix, Idempotent) {
    for (const char* host : {"a.b.example.co.uk", "x.y.c.kobe.jp", "deep.sub.test.ck", "s.blogspot.com"}) {
        const auto once = etld1(host);
        ASSERT_TRUE(once) << host;
        EXPECT_EQ(etld1(*once), once) << host;
    }
}
