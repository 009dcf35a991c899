#include "geotrack/filter/rule.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include "geotrack/url.hpp"

namespace geotrack::filter {

namespace {

constexpr std::array<std::string_view, kResourceTypeCount> kTypeNames = {
        "script", "image", "stylesheet", "xmlhttprequest", "subdocument", "other"};

// Request types the easylist syntax knows but this engine does not model.
// Negating them is harmless (a query never carries them); requiring them is not.
constexpr std::array<std::string_view, 14> kUnmodeledTypes = {
        "object", "object-subrequest", "media", "font", "ping", "websocket", "webrtc",
        "popup", "document", "elemhide", "generichide", "genericblock", "collapse", "donottrack"};

constexpr std::array<std::string_view, 6> kElementHidingMarkers = {"##", "#@#", "#?#", "#@?#", "#$#", "#@$#"};

std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
        s.remove_prefix(1);
    }
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
        s.remove_suffix(1);
    }
    return s;
}

bool starts_with_ci(std::string_view s, std::string_view prefix) {
    return s.size() >= prefix.size()
            && std::equal(prefix.begin(), prefix.end(), s.begin(), [](char a, char b) {
                   return std::tolower(static_cast<unsigned char>(a)) == std::tolower(static_cast<unsigned char>(b));
               });
}

bool is_option_name_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_';
}

bool is_regex_literal(std::string_view body) {
    return body.size() >= 2 && body.front() == '/' && body.back() == '/';
}

bool regex_is_balanced(std::string_view body) {
    int parens = 0;
    int brackets = 0;
    for (std::size_t i = 1; i + 1 < body.size(); ++i) {
        const char c = body[i];
        if (c == '\\') {
            ++i;
            continue;
        }
        if (brackets > 0) {
            if (c == ']') {
                --brackets;
            }
            continue;
        }
        if (c == '[') {
            ++brackets;
        } else if (c == '(') {
            ++parens;
        } else if (c == ')' && --parens < 0) {
            return false;
        }
    }
    return parens == 0 && brackets == 0;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        const auto pos = s.find(sep, start);
        parts.push_back(s.substr(start, pos - start));
        if (pos == std::string_view::npos) {
            break;
        }
        start = pos + 1;
    }
    return parts;
}

}  // namespace

std::string_view to_string(ResourceType type) {
    return kTypeNames[static_cast<std::size_t>(type)];
}

std::optional<ResourceType> resource_type_from_string(std::string_view name) {
    if (name == "xhr") {
        return ResourceType::xmlhttprequest;
    }
    if (name == "css") {
        return ResourceType::stylesheet;
    }
    if (name == "frame") {
        return ResourceType::subdocument;
    }
    for (std::size_t i = 0; i < kTypeNames.size(); ++i) {
        if (kTypeNames[i] == name) {
            return static_cast<ResourceType>(i);
        }
    }
    return std::nullopt;
}

std::vector<ResourceType> ResourceTypeSet::members() const {
    std::vector<ResourceType> out;
    for (std::size_t i = 0; i < kResourceTypeCount; ++i) {
        if (contains(static_cast<ResourceType>(i))) {
            out.push_back(static_cast<ResourceType>(i));
        }
    }
    return out;
}

std::string_view to_string(SkipReason reason) {
    switch (reason) {
    case SkipReason::blank:
        return "blank";
    case SkipReason::comment:
        return "comment";
    case SkipReason::header:
        return "header";
    case SkipReason::element_hiding:
        return "element_hiding";
    case SkipReason::regex_literal:
        return "regex_literal";
    case SkipReason::unsupported_option:
        return "unsupported_option";
    }
    return "unknown";
}

ParseOutcome parse_filter_line(std::string_view line, std::size_t line_number) {
    const std::string_view text = trim(line);
    if (text.empty()) {
        return Skipped{SkipReason::blank};
    }
    if (text.front() == '!') {
        return Skipped{SkipReason::comment};
    }
    if (starts_with_ci(text, "[adblock")) {
        return Skipped{SkipReason::header};
    }
    for (auto marker : kElementHidingMarkers) {
        if (text.find(marker) != std::string_view::npos) {
            return Skipped{SkipReason::element_hiding};
        }
    }

    FilterRule rule;
    rule.raw_text = std::string(text);
    rule.line_number = line_number;

    std::string_view body = text;
    if (body.starts_with("@@")) {
        rule.is_exception = true;
        body.remove_prefix(2);
        if (body.empty()) {
            return ParseError{"exception marker without a rule"};
        }
    }

    if (is_regex_literal(body)) {
        if (!regex_is_balanced(body)) {
            return ParseError{"unbalanced regex literal"};
        }
        return Skipped{SkipReason::regex_literal};
    }

    std::optional<std::string_view> options;
    if (const auto dollar = body.rfind('$'); dollar != std::string_view::npos) {
        options = body.substr(dollar + 1);
        body = body.substr(0, dollar);
        if (options->empty()) {
            return ParseError{"empty option list after '$'"};
        }
    }
    if (is_regex_literal(body)) {
        if (!regex_is_balanced(body)) {
            return ParseError{"unbalanced regex literal"};
        }
        return Skipped{SkipReason::regex_literal};
    }
    if (body.find('$') != std::string_view::npos) {
        return ParseError{"stray '$' in pattern"};
    }

    bool unsupported = false;
    if (options) {
        ResourceTypeSet included;
        ResourceTypeSet excluded;
        bool any_type = false;
        for (std::string_view token : split(*options, ',')) {
            if (token.empty()) {
                return ParseError{"empty option in option list"};
            }
            const bool negated = token.front() == '~';
            if (negated) {
                token.remove_prefix(1);
            }
            std::string_view value;
            bool has_value = false;
            if (const auto eq = token.find('='); eq != std::string_view::npos) {
                value = token.substr(eq + 1);
                token = token.substr(0, eq);
                has_value = true;
            }
            if (token.empty() || !std::all_of(token.begin(), token.end(), is_option_name_char)) {
                return ParseError{"malformed option '" + std::string(token) + "'"};
            }
            const std::string name = to_lower_ascii(token);

            if (name == "domain") {
                if (negated || !has_value || value.empty()) {
                    return ParseError{"domain option without a value"};
                }
                for (std::string_view entry : split(value, '|')) {
                    DomainConstraint c;
                    if (!entry.empty() && entry.front() == '~') {
                        c.negated = true;
                        entry.remove_prefix(1);
                    }
                    if (entry.empty()) {
                        return ParseError{"empty entry in domain option"};
                    }
                    c.domain = to_lower_ascii(entry);
                    rule.option_domains.push_back(std::move(c));
                }
                continue;
            }
            if (has_value) {
                // sitekey=, csp=, rewrite=, redirect= and friends.
                unsupported = true;
                continue;
            }
            if (name == "third-party" || name == "3p") {
                rule.option_third_party = negated ? ThirdParty::forbidden : ThirdParty::required;
            } else if (name == "first-party" || name == "1p") {
                rule.option_third_party = negated ? ThirdParty::required : ThirdParty::forbidden;
            } else if (name == "match-case") {
                rule.case_sensitive = !negated;
            } else if (auto type = resource_type_from_string(name)) {
                any_type = true;
                (negated ? excluded : included).insert(*type);
            } else if (negated
                    && std::find(kUnmodeledTypes.begin(), kUnmodeledTypes.end(), name) != kUnmodeledTypes.end()) {
                // excluding a type no query carries: no constraint
            } else {
                unsupported = true;
            }
        }
        if (any_type) {
            ResourceTypeSet types = included.empty() ? ResourceTypeSet::all() : included;
            for (auto t : excluded.members()) {
                types.erase(t);
            }
            rule.option_types = types;
        }
    }

    if (unsupported) {
        return Skipped{SkipReason::unsupported_option};
    }

    if (body.starts_with("||")) {
        rule.anchor_kind = AnchorKind::domain;
        body.remove_prefix(2);
    } else if (body.starts_with("|")) {
        rule.anchor_kind = AnchorKind::start;
        body.remove_prefix(1);
    }
    if (!body.empty() && body.back() == '|') {
        rule.anchored_end = true;
        body.remove_suffix(1);
        if (rule.anchor_kind == AnchorKind::none) {
            rule.anchor_kind = AnchorKind::end;
        }
    }
    if (body.empty() && rule.anchor_kind != AnchorKind::none) {
        return ParseError{"anchor without a pattern"};
    }
    if (body.empty() && !options) {
        return ParseError{"empty pattern"};
    }
    rule.pattern = std::string(body);
    return rule;
}

}  // namespace geotrack::filter
