#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "geotrack/filter/rule.hpp"

namespace geotrack::filter {

// Separator class for `^`: anything except ASCII alphanumerics and `_-.%`.
// End-of-URL also matches `^` (handled by the matcher, not this predicate).
constexpr bool is_separator(char c) {
    const auto u = static_cast<unsigned char>(c);
    const bool alnum = (u >= '0' && u <= '9') || (u >= 'a' && u <= 'z') || (u >= 'A' && u <= 'Z');
    return !(alnum || c == '_' || c == '-' || c == '.' || c == '%');
}

// Glob-style pattern with `*` (any span) and `^` (separator or end).
// Matches `subject[begin..]`; when `anchored_end` is false the match may stop
// anywhere before the end of the subject.
bool glob_match(std::string_view pattern, std::string_view subject, std::size_t begin, bool anchored_end);

// The pattern half of a rule, prepared once per FilterSet.
class CompiledPattern {
public:
    explicit CompiledPattern(const FilterRule& rule);

    // `canonical` is the canonical URL, `lowered` its lowercase copy; both share
    // the host span [host_begin, host_end).
    bool matches(std::string_view canonical, std::string_view lowered, std::size_t host_begin,
                 std::size_t host_end) const;

    // Maximal runs of [a-z0-9%] in the pattern that are guaranteed to appear as
    // whole runs in any URL the pattern matches.
    std::vector<std::string> keyword_candidates() const;

private:
    bool match_from(std::string_view subject, std::size_t begin) const;

    std::string body_;  // lowercase unless case_sensitive
    AnchorKind anchor_ = AnchorKind::none;
    bool anchored_end_ = false;
    bool case_sensitive_ = false;
};

// Splits a lowercase URL into maximal runs of [a-z0-9%] (the index tokens).
std::vector<std::string_view> url_tokens(std::string_view lowered_url);

}  // namespace geotrack::filter
