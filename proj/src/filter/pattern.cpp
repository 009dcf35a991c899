#include "geotrack/filter/pattern.hpp"

#include "geotrack/url.hpp"

namespace geotrack::filter {

namespace {

constexpr bool is_token_char(char c) {
    return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'z') || c == '%';
}

}  // namespace

bool glob_match(std::string_view pattern, std::string_view subject, std::size_t begin, bool anchored_end) {
    constexpr auto npos = std::string_view::npos;
    std::size_t p = 0;
    std::size_t i = begin;
    std::size_t star = npos;
    std::size_t mark = 0;
    while (i < subject.size()) {
        if (p == pattern.size() && !anchored_end) {
            return true;
        }
        if (p < pattern.size() && pattern[p] == '*') {
            star = p++;
            mark = i;
            continue;
        }
        if (p < pattern.size()
                && (pattern[p] == '^' ? is_separator(subject[i]) : pattern[p] == subject[i])) {
            ++p;
            ++i;
            continue;
        }
        if (star == npos) {
            return false;
        }
        p = star + 1;
        i = ++mark;
    }
    while (p < pattern.size() && (pattern[p] == '*' || pattern[p] == '^')) {
        ++p;
    }
    return p == pattern.size();
}

CompiledPattern::CompiledPattern(const FilterRule& rule)
    : body_(rule.case_sensitive ? rule.pattern : to_lower_ascii(rule.pattern)),
      anchor_(rule.anchor_kind),
      anchored_end_(rule.anchored_end),
      case_sensitive_(rule.case_sensitive) {
    if (anchor_ == AnchorKind::none || anchor_ == AnchorKind::end) {
        // Unanchored start: an implicit leading wildcard.
        body_.insert(body_.begin(), '*');
    }
}

bool CompiledPattern::match_from(std::string_view subject, std::size_t begin) const {
    return glob_match(body_, subject, begin, anchored_end_);
}

bool CompiledPattern::matches(std::string_view canonical, std::string_view lowered, std::size_t host_begin,
                              std::size_t host_end) const {
    const std::string_view subject = case_sensitive_ ? canonical : lowered;
    if (anchor_ != AnchorKind::domain) {
        return match_from(subject, 0);
    }
    for (std::size_t pos = host_begin; pos < host_end; ++pos) {
        if ((pos == host_begin || subject[pos - 1] == '.') && match_from(subject, pos)) {
            return true;
        }
    }
    return false;
}

std::vector<std::string> CompiledPattern::keyword_candidates() const {
    std::vector<std::string> out;
    const std::string lowered = to_lower_ascii(body_);
    const bool start_pinned = anchor_ == AnchorKind::start || anchor_ == AnchorKind::domain;
    std::size_t i = 0;
    while (i < lowered.size()) {
        if (!is_token_char(lowered[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < lowered.size() && is_token_char(lowered[j])) {
            ++j;
        }
        const bool left_ok = i == 0 ? start_pinned : lowered[i - 1] != '*';
        const bool right_ok = j == lowered.size() ? anchored_end_ : lowered[j] != '*';
        if (left_ok && right_ok) {
            out.push_back(lowered.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

std::vector<std::string_view> url_tokens(std::string_view lowered_url) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < lowered_url.size()) {
        if (!is_token_char(lowered_url[i])) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j < lowered_url.size() && is_token_char(lowered_url[j])) {
            ++j;
        }
        out.push_back(lowered_url.substr(i, j - i));
        i = j;
    }
    return out;
}

}  // namespace geotrack::filter
