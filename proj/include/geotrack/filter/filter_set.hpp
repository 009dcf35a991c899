#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <json.hpp>

#include "geotrack/filter/pattern.hpp"
#include "geotrack/filter/rule.hpp"
#include "geotrack/url.hpp"

namespace geotrack::filter {

enum class ListKind : std::uint8_t { ads, trackers };

std::string_view to_string(ListKind kind);

class InvalidQuery : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// The inputs of one match: the request URL, the page it was made from and the
// party label computed for it.
class MatchQuery {
public:
    // Throws InvalidQuery if `url` does not parse.
    MatchQuery(std::string_view url, std::string_view source_hostname, bool is_third_party,
               std::optional<ResourceType> resource_type = std::nullopt);

    const Url& url() const { return url_; }
    const std::string& lowered() const { return lowered_; }
    const std::string& source_hostname() const { return source_hostname_; }
    bool is_third_party() const { return is_third_party_; }
    std::optional<ResourceType> resource_type() const { return resource_type_; }

private:
    Url url_;
    std::string lowered_;
    std::string source_hostname_;
    bool is_third_party_ = false;
    std::optional<ResourceType> resource_type_;
};

enum class MatchOutcome : std::uint8_t { hit, exception_suppressed, no_match };

std::string_view to_string(MatchOutcome outcome);

struct MatchResult {
    MatchOutcome outcome = MatchOutcome::no_match;
    std::optional<RuleId> matched_rule;
    std::optional<RuleId> exception_rule;

    friend bool operator==(const MatchResult&, const MatchResult&) = default;
};

struct ParseReport {
    std::size_t rules = 0;
    std::map<std::string, std::size_t> skipped;  // reason -> count
    std::vector<std::pair<std::size_t, std::string>> errors;  // (line number, detail)

    std::size_t skipped_total() const;
    std::size_t total() const { return rules + skipped_total() + errors.size(); }
};

void to_json(nlohmann::json& j, const ParseReport& report);

// True when the rule's non-pattern conditions admit the query.
bool options_admit(const FilterRule& rule, const MatchQuery& query);

// Label-aligned suffix test on lowercase hostnames: `host` is `domain` or one
// of its subdomains.
bool host_within(std::string_view host, std::string_view domain);

// An immutable, compiled list of network rules. Safe to query concurrently.
class FilterSet {
public:
    FilterSet() = default;
    FilterSet(std::vector<FilterRule> rules, ListKind kind);

    MatchResult match(const MatchQuery& query) const;
    // Reference path: evaluates every rule, ignoring the keyword index.
    MatchResult match_linear(const MatchQuery& query) const;

    const std::vector<FilterRule>& rules() const { return rules_; }
    ListKind list_kind() const { return kind_; }
    std::size_t size() const { return rules_.size(); }

private:
    struct Index {
        std::unordered_map<std::string, std::vector<std::uint32_t>> by_keyword;
        std::vector<std::uint32_t> unkeyed;
    };

    void build_index();
    bool rule_matches(std::uint32_t idx, const MatchQuery& query) const;
    std::optional<std::uint32_t> best_match(const Index& index, const MatchQuery& query) const;
    std::optional<std::uint32_t> best_match_linear(bool exceptions, const MatchQuery& query) const;
    MatchResult make_result(std::optional<std::uint32_t> block, std::optional<std::uint32_t> exception) const;

    std::vector<FilterRule> rules_;
    std::vector<CompiledPattern> patterns_;
    ListKind kind_ = ListKind::trackers;
    Index blocking_;
    Index exceptions_;
};

struct CompiledFilterSet {
    FilterSet set;
    ParseReport report;
};

CompiledFilterSet compile_filter_set(std::span<const std::string> lines, ListKind kind);

// Reads a UTF-8 list file; throws std::runtime_error when it cannot be opened.
CompiledFilterSet load_filter_set(const std::filesystem::path& path, ListKind kind);

std::size_t count_hits(const FilterSet& set, std::span<const MatchQuery> queries);

}  // namespace geotrack::filter
