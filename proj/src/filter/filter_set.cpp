#include "geotrack/filter/filter_set.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <unordered_set>

namespace geotrack::filter {

std::string_view to_string(ListKind kind) {
    return kind == ListKind::ads ? "ads" : "trackers";
}

std::string_view to_string(MatchOutcome outcome) {
    switch (outcome) {
    case MatchOutcome::hit:
        return "hit";
    case MatchOutcome::exception_suppressed:
        return "exception_suppressed";
    case MatchOutcome::no_match:
        return "no_match";
    }
    return "unknown";
}

MatchQuery::MatchQuery(std::string_view url, std::string_view source_hostname, bool is_third_party,
                       std::optional<ResourceType> resource_type)
    : source_hostname_(to_lower_ascii(source_hostname)),
      is_third_party_(is_third_party),
      resource_type_(resource_type) {
    auto parsed = parse_url(url);
    if (!parsed) {
        throw InvalidQuery("unparseable URL: " + std::string(url));
    }
    url_ = std::move(*parsed);
    lowered_ = to_lower_ascii(url_.canonical);
}

std::size_t ParseReport::skipped_total() const {
    return std::accumulate(skipped.begin(), skipped.end(), std::size_t{0},
                           [](std::size_t acc, const auto& kv) { return acc + kv.second; });
}

void to_json(nlohmann::json& j, const ParseReport& report) {
    nlohmann::json errors = nlohmann::json::array();
    for (const auto& [line, detail] : report.errors) {
        errors.push_back(nlohmann::json::array({line, detail}));
    }
    j = nlohmann::json{{"rules", report.rules}, {"skipped", report.skipped}, {"errors", std::move(errors)}};
}

bool host_within(std::string_view host, std::string_view domain) {
    if (host.size() == domain.size()) {
        return host == domain;
    }
    return host.size() > domain.size() && host.ends_with(domain) && host[host.size() - domain.size() - 1] == '.';
}

bool options_admit(const FilterRule& rule, const MatchQuery& query) {
    if (rule.option_third_party == ThirdParty::required && !query.is_third_party()) {
        return false;
    }
    if (rule.option_third_party == ThirdParty::forbidden && query.is_third_party()) {
        return false;
    }
    if (rule.option_types && query.resource_type() && !rule.option_types->contains(*query.resource_type())) {
        return false;
    }
    if (!rule.option_domains.empty()) {
        // The most specific matching entry decides; with no match, the rule
        // applies only if it lists no positive domains.
        const DomainConstraint* best = nullptr;
        bool any_positive = false;
        for (const auto& c : rule.option_domains) {
            any_positive = any_positive || !c.negated;
            if (host_within(query.source_hostname(), c.domain)
                    && (best == nullptr || c.domain.size() > best->domain.size())) {
                best = &c;
            }
        }
        if (best != nullptr ? best->negated : any_positive) {
            return false;
        }
    }
    return true;
}

FilterSet::FilterSet(std::vector<FilterRule> rules, ListKind kind) : rules_(std::move(rules)), kind_(kind) {
    patterns_.reserve(rules_.size());
    for (const auto& rule : rules_) {
        patterns_.emplace_back(rule);
    }
    build_index();
}

void FilterSet::build_index() {
    std::unordered_map<std::string, std::size_t> load;
    for (std::uint32_t idx = 0; idx < rules_.size(); ++idx) {
        Index& index = rules_[idx].is_exception ? exceptions_ : blocking_;
        const auto candidates = patterns_[idx].keyword_candidates();
        const std::string* chosen = nullptr;
        for (const auto& kw : candidates) {
            if (kw.size() < 3) {
                continue;
            }
            if (chosen == nullptr || load[kw] < load[*chosen]
                    || (load[kw] == load[*chosen] && kw.size() > chosen->size())) {
                chosen = &kw;
            }
        }
        if (chosen == nullptr && !candidates.empty()) {
            chosen = &*std::max_element(candidates.begin(), candidates.end(),
                                        [](const auto& a, const auto& b) { return a.size() < b.size(); });
        }
        if (chosen == nullptr) {
            index.unkeyed.push_back(idx);
            continue;
        }
        ++load[*chosen];
        index.by_keyword[*chosen].push_back(idx);
    }
}

bool FilterSet::rule_matches(std::uint32_t idx, const MatchQuery& query) const {
    if (!options_admit(rules_[idx], query)) {
        return false;
    }
    const Url& url = query.url();
    return patterns_[idx].matches(url.canonical, query.lowered(), url.host_begin, url.host_end);
}

std::optional<std::uint32_t> FilterSet::best_match(const Index& index, const MatchQuery& query) const {
    std::optional<std::uint32_t> best;
    auto consider = [&](std::uint32_t idx) {
        if (best && rules_[idx].line_number >= rules_[*best].line_number) {
            return;
        }
        if (rule_matches(idx, query)) {
            best = idx;
        }
    };
    for (auto idx : index.unkeyed) {
        consider(idx);
    }
    if (index.by_keyword.empty()) {
        return best;
    }
    std::unordered_set<std::string_view> seen;
    for (auto token : url_tokens(query.lowered())) {
        if (!seen.insert(token).second) {
            continue;
        }
        const auto it = index.by_keyword.find(std::string(token));
        if (it == index.by_keyword.end()) {
            continue;
        }
        for (auto idx : it->second) {
            consider(idx);
        }
    }
    return best;
}

std::optional<std::uint32_t> FilterSet::best_match_linear(bool exceptions, const MatchQuery& query) const {
    std::optional<std::uint32_t> best;
    for (std::uint32_t idx = 0; idx < rules_.size(); ++idx) {
        if (rules_[idx].is_exception != exceptions) {
            continue;
        }
        if (best && rules_[idx].line_number >= rules_[*best].line_number) {
            continue;
        }
        if (rule_matches(idx, query)) {
            best = idx;
        }
    }
    return best;
}

MatchResult FilterSet::make_result(std::optional<std::uint32_t> block, std::optional<std::uint32_t> exception) const {
    MatchResult result;
    if (!block) {
        return result;
    }
    result.matched_rule = rules_[*block].id();
    if (exception) {
        result.outcome = MatchOutcome::exception_suppressed;
        result.exception_rule = rules_[*exception].id();
    } else {
        result.outcome = MatchOutcome::hit;
    }
    return result;
}

MatchResult FilterSet::match(const MatchQuery& query) const {
    const auto block = best_match(blocking_, query);
    if (!block) {
        return {};
    }
    return make_result(block, best_match(exceptions_, query));
}

MatchResult FilterSet::match_linear(const MatchQuery& query) const {
    const auto block = best_match_linear(false, query);
    if (!block) {
        return {};
    }
    return make_result(block, best_match_linear(true, query));
}

CompiledFilterSet compile_filter_set(std::span<const std::string> lines, ListKind kind) {
    ParseReport report;
    std::vector<FilterRule> rules;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        auto outcome = parse_filter_line(lines[i], i + 1);
        if (auto* rule = std::get_if<FilterRule>(&outcome)) {
            rules.push_back(std::move(*rule));
            ++report.rules;
        } else if (auto* skipped = std::get_if<Skipped>(&outcome)) {
            ++report.skipped[std::string(to_string(skipped->reason))];
        } else {
            report.errors.emplace_back(i + 1, std::get<ParseError>(outcome).detail);
        }
    }
    return {FilterSet(std::move(rules), kind), std::move(report)};
}

CompiledFilterSet load_filter_set(const std::filesystem::path& path, ListKind kind) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open filter list " + path.string());
    }
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) {
        lines.push_back(std::move(line));
    }
    return compile_filter_set(lines, kind);
}

std::size_t count_hits(const FilterSet& set, std::span<const MatchQuery> queries) {
    return static_cast<std::size_t>(std::count_if(queries.begin(), queries.end(), [&](const MatchQuery& q) {
        return set.match(q).outcome == MatchOutcome::hit;
    }));
}

}  // namespace geotrack::filter
