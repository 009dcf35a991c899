#include "geotrack/crawl/validate.hpp"

#include <map>
#include <set>

namespace geotrack::crawl {

std::string_view to_string(WarningKind kind) {
    switch (kind) {
    case WarningKind::duplicate_request:
        return "duplicate_request";
    case WarningKind::empty_visit:
        return "empty_visit";
    case WarningKind::site_rank_gap:
        return "site_rank_gap";
    }
    return "unknown";
}

std::vector<ValidationWarning> validate(const CrawlDataset& dataset) {
    std::vector<ValidationWarning> out;
    const auto& visits = dataset.visits();
    const auto& requests = dataset.requests();

    for (std::size_t v = 0; v < visits.size(); ++v) {
        const auto& idx = dataset.requests_of(v);
        if (idx.empty()) {
            out.push_back({WarningKind::empty_visit, visits[v].visit_id,
                           "visit " + std::to_string(visits[v].visit_id) + " (" + visits[v].site_domain
                                   + ") has no requests"});
            continue;
        }
        std::set<std::pair<std::string_view, std::string_view>> seen;
        for (auto i : idx) {
            if (!seen.emplace(requests[i].url, requests[i].ts).second) {
                out.push_back({WarningKind::duplicate_request, visits[v].visit_id,
                               "duplicate request " + requests[i].url + " at '" + requests[i].ts + "'"});
            }
        }
    }

    std::map<std::string, std::set<std::int64_t>> ranks;
    for (const auto& v : visits) {
        ranks[v.country].insert(v.site_rank);
    }
    for (const auto& [country, set] : ranks) {
        std::int64_t expected = 1;
        for (auto r : set) {
            if (r != expected) {
                out.push_back({WarningKind::site_rank_gap, 0,
                               country + ": ranks " + std::to_string(expected) + ".." + std::to_string(r - 1)
                                       + " missing"});
            }
            expected = r + 1;
        }
    }
    return out;
}

}  // namespace geotrack::crawl
