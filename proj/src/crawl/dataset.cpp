#include "geotrack/crawl/dataset.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "geotrack/url.hpp"

namespace geotrack::crawl {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::io:
        return "io";
    case ErrorKind::parse:
        return "parse";
    case ErrorKind::integrity:
        return "integrity";
    case ErrorKind::schema:
        return "schema";
    case ErrorKind::sidecar:
        return "sidecar";
    }
    return "unknown";
}

namespace {

std::string describe(ErrorKind kind, const std::string& detail, std::size_t line) {
    std::ostringstream out;
    out << to_string(kind);
    if (line > 0) {
        out << " (line " << line << ")";
    }
    out << ": " << detail;
    return out.str();
}

template <typename Ids>
std::string join_ids(const Ids& ids) {
    std::ostringstream out;
    bool first = true;
    for (auto id : ids) {
        out << (first ? "" : ", ") << id;
        first = false;
    }
    return out.str();
}

}  // namespace

IngestError::IngestError(ErrorKind kind, const std::string& detail, std::size_t line)
    : std::runtime_error(describe(kind, detail, line)), kind_(kind), line_(line) {}

CrawlDataset::CrawlDataset(std::vector<VisitRecord> visits, std::vector<HttpRequestRecord> requests,
                           std::vector<CookieRecord> cookies, std::string provenance)
    : visits_(std::move(visits)),
      requests_(std::move(requests)),
      cookies_(std::move(cookies)),
      provenance_(std::move(provenance)) {
    if (visits_.empty()) {
        throw IngestError(ErrorKind::integrity, "no visits");
    }
    for (std::size_t i = 0; i < visits_.size(); ++i) {
        const auto& v = visits_[i];
        if (!index_.emplace(v.visit_id, i).second) {
            throw IngestError(ErrorKind::integrity, "duplicate visit_id " + std::to_string(v.visit_id));
        }
        if (v.site_rank < 1) {
            throw IngestError(ErrorKind::integrity, "visit " + std::to_string(v.visit_id) + " has site_rank < 1");
        }
        if (v.site_domain.empty() || v.country.empty()) {
            throw IngestError(ErrorKind::integrity,
                              "visit " + std::to_string(v.visit_id) + " lacks site_domain or country");
        }
    }

    requests_by_visit_.resize(visits_.size());
    cookies_by_visit_.resize(visits_.size());
    std::set<VisitId> dangling;
    for (std::size_t i = 0; i < requests_.size(); ++i) {
        const auto it = index_.find(requests_[i].visit_id);
        if (it == index_.end()) {
            dangling.insert(requests_[i].visit_id);
            continue;
        }
        if (!parse_url(requests_[i].url)) {
            throw IngestError(ErrorKind::integrity, "request url is not an absolute URL: " + requests_[i].url);
        }
        requests_by_visit_[it->second].push_back(i);
    }
    for (std::size_t i = 0; i < cookies_.size(); ++i) {
        const auto it = index_.find(cookies_[i].visit_id);
        if (it == index_.end()) {
            dangling.insert(cookies_[i].visit_id);
            continue;
        }
        if (cookies_[i].domain.empty()) {
            throw IngestError(ErrorKind::integrity, "cookie with empty domain in visit "
                                                            + std::to_string(cookies_[i].visit_id));
        }
        cookies_by_visit_[it->second].push_back(i);
    }
    if (!dangling.empty()) {
        throw IngestError(ErrorKind::integrity, "dangling visit_id references: " + join_ids(dangling));
    }
}

std::optional<std::size_t> CrawlDataset::visit_index(VisitId id) const {
    const auto it = index_.find(id);
    if (it == index_.end()) {
        return std::nullopt;
    }
    return it->second;
}

std::vector<std::string> CrawlDataset::countries() const {
    std::set<std::string> set;
    for (const auto& v : visits_) {
        set.insert(v.country);
    }
    return {set.begin(), set.end()};
}

namespace {

template <typename T>
bool same_multiset(std::vector<T> a, std::vector<T> b) {
    if (a.size() != b.size()) {
        return false;
    }
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    return a == b;
}

}  // namespace

bool equivalent(const CrawlDataset& a, const CrawlDataset& b) {
    return same_multiset(a.visits(), b.visits()) && same_multiset(a.requests(), b.requests())
            && same_multiset(a.cookies(), b.cookies());
}

}  // namespace geotrack::crawl
