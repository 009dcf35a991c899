#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

namespace geotrack::crawl {

using VisitId = std::int64_t;

// One page visit of a crawl session.
struct VisitRecord {
    VisitId visit_id = 0;
    std::string country;   // vantage/site-list label, e.g. "US"
    std::int64_t site_rank = 0;  // position in the country's top-site list, 1-based
    std::string site_domain;
    std::string started_at;  // provenance only

    friend bool operator==(const VisitRecord&, const VisitRecord&) = default;
    friend auto operator<=>(const VisitRecord&, const VisitRecord&) = default;
};

struct HttpRequestRecord {
    VisitId visit_id = 0;
    std::string url;
    std::string top_url;
    std::optional<std::string> referrer;
    std::string ts;

    friend bool operator==(const HttpRequestRecord&, const HttpRequestRecord&) = default;
    friend auto operator<=>(const HttpRequestRecord&, const HttpRequestRecord&) = default;
};

struct CookieRecord {
    VisitId visit_id = 0;
    std::string domain;  // may start with '.'
    std::string name;
    std::string ts;

    friend bool operator==(const CookieRecord&, const CookieRecord&) = default;
    friend auto operator<=>(const CookieRecord&, const CookieRecord&) = default;
};

enum class ErrorKind : std::uint8_t { io, parse, integrity, schema, sidecar };

std::string_view to_string(ErrorKind kind);

class IngestError : public std::runtime_error {
public:
    IngestError(ErrorKind kind, const std::string& detail, std::size_t line = 0);

    ErrorKind kind() const { return kind_; }
    // 1-based input line for parse errors, 0 otherwise.
    std::size_t line() const { return line_; }

private:
    ErrorKind kind_;
    std::size_t line_;
};

// Visits, requests and cookies of one or more crawls. Immutable; the
// constructor enforces referential integrity and throws IngestError(integrity).
class CrawlDataset {
public:
    CrawlDataset(std::vector<VisitRecord> visits, std::vector<HttpRequestRecord> requests,
                 std::vector<CookieRecord> cookies, std::string provenance);

    const std::vector<VisitRecord>& visits() const { return visits_; }
    const std::vector<HttpRequestRecord>& requests() const { return requests_; }
    const std::vector<CookieRecord>& cookies() const { return cookies_; }
    const std::string& provenance() const { return provenance_; }

    // Indices into requests()/cookies() for the visit at position `visit_index`.
    const std::vector<std::size_t>& requests_of(std::size_t visit_index) const { return requests_by_visit_[visit_index]; }
    const std::vector<std::size_t>& cookies_of(std::size_t visit_index) const { return cookies_by_visit_[visit_index]; }

    std::optional<std::size_t> visit_index(VisitId id) const;

    // Sorted distinct country labels.
    std::vector<std::string> countries() const;

private:
    std::vector<VisitRecord> visits_;
    std::vector<HttpRequestRecord> requests_;
    std::vector<CookieRecord> cookies_;
    std::string provenance_;
    std::unordered_map<VisitId, std::size_t> index_;
    std::vector<std::vector<std::size_t>> requests_by_visit_;
    std::vector<std::vector<std::size_t>> cookies_by_visit_;
};

// Order-insensitive equality of the record multisets; provenance is ignored.
bool equivalent(const CrawlDataset& a, const CrawlDataset& b);

}  // namespace geotrack::crawl
