#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "geotrack/crawl/dataset.hpp"
#include "geotrack/domain/party.hpp"
#include "geotrack/filter/filter_set.hpp"

namespace geotrack::metrics {

enum class DomainGranularity : std::uint8_t { host, registrable };

std::string_view to_string(DomainGranularity g);
std::optional<DomainGranularity> granularity_from_string(std::string_view name);

// Per-visit tracking counts. Request counters partition n_requests into
// first-party, third-party and unclassifiable; cookie counters likewise,
// except that n_cookies covers classifiable cookies only.
struct SiteMetrics {
    crawl::VisitId visit_id = 0;
    std::string country;
    std::int64_t site_rank = 0;
    std::string site_domain;

    std::int64_t n_requests = 0;
    std::int64_t n_fp_requests = 0;
    std::int64_t n_tp_requests = 0;
    std::int64_t n_unclassified_requests = 0;
    std::int64_t n_tp_request_domains = 0;

    std::int64_t n_cookies = 0;
    std::int64_t n_fp_cookies = 0;
    std::int64_t n_tp_cookies = 0;
    std::int64_t n_unclassified_cookies = 0;

    std::int64_t n_ad_hits = 0;
    std::int64_t n_tracker_hits = 0;
    std::int64_t n_any_hits = 0;  // requests hit by either list
    double proportion_hits = 0.0;  // tracker hits / requests
    double proportion_ad_hits = 0.0;
    double proportion_any_hits = 0.0;
    bool empty = false;  // no requests; proportions are then 0

    friend bool operator==(const SiteMetrics&, const SiteMetrics&) = default;
};

struct MetricsOptions {
    domain::PartyMode mode = domain::PartyMode::registrable_domain;
    DomainGranularity granularity = DomainGranularity::registrable;
    unsigned threads = 1;
};

// Per-record problems that did not stop the computation.
struct Diagnostics {
    std::size_t unclassified_requests = 0;
    std::size_t unclassified_cookies = 0;
    std::size_t empty_visits = 0;
    std::size_t fallback_source_hosts = 0;  // top_url unusable, site_domain used instead

    Diagnostics& operator+=(const Diagnostics& o);
    friend bool operator==(const Diagnostics&, const Diagnostics&) = default;
};

struct MetricsRun {
    std::vector<SiteMetrics> metrics;  // dataset visit order
    Diagnostics diagnostics;
};

// One SiteMetrics per visit. Requests are matched against both lists with
// is_third_party taken from the party label; unclassifiable requests are
// matched as third-party. Output does not depend on `threads`.
MetricsRun compute_site_metrics(const crawl::CrawlDataset& dataset, const filter::FilterSet& ads,
                                const filter::FilterSet& trackers, const domain::PublicSuffixTable& table,
                                const MetricsOptions& options = {});

// Numeric fields usable as analysis keys, in export order.
std::span<const std::string_view> numeric_fields();

// Value of a numeric field; nullopt for unknown names.
std::optional<double> field_value(const SiteMetrics& m, std::string_view key);

}  // namespace geotrack::metrics
