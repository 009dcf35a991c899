#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "geotrack/metrics/site_metrics.hpp"

namespace geotrack::metrics {

struct FieldSummary {
    double mean = 0.0;
    double sd = 0.0;  // n - 1 denominator; 0 when n = 1
};

struct CountrySummary {
    std::string country;
    std::size_t n_visits = 0;
    bool single_visit = false;  // SD undefined, reported as 0
    std::vector<FieldSummary> fields;  // aligned with numeric_fields()

    // Throws BadKey for unknown field names.
    const FieldSummary& field(std::string_view key) const;
};

class BadKey : public std::invalid_argument {
public:
    explicit BadKey(std::string_view key) : std::invalid_argument("bad_key: '" + std::string(key) + "'") {}
};

// One summary per country, sorted by country code. Throws
// std::invalid_argument for empty input.
std::vector<CountrySummary> summarize_by_country(std::span<const SiteMetrics> metrics);

// The k visits with the largest `key`, ties by site_domain then visit_id.
// Throws BadKey for unknown keys and std::invalid_argument for k = 0.
std::vector<SiteMetrics> top_outliers(std::span<const SiteMetrics> metrics, std::string_view key, std::size_t k);

}  // namespace geotrack::metrics
