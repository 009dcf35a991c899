#include "geotrack/metrics/country_summary.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace geotrack::metrics {

namespace {

std::size_t field_position(std::string_view key) {
    const auto names = numeric_fields();
    const auto it = std::find(names.begin(), names.end(), key);
    if (it == names.end()) {
        throw BadKey(key);
    }
    return static_cast<std::size_t>(it - names.begin());
}

}  // namespace

const FieldSummary& CountrySummary::field(std::string_view key) const { return fields.at(field_position(key)); }

std::vector<CountrySummary> summarize_by_country(std::span<const SiteMetrics> metrics) {
    if (metrics.empty()) {
        throw std::invalid_argument("summarize_by_country: no metrics");
    }
    std::map<std::string, std::vector<const SiteMetrics*>> by_country;
    for (const auto& m : metrics) {
        by_country[m.country].push_back(&m);
    }
    const auto names = numeric_fields();
    std::vector<CountrySummary> out;
    for (const auto& [country, rows] : by_country) {
        CountrySummary s{country, rows.size(), rows.size() == 1, {}};
        const auto n = static_cast<double>(rows.size());
        for (const auto name : names) {
            double mean = 0.0;
            for (const auto* m : rows) {
                mean += *field_value(*m, name);
            }
            mean /= n;
            double ss = 0.0;
            for (const auto* m : rows) {
                const double d = *field_value(*m, name) - mean;
                ss += d * d;
            }
            s.fields.push_back({mean, rows.size() > 1 ? std::sqrt(ss / (n - 1.0)) : 0.0});
        }
        out.push_back(std::move(s));
    }
    return out;
}

std::vector<SiteMetrics> top_outliers(std::span<const SiteMetrics> metrics, std::string_view key, std::size_t k) {
    field_position(key);
    if (k == 0) {
        throw std::invalid_argument("top_outliers: k must be >= 1");
    }
    std::vector<SiteMetrics> sorted(metrics.begin(), metrics.end());
    std::stable_sort(sorted.begin(), sorted.end(), [key](const SiteMetrics& a, const SiteMetrics& b) {
        const double va = *field_value(a, key);
        const double vb = *field_value(b, key);
        if (va != vb) {
            return va > vb;
        }
        if (a.site_domain != b.site_domain) {
            return a.site_domain < b.site_domain;
        }
        return a.visit_id < b.visit_id;
    });
    sorted.resize(std::min(k, sorted.size()));
    return sorted;
}

}  // namespace geotrack::metrics
