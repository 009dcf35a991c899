#pragma once

#include <ostream>
#include <span>

#include <json.hpp>

#include "geotrack/metrics/site_metrics.hpp"

namespace geotrack::metrics {

// Columns: visit_id, country, site_rank, site_domain, the numeric fields in
// numeric_fields() order, empty. Header row first.
void write_metrics_csv(std::ostream& out, std::span<const SiteMetrics> metrics);

void to_json(nlohmann::json& j, const SiteMetrics& m);
void to_json(nlohmann::json& j, const Diagnostics& d);

}  // namespace geotrack::metrics
