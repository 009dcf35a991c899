#pragma once

#include <json.hpp>

#include "geotrack/stats/correlation.hpp"
#include "geotrack/stats/kruskal_wallis.hpp"
#include "geotrack/stats/pairwise.hpp"
#include "geotrack/stats/summary.hpp"

namespace geotrack::stats {

void to_json(nlohmann::json& j, const KWResult& r);
void to_json(nlohmann::json& j, const PairwiseResult& r);
void to_json(nlohmann::json& j, const CorrelationResult& r);
void to_json(nlohmann::json& j, const SummaryCI& s);

}  // namespace geotrack::stats
