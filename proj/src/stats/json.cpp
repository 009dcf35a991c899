#include "geotrack/stats/json.hpp"

namespace geotrack::stats {

void to_json(nlohmann::json& j, const KWResult& r) {
    j = {{"H", r.H}, {"df", r.df}, {"p", r.p}, {"mean_ranks", r.mean_ranks}, {"N", r.N}, {"degenerate", r.degenerate}};
}

void to_json(nlohmann::json& j, const PairwiseResult& r) {
    j = {{"a", r.a},           {"b", r.b},           {"Z", r.Z},
         {"p", r.p},           {"ci_low", r.ci_low}, {"ci_high", r.ci_high},
         {"degenerate", r.degenerate}};
}

void to_json(nlohmann::json& j, const CorrelationResult& r) {
    j = {{"r", r.r}, {"kind", to_string(r.kind)}, {"n", r.n}};
}

void to_json(nlohmann::json& j, const SummaryCI& s) {
    j = {{"mean", s.mean},       {"sd", s.sd},           {"se_mean", s.se_mean},
         {"ci_low", s.ci_low},   {"ci_high", s.ci_high}, {"n", s.n}};
}

}  // namespace geotrack::stats
