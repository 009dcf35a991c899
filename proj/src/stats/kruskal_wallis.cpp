#include "geotrack/stats/kruskal_wallis.hpp"

#include <algorithm>

#include "geotrack/stats/distributions.hpp"
#include "geotrack/stats/error.hpp"
#include "geotrack/stats/ranks.hpp"

namespace geotrack::stats {

KWResult kruskal_wallis(const std::map<std::string, std::vector<double>>& groups) {
    if (groups.size() < 2) {
        throw StatsError(ErrorKind::too_few_groups, "Kruskal-Wallis needs at least two groups");
    }
    std::vector<double> pooled;
    for (const auto& [label, values] : groups) {
        if (values.empty()) {
            throw StatsError(ErrorKind::empty, "group '" + label + "' is empty");
        }
        pooled.insert(pooled.end(), values.begin(), values.end());
    }
    const auto ranks = rank_with_ties(pooled);
    const auto n_total = static_cast<double>(pooled.size());

    KWResult result;
    result.N = pooled.size();
    result.df = static_cast<int>(groups.size()) - 1;

    double sum_r2_over_n = 0.0;
    std::size_t offset = 0;
    for (const auto& [label, values] : groups) {
        double rank_sum = 0.0;
        for (std::size_t i = 0; i < values.size(); ++i) {
            rank_sum += ranks[offset + i];
        }
        offset += values.size();
        const auto n = static_cast<double>(values.size());
        result.mean_ranks[label] = rank_sum / n;
        sum_r2_over_n += rank_sum * rank_sum / n;
    }

    const double correction = 1.0 - tie_term(pooled) / (n_total * n_total * n_total - n_total);
    if (correction <= 0.0) {
        result.degenerate = true;
        return result;
    }
    const double h = 12.0 / (n_total * (n_total + 1.0)) * sum_r2_over_n - 3.0 * (n_total + 1.0);
    result.H = std::max(0.0, h / correction);
    result.p = chi2_sf(result.H, result.df);
    return result;
}

}  // namespace geotrack::stats
