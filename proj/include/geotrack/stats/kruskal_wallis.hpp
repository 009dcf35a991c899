#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <vector>

namespace geotrack::stats {

struct KWResult {
    double H = 0.0;  // tie-corrected; reported as chi-square in the literature
    int df = 0;
    double p = 1.0;
    std::map<std::string, double> mean_ranks;
    std::size_t N = 0;
    bool degenerate = false;  // every observation identical: H = 0, p = 1
};

// Needs at least two groups, none empty; throws StatsError otherwise.
KWResult kruskal_wallis(const std::map<std::string, std::vector<double>>& groups);

}  // namespace geotrack::stats
