#pragma once

#include <cstdint>
#include <span>
#include <string>

namespace geotrack::stats {

struct PairwiseResult {
    std::string a;
    std::string b;
    double Z = 0.0;  // positive when a exceeds b
    double p = 1.0;  // two-tailed
    double ci_low = 0.0;   // 95% bounds on the a - b difference
    double ci_high = 0.0;
    bool degenerate = false;
};

// Rank-sum test, normal approximation with tie-corrected variance and no
// continuity correction. The CI is on the difference of sample means.
// Throws StatsError(empty).
PairwiseResult mann_whitney_z(std::span<const double> a, std::span<const double> b, std::string label_a = "a",
                              std::string label_b = "b");

// Pooled standard error for Z, unpooled for the CI on p_a - p_b.
// Throws StatsError(domain) when n is 0 or hits exceed n.
PairwiseResult two_proportion_z(std::int64_t hits_a, std::int64_t n_a, std::int64_t hits_b, std::int64_t n_b,
                                std::string label_a = "a", std::string label_b = "b");

}  // namespace geotrack::stats
