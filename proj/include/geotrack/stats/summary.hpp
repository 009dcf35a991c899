#pragma once

#include <cstddef>
#include <span>

namespace geotrack::stats {

struct SummaryCI {
    double mean = 0.0;
    double sd = 0.0;  // n - 1 denominator
    double se_mean = 0.0;
    double ci_low = 0.0;
    double ci_high = 0.0;
    std::size_t n = 0;
};

// Throws StatsError(insufficient) for fewer than two values.
SummaryCI summary_ci(std::span<const double> values);

}  // namespace geotrack::stats
