#pragma once

#include <span>
#include <vector>

namespace geotrack::stats {

// Average ranks (1-based); tied values share the mean of their rank span.
// Throws StatsError(empty).
std::vector<double> rank_with_ties(std::span<const double> values);

// Sum of t^3 - t over groups of tied values.
double tie_term(std::span<const double> values);

}  // namespace geotrack::stats
