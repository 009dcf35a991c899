#pragma once

namespace geotrack::stats {

// Regularized incomplete gamma functions, a > 0, x >= 0.
double gamma_p(double a, double x);
double gamma_q(double a, double x);

// Upper tail of the chi-square distribution: Q(df/2, x/2).
// Throws StatsError(domain) for x < 0 or df < 1.
double chi2_sf(double x, int df);

// Upper tail of the standard normal.
double normal_sf(double z);

// Two-tailed p for a standard normal statistic, clamped to [0, 1].
double normal_two_tailed(double z);

inline constexpr double z_975 = 1.96;

}  // namespace geotrack::stats
