#include "geotrack/stats/distributions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "geotrack/stats/error.hpp"

namespace geotrack::stats {

namespace {

constexpr double eps = 1e-16;
constexpr int max_iter = 10000;

// P(a, x) by its power series; converges quickly for x < a + 1.
double series_p(double a, double x) {
    double term = 1.0 / a;
    double sum = term;
    for (int n = 1; n < max_iter; ++n) {
        term *= x / (a + n);
        sum += term;
        if (std::abs(term) < std::abs(sum) * eps) {
            break;
        }
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Q(a, x) by the Legendre continued fraction, modified Lentz evaluation.
double continued_fraction_q(double a, double x) {
    constexpr double tiny = std::numeric_limits<double>::min() / eps;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i < max_iter; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        if (std::abs(d) < tiny) {
            d = tiny;
        }
        c = b + an / c;
        if (std::abs(c) < tiny) {
            c = tiny;
        }
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::abs(delta - 1.0) < eps) {
            break;
        }
    }
    return std::exp(-x + a * std::log(x) - std::lgamma(a)) * h;
}

void check_args(double a, double x) {
    if (!(a > 0.0) || !(x >= 0.0) || std::isnan(x)) {
        throw StatsError(ErrorKind::domain, "incomplete gamma needs a > 0, x >= 0");
    }
}

}  // namespace

double gamma_p(double a, double x) {
    check_args(a, x);
    if (x == 0.0) {
        return 0.0;
    }
    return x < a + 1.0 ? series_p(a, x) : 1.0 - continued_fraction_q(a, x);
}

double gamma_q(double a, double x) {
    check_args(a, x);
    if (x == 0.0) {
        return 1.0;
    }
    if (std::isinf(x)) {
        return 0.0;
    }
    return x < a + 1.0 ? 1.0 - series_p(a, x) : continued_fraction_q(a, x);
}

double chi2_sf(double x, int df) {
    if (df < 1) {
        throw StatsError(ErrorKind::domain, "chi-square df must be >= 1, got " + std::to_string(df));
    }
    if (!(x >= 0.0)) {
        throw StatsError(ErrorKind::domain, "chi-square statistic must be >= 0");
    }
    return std::clamp(gamma_q(df / 2.0, x / 2.0), 0.0, 1.0);
}

double normal_sf(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

double normal_two_tailed(double z) { return std::min(1.0, 2.0 * normal_sf(std::abs(z))); }

}  // namespace geotrack::stats
