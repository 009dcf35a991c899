#include "geotrack/stats/correlation.hpp"

#include <algorithm>
#include <cmath>

#include "geotrack/stats/error.hpp"
#include "geotrack/stats/ranks.hpp"

namespace geotrack::stats {

std::string_view to_string(CorrelationKind kind) {
    return kind == CorrelationKind::pearson ? "pearson" : "spearman";
}

std::optional<CorrelationKind> correlation_kind_from_string(std::string_view name) {
    if (name == "pearson") {
        return CorrelationKind::pearson;
    }
    if (name == "spearman") {
        return CorrelationKind::spearman;
    }
    return std::nullopt;
}

namespace {

void check_lengths(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) {
        throw StatsError(ErrorKind::domain, "correlation inputs differ in length");
    }
    if (x.size() < 2) {
        throw StatsError(ErrorKind::insufficient, "correlation needs at least two pairs");
    }
}

}  // namespace

CorrelationResult pearson_r(std::span<const double> x, std::span<const double> y) {
    check_lengths(x, y);
    const auto n = static_cast<double>(x.size());
    double mx = 0.0;
    double my = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        mx += x[i];
        my += y[i];
    }
    mx /= n;
    my /= n;
    double sxy = 0.0;
    double sxx = 0.0;
    double syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mx;
        const double dy = y[i] - my;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) {
        throw StatsError(ErrorKind::zero_variance, "correlation input is constant");
    }
    return {std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0), CorrelationKind::pearson, x.size()};
}

CorrelationResult spearman_rho(std::span<const double> x, std::span<const double> y) {
    check_lengths(x, y);
    const auto rx = rank_with_ties(x);
    const auto ry = rank_with_ties(y);
    auto result = pearson_r(rx, ry);
    result.kind = CorrelationKind::spearman;
    return result;
}

}  // namespace geotrack::stats
