#include "geotrack/stats/pairwise.hpp"

#include <cmath>
#include <vector>

#include "geotrack/stats/distributions.hpp"
#include "geotrack/stats/error.hpp"
#include "geotrack/stats/ranks.hpp"

namespace geotrack::stats {

namespace {

struct Moments {
    double mean = 0.0;
    double var_of_mean = 0.0;
};

// Single observations contribute no sampling variance.
Moments moments(std::span<const double> xs) {
    Moments m;
    for (double x : xs) {
        m.mean += x;
    }
    const auto n = static_cast<double>(xs.size());
    m.mean /= n;
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) {
            ss += (x - m.mean) * (x - m.mean);
        }
        m.var_of_mean = ss / (n - 1.0) / n;
    }
    return m;
}

}  // namespace

PairwiseResult mann_whitney_z(std::span<const double> a, std::span<const double> b, std::string label_a,
                              std::string label_b) {
    if (a.empty() || b.empty()) {
        throw StatsError(ErrorKind::empty, "Mann-Whitney needs two non-empty samples");
    }
    PairwiseResult r{std::move(label_a), std::move(label_b)};

    const auto ma = moments(a);
    const auto mb = moments(b);
    const double diff = ma.mean - mb.mean;
    const double half = z_975 * std::sqrt(ma.var_of_mean + mb.var_of_mean);
    r.ci_low = diff - half;
    r.ci_high = diff + half;

    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const auto ranks = rank_with_ties(pooled);
    double rank_sum_a = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        rank_sum_a += ranks[i];
    }
    const auto na = static_cast<double>(a.size());
    const auto nb = static_cast<double>(b.size());
    const double n = na + nb;
    const double u_a = rank_sum_a - na * (na + 1.0) / 2.0;
    const double variance = na * nb / 12.0 * ((n + 1.0) - tie_term(pooled) / (n * (n - 1.0)));
    if (!(variance > 0.0)) {
        r.degenerate = true;
        return r;
    }
    r.Z = (u_a - na * nb / 2.0) / std::sqrt(variance);
    r.p = normal_two_tailed(r.Z);
    return r;
}

PairwiseResult two_proportion_z(std::int64_t hits_a, std::int64_t n_a, std::int64_t hits_b, std::int64_t n_b,
                                std::string label_a, std::string label_b) {
    if (n_a <= 0 || n_b <= 0) {
        throw StatsError(ErrorKind::domain, "two-proportion test needs n > 0 in both samples");
    }
    if (hits_a < 0 || hits_b < 0 || hits_a > n_a || hits_b > n_b) {
        throw StatsError(ErrorKind::domain, "hits must lie in [0, n]");
    }
    PairwiseResult r{std::move(label_a), std::move(label_b)};
    const double pa = static_cast<double>(hits_a) / static_cast<double>(n_a);
    const double pb = static_cast<double>(hits_b) / static_cast<double>(n_b);
    const double na = static_cast<double>(n_a);
    const double nb = static_cast<double>(n_b);

    const double se_unpooled = std::sqrt(pa * (1.0 - pa) / na + pb * (1.0 - pb) / nb);
    r.ci_low = (pa - pb) - z_975 * se_unpooled;
    r.ci_high = (pa - pb) + z_975 * se_unpooled;

    const double pooled = static_cast<double>(hits_a + hits_b) / (na + nb);
    const double se_pooled = std::sqrt(pooled * (1.0 - pooled) * (1.0 / na + 1.0 / nb));
    if (!(se_pooled > 0.0)) {
        r.degenerate = true;
        return r;
    }
    r.Z = (pa - pb) / se_pooled;
    r.p = normal_two_tailed(r.Z);
    return r;
}

}  // namespace geotrack::stats
