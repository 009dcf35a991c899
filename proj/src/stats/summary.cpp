#include "geotrack/stats/summary.hpp"

#include <cmath>

#include "geotrack/stats/distributions.hpp"
#include "geotrack/stats/error.hpp"

namespace geotrack::stats {

SummaryCI summary_ci(std::span<const double> values) {
    if (values.size() < 2) {
        throw StatsError(ErrorKind::insufficient, "summary needs at least two values");
    }
    SummaryCI s;
    s.n = values.size();
    const auto n = static_cast<double>(s.n);
    for (double v : values) {
        s.mean += v;
    }
    s.mean /= n;
    double ss = 0.0;
    for (double v : values) {
        ss += (v - s.mean) * (v - s.mean);
    }
    s.sd = std::sqrt(ss / (n - 1.0));
    s.se_mean = s.sd / std::sqrt(n);
    s.ci_low = s.mean - z_975 * s.se_mean;
    s.ci_high = s.mean + z_975 * s.se_mean;
    return s;
}

}  // namespace geotrack::stats
