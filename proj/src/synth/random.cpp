#include "geotrack/synth/random.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace geotrack::synth {

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

std::uint64_t stream_seed(std::string_view label, std::uint64_t index, std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t h = 0xcbf29ce484222325ULL;  // FNV-1a
    for (unsigned char c : label) {
        h = (h ^ c) * 0x100000001b3ULL;
    }
    return splitmix64(splitmix64(splitmix64(h ^ seed) ^ index) ^ salt);
}

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

std::uint64_t Rng::below(std::uint64_t n) {
    // Rejection keeps the draw unbiased.
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    std::uint64_t x = 0;
    do {
        x = engine_();
    } while (x >= limit);
    return x % n;
}

double Rng::normal() {
    double u1 = 0.0;
    do {
        u1 = uniform();
    } while (u1 <= 0.0);
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

// Marsaglia and Tsang; shapes below 1 use the U^(1/a) boost.
double Rng::gamma(double shape) {
    if (shape < 1.0) {
        double u = 0.0;
        do {
            u = uniform();
        } while (u <= 0.0);
        return gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
    }
    const double d = shape - 1.0 / 3.0;
    const double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
        double x = 0.0;
        double v = 0.0;
        do {
            x = normal();
            v = 1.0 + c * x;
        } while (v <= 0.0);
        v = v * v * v;
        const double u = uniform();
        if (u < 1.0 - 0.0331 * x * x * x * x) {
            return d * v;
        }
        if (u > 0.0 && std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) {
            return d * v;
        }
    }
}

double Rng::beta(double a, double b) {
    const double x = gamma(a);
    const double y = gamma(b);
    return x + y > 0.0 ? x / (x + y) : 0.5;
}

std::int64_t Rng::binomial(std::int64_t n, double p) {
    if (p <= 0.0 || n <= 0) {
        return 0;
    }
    if (p >= 1.0) {
        return n;
    }
    std::int64_t k = 0;
    for (std::int64_t i = 0; i < n; ++i) {
        k += uniform() < p;
    }
    return k;
}

double Rng::lognormal_from_moments(double mean, double sd) {
    const double s2 = std::log1p((sd * sd) / (mean * mean));
    const double mu = std::log(mean) - s2 / 2.0;
    return std::exp(mu + std::sqrt(s2) * normal());
}

double Rng::beta_from_moments(double mean, double sd) {
    if (mean <= 0.0 || mean >= 1.0 || sd <= 0.0) {
        return std::clamp(mean, 0.0, 1.0);
    }
    const double max_var = mean * (1.0 - mean);
    const double var = std::min(sd * sd, 0.999 * max_var);
    const double k = max_var / var - 1.0;
    return beta(mean * k, (1.0 - mean) * k);
}

}  // namespace geotrack::synth
