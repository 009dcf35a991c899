#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace geotrack::synth {

std::uint64_t splitmix64(std::uint64_t x);

// Seed of an independent stream keyed by (label, index, seed, salt).
std::uint64_t stream_seed(std::string_view label, std::uint64_t index, std::uint64_t seed, std::uint64_t salt = 0);

// Portable samplers over mt19937_64. The standard library's distributions
// are implementation-defined, so output would differ across toolchains.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform();  // [0, 1)
    std::uint64_t below(std::uint64_t n);  // [0, n), n > 0
    double normal();
    double gamma(double shape);  // shape > 0, unit scale
    double beta(double a, double b);
    std::int64_t binomial(std::int64_t n, double p);
    double lognormal_from_moments(double mean, double sd);
    // Beta draw with the given mean and standard deviation. sd = 0 yields
    // the mean; an sd beyond the Beta bound is capped just below it.
    double beta_from_moments(double mean, double sd);

private:
    std::mt19937_64 engine_;
};

}  // namespace geotrack::synth
