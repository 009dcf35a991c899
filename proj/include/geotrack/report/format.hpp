#pragma once

#include <string>

namespace geotrack::report {

// "<.0001" below 1e-4, otherwise four decimals.
std::string format_p(double p);
std::string format_rank(double r);        // 2 decimals
std::string format_proportion(double p);  // 3 decimals
std::string format_stat(double x);        // 3 decimals, for H, Z and r
std::string format_mean(double x);        // 2 decimals

}  // namespace geotrack::report
