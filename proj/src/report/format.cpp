#include "geotrack/report/format.hpp"

#include <fmt/format.h>

namespace geotrack::report {

namespace {

// Avoids printing "-0.000" for tiny negatives.
std::string fixed(double x, int digits) {
    std::string s = fmt::format("{:.{}f}", x, digits);
    if (s.starts_with('-') && s.find_first_not_of("-0.") == std::string::npos) {
        s.erase(0, 1);
    }
    return s;
}

}  // namespace

std::string format_p(double p) { return p < 1e-4 ? "<.0001" : fixed(p, 4); }
std::string format_rank(double r) { return fixed(r, 2); }
std::string format_proportion(double p) { return fixed(p, 3); }
std::string format_stat(double x) { return fixed(x, 3); }
std::string format_mean(double x) { return fixed(x, 2); }

}  // namespace geotrack::report
