#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace geotrack::stats {

enum class ErrorKind : std::uint8_t { empty, insufficient, domain, zero_variance, too_few_groups };

std::string_view to_string(ErrorKind kind);

class StatsError : public std::invalid_argument {
public:
    StatsError(ErrorKind kind, const std::string& detail)
        : std::invalid_argument(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

    ErrorKind kind() const { return kind_; }

private:
    ErrorKind kind_;
};

}  // namespace geotrack::stats
