#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string_view>

namespace geotrack::stats {

enum class CorrelationKind : std::uint8_t { pearson, spearman };

std::string_view to_string(CorrelationKind kind);
std::optional<CorrelationKind> correlation_kind_from_string(std::string_view name);

struct CorrelationResult {
    double r = 0.0;
    CorrelationKind kind = CorrelationKind::pearson;
    std::size_t n = 0;
};

// Equal lengths >= 2, neither input constant; throws StatsError otherwise.
CorrelationResult pearson_r(std::span<const double> x, std::span<const double> y);
// Pearson on average ranks.
CorrelationResult spearman_rho(std::span<const double> x, std::span<const double> y);

}  // namespace geotrack::stats
