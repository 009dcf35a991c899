#include "geotrack/stats/ranks.hpp"

#include <algorithm>
#include <numeric>

#include "geotrack/stats/error.hpp"

namespace geotrack::stats {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
    case ErrorKind::empty:
        return "empty";
    case ErrorKind::insufficient:
        return "insufficient";
    case ErrorKind::domain:
        return "domain";
    case ErrorKind::zero_variance:
        return "zero_variance";
    case ErrorKind::too_few_groups:
        return "too_few_groups";
    }
    return "unknown";
}

namespace {

std::vector<std::size_t> sorted_order(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return values[a] < values[b]; });
    return order;
}

}  // namespace

std::vector<double> rank_with_ties(std::span<const double> values) {
    if (values.empty()) {
        throw StatsError(ErrorKind::empty, "no values to rank");
    }
    const auto order = sorted_order(values);
    std::vector<double> ranks(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i + 1;
        while (j < order.size() && values[order[j]] == values[order[i]]) {
            ++j;
        }
        // Positions i..j-1 hold ranks i+1..j.
        const double avg = (static_cast<double>(i + 1) + static_cast<double>(j)) / 2.0;
        for (std::size_t k = i; k < j; ++k) {
            ranks[order[k]] = avg;
        }
        i = j;
    }
    return ranks;
}

double tie_term(std::span<const double> values) {
    const auto order = sorted_order(values);
    double sum = 0.0;
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i + 1;
        while (j < order.size() && values[order[j]] == values[order[i]]) {
            ++j;
        }
        const auto t = static_cast<double>(j - i);
        sum += t * t * t - t;
        i = j;
    }
    return sum;
}

}  // namespace geotrack::stats
