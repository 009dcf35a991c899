#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "geotrack/crawl/dataset.hpp"
#include "geotrack/domain/public_suffix.hpp"
#include "geotrack/filter/filter_set.hpp"
#include "geotrack/metrics/country_summary.hpp"
#include "geotrack/metrics/site_metrics.hpp"
#include "geotrack/report/table.hpp"

namespace geotrack::report {

enum class Selection : std::uint8_t { first, second, both };

// pairwise: rank|proportion|both; correlation: pearson|spearman|both.
std::optional<Selection> pairwise_from_string(std::string_view s);
std::optional<Selection> correlation_from_string(std::string_view s);
std::string_view pairwise_name(Selection s);
std::string_view correlation_name(Selection s);

struct AnalyzeOptions {
    metrics::MetricsOptions metrics;
    Selection pairwise = Selection::both;
    Selection correlation = Selection::first;
    std::size_t top_k = 10;
};

struct AnalyzeInputs {
    const crawl::CrawlDataset& dataset;
    const filter::CompiledFilterSet& ads;
    const filter::CompiledFilterSet& trackers;
    const domain::PublicSuffixTable& psl;
};

// Metrics whose country differences are tested; the first is the default
// rank table (unique third-party request domains).
std::vector<std::string_view> rank_metrics();

struct Analysis {
    metrics::MetricsRun run;
    std::vector<metrics::CountrySummary> summaries;
    std::vector<Table> tables;  // report order
    nlohmann::json results;     // every reported statistic, unrounded
    std::vector<std::string> notes;
    bool degenerate = false;    // some statistic could not be computed
};

// Pure: no I/O, deterministic for fixed inputs.
Analysis analyze(const AnalyzeInputs& inputs, const AnalyzeOptions& options);

}  // namespace geotrack::report
