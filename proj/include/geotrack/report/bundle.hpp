#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include <json.hpp>

#include "geotrack/crawl/dataset.hpp"
#include "geotrack/report/analyze.hpp"
#include "geotrack/report/manifest.hpp"

namespace geotrack::report {

struct AnalyzeRequest {
    std::filesystem::path dataset;                // JSONL, or an OpenWPM database when sidecar is set
    std::optional<std::filesystem::path> sidecar;
    std::filesystem::path ads_list;
    std::filesystem::path trackers_list;
    std::filesystem::path psl;
    std::filesystem::path out_dir;
    AnalyzeOptions options;
};

struct BundleResult {
    int exit_code = 0;  // 0 clean, 2 degenerate statistics present
    Analysis analysis;
    RunManifest manifest;
};

crawl::CrawlDataset load_dataset(const std::filesystem::path& path, const std::optional<std::filesystem::path>& sidecar);

// Loads inputs, writes manifest.json, then report.txt, report.json and
// tables/*.csv under out_dir. Input problems throw (crawl::IngestError,
// std::runtime_error); degenerate statistics only set the exit code.
BundleResult run_analyze(const AnalyzeRequest& request);

std::string render_report_text(const Analysis& analysis, const RunManifest& manifest);
nlohmann::json report_json(const Analysis& analysis, const RunManifest& manifest);

}  // namespace geotrack::report
