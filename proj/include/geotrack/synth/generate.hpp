#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "geotrack/crawl/dataset.hpp"
#include "geotrack/synth/config.hpp"

namespace geotrack::synth {

// Ground truth for one generated visit, in the units the metrics pipeline
// reports under registrable-domain classification.
struct LedgerEntry {
    crawl::VisitId visit_id = 0;
    std::string country;
    std::int64_t site_rank = 0;
    std::string site_domain;
    double planted_proportion_hits = 0.0;
    double planted_proportion_ad_hits = 0.0;
    std::int64_t n_requests = 0;
    std::int64_t n_fp_requests = 0;
    std::int64_t n_tp_requests = 0;
    std::int64_t n_tp_request_domains = 0;
    std::int64_t n_tracker_hits = 0;
    std::int64_t n_ad_hits = 0;
    std::int64_t n_fp_cookies = 0;
    std::int64_t n_tp_cookies = 0;
};

struct SynthOutput {
    crawl::CrawlDataset dataset;
    std::vector<LedgerEntry> ledger;  // dataset visit order
    std::vector<std::string> tracker_list;  // Adblock lines matching exactly the tracker pool
    std::vector<std::string> ad_list;
};

// Deterministic in (config, seed); `threads` never changes the output.
// Throws ConfigError.
SynthOutput generate(const SynthConfig& config, unsigned threads = 1);

std::string tracker_domain(std::int64_t i);
std::string ad_domain(std::int64_t i);
std::string cdn_domain(std::int64_t i);
std::string site_domain(const std::string& country, std::int64_t rank);

void to_json(nlohmann::json& j, const LedgerEntry& e);

// Writes crawl.jsonl, ledger.json, trackers.txt, ads.txt and config.json.
void write_output(const SynthOutput& output, const SynthConfig& config, const std::filesystem::path& dir);

}  // namespace geotrack::synth
