#pragma once

#include <filesystem>
#include <istream>
#include <ostream>
#include <string>

#include "geotrack/crawl/dataset.hpp"

namespace geotrack::crawl {

// One JSON object per line, discriminated by "kind":
//   {"kind":"visit","visit_id":1,"country":"US","site_rank":1,"site_domain":"a.com","started_at":"..."}
//   {"kind":"request","visit_id":1,"url":"...","top_url":"...","referrer":null,"ts":"..."}
//   {"kind":"cookie","visit_id":1,"domain":".a.com","name":"id","ts":"..."}
// Unknown fields are ignored; blank lines are skipped.
CrawlDataset ingest_jsonl(std::istream& in, std::string provenance);
CrawlDataset ingest_jsonl(const std::filesystem::path& path);

// Visits, then requests, then cookies, each in dataset order.
void export_jsonl(const CrawlDataset& dataset, std::ostream& out);
void export_jsonl(const CrawlDataset& dataset, const std::filesystem::path& path);

}  // namespace geotrack::crawl
