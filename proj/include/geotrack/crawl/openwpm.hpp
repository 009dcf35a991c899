#pragma once

#include <filesystem>

#include "geotrack/crawl/dataset.hpp"

namespace geotrack::crawl {

// Reads an OpenWPM crawl database: `http_requests` (visit_id, url, top_url
// and optionally referrer, time_stamp) and `cookies` (visit_id, domain and
// optionally name, time_stamp). Country, site and rank come from a sidecar:
//   {"visits": [{"visit_id": 1, "country": "US", "site_domain": "a.com", "site_rank": 1}]}
// Throws IngestError(schema) for missing tables/columns and
// IngestError(sidecar) for visits without metadata.
CrawlDataset ingest_openwpm_db(const std::filesystem::path& db_path, const std::filesystem::path& sidecar_path);

// Writes the two tables plus the sidecar. Overwrites an existing database file.
void export_openwpm_db(const CrawlDataset& dataset, const std::filesystem::path& db_path,
                       const std::filesystem::path& sidecar_path);

}  // namespace geotrack::crawl
