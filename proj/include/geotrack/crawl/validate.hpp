#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "geotrack/crawl/dataset.hpp"

namespace geotrack::crawl {

enum class WarningKind : std::uint8_t { duplicate_request, empty_visit, site_rank_gap };

std::string_view to_string(WarningKind kind);

struct ValidationWarning {
    WarningKind kind;
    VisitId visit_id = 0;  // first visit involved; 0 for country-level warnings
    std::string detail;
};

// Non-fatal findings, in a stable order: per-visit warnings in visit order,
// then rank gaps per country (sorted).
std::vector<ValidationWarning> validate(const CrawlDataset& dataset);

}  // namespace geotrack::crawl
