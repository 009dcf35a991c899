#include "geotrack/metrics/export.hpp"

#include <fmt/format.h>

namespace geotrack::metrics {

namespace {

// RFC 4180 quoting, only when needed.
std::string csv_cell(std::string_view s) {
    if (s.find_first_of(",\"\r\n") == std::string_view::npos) {
        return std::string(s);
    }
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') {
            out += '"';
        }
    }
    return out + '"';
}

}  // namespace

void write_metrics_csv(std::ostream& out, std::span<const SiteMetrics> metrics) {
    out << "visit_id,country,site_rank,site_domain";
    for (const auto name : numeric_fields()) {
        out << ',' << name;
    }
    out << ",empty\n";
    for (const auto& m : metrics) {
        out << m.visit_id << ',' << csv_cell(m.country) << ',' << m.site_rank << ',' << csv_cell(m.site_domain);
        for (const auto name : numeric_fields()) {
            out << ',' << fmt::format("{}", *field_value(m, name));
        }
        out << ',' << (m.empty ? "true" : "false") << '\n';
    }
}

void to_json(nlohmann::json& j, const SiteMetrics& m) {
    j = nlohmann::json{{"visit_id", m.visit_id},
                       {"country", m.country},
                       {"site_rank", m.site_rank},
                       {"site_domain", m.site_domain}};
    for (const auto name : numeric_fields()) {
        const double v = *field_value(m, name);
        if (name.starts_with("proportion")) {
            j[std::string(name)] = v;
        } else {
            j[std::string(name)] = static_cast<std::int64_t>(v);
        }
    }
    j["empty"] = m.empty;
}

void to_json(nlohmann::json& j, const Diagnostics& d) {
    j = {{"unclassified_requests", d.unclassified_requests},
         {"unclassified_cookies", d.unclassified_cookies},
         {"empty_visits", d.empty_visits},
         {"fallback_source_hosts", d.fallback_source_hosts}};
}

}  // namespace geotrack::metrics
