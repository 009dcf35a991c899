#include "geotrack/report/bundle.hpp"

#include <fstream>
#include <sstream>

#include <fmt/format.h>

#include "geotrack/crawl/jsonl.hpp"
#include "geotrack/crawl/openwpm.hpp"
#include "geotrack/metrics/export.hpp"

namespace geotrack::report {

crawl::CrawlDataset load_dataset(const std::filesystem::path& path, const std::optional<std::filesystem::path>& sidecar) {
    return sidecar ? crawl::ingest_openwpm_db(path, *sidecar) : crawl::ingest_jsonl(path);
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << body;
}

// File names only: reports must not depend on where inputs live.
nlohmann::json input_summary(const RunManifest& m) {
    nlohmann::json inputs = nlohmann::json::array();
    for (const auto& in : m.inputs) {
        inputs.push_back({{"role", in.role}, {"file", in.path.filename().string()}, {"sha256", in.sha256}});
    }
    return inputs;
}

}  // namespace

std::string render_report_text(const Analysis& analysis, const RunManifest& manifest) {
    std::ostringstream out;
    out << "geotrack " << manifest.tool_version << " report\n";
    out << "dataset: " << analysis.results.at("dataset").at("provenance").get<std::string>() << '\n';
    out << "classification: " << manifest.mode << ", domain granularity: " << manifest.domain_granularity
        << ", pairwise: " << manifest.pairwise << ", correlation: " << manifest.correlation << '\n';
    for (const auto& in : manifest.inputs) {
        out << "input " << in.role << ": " << in.path.filename().string() << " sha256:" << in.sha256.substr(0, 16)
            << '\n';
    }
    out << '\n';
    for (const auto& t : analysis.tables) {
        render_text(out, t);
    }
    if (!analysis.notes.empty()) {
        out << "Warnings\n========\n";
        for (const auto& n : analysis.notes) {
            out << "- " << n << '\n';
        }
    }
    return out.str();
}

nlohmann::json report_json(const Analysis& analysis, const RunManifest& manifest) {
    nlohmann::json tables = nlohmann::json::object();
    for (const auto& t : analysis.tables) {
        tables[t.name] = table_json(t);
    }
    return {{"tool", "geotrack"},
            {"version", manifest.tool_version},
            {"options",
             {{"mode", manifest.mode},
              {"domain_granularity", manifest.domain_granularity},
              {"pairwise", manifest.pairwise},
              {"correlation", manifest.correlation},
              {"top_k", manifest.top_k}}},
            {"inputs", input_summary(manifest)},
            {"results", analysis.results},
            {"tables", std::move(tables)},
            {"site_metrics", analysis.run.metrics}};
}

BundleResult run_analyze(const AnalyzeRequest& request) {
    std::vector<std::pair<std::string, std::filesystem::path>> paths{{"dataset", request.dataset}};
    if (request.sidecar) {
        paths.emplace_back("sidecar", *request.sidecar);
    }
    paths.emplace_back("ads", request.ads_list);
    paths.emplace_back("trackers", request.trackers_list);
    paths.emplace_back("psl", request.psl);

    RunManifest manifest;
    manifest.inputs = hash_inputs(paths);
    manifest.mode = std::string(domain::to_string(request.options.metrics.mode));
    manifest.domain_granularity = std::string(metrics::to_string(request.options.metrics.granularity));
    manifest.pairwise = std::string(pairwise_name(request.options.pairwise));
    manifest.correlation = std::string(correlation_name(request.options.correlation));
    manifest.top_k = request.options.top_k;
    manifest.output_dir = request.out_dir;
    manifest.tool_version = GEOTRACK_VERSION;
    manifest.created_at = utc_now();

    const auto dataset = load_dataset(request.dataset, request.sidecar);
    const auto ads = filter::load_filter_set(request.ads_list, filter::ListKind::ads);
    const auto trackers = filter::load_filter_set(request.trackers_list, filter::ListKind::trackers);
    const auto psl = domain::PublicSuffixTable::load(request.psl);

    std::filesystem::create_directories(request.out_dir / "tables");
    write_manifest(manifest, request.out_dir / "manifest.json");

    BundleResult result{0, analyze({dataset, ads, trackers, psl}, request.options), manifest};
    for (const auto& t : result.analysis.tables) {
        std::ostringstream csv;
        render_csv(csv, t);
        write_file(request.out_dir / "tables" / (t.name + ".csv"), csv.str());
    }
    std::ostringstream metrics_csv;
    metrics::write_metrics_csv(metrics_csv, result.analysis.run.metrics);
    write_file(request.out_dir / "tables" / "site_metrics.csv", metrics_csv.str());
    write_file(request.out_dir / "report.txt", render_report_text(result.analysis, manifest));
    write_file(request.out_dir / "report.json", report_json(result.analysis, manifest).dump(2) + '\n');
    result.exit_code = result.analysis.degenerate ? 2 : 0;
    return result;
}

}  // namespace geotrack::report
