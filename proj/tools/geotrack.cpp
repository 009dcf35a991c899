// geotrack: crawl-log tracking measurement from the command line.
//
//   geotrack ingest  --input crawl.jsonl
//   geotrack synth   --preset four-country --seed 7 --out synth/
//   geotrack analyze --input crawl.jsonl --ads ads.txt --trackers trackers.txt --out report/
//   geotrack match   --rules trackers.txt --url https://zanox.com/x --source amazon.de
//
// Exit codes: 0 success, 1 input error, 2 degenerate statistics (report written).

#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "geotrack/crawl/jsonl.hpp"
#include "geotrack/crawl/openwpm.hpp"
#include "geotrack/crawl/validate.hpp"
#include "geotrack/report/bundle.hpp"
#include "geotrack/synth/generate.hpp"

namespace {

using namespace geotrack;

const std::string default_psl = std::string(GEOTRACK_DATA_DIR) + "/public_suffix_list.dat";

int cmd_ingest(const std::string& input, const std::optional<std::string>& sidecar, const std::string& export_jsonl,
               const std::string& export_db, const std::string& export_sidecar) {
    const auto ds = report::load_dataset(input, sidecar ? std::optional<std::filesystem::path>(*sidecar) : std::nullopt);
    std::map<std::string, std::array<std::size_t, 3>> per_country;
    for (std::size_t i = 0; i < ds.visits().size(); ++i) {
        auto& row = per_country[ds.visits()[i].country];
        row[0] += 1;
        row[1] += ds.requests_of(i).size();
        row[2] += ds.cookies_of(i).size();
    }
    std::cout << "provenance: " << ds.provenance() << '\n';
    std::cout << fmt::format("{:<8}{:>8}{:>10}{:>10}\n", "country", "visits", "requests", "cookies");
    for (const auto& [c, row] : per_country) {
        std::cout << fmt::format("{:<8}{:>8}{:>10}{:>10}\n", c, row[0], row[1], row[2]);
    }
    std::cout << fmt::format("{:<8}{:>8}{:>10}{:>10}\n", "all", ds.visits().size(), ds.requests().size(),
                             ds.cookies().size());
    const auto warnings = crawl::validate(ds);
    for (const auto& w : warnings) {
        std::cout << "warning " << crawl::to_string(w.kind) << ": " << w.detail << '\n';
    }
    if (!export_jsonl.empty()) {
        crawl::export_jsonl(ds, std::filesystem::path(export_jsonl));
    }
    if (!export_db.empty()) {
        crawl::export_openwpm_db(ds, export_db, export_sidecar.empty() ? export_db + ".sidecar.json" : export_sidecar);
    }
    return 0;
}

int cmd_synth(const std::string& config_path, const std::string& preset, std::optional<std::uint64_t> seed,
              const std::string& out, unsigned threads) {
    synth::SynthConfig config;
    if (!config_path.empty()) {
        config = synth::load_config(config_path);
    } else if (preset == "four-country") {
        config = synth::four_country_preset(1);
    } else {
        throw CLI::ValidationError("synth", "need --config FILE or --preset four-country");
    }
    if (seed) {
        config.seed = *seed;
    }
    const auto output = synth::generate(config, threads);
    synth::write_output(output, config, out);
    std::cout << fmt::format("wrote {} visits, {} requests, {} cookies to {}\n", output.dataset.visits().size(),
                             output.dataset.requests().size(), output.dataset.cookies().size(), out);
    return 0;
}

int cmd_analyze(const report::AnalyzeRequest& request) {
    const auto result = report::run_analyze(request);
    std::cout << report::render_report_text(result.analysis, result.manifest);
    if (result.exit_code == 2) {
        std::cerr << "warning: degenerate statistics present; see the Warnings section\n";
    }
    return result.exit_code;
}

int cmd_match(const std::vector<std::string>& rule_files, const std::vector<std::string>& rules,
              std::vector<std::string> urls, const std::string& url_file, const std::string& source, bool third_party,
              domain::PartyMode mode, const std::string& psl_path) {
    std::vector<std::string> lines = rules;
    for (const auto& f : rule_files) {
        std::ifstream in(f, std::ios::binary);
        if (!in) {
            throw std::runtime_error("cannot open " + f);
        }
        for (std::string line; std::getline(in, line);) {
            lines.push_back(line);
        }
    }
    if (!url_file.empty()) {
        std::ifstream in(url_file, std::ios::binary);
        if (!in) {
            throw std::runtime_error("cannot open " + url_file);
        }
        for (std::string line; std::getline(in, line);) {
            if (!line.empty()) {
                urls.push_back(line);
            }
        }
    }
    const auto compiled = filter::compile_filter_set(lines, filter::ListKind::trackers);
    std::optional<domain::PublicSuffixTable> psl;
    if (!source.empty()) {
        psl = domain::PublicSuffixTable::load(psl_path);
    }
    auto describe = [&](const std::optional<filter::RuleId>& id) {
        return id ? fmt::format("{}:{}", id->line_number, id->raw_text) : std::string("-");
    };
    int status = 0;
    for (const auto& url : urls) {
        try {
            bool tp = third_party;
            if (psl) {
                tp = domain::classify_party(source, url, mode, *psl).is_third_party();
            }
            const filter::MatchQuery query(url, source.empty() ? std::string_view{} : std::string_view(source), tp);
            const auto r = compiled.set.match(query);
            std::cout << fmt::format("{}\t{}\t{}\t{}\t{}\n", filter::to_string(r.outcome), url,
                                     tp ? "third_party" : "first_party", describe(r.matched_rule),
                                     describe(r.exception_rule));
        } catch (const std::exception& e) {
            std::cout << fmt::format("error\t{}\t{}\n", url, e.what());
            status = 1;
        }
    }
    return status;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"geotrack: third-party tracking measurement over crawl logs"};
    app.require_subcommand(1);
    app.set_version_flag("--version", GEOTRACK_VERSION);

    std::string psl = default_psl;
    std::string mode_name = "psl";
    std::string granularity_name = "registrable";
    unsigned threads = 1;

    // ingest
    auto* ingest = app.add_subcommand("ingest", "Load and validate a crawl dataset, print a summary");
    std::string ingest_input;
    std::optional<std::string> ingest_sidecar;
    std::string export_jsonl;
    std::string export_db;
    std::string export_sidecar;
    ingest->add_option("--input,-i", ingest_input, "JSONL file or OpenWPM SQLite database")->required();
    ingest->add_option("--sidecar", ingest_sidecar, "Visit metadata JSON; selects the SQLite reader");
    ingest->add_option("--export-jsonl", export_jsonl, "Write the dataset as JSONL");
    ingest->add_option("--export-db", export_db, "Write the dataset as an OpenWPM-style SQLite database");
    ingest->add_option("--export-sidecar", export_sidecar, "Sidecar path for --export-db");

    // synth
    auto* synth_cmd = app.add_subcommand("synth", "Generate a synthetic crawl with planted tracking levels");
    std::string config_path;
    std::string preset;
    std::optional<std::uint64_t> seed;
    std::string synth_out;
    synth_cmd->add_option("--config", config_path, "Synthesis config JSON");
    synth_cmd->add_option("--preset", preset, "Built-in config")->check(CLI::IsMember({"four-country"}));
    synth_cmd->add_option("--seed", seed, "Overrides the config seed");
    synth_cmd->add_option("--out,-o", synth_out, "Output directory")->required();
    synth_cmd->add_option("--threads", threads, "Worker threads")->check(CLI::Range(1u, 256u));

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Compute metrics and statistics, write the report bundle");
    report::AnalyzeRequest request;
    std::string input;
    std::optional<std::string> sidecar;
    std::string ads;
    std::string trackers;
    std::string out;
    std::string pairwise = "both";
    std::string correlation = "pearson";
    std::size_t top_k = 10;
    analyze->add_option("--input,-i", input, "JSONL file or OpenWPM SQLite database")->required();
    analyze->add_option("--sidecar", sidecar, "Visit metadata JSON; selects the SQLite reader");
    analyze->add_option("--ads", ads, "Ad filter list (EasyList format)")->required();
    analyze->add_option("--trackers", trackers, "Tracker filter list (EasyList format)")->required();
    analyze->add_option("--psl", psl, "Public suffix list");
    analyze->add_option("--out,-o", out, "Output directory")->required();
    analyze->add_option("--mode", mode_name, "Party classification: paper or psl")
            ->check(CLI::IsMember({"paper", "psl"}));
    analyze->add_option("--domain-granularity", granularity_name, "Unique third-party domains by host or registrable")
            ->check(CLI::IsMember({"host", "registrable"}));
    analyze->add_option("--pairwise", pairwise, "rank, proportion or both")
            ->check(CLI::IsMember({"rank", "proportion", "both"}));
    analyze->add_option("--correlation", correlation, "pearson, spearman or both")
            ->check(CLI::IsMember({"pearson", "spearman", "both"}));
    analyze->add_option("--top-k", top_k, "Outliers listed per group")->check(CLI::PositiveNumber);
    analyze->add_option("--threads", threads, "Worker threads for metrics")->check(CLI::Range(1u, 256u));

    // match
    auto* match = app.add_subcommand("match", "Match URLs against filter rules, one result line per URL");
    std::vector<std::string> rule_files;
    std::vector<std::string> rules;
    std::vector<std::string> urls;
    std::string url_file;
    std::string source;
    bool third_party = false;
    match->add_option("--rules", rule_files, "Filter list file(s)");
    match->add_option("--rule", rules, "Inline filter rule(s)");
    match->add_option("--url", urls, "URL(s) to test");
    match->add_option("--urls", url_file, "File with one URL per line");
    match->add_option("--source", source, "Visited site; party is then classified with --mode");
    match->add_flag("--third-party", third_party, "Treat requests as third-party when --source is absent");
    match->add_option("--mode", mode_name, "Party classification: paper or psl")->check(CLI::IsMember({"paper", "psl"}));
    match->add_option("--psl", psl, "Public suffix list");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        // --help and --version exit 0; usage errors are input errors.
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        const auto mode = *domain::party_mode_from_string(mode_name);
        if (*ingest) {
            return cmd_ingest(ingest_input, ingest_sidecar, export_jsonl, export_db, export_sidecar);
        }
        if (*synth_cmd) {
            return cmd_synth(config_path, preset, seed, synth_out, threads);
        }
        if (*analyze) {
            request.dataset = input;
            if (sidecar) {
                request.sidecar = *sidecar;
            }
            request.ads_list = ads;
            request.trackers_list = trackers;
            request.psl = psl;
            request.out_dir = out;
            request.options.metrics.mode = mode;
            request.options.metrics.granularity = *metrics::granularity_from_string(granularity_name);
            request.options.metrics.threads = threads;
            request.options.pairwise = *report::pairwise_from_string(pairwise);
            request.options.correlation = *report::correlation_from_string(correlation);
            request.options.top_k = top_k;
            return cmd_analyze(request);
        }
        if (*match) {
            return cmd_match(rule_files, rules, urls, url_file, source, third_party, mode, psl);
        }
    } catch (const CLI::Error& e) {
        return app.exit(e) == 0 ? 0 : 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
