#include "geotrack/report/analyze.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include <fmt/format.h>

#include "geotrack/crawl/validate.hpp"
#include "geotrack/metrics/export.hpp"
#include "geotrack/report/format.hpp"
#include "geotrack/stats/correlation.hpp"
#include "geotrack/stats/error.hpp"
#include "geotrack/stats/json.hpp"
#include "geotrack/stats/kruskal_wallis.hpp"
#include "geotrack/stats/pairwise.hpp"
#include "geotrack/stats/summary.hpp"

namespace geotrack::report {

using nlohmann::json;

std::optional<Selection> pairwise_from_string(std::string_view s) {
    if (s == "rank") {
        return Selection::first;
    }
    if (s == "proportion") {
        return Selection::second;
    }
    if (s == "both") {
        return Selection::both;
    }
    return std::nullopt;
}

std::optional<Selection> correlation_from_string(std::string_view s) {
    if (s == "pearson") {
        return Selection::first;
    }
    if (s == "spearman") {
        return Selection::second;
    }
    if (s == "both") {
        return Selection::both;
    }
    return std::nullopt;
}

std::string_view pairwise_name(Selection s) {
    return s == Selection::first ? "rank" : s == Selection::second ? "proportion" : "both";
}

std::string_view correlation_name(Selection s) {
    return s == Selection::first ? "pearson" : s == Selection::second ? "spearman" : "both";
}

std::vector<std::string_view> rank_metrics() {
    return {"n_tp_request_domains", "n_tp_requests", "n_tp_cookies", "n_tracker_hits", "proportion_hits"};
}

namespace {

Cell count(double v) { return Cell::num(fmt::format("{}", static_cast<std::int64_t>(v)), v); }
Cell mean(double v) { return Cell::num(format_mean(v), v); }
Cell proportion(double v) { return Cell::num(format_proportion(v), v); }
Cell stat(double v) { return Cell::num(format_stat(v), v); }
Cell pvalue(double v) { return Cell::num(format_p(v), v); }
Cell rank(double v) { return Cell::num(format_rank(v), v); }

bool wants_first(Selection s) { return s != Selection::second; }
bool wants_second(Selection s) { return s != Selection::first; }

struct MeanSd {
    double mean = 0.0;
    double sd = 0.0;
};

MeanSd mean_sd(const std::vector<double>& xs) {
    MeanSd m;
    for (double x : xs) {
        m.mean += x;
    }
    m.mean /= static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double ss = 0.0;
        for (double x : xs) {
            ss += (x - m.mean) * (x - m.mean);
        }
        m.sd = std::sqrt(ss / static_cast<double>(xs.size() - 1));
    }
    return m;
}

class Builder {
public:
    Builder(const AnalyzeInputs& in, const AnalyzeOptions& opt, Analysis& out) : in_(in), opt_(opt), out_(out) {
        for (const auto& m : out_.run.metrics) {
            by_country_[m.country].push_back(&m);
        }
        for (const auto& [country, _] : by_country_) {
            countries_.push_back(country);
        }
    }

    void run() {
        dataset_section();
        rank_section();
        summary_section();
        pairwise_section();
        correlation_section();
        tracker_vs_ad_section();
        outlier_section();
        out_.results["notes"] = out_.notes;
        out_.results["degenerate"] = out_.degenerate;
    }

private:
    std::vector<double> values(const std::string& country, std::string_view field) const {
        std::vector<double> v;
        for (const auto* m : by_country_.at(country)) {
            v.push_back(*metrics::field_value(*m, field));
        }
        return v;
    }

    std::vector<double> all_values(std::string_view field) const {
        std::vector<double> v;
        for (const auto& m : out_.run.metrics) {
            v.push_back(*metrics::field_value(m, field));
        }
        return v;
    }

    double total(const std::string& country, std::string_view field) const {
        double sum = 0.0;
        for (double x : values(country, field)) {
            sum += x;
        }
        return sum;
    }

    void flag(std::string note) {
        out_.degenerate = true;
        out_.notes.push_back(std::move(note));
    }

    void dataset_section() {
        const auto& ds = in_.dataset;
        Table t{"dataset", "Dataset by country", {"Country", "Visits", "Requests", "Cookies", "Empty Visits"}, {}, {}};
        json countries = json::object();
        for (const auto& c : countries_) {
            const auto& rows = by_country_.at(c);
            std::int64_t requests = 0;
            std::int64_t cookies = 0;
            std::int64_t empty = 0;
            for (const auto* m : rows) {
                requests += m->n_requests;
                cookies += m->n_cookies + m->n_unclassified_cookies;
                empty += m->empty ? 1 : 0;
            }
            t.rows.push_back({Cell::str(c), count(static_cast<double>(rows.size())),
                              count(static_cast<double>(requests)), count(static_cast<double>(cookies)),
                              count(static_cast<double>(empty))});
            countries[c] = {{"visits", rows.size()}, {"requests", requests}, {"cookies", cookies}, {"empty_visits", empty}};
        }
        t.rows.push_back({Cell::str("All"), count(static_cast<double>(ds.visits().size())),
                          count(static_cast<double>(ds.requests().size())),
                          count(static_cast<double>(ds.cookies().size())),
                          count(static_cast<double>(out_.run.diagnostics.empty_visits))});

        const auto warnings = crawl::validate(ds);
        json warn = json::array();
        for (const auto& w : warnings) {
            warn.push_back({{"kind", crawl::to_string(w.kind)}, {"visit_id", w.visit_id}, {"detail", w.detail}});
        }
        if (!warnings.empty()) {
            t.notes.push_back(fmt::format("{} validation warning(s); see report.json", warnings.size()));
        }
        out_.results["dataset"] = {{"provenance", ds.provenance()},
                                   {"visits", ds.visits().size()},
                                   {"requests", ds.requests().size()},
                                   {"cookies", ds.cookies().size()},
                                   {"countries", countries},
                                   {"validation_warnings", std::move(warn)}};
        out_.results["filter_lists"] = {{"ads", in_.ads.report}, {"trackers", in_.trackers.report}};
        out_.results["diagnostics"] = out_.run.diagnostics;
        out_.tables.push_back(std::move(t));
    }

    void rank_section() {
        Table kw{"kruskal_wallis", "Kruskal-Wallis tests across countries (H, chi-square approximation)",
                 {"Metric", "H", "df", "p", "N"}, {}, {}};
        json results = json::object();
        if (countries_.size() < 2) {
            const auto note = fmt::format("insufficient groups: Kruskal-Wallis needs at least two countries, found {}",
                                          countries_.size());
            kw.notes.push_back(note);
            flag(note);
            out_.results["kruskal_wallis"] = {{"status", "insufficient_groups"}, {"countries", countries_.size()}};
            out_.tables.push_back(std::move(kw));
            return;
        }
        std::vector<Table> rank_tables;
        for (const auto metric : rank_metrics()) {
            std::map<std::string, std::vector<double>> groups;
            for (const auto& c : countries_) {
                groups[c] = values(c, metric);
            }
            const auto r = stats::kruskal_wallis(groups);
            results[std::string(metric)] = r;
            kw.rows.push_back({Cell::str(std::string(metric)), stat(r.H), count(r.df), pvalue(r.p),
                               count(static_cast<double>(r.N))});
            if (r.degenerate) {
                flag(fmt::format("all observations tied for {}: H = 0, p = 1", metric));
            }

            std::vector<std::pair<std::string, double>> order(r.mean_ranks.begin(), r.mean_ranks.end());
            std::stable_sort(order.begin(), order.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
            Table t{"ranks_" + std::string(metric), fmt::format("Mean rank of {} by country", metric),
                    {"Country", "N", "Mean Rank"}, {}, {}};
            for (const auto& [c, mr] : order) {
                t.rows.push_back({Cell::str(c), count(static_cast<double>(groups[c].size())), rank(mr)});
            }
            rank_tables.push_back(std::move(t));
        }
        out_.results["kruskal_wallis"] = std::move(results);
        out_.tables.push_back(std::move(kw));
        for (auto& t : rank_tables) {
            out_.tables.push_back(std::move(t));
        }
    }

    void summary_section() {
        Table t{"summary",
                "Summary statistics by country",
                {"Country", "N", "Mean Requests", "Mean Hits", "Mean Proportion Hits", "SD Requests", "SD Hits",
                 "SD Proportion Hits"},
                {},
                {}};
        json results = json::object();
        for (const auto& s : out_.summaries) {
            const auto& req = s.field("n_requests");
            const auto& hits = s.field("n_tracker_hits");
            const auto& prop = s.field("proportion_hits");
            t.rows.push_back({Cell::str(s.country), count(static_cast<double>(s.n_visits)), mean(req.mean),
                              mean(hits.mean), proportion(prop.mean), mean(req.sd), mean(hits.sd), proportion(prop.sd)});
            if (s.single_visit) {
                t.notes.push_back(s.country + ": single visit, SD reported as 0");
            }
            json fields = json::object();
            const auto names = metrics::numeric_fields();
            for (std::size_t i = 0; i < names.size(); ++i) {
                fields[std::string(names[i])] = {{"mean", s.fields[i].mean}, {"sd", s.fields[i].sd}};
            }
            results[s.country] = {{"n_visits", s.n_visits}, {"single_visit", s.single_visit}, {"fields", fields}};
        }
        out_.results["summary"] = std::move(results);
        out_.tables.push_back(std::move(t));

        Table overall{"overall",
                      "Summary statistics for all tracking-related requests",
                      {"N", "Mean Requests", "SD Requests", "Mean Hits", "SD Hits", "Mean Proportion Hits",
                       "SD Proportion Hits"},
                      {},
                      {}};
        const auto req = mean_sd(all_values("n_requests"));
        const auto hits = mean_sd(all_values("n_tracker_hits"));
        const auto prop = mean_sd(all_values("proportion_hits"));
        overall.rows.push_back({count(static_cast<double>(out_.run.metrics.size())), mean(req.mean), mean(req.sd),
                                mean(hits.mean), mean(hits.sd), proportion(prop.mean), proportion(prop.sd)});
        out_.results["overall"] = {{"N", out_.run.metrics.size()},
                                   {"n_requests", {{"mean", req.mean}, {"sd", req.sd}}},
                                   {"n_tracker_hits", {{"mean", hits.mean}, {"sd", hits.sd}}},
                                   {"proportion_hits", {{"mean", prop.mean}, {"sd", prop.sd}}}};
        out_.tables.push_back(std::move(overall));
    }

    void pairwise_row(Table& t, json& results, const char* test, const stats::PairwiseResult& r) {
        t.rows.push_back({Cell::str(test), Cell::str(r.a), Cell::str(r.b), stat(r.Z), pvalue(r.p), proportion(r.ci_low),
                          proportion(r.ci_high)});
        json j = r;
        j["test"] = test;
        results.push_back(std::move(j));
        if (r.degenerate) {
            flag(fmt::format("{} {}-{}: no variation, Z = 0, p = 1", test, r.a, r.b));
        }
    }

    void pairwise_section() {
        Table t{"pairwise",
                "Pairwise comparisons between countries for tracking hits",
                {"Test", "Country A", "Country B", "Z", "p", "CI Low", "CI High"},
                {},
                {}};
        t.notes.push_back("mann_whitney: rank-sum Z on per-visit proportion_hits; CI on the difference of means");
        t.notes.push_back("two_proportion: pooled tracker hits over requests; CI on the difference of proportions");
        json results = json::array();
        for (std::size_t i = 0; i < countries_.size(); ++i) {
            for (std::size_t j = i + 1; j < countries_.size(); ++j) {
                const auto& a = countries_[i];
                const auto& b = countries_[j];
                if (wants_first(opt_.pairwise)) {
                    const auto va = values(a, "proportion_hits");
                    const auto vb = values(b, "proportion_hits");
                    pairwise_row(t, results, "mann_whitney", stats::mann_whitney_z(va, vb, a, b));
                }
                if (wants_second(opt_.pairwise)) {
                    try {
                        const auto r = stats::two_proportion_z(
                                static_cast<std::int64_t>(total(a, "n_tracker_hits")),
                                static_cast<std::int64_t>(total(a, "n_requests")),
                                static_cast<std::int64_t>(total(b, "n_tracker_hits")),
                                static_cast<std::int64_t>(total(b, "n_requests")), a, b);
                        pairwise_row(t, results, "two_proportion", r);
                    } catch (const stats::StatsError& e) {
                        flag(fmt::format("two_proportion {}-{}: {}", a, b, e.what()));
                    }
                }
            }
        }
        if (countries_.size() < 2) {
            t.notes.push_back("insufficient groups: no country pairs");
        }
        out_.results["pairwise"] = std::move(results);
        out_.tables.push_back(std::move(t));
    }

    void correlation_section() {
        Table t{"correlation", "Correlation between third-party requests and third-party cookies",
                {"Country", "X", "Y", "Kind", "r", "n"}, {}, {}};
        json results = json::array();
        std::vector<stats::CorrelationKind> kinds;
        if (wants_first(opt_.correlation)) {
            kinds.push_back(stats::CorrelationKind::pearson);
        }
        if (wants_second(opt_.correlation)) {
            kinds.push_back(stats::CorrelationKind::spearman);
        }
        constexpr std::string_view y_field = "n_tp_cookies";
        for (const auto& c : countries_) {
            const auto y = values(c, y_field);
            for (const std::string_view x_field : {"n_tp_requests", "n_tp_request_domains"}) {
                const auto x = values(c, x_field);
                for (const auto kind : kinds) {
                    const auto kind_name = std::string(stats::to_string(kind));
                    json entry = {{"country", c}, {"x", x_field}, {"y", y_field}, {"kind", kind_name}};
                    try {
                        const auto r = kind == stats::CorrelationKind::pearson ? stats::pearson_r(x, y)
                                                                               : stats::spearman_rho(x, y);
                        t.rows.push_back({Cell::str(c), Cell::str(std::string(x_field)), Cell::str(std::string(y_field)),
                                          Cell::str(kind_name), stat(r.r), count(static_cast<double>(r.n))});
                        entry["result"] = r;
                    } catch (const stats::StatsError& e) {
                        t.rows.push_back({Cell::str(c), Cell::str(std::string(x_field)), Cell::str(std::string(y_field)),
                                          Cell::str(kind_name), Cell::str("n/a"), count(static_cast<double>(x.size()))});
                        entry["error"] = e.what();
                        flag(fmt::format("{} {} correlation of {} and {}: {}", c, kind_name, x_field, y_field, e.what()));
                    }
                    results.push_back(std::move(entry));
                }
            }
        }
        out_.results["correlation"] = std::move(results);
        out_.tables.push_back(std::move(t));
    }

    void tracker_vs_ad_section() {
        Table t{"tracker_vs_ad", "Trackers versus advertisements",
                {"Comparison", "Statistic", "Value", "p", "CI Low", "CI High"}, {}, {}};
        json results = json::object();
        double requests = 0;
        double tracker_hits = 0;
        double ad_hits = 0;
        for (const auto& m : out_.run.metrics) {
            requests += static_cast<double>(m.n_requests);
            tracker_hits += static_cast<double>(m.n_tracker_hits);
            ad_hits += static_cast<double>(m.n_ad_hits);
        }
        try {
            const auto r = stats::two_proportion_z(static_cast<std::int64_t>(tracker_hits),
                                                   static_cast<std::int64_t>(requests),
                                                   static_cast<std::int64_t>(ad_hits),
                                                   static_cast<std::int64_t>(requests), "trackers", "ads");
            t.rows.push_back({Cell::str("trackers - ads share"), Cell::str("Z"), stat(r.Z), pvalue(r.p),
                              proportion(r.ci_low), proportion(r.ci_high)});
            results["two_proportion"] = r;
            results["tracker_share"] = tracker_hits / requests;
            results["ad_share"] = ad_hits / requests;
            if (r.degenerate) {
                flag("trackers vs ads: no variation in hit shares, Z = 0, p = 1");
            }
        } catch (const stats::StatsError& e) {
            flag(std::string("trackers vs ads: ") + e.what());
        }

        const auto kw = stats::kruskal_wallis(
                {{"ads", all_values("proportion_ad_hits")}, {"trackers", all_values("proportion_hits")}});
        t.rows.push_back({Cell::str("trackers vs ads per visit"), Cell::str("H"), stat(kw.H), pvalue(kw.p),
                          Cell::str(""), Cell::str("")});
        results["kruskal_wallis"] = kw;
        if (kw.degenerate) {
            flag("trackers vs ads per visit: all proportions tied, H = 0, p = 1");
        }
        out_.tables.push_back(std::move(t));

        Table share{"hit_share", "Proportion of requests hit by either list",
                    {"N", "Mean", "SD", "SE Mean", "CI Low", "CI High"}, {}, {}};
        try {
            const auto s = stats::summary_ci(all_values("proportion_any_hits"));
            share.rows.push_back({count(static_cast<double>(s.n)), proportion(s.mean), proportion(s.sd),
                                  Cell::num(fmt::format("{:.4f}", s.se_mean), s.se_mean), proportion(s.ci_low),
                                  proportion(s.ci_high)});
            results["hit_share"] = s;
        } catch (const stats::StatsError& e) {
            share.notes.push_back(e.what());
            flag(std::string("hit share summary: ") + e.what());
        }
        out_.results["tracker_vs_ad"] = std::move(results);
        out_.tables.push_back(std::move(share));
    }

    void outlier_rows(Table& t, json& results, const std::string& group, std::span<const metrics::SiteMetrics> rows) {
        const auto top = metrics::top_outliers(rows, "n_tp_cookies", opt_.top_k);
        json list = json::array();
        for (std::size_t i = 0; i < top.size(); ++i) {
            const auto& m = top[i];
            t.rows.push_back({Cell::str(group), count(static_cast<double>(i + 1)), Cell::str(m.site_domain),
                              Cell::str(m.country), count(static_cast<double>(m.visit_id)),
                              count(static_cast<double>(m.n_tp_cookies))});
            list.push_back({{"site_domain", m.site_domain},
                            {"country", m.country},
                            {"visit_id", m.visit_id},
                            {"n_tp_cookies", m.n_tp_cookies}});
        }
        results[group] = std::move(list);
    }

    void outlier_section() {
        Table t{"outliers", fmt::format("Top {} visits by third-party cookies", opt_.top_k),
                {"Group", "Position", "Site", "Country", "Visit", "Third-party Cookies"}, {}, {}};
        json results = json::object();
        outlier_rows(t, results, "All", out_.run.metrics);
        for (const auto& c : countries_) {
            std::vector<metrics::SiteMetrics> rows;
            for (const auto* m : by_country_.at(c)) {
                rows.push_back(*m);
            }
            outlier_rows(t, results, c, rows);
        }
        out_.results["outliers"] = std::move(results);
        out_.tables.push_back(std::move(t));
    }

    const AnalyzeInputs& in_;
    const AnalyzeOptions& opt_;
    Analysis& out_;
    std::map<std::string, std::vector<const metrics::SiteMetrics*>> by_country_;
    std::vector<std::string> countries_;
};

}  // namespace

Analysis analyze(const AnalyzeInputs& inputs, const AnalyzeOptions& options) {
    if (options.top_k == 0) {
        throw std::invalid_argument("top-k must be >= 1");
    }
    Analysis out;
    out.run = metrics::compute_site_metrics(inputs.dataset, inputs.ads.set, inputs.trackers.set, inputs.psl,
                                            options.metrics);
    out.summaries = metrics::summarize_by_country(out.run.metrics);
    out.results = json::object();
    Builder(inputs, options, out).run();
    return out;
}

}  // namespace geotrack::report
