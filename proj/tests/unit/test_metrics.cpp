#include <gtest/gtest.h>

#include <random>
#include <sstream>

#include "geotrack/crawl/jsonl.hpp"
#include "geotrack/metrics/country_summary.hpp"
#include "geotrack/metrics/export.hpp"
#include "geotrack/metrics/site_metrics.hpp"
#include "support/paths.hpp"

using namespace geotrack;
using namespace geotrack::metrics;
using geotrack::testing::fixture;

namespace {

struct Inputs {
    crawl::CrawlDataset dataset = crawl::ingest_jsonl(fixture("mini_crawl.jsonl"));
    filter::CompiledFilterSet ads = filter::load_filter_set(fixture("mini_ads.txt"), filter::ListKind::ads);
    filter::CompiledFilterSet trackers =
        filter::load_filter_set(fixture("mini_trackers.txt"), filter::ListKind::trackers);
    domain::PublicSuffixTable psl = domain::PublicSuffixTable::load(geotrack::testing::data_file("public_suffix_list.dat"));
};

const Inputs& mini() {
    static const Inputs in;
    return in;
}

MetricsRun run(const crawl::CrawlDataset& ds, const MetricsOptions& o = {}) {
    return compute_site_metrics(ds, mini().ads.set, mini().trackers.set, mini().psl, o);
}

crawl::CrawlDataset from_text(const std::string& text) {
    std::istringstream in(text);
    return crawl::ingest_jsonl(in, "test");
}

SiteMetrics with(std::string country, std::string site, crawl::VisitId id, std::int64_t cookies, double prop = 0) {
    SiteMetrics m;
    m.visit_id = id;
    m.country = std::move(country);
    m.site_domain = std::move(site);
    m.site_rank = id;
    m.n_tp_cookies = cookies;
    m.proportion_hits = prop;
    return m;
}

// Random visits over a handful of hosts, for property checks.
crawl::CrawlDataset random_dataset(std::uint64_t seed, int visits) {
    static const char* hosts[] = {"www.zanox.com",  "ib.adnxs.com", "cdn.site.com", "site.com",
                                  "b.scorecardresearch.com", "x.doubleclick.net", "pixel.adnxs.com"};
    static const char* paths[] = {"/", "/pixel.gif?x=1", "/banner/a/ad/", "/main.js", "/p"};
    std::mt19937_64 rng(seed);
    std::vector<crawl::VisitRecord> v;
    std::vector<crawl::HttpRequestRecord> r;
    std::vector<crawl::CookieRecord> c;
    for (int i = 1; i <= visits; ++i) {
        v.push_back({i, i % 2 ? "US" : "JP", i, i % 3 ? "site.com" : "nikkei.com", ""});
        const int n = static_cast<int>(rng() % 12);
        for (int k = 0; k < n; ++k) {
            r.push_back({i, std::string("https://") + hosts[rng() % 7] + paths[rng() % 5], "https://www.site.com/",
                         std::nullopt, ""});
        }
        for (int k = 0; k < static_cast<int>(rng() % 5); ++k) {
            c.push_back({i, std::string(".") + hosts[rng() % 7], "id", ""});
        }
    }
    return crawl::CrawlDataset(std::move(v), std::move(r), std::move(c), "random");
}

}  // namespace

TEST(SiteMetrics, AmazonVisit) {
    const auto out = run(mini().dataset);
    const auto& m = out.metrics.front();
    EXPECT_EQ(m.site_domain, "amazon.de");
    EXPECT_EQ(m.n_requests, 2);
    EXPECT_EQ(m.n_fp_requests, 1);
    EXPECT_EQ(m.n_tp_requests, 1);
    EXPECT_EQ(m.n_tracker_hits, 1);
    EXPECT_DOUBLE_EQ(m.proportion_hits, 0.5);
}

TEST(SiteMetrics, MatchesHandTallyInEveryConfiguration) {
    const auto tally = nlohmann::json::parse(geotrack::testing::slurp(fixture("mini_crawl.tally.json")));
    const auto columns = tally.at("columns").get<std::vector<std::string>>();
    for (auto mode : {domain::PartyMode::paper_containment, domain::PartyMode::registrable_domain}) {
        for (unsigned threads : {1u, 3u}) {
            const auto out = run(mini().dataset, {mode, DomainGranularity::registrable, threads});
            ASSERT_EQ(out.metrics.size(), tally.at("rows").size());
            for (std::size_t i = 0; i < out.metrics.size(); ++i) {
                const auto& row = tally.at("rows")[i];
                const auto& m = out.metrics[i];
                EXPECT_EQ(m.visit_id, row[0].get<int>());
                EXPECT_EQ(m.country, row[1].get<std::string>());
                EXPECT_EQ(m.site_domain, row[2].get<std::string>());
                for (std::size_t c = 3; c < columns.size(); ++c) {
                    EXPECT_EQ(field_value(m, columns[c]), row[c].get<double>())
                        << m.site_domain << " " << columns[c] << " mode " << domain::to_string(mode);
                }
                EXPECT_DOUBLE_EQ(m.proportion_hits, row[7].get<double>() / row[3].get<double>());
            }
            EXPECT_EQ(out.diagnostics, Diagnostics{});
        }
    }
}

TEST(SiteMetrics, CountriesMatchTallyTotals) {
    const auto tally = nlohmann::json::parse(geotrack::testing::slurp(fixture("mini_crawl.tally.json")));
    const auto out = run(mini().dataset);
    std::map<std::string, std::array<std::int64_t, 3>> got;
    for (const auto& m : out.metrics) {
        auto& t = got[m.country];
        t[0] += 1;
        t[1] += m.n_requests;
        t[2] += m.n_cookies;
    }
    for (const auto& [country, expected] : tally.at("countries").items()) {
        EXPECT_EQ(got[country][0], expected[0].get<std::int64_t>()) << country;
        EXPECT_EQ(got[country][1], expected[1].get<std::int64_t>()) << country;
        EXPECT_EQ(got[country][2], expected[2].get<std::int64_t>()) << country;
    }
}

TEST(SiteMetrics, ConservationOnRandomData) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        const auto ds = random_dataset(seed, 60);
        for (auto mode : {domain::PartyMode::paper_containment, domain::PartyMode::registrable_domain}) {
            for (auto g : {DomainGranularity::host, DomainGranularity::registrable}) {
                const auto out = run(ds, {mode, g, 1});
                for (std::size_t i = 0; i < out.metrics.size(); ++i) {
                    const auto& m = out.metrics[i];
                    EXPECT_EQ(m.n_requests, static_cast<std::int64_t>(ds.requests_of(i).size()));
                    EXPECT_EQ(m.n_fp_requests + m.n_tp_requests + m.n_unclassified_requests, m.n_requests);
                    EXPECT_EQ(m.n_fp_cookies + m.n_tp_cookies, m.n_cookies);
                    EXPECT_EQ(m.n_cookies + m.n_unclassified_cookies,
                              static_cast<std::int64_t>(ds.cookies_of(i).size()));
                    EXPECT_LE(m.n_tp_request_domains, m.n_tp_requests);
                    EXPECT_LE(std::max(m.n_ad_hits, m.n_tracker_hits), m.n_any_hits);
                    EXPECT_LE(m.n_any_hits, m.n_ad_hits + m.n_tracker_hits);
                    EXPECT_LE(m.n_any_hits, m.n_requests);
                    EXPECT_EQ(m.empty, m.n_requests == 0);
                    if (m.n_requests > 0) {
                        EXPECT_DOUBLE_EQ(m.proportion_hits,
                                         static_cast<double>(m.n_tracker_hits) / static_cast<double>(m.n_requests));
                    } else {
                        EXPECT_EQ(m.proportion_hits, 0.0);
                    }
                }
            }
        }
    }
}

TEST(SiteMetrics, HostGranularityNeverCountsFewerDomains) {
    const auto ds = random_dataset(9, 80);
    const auto host = run(ds, {domain::PartyMode::registrable_domain, DomainGranularity::host, 1});
    const auto reg = run(ds, {domain::PartyMode::registrable_domain, DomainGranularity::registrable, 1});
    bool some_differ = false;
    for (std::size_t i = 0; i < host.metrics.size(); ++i) {
        EXPECT_GE(host.metrics[i].n_tp_request_domains, reg.metrics[i].n_tp_request_domains);
        some_differ = some_differ || host.metrics[i].n_tp_request_domains != reg.metrics[i].n_tp_request_domains;
    }
    EXPECT_TRUE(some_differ);  // ib.adnxs.com and pixel.adnxs.com share a registrable domain
}

TEST(SiteMetrics, MoreRulesNeverFewerHits) {
    const auto ds = random_dataset(3, 60);
    auto lines = std::vector<std::string>{"||zanox.com^"};
    const auto small = filter::compile_filter_set(lines, filter::ListKind::trackers);
    lines.push_back("/main.js");
    const auto large = filter::compile_filter_set(lines, filter::ListKind::trackers);
    const auto a = compute_site_metrics(ds, mini().ads.set, small.set, mini().psl);
    const auto b = compute_site_metrics(ds, mini().ads.set, large.set, mini().psl);
    for (std::size_t i = 0; i < a.metrics.size(); ++i) {
        EXPECT_LE(a.metrics[i].n_tracker_hits, b.metrics[i].n_tracker_hits);
    }
}

TEST(SiteMetrics, ThreadCountDoesNotChangeOutput) {
    const auto ds = random_dataset(4, 200);
    const auto one = run(ds, {domain::PartyMode::registrable_domain, DomainGranularity::registrable, 1});
    for (unsigned t : {2u, 4u, 7u}) {
        const auto many = run(ds, {domain::PartyMode::registrable_domain, DomainGranularity::registrable, t});
        EXPECT_EQ(one.metrics, many.metrics);
        EXPECT_EQ(one.diagnostics, many.diagnostics);
    }
}

TEST(SiteMetrics, DiagnosticsForUnusableRecords) {
    const auto ds = from_text(R"({"kind":"visit","visit_id":1,"country":"US","site_rank":1,"site_domain":"a.com"}
{"kind":"visit","visit_id":2,"country":"US","site_rank":2,"site_domain":"b.com"}
{"kind":"request","visit_id":1,"url":"https://www.zanox.com/x","top_url":"not a url"}
{"kind":"request","visit_id":1,"url":"https://a.com/"}
{"kind":"cookie","visit_id":1,"domain":"bad host!"}
{"kind":"cookie","visit_id":1,"domain":".a.com"})");
    const auto out = run(ds);
    EXPECT_EQ(out.diagnostics.unclassified_cookies, 1u);
    EXPECT_EQ(out.diagnostics.empty_visits, 1u);
    EXPECT_EQ(out.diagnostics.fallback_source_hosts, 2u);
    const auto& m = out.metrics[0];
    EXPECT_EQ(m.n_unclassified_cookies, 1);
    EXPECT_EQ(m.n_cookies, 1);
    EXPECT_EQ(m.n_tp_requests, 1);
    EXPECT_EQ(m.n_tracker_hits, 1);
    EXPECT_TRUE(out.metrics[1].empty);
    const nlohmann::json j = out.diagnostics;
    EXPECT_EQ(j.at("empty_visits"), 1);
}

TEST(Fields, NamesAndValues) {
    const auto fields = numeric_fields();
    EXPECT_EQ(fields.front(), "n_requests");
    EXPECT_EQ(fields.back(), "proportion_any_hits");
    SiteMetrics m;
    m.n_tp_cookies = 7;
    EXPECT_EQ(field_value(m, "n_tp_cookies"), 7.0);
    EXPECT_FALSE(field_value(m, "site_domain"));
    EXPECT_EQ(granularity_from_string("host"), DomainGranularity::host);
    EXPECT_FALSE(granularity_from_string("etld"));
}

TEST(Summary, TwoVisitsAndSingleVisit) {
    const std::vector<SiteMetrics> ms{with("US", "a.com", 1, 0, 0.04), with("US", "b.com", 2, 0, 0.08),
                                      with("JP", "c.jp", 3, 0, 0.05)};
    const auto s = summarize_by_country(ms);
    ASSERT_EQ(s.size(), 2u);
    EXPECT_EQ(s[0].country, "JP");
    EXPECT_TRUE(s[0].single_visit);
    EXPECT_EQ(s[0].field("proportion_hits").sd, 0.0);
    EXPECT_EQ(s[1].n_visits, 2u);
    EXPECT_FALSE(s[1].single_visit);
    EXPECT_NEAR(s[1].field("proportion_hits").mean, 0.06, 1e-15);
    EXPECT_NEAR(s[1].field("proportion_hits").sd, 0.0283, 5e-5);
    EXPECT_THROW(s[1].field("nope"), BadKey);
    EXPECT_THROW(summarize_by_country({}), std::invalid_argument);
}

TEST(Outliers, LargestFirstWithStableTies) {
    const std::vector<SiteMetrics> ms{with("US", "z.com", 1, 10), with("US", "nydailynews.com", 2, 6546),
                                      with("DE", "b.de", 3, 10), with("DE", "a.de", 4, 10), with("JP", "c.jp", 5, 3)};
    const auto top = top_outliers(ms, "n_tp_cookies", 4);
    ASSERT_EQ(top.size(), 4u);
    EXPECT_EQ(top[0].site_domain, "nydailynews.com");
    EXPECT_EQ(top[1].site_domain, "a.de");
    EXPECT_EQ(top[2].site_domain, "b.de");
    EXPECT_EQ(top[3].site_domain, "z.com");
    EXPECT_EQ(top_outliers(ms, "n_tp_cookies", 50).size(), 5u);
    EXPECT_THROW(top_outliers(ms, "bogus", 3), BadKey);
    EXPECT_THROW(top_outliers(ms, "n_tp_cookies", 0), std::invalid_argument);
}

TEST(Export, CsvHeaderAndRows) {
    const auto out = run(mini().dataset);
    std::ostringstream csv;
    write_metrics_csv(csv, out.metrics);
    std::istringstream in(csv.str());
    std::string header;
    std::getline(in, header);
    EXPECT_EQ(header.rfind("visit_id,country,site_rank,site_domain,n_requests,", 0), 0u);
    EXPECT_EQ(header.substr(header.size() - 6), ",empty");
    std::string first;
    std::getline(in, first);
    EXPECT_EQ(first.rfind("1,DE,1,amazon.de,2,1,1,0,1,", 0), 0u);
    const nlohmann::json j = out.metrics.front();
    EXPECT_EQ(j.at("n_tracker_hits"), 1);
    EXPECT_EQ(j.at("proportion_hits"), 0.5);
}
