#include "geotrack/synth/generate.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <set>
#include <thread>

#include <fmt/format.h>

#include "geotrack/crawl/jsonl.hpp"
#include "geotrack/synth/random.hpp"

namespace geotrack::synth {

std::string tracker_domain(std::int64_t i) { return fmt::format("trk{}-metrics.net", i); }
std::string ad_domain(std::int64_t i) { return fmt::format("ad{}-serve.com", i); }
std::string cdn_domain(std::int64_t i) { return fmt::format("cdn{}-pool.net", i); }

std::string site_domain(const std::string& country, std::int64_t rank) {
    std::string lower = country;
    std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
    return fmt::format("{}-site{:03}.com", lower, rank);
}

namespace {

enum Salt : std::uint64_t { visit_stream = 1, cookie_stream = 2 };

struct VisitDraw {
    LedgerEntry ledger;
    std::vector<crawl::HttpRequestRecord> requests;
    std::vector<std::string> tp_domains;  // distinct, in first-use order
    std::vector<std::string> fp_cookie_domains;
};

std::string started_at(std::int64_t rank) {
    return fmt::format("2014-06-01T{:02}:{:02}:{:02}Z", (rank / 3600) % 24, (rank / 60) % 60, rank % 60);
}

VisitDraw draw_visit(const SynthConfig& config, const CountryPlan& plan, std::int64_t rank, crawl::VisitId id) {
    Rng rng(stream_seed(plan.code, static_cast<std::uint64_t>(rank), config.seed, visit_stream));
    VisitDraw d;
    auto& l = d.ledger;
    l.visit_id = id;
    l.country = plan.code;
    l.site_rank = rank;
    l.site_domain = site_domain(plan.code, rank);

    // Ads are thinned from the tracker draw so that, given n requests, the
    // tracker-minus-ad count is Binomial(n, ad_gap) and the planted gap is
    // not swamped by per-site proportion variance.
    const double ad_share = rng.beta_from_moments(plan.mean_proportion_hits - config.ad_gap, plan.sd_proportion);
    const double tracker_share = std::min(1.0, ad_share + config.ad_gap);
    l.planted_proportion_hits = tracker_share;
    l.planted_proportion_ad_hits = ad_share;

    const std::int64_t n = plan.sd_requests > 0.0
            ? std::max<std::int64_t>(1, std::llround(rng.lognormal_from_moments(plan.mean_requests, plan.sd_requests)))
            : std::max<std::int64_t>(1, std::llround(plan.mean_requests));
    const std::int64_t trackers = rng.binomial(n, tracker_share);
    const std::int64_t thinned = tracker_share > 0.0 ? rng.binomial(trackers, config.ad_gap / tracker_share) : 0;
    const std::int64_t ads = std::min(trackers - thinned, n - trackers);
    const std::int64_t rest = n - trackers - ads;
    const std::int64_t document = rest > 0 ? 1 : 0;
    const std::int64_t cdn = rng.binomial(rest - document, config.third_party_share);
    const std::int64_t fp = rest - cdn;

    const std::string top = "https://" + l.site_domain + "/";
    const std::string ts = started_at(rank);
    std::set<std::string> seen;
    std::int64_t k = 0;
    auto add = [&](std::string url, const std::string* tp_domain) {
        d.requests.push_back({id, std::move(url), top, k == 0 ? std::nullopt : std::optional(top), ts});
        if (tp_domain && seen.insert(*tp_domain).second) {
            d.tp_domains.push_back(*tp_domain);
        }
        ++k;
    };
    if (document) {
        add(top, nullptr);
    }
    for (std::int64_t i = document; i < fp; ++i) {
        add(fmt::format("https://static.{}/asset/{}.js", l.site_domain, k), nullptr);
    }
    for (std::int64_t i = 0; i < cdn; ++i) {
        const auto dom = cdn_domain(static_cast<std::int64_t>(rng.below(config.cdn_domain_pool)));
        add(fmt::format("https://{}/lib/{}.js", dom, k), &dom);
    }
    for (std::int64_t i = 0; i < trackers; ++i) {
        const auto dom = tracker_domain(static_cast<std::int64_t>(rng.below(config.tracker_domain_pool)));
        add(fmt::format("https://{}/collect?v={}&r={}", dom, id, k), &dom);
    }
    for (std::int64_t i = 0; i < ads; ++i) {
        const auto dom = ad_domain(static_cast<std::int64_t>(rng.below(config.ad_domain_pool)));
        add(fmt::format("https://{}/banner/{}.gif", dom, k), &dom);
    }

    l.n_requests = n;
    l.n_fp_requests = fp;
    l.n_tp_requests = cdn + trackers + ads;
    l.n_tp_request_domains = static_cast<std::int64_t>(d.tp_domains.size());
    l.n_tracker_hits = trackers;
    l.n_ad_hits = ads;
    l.n_fp_cookies = rng.binomial(4, 0.5);
    return d;
}

double mean_of(const std::vector<double>& v) { return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size()); }

// Third-party cookie counts whose Pearson r with `x` is close to rho: the
// partner series is a permutation of x, residualized against x and scaled
// to x's spread, so it has x's marginal shape and zero sample correlation.
std::vector<std::int64_t> plant_cookies(const std::vector<double>& x, double rho, double intensity, Rng& rng) {
    const std::size_t n = x.size();
    std::vector<std::int64_t> out(n);
    const double mx = mean_of(x);
    double sxx = 0.0;
    for (double v : x) {
        sxx += (v - mx) * (v - mx);
    }
    if (n < 3 || sxx == 0.0) {
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = std::llround(intensity * x[i]);
        }
        return out;
    }
    std::vector<double> y = x;
    for (std::size_t i = n - 1; i > 0; --i) {
        std::swap(y[i], y[rng.below(i + 1)]);
    }
    const double my = mean_of(y);
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
    }
    const double beta = sxy / sxx;
    double srr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        y[i] = (y[i] - my) - beta * (x[i] - mx);
        srr += y[i] * y[i];
    }
    const double scale = srr > 0.0 ? std::sqrt(sxx / srr) : 0.0;
    const double noise = std::sqrt(std::max(0.0, 1.0 - rho * rho));
    for (std::size_t i = 0; i < n; ++i) {
        const double partner = mx + y[i] * scale;
        const double combined = rho * x[i] + noise * partner + (1.0 - rho - noise) * mx;
        out[i] = std::max<std::int64_t>(0, std::llround(intensity * combined));
    }
    return out;
}

}  // namespace

SynthOutput generate(const SynthConfig& config, unsigned threads) {
    validate(config);

    struct Slot {
        const CountryPlan* plan;
        std::int64_t rank;
    };
    std::vector<Slot> slots;
    for (const auto& plan : config.countries) {
        for (std::int64_t r = 1; r <= plan.n_sites; ++r) {
            slots.push_back({&plan, r});
        }
    }

    std::vector<VisitDraw> draws(slots.size());
    const std::size_t workers = std::clamp<std::size_t>(threads, 1, slots.size());
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < slots.size(); i += workers) {
                    draws[i] = draw_visit(config, *slots[i].plan, slots[i].rank, static_cast<crawl::VisitId>(i + 1));
                }
            });
        }
    }

    // Cookies need each country's whole third-party request series.
    std::size_t begin = 0;
    for (const auto& plan : config.countries) {
        const auto count = static_cast<std::size_t>(plan.n_sites);
        std::vector<double> x;
        for (std::size_t i = begin; i < begin + count; ++i) {
            x.push_back(static_cast<double>(draws[i].ledger.n_tp_requests));
        }
        Rng rng(stream_seed(plan.code, 0, config.seed, cookie_stream));
        const auto tp = plant_cookies(x, plan.cookie_correlation.value_or(config.cookie_correlation),
                                      config.cookie_intensity, rng);
        for (std::size_t i = 0; i < count; ++i) {
            draws[begin + i].ledger.n_tp_cookies = tp[i];
        }
        begin += count;
    }

    std::vector<crawl::VisitRecord> visits;
    std::vector<crawl::HttpRequestRecord> requests;
    std::vector<crawl::CookieRecord> cookies;
    std::vector<LedgerEntry> ledger;
    for (auto& d : draws) {
        const auto& l = d.ledger;
        const std::string ts = started_at(l.site_rank);
        visits.push_back({l.visit_id, l.country, l.site_rank, l.site_domain, ts});
        for (std::int64_t c = 0; c < l.n_fp_cookies; ++c) {
            cookies.push_back({l.visit_id, "." + l.site_domain, fmt::format("fp{}", c), ts});
        }
        for (std::int64_t c = 0; c < l.n_tp_cookies; ++c) {
            const std::string dom = d.tp_domains.empty()
                    ? tracker_domain(c % config.tracker_domain_pool)
                    : d.tp_domains[static_cast<std::size_t>(c) % d.tp_domains.size()];
            cookies.push_back({l.visit_id, "." + dom, fmt::format("tp{}", c), ts});
        }
        std::move(d.requests.begin(), d.requests.end(), std::back_inserter(requests));
        ledger.push_back(l);
    }
    SynthOutput out{crawl::CrawlDataset(std::move(visits), std::move(requests), std::move(cookies),
                                        fmt::format("synth:seed={}", config.seed)),
                    std::move(ledger), {}, {}};

    for (std::int64_t i = 0; i < config.tracker_domain_pool; ++i) {
        out.tracker_list.push_back("||" + tracker_domain(i) + "^");
    }
    for (std::int64_t i = 0; i < config.ad_domain_pool; ++i) {
        out.ad_list.push_back("||" + ad_domain(i) + "^");
    }
    return out;
}

void to_json(nlohmann::json& j, const LedgerEntry& e) {
    j = {{"visit_id", e.visit_id},
         {"country", e.country},
         {"site_rank", e.site_rank},
         {"site_domain", e.site_domain},
         {"planted_proportion_hits", e.planted_proportion_hits},
         {"planted_proportion_ad_hits", e.planted_proportion_ad_hits},
         {"n_requests", e.n_requests},
         {"n_fp_requests", e.n_fp_requests},
         {"n_tp_requests", e.n_tp_requests},
         {"n_tp_request_domains", e.n_tp_request_domains},
         {"n_tracker_hits", e.n_tracker_hits},
         {"n_ad_hits", e.n_ad_hits},
         {"n_fp_cookies", e.n_fp_cookies},
         {"n_tp_cookies", e.n_tp_cookies}};
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& body) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write " + path.string());
    }
    out << body;
}

std::string list_file(const char* title, const std::vector<std::string>& rules) {
    std::string body = fmt::format("[Adblock Plus 2.0]\n! Title: {}\n! Generated alongside the synthetic domain pool\n", title);
    for (const auto& r : rules) {
        body += r + '\n';
    }
    return body;
}

}  // namespace

void write_output(const SynthOutput& output, const SynthConfig& config, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    crawl::export_jsonl(output.dataset, dir / "crawl.jsonl");
    write_file(dir / "ledger.json", nlohmann::json{{"visits", output.ledger}}.dump(1) + '\n');
    write_file(dir / "trackers.txt", list_file("synthetic trackers", output.tracker_list));
    write_file(dir / "ads.txt", list_file("synthetic ads", output.ad_list));
    write_file(dir / "config.json", nlohmann::json(config).dump(2) + '\n');
}

}  // namespace geotrack::synth
