#include "geotrack/metrics/site_metrics.hpp"

#include <algorithm>
#include <array>
#include <set>
#include <thread>

#include "geotrack/url.hpp"

namespace geotrack::metrics {

std::string_view to_string(DomainGranularity g) { return g == DomainGranularity::host ? "host" : "registrable"; }

std::optional<DomainGranularity> granularity_from_string(std::string_view name) {
    if (name == "host") {
        return DomainGranularity::host;
    }
    if (name == "registrable") {
        return DomainGranularity::registrable;
    }
    return std::nullopt;
}

Diagnostics& Diagnostics::operator+=(const Diagnostics& o) {
    unclassified_requests += o.unclassified_requests;
    unclassified_cookies += o.unclassified_cookies;
    empty_visits += o.empty_visits;
    fallback_source_hosts += o.fallback_source_hosts;
    return *this;
}

namespace {

struct VisitContext {
    const crawl::CrawlDataset& dataset;
    const filter::FilterSet& ads;
    const filter::FilterSet& trackers;
    const domain::PublicSuffixTable& table;
    const MetricsOptions& options;
};

std::string source_host(const crawl::VisitRecord& visit, const crawl::HttpRequestRecord& req, Diagnostics& diag) {
    if (auto top = parse_url(req.top_url); top && !top->host.empty()) {
        return top->host;
    }
    ++diag.fallback_source_hosts;
    return visit.site_domain;
}

std::string domain_key(const std::string& host, const VisitContext& ctx) {
    if (ctx.options.granularity == DomainGranularity::host) {
        return host;
    }
    return domain::registrable_domain(host, ctx.table).domain;
}

SiteMetrics visit_metrics(std::size_t index, const VisitContext& ctx, Diagnostics& diag) {
    const auto& visit = ctx.dataset.visits()[index];
    SiteMetrics m;
    m.visit_id = visit.visit_id;
    m.country = visit.country;
    m.site_rank = visit.site_rank;
    m.site_domain = visit.site_domain;

    std::set<std::string> tp_domains;
    for (auto i : ctx.dataset.requests_of(index)) {
        const auto& req = ctx.dataset.requests()[i];
        ++m.n_requests;
        bool third_party = true;
        try {
            const auto label = domain::classify_party(visit.site_domain, req.url, ctx.options.mode, ctx.table);
            third_party = label.is_third_party();
            if (third_party) {
                ++m.n_tp_requests;
                tp_domains.insert(domain_key(domain::record_host(req.url), ctx));
            } else {
                ++m.n_fp_requests;
            }
        } catch (const domain::MalformedHostname&) {
            ++m.n_unclassified_requests;
            ++diag.unclassified_requests;
        }
        try {
            const filter::MatchQuery query(req.url, source_host(visit, req, diag), third_party);
            const bool ad = ctx.ads.match(query).outcome == filter::MatchOutcome::hit;
            const bool tracker = ctx.trackers.match(query).outcome == filter::MatchOutcome::hit;
            m.n_ad_hits += ad;
            m.n_tracker_hits += tracker;
            m.n_any_hits += ad || tracker;
        } catch (const filter::InvalidQuery&) {
            // Dataset construction already rejected unparseable URLs.
        }
    }
    m.n_tp_request_domains = static_cast<std::int64_t>(tp_domains.size());

    for (auto i : ctx.dataset.cookies_of(index)) {
        try {
            const auto label =
                    domain::classify_party(visit.site_domain, ctx.dataset.cookies()[i].domain, ctx.options.mode, ctx.table);
            ++m.n_cookies;
            ++(label.is_third_party() ? m.n_tp_cookies : m.n_fp_cookies);
        } catch (const domain::MalformedHostname&) {
            ++m.n_unclassified_cookies;
            ++diag.unclassified_cookies;
        }
    }

    if (m.n_requests == 0) {
        m.empty = true;
        ++diag.empty_visits;
    } else {
        m.proportion_hits = static_cast<double>(m.n_tracker_hits) / static_cast<double>(m.n_requests);
        m.proportion_ad_hits = static_cast<double>(m.n_ad_hits) / static_cast<double>(m.n_requests);
        m.proportion_any_hits = static_cast<double>(m.n_any_hits) / static_cast<double>(m.n_requests);
    }
    return m;
}

}  // namespace

MetricsRun compute_site_metrics(const crawl::CrawlDataset& dataset, const filter::FilterSet& ads,
                                const filter::FilterSet& trackers, const domain::PublicSuffixTable& table,
                                const MetricsOptions& options) {
    const VisitContext ctx{dataset, ads, trackers, table, options};
    const std::size_t n = dataset.visits().size();
    MetricsRun run;
    run.metrics.resize(n);
    std::vector<Diagnostics> diags(n);

    const std::size_t workers = std::clamp<std::size_t>(options.threads, 1, std::max<std::size_t>(n, 1));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) {
            run.metrics[i] = visit_metrics(i, ctx, diags[i]);
        }
    } else {
        // Strided partition; every slot is written by exactly one worker.
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&, w] {
                for (std::size_t i = w; i < n; i += workers) {
                    run.metrics[i] = visit_metrics(i, ctx, diags[i]);
                }
            });
        }
    }
    for (const auto& d : diags) {
        run.diagnostics += d;
    }
    return run;
}

namespace {

using Getter = double (*)(const SiteMetrics&);

struct Field {
    std::string_view name;
    Getter get;
};

#define GEOTRACK_FIELD(name) Field{#name, [](const SiteMetrics& m) { return static_cast<double>(m.name); }}

constexpr std::array fields{
        GEOTRACK_FIELD(n_requests),     GEOTRACK_FIELD(n_fp_requests),          GEOTRACK_FIELD(n_tp_requests),
        GEOTRACK_FIELD(n_unclassified_requests), GEOTRACK_FIELD(n_tp_request_domains), GEOTRACK_FIELD(n_cookies),
        GEOTRACK_FIELD(n_fp_cookies),   GEOTRACK_FIELD(n_tp_cookies),           GEOTRACK_FIELD(n_unclassified_cookies),
        GEOTRACK_FIELD(n_ad_hits),      GEOTRACK_FIELD(n_tracker_hits),         GEOTRACK_FIELD(n_any_hits),
        GEOTRACK_FIELD(proportion_hits), GEOTRACK_FIELD(proportion_ad_hits),   GEOTRACK_FIELD(proportion_any_hits),
};

#undef GEOTRACK_FIELD

constexpr auto field_names = [] {
    std::array<std::string_view, fields.size()> names{};
    for (std::size_t i = 0; i < fields.size(); ++i) {
        names[i] = fields[i].name;
    }
    return names;
}();

}  // namespace

std::span<const std::string_view> numeric_fields() { return field_names; }

std::optional<double> field_value(const SiteMetrics& m, std::string_view key) {
    for (const auto& f : fields) {
        if (f.name == key) {
            return f.get(m);
        }
    }
    return std::nullopt;
}

}  // namespace geotrack::metrics
