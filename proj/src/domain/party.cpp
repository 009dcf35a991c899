#include "geotrack/domain/party.hpp"

#include "geotrack/url.hpp"

namespace geotrack::domain {

std::string_view to_string(PartyMode mode) {
    return mode == PartyMode::paper_containment ? "paper" : "psl";
}

std::string_view to_string(Party party) {
    return party == Party::first_party ? "first_party" : "third_party";
}

std::optional<PartyMode> party_mode_from_string(std::string_view name) {
    if (name == "paper" || name == "paper_containment") {
        return PartyMode::paper_containment;
    }
    if (name == "psl" || name == "registrable_domain") {
        return PartyMode::registrable_domain;
    }
    return std::nullopt;
}

std::string record_host(std::string_view host_or_url) {
    if (host_or_url.find("://") != std::string_view::npos) {
        auto url = parse_url(host_or_url);
        if (!url) {
            throw MalformedHostname(host_or_url);
        }
        return normalize_hostname(url->host);
    }
    if (!host_or_url.empty() && host_or_url.front() == '.') {
        host_or_url.remove_prefix(1);
    }
    return normalize_hostname(host_or_url);
}

std::string containment_base(std::string_view site_host) {
    if (site_host.starts_with("www.") && site_host.size() > 4) {
        return std::string(site_host.substr(4));
    }
    return std::string(site_host);
}

namespace {

bool label_suffix(std::string_view host, std::string_view base) {
    if (host.size() == base.size()) {
        return host == base;
    }
    return host.size() > base.size() && host.ends_with(base) && host[host.size() - base.size() - 1] == '.';
}

}  // namespace

PartyLabel classify_party(std::string_view site_domain, std::string_view record_host_or_url, PartyMode mode,
                          const PublicSuffixTable& table) {
    const std::string site = record_host(site_domain);
    const std::string host = record_host(record_host_or_url);

    auto label = [mode](bool first) { return PartyLabel{first ? Party::first_party : Party::third_party, mode}; };

    if (is_ip_literal(host) || is_ip_literal(site)) {
        return label(host == site);
    }
    if (mode == PartyMode::paper_containment) {
        return label(label_suffix(host, containment_base(site)));
    }
    return label(registrable_domain(host, table).domain == registrable_domain(site, table).domain);
}

}  // namespace geotrack::domain
