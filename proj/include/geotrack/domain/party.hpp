#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "geotrack/domain/public_suffix.hpp"

namespace geotrack::domain {

enum class PartyMode : std::uint8_t {
    // Record host ends, label-aligned, with the site's domain (leading
    // `www.` dropped). The containment rule from the crawl methodology.
    paper_containment,
    // eTLD+1 equality under the public suffix list.
    registrable_domain,
};

enum class Party : std::uint8_t { first_party, third_party };

struct PartyLabel {
    Party value = Party::third_party;
    PartyMode mode = PartyMode::registrable_domain;

    bool is_third_party() const { return value == Party::third_party; }
    friend bool operator==(const PartyLabel&, const PartyLabel&) = default;
};

std::string_view to_string(PartyMode mode);
std::string_view to_string(Party party);
std::optional<PartyMode> party_mode_from_string(std::string_view name);

// Host of a record: full URLs are reduced to their host, cookie domains lose
// a leading '.'. Result is normalized. Throws MalformedHostname.
std::string record_host(std::string_view host_or_url);

// Base domain used by containment: the host minus a leading "www." label.
std::string containment_base(std::string_view site_host);

// Throws MalformedHostname when either side has no usable host.
PartyLabel classify_party(std::string_view site_domain, std::string_view record_host_or_url, PartyMode mode,
                          const PublicSuffixTable& table);

}  // namespace geotrack::domain
