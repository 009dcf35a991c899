#pragma once

#include <cstddef>
#include <filesystem>
#include <istream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_set>

namespace geotrack::domain {

class MalformedHostname : public std::invalid_argument {
public:
    explicit MalformedHostname(std::string_view host)
        : std::invalid_argument("malformed_hostname: '" + std::string(host) + "'"), host_(host) {}

    const std::string& host() const { return host_; }

private:
    std::string host_;
};

// Rules of a public suffix list (normal, `*.` wildcard and `!` exception
// entries). Immutable once loaded; lookups are case-insensitive.
class PublicSuffixTable {
public:
    static PublicSuffixTable parse(std::istream& in);
    // Throws std::runtime_error if the file cannot be read.
    static PublicSuffixTable load(const std::filesystem::path& path);

    // Public suffix of a normalized (lowercase, no trailing dot) hostname.
    // Unlisted TLDs fall back to the implicit `*` rule.
    std::string_view public_suffix(std::string_view host) const;

    std::size_t size() const { return normal_.size() + wildcard_.size() + exception_.size(); }

private:
    void add_rule(std::string_view rule);

    std::unordered_set<std::string> normal_;
    std::unordered_set<std::string> wildcard_;   // stored without the "*." prefix
    std::unordered_set<std::string> exception_;  // stored without the "!"
};

struct RegistrableDomain {
    std::string domain;
    bool registrable = true;  // false for IP literals and bare public suffixes

    friend bool operator==(const RegistrableDomain&, const RegistrableDomain&) = default;
};

// Lowercases, drops a single trailing dot and validates. Throws MalformedHostname.
std::string normalize_hostname(std::string_view hostname);

// eTLD+1 of `hostname`. IP literals and public suffixes come back unchanged
// with registrable = false. Throws MalformedHostname.
RegistrableDomain registrable_domain(std::string_view hostname, const PublicSuffixTable& table);

}  // namespace geotrack::domain
