#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>

namespace geotrack {

// A parsed absolute URL in canonical form: scheme and host lowercased, the
// fragment dropped, the query kept, percent-encoding untouched. An empty path
// is normalized to "/".
struct Url {
    std::string scheme;
    std::string host;       // lowercase; IPv6 literals keep their brackets
    std::string port;       // empty when absent
    std::string path;       // starts with '/'
    std::string query;      // without the leading '?'; empty when absent
    std::string canonical;  // the string filter patterns are matched against
    std::size_t host_begin = 0;  // host span inside `canonical`
    std::size_t host_end = 0;
};

// Returns nullopt for anything that is not a hierarchical absolute URL with a
// non-empty, syntactically plausible host.
std::optional<Url> parse_url(std::string_view text);

std::string to_lower_ascii(std::string_view s);

bool is_ipv4_literal(std::string_view host);
bool is_ip_literal(std::string_view host);

// DNS-ish hostname check: non-empty labels of at most 63 bytes, total at most
// 253, bytes limited to ASCII alphanumerics, '-', '_' and non-ASCII (UTF-8).
// A single trailing dot is tolerated.
bool is_valid_hostname(std::string_view host);

// Punycode-encodes one UTF-8 label (RFC 3492) and prefixes it with "xn--".
// ASCII-only labels are returned unchanged; invalid UTF-8 yields nullopt.
std::optional<std::string> label_to_ascii(std::string_view utf8_label);

}  // namespace geotrack
