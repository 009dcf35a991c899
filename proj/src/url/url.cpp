#include "geotrack/url.hpp"

#include <algorithm>
#include <cctype>

namespace geotrack {

namespace {

bool is_scheme_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '+' || c == '-' || c == '.';
}

bool is_host_byte(unsigned char c) {
    return std::isalnum(c) || c == '-' || c == '_' || c == '.' || c >= 0x80;
}

}  // namespace

std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return static_cast<char>(std::tolower(c));
    });
    return out;
}

bool is_ipv4_literal(std::string_view host) {
    int parts = 0;
    std::size_t i = 0;
    while (i <= host.size()) {
        std::size_t j = i;
        int value = 0;
        while (j < host.size() && std::isdigit(static_cast<unsigned char>(host[j]))) {
            value = value * 10 + (host[j] - '0');
            if (value > 255 || j - i >= 3) {
                return false;
            }
            ++j;
        }
        if (j == i) {
            return false;
        }
        ++parts;
        if (j == host.size()) {
            break;
        }
        if (host[j] != '.') {
            return false;
        }
        i = j + 1;
    }
    return parts == 4;
}

bool is_ip_literal(std::string_view host) {
    if (is_ipv4_literal(host)) {
        return true;
    }
    if (host.size() >= 2 && host.front() == '[' && host.back() == ']') {
        host = host.substr(1, host.size() - 2);
    }
    if (host.find(':') == std::string_view::npos) {
        return false;
    }
    return std::all_of(host.begin(), host.end(), [](unsigned char c) {
        return std::isxdigit(c) || c == ':' || c == '.';
    });
}

bool is_valid_hostname(std::string_view host) {
    if (!host.empty() && host.back() == '.') {
        host.remove_suffix(1);
    }
    if (host.empty() || host.size() > 253) {
        return false;
    }
    std::size_t label_len = 0;
    for (unsigned char c : host) {
        if (c == '.') {
            if (label_len == 0) {
                return false;
            }
            label_len = 0;
            continue;
        }
        if (!is_host_byte(c) || ++label_len > 63) {
            return false;
        }
    }
    return label_len > 0;
}

std::optional<Url> parse_url(std::string_view text) {
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) {
        text.remove_prefix(1);
    }
    while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) {
        text.remove_suffix(1);
    }
    if (auto hash = text.find('#'); hash != std::string_view::npos) {
        text = text.substr(0, hash);
    }

    const auto sep = text.find("://");
    if (sep == std::string_view::npos || sep == 0) {
        return std::nullopt;
    }
    const std::string_view scheme = text.substr(0, sep);
    if (!std::isalpha(static_cast<unsigned char>(scheme.front()))
            || !std::all_of(scheme.begin(), scheme.end(), is_scheme_char)) {
        return std::nullopt;
    }

    std::string_view rest = text.substr(sep + 3);
    const auto authority_end = rest.find_first_of("/?");
    std::string_view authority = rest.substr(0, authority_end);
    std::string_view tail = authority_end == std::string_view::npos ? std::string_view{} : rest.substr(authority_end);

    std::string_view userinfo;
    if (auto at = authority.rfind('@'); at != std::string_view::npos) {
        userinfo = authority.substr(0, at + 1);
        authority = authority.substr(at + 1);
    }

    std::string_view host_part = authority;
    std::string_view port;
    if (!authority.empty() && authority.front() == '[') {
        const auto close = authority.find(']');
        if (close == std::string_view::npos) {
            return std::nullopt;
        }
        host_part = authority.substr(0, close + 1);
        std::string_view after = authority.substr(close + 1);
        if (!after.empty()) {
            if (after.front() != ':') {
                return std::nullopt;
            }
            port = after.substr(1);
        }
        if (!is_ip_literal(host_part)) {
            return std::nullopt;
        }
    } else {
        if (auto colon = authority.rfind(':'); colon != std::string_view::npos) {
            host_part = authority.substr(0, colon);
            port = authority.substr(colon + 1);
        }
        if (!is_valid_hostname(host_part)) {
            return std::nullopt;
        }
    }
    if (!std::all_of(port.begin(), port.end(), [](unsigned char c) { return std::isdigit(c); })) {
        return std::nullopt;
    }

    Url url;
    url.scheme = to_lower_ascii(scheme);
    url.host = to_lower_ascii(host_part);
    if (!url.host.empty() && url.host.back() == '.') {
        url.host.pop_back();
    }
    url.port = std::string(port);

    std::string_view path = tail.substr(0, tail.find('?'));
    if (auto q = tail.find('?'); q != std::string_view::npos) {
        url.query = std::string(tail.substr(q + 1));
    }
    url.path = path.empty() ? std::string("/") : std::string(path);

    url.canonical.reserve(text.size() + 1);
    url.canonical += url.scheme;
    url.canonical += "://";
    url.canonical += userinfo;
    url.host_begin = url.canonical.size();
    url.canonical += url.host;
    url.host_end = url.canonical.size();
    if (!port.empty()) {
        url.canonical += ':';
        url.canonical += port;
    }
    url.canonical += url.path;
    if (tail.find('?') != std::string_view::npos) {
        url.canonical += '?';
        url.canonical += url.query;
    }
    return url;
}

}  // namespace geotrack
