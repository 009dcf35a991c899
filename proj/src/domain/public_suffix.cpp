#include "geotrack/domain/public_suffix.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <vector>

#include "geotrack/url.hpp"

namespace geotrack::domain {

namespace {

std::vector<std::string_view> split_labels(std::string_view s) {
    std::vector<std::string_view> labels;
    std::size_t start = 0;
    while (true) {
        const auto dot = s.find('.', start);
        labels.push_back(s.substr(start, dot - start));
        if (dot == std::string_view::npos) {
            break;
        }
        start = dot + 1;
    }
    return labels;
}

// ACE form of a rule whose labels contain UTF-8; empty if already ASCII.
std::string ascii_form(std::string_view rule) {
    if (std::all_of(rule.begin(), rule.end(), [](unsigned char c) { return c < 0x80; })) {
        return {};
    }
    std::string out;
    for (auto label : split_labels(rule)) {
        auto ace = label_to_ascii(label);
        if (!ace) {
            return {};
        }
        if (!out.empty()) {
            out += '.';
        }
        out += *ace;
    }
    return out;
}

}  // namespace

void PublicSuffixTable::add_rule(std::string_view rule) {
    std::string text = to_lower_ascii(rule);
    std::unordered_set<std::string>* target = &normal_;
    if (text.starts_with("!")) {
        text.erase(0, 1);
        target = &exception_;
    } else if (text.starts_with("*.")) {
        text.erase(0, 2);
        target = &wildcard_;
    }
    if (text.empty()) {
        return;
    }
    if (auto ace = ascii_form(text); !ace.empty()) {
        target->insert(std::move(ace));
    }
    target->insert(std::move(text));
}

PublicSuffixTable PublicSuffixTable::parse(std::istream& in) {
    PublicSuffixTable table;
    std::string line;
    while (std::getline(in, line)) {
        // A rule is the first whitespace-delimited token of a non-comment line.
        std::string_view view(line);
        const auto begin = view.find_first_not_of(" \t\r");
        if (begin == std::string_view::npos) {
            continue;
        }
        view.remove_prefix(begin);
        if (view.starts_with("//")) {
            continue;
        }
        view = view.substr(0, view.find_first_of(" \t\r"));
        table.add_rule(view);
    }
    return table;
}

PublicSuffixTable PublicSuffixTable::load(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot open public suffix list " + path.string());
    }
    return parse(in);
}

std::string_view PublicSuffixTable::public_suffix(std::string_view host) const {
    const auto labels = split_labels(host);
    // Offsets of each candidate suffix inside `host`, longest first.
    std::vector<std::size_t> offsets;
    offsets.reserve(labels.size());
    for (const auto& label : labels) {
        offsets.push_back(static_cast<std::size_t>(label.data() - host.data()));
    }

    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (exception_.contains(std::string(host.substr(offsets[i])))) {
            // An exception rule's suffix is the rule minus its leftmost label.
            return i + 1 < labels.size() ? host.substr(offsets[i + 1]) : labels.back();
        }
    }
    for (std::size_t i = 0; i < labels.size(); ++i) {
        const std::string candidate(host.substr(offsets[i]));
        if (normal_.contains(candidate)) {
            return host.substr(offsets[i]);
        }
        if (i + 1 < labels.size() && wildcard_.contains(std::string(host.substr(offsets[i + 1])))) {
            return host.substr(offsets[i]);
        }
    }
    return labels.back();
}

std::string normalize_hostname(std::string_view hostname) {
    std::string host = to_lower_ascii(hostname);
    if (is_ip_literal(host)) {
        return host;
    }
    if (!is_valid_hostname(host)) {
        throw MalformedHostname(hostname);
    }
    if (host.back() == '.') {
        host.pop_back();
    }
    return host;
}

RegistrableDomain registrable_domain(std::string_view hostname, const PublicSuffixTable& table) {
    std::string host = normalize_hostname(hostname);
    if (is_ip_literal(host)) {
        return {std::move(host), false};
    }
    const std::string_view suffix = table.public_suffix(host);
    if (suffix.size() >= host.size()) {
        return {std::move(host), false};
    }
    // One more label to the left of the suffix.
    const std::size_t suffix_start = host.size() - suffix.size();
    const std::size_t dot = suffix_start - 1;
    const auto label_start = host.rfind('.', dot - 1);
    const std::size_t begin = label_start == std::string::npos ? 0 : label_start + 1;
    return {host.substr(begin), true};
}

}  // namespace geotrack::domain
