#include "geotrack/report/manifest.hpp"

#include <array>
#include <chrono>
#include <fstream>
#include <memory>
#include <stdexcept>

#include <fmt/chrono.h>
#include <fmt/format.h>
#include <openssl/evp.h>

namespace geotrack::report {

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read " + path.string());
    }
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("sha256 init failed");
    }
    std::array<char, 1 << 16> buf{};
    while (in) {
        in.read(buf.data(), buf.size());
        if (in.gcount() > 0) {
            EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<std::size_t>(in.gcount()));
        }
    }
    std::array<unsigned char, EVP_MAX_MD_SIZE> digest{};
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx.get(), digest.data(), &len);
    std::string hex;
    for (unsigned int i = 0; i < len; ++i) {
        hex += fmt::format("{:02x}", digest[i]);
    }
    return hex;
}

std::vector<ManifestInput> hash_inputs(const std::vector<std::pair<std::string, std::filesystem::path>>& inputs) {
    std::vector<ManifestInput> out;
    for (const auto& [role, path] : inputs) {
        out.push_back({role, path, sha256_file(path), std::filesystem::file_size(path)});
    }
    return out;
}

void to_json(nlohmann::json& j, const RunManifest& m) {
    nlohmann::json inputs = nlohmann::json::array();
    for (const auto& in : m.inputs) {
        inputs.push_back({{"role", in.role}, {"path", in.path.string()}, {"sha256", in.sha256}, {"bytes", in.bytes}});
    }
    j = {{"inputs", std::move(inputs)},
         {"mode", m.mode},
         {"domain_granularity", m.domain_granularity},
         {"pairwise", m.pairwise},
         {"correlation", m.correlation},
         {"top_k", m.top_k},
         {"output_dir", m.output_dir.string()},
         {"tool_version", m.tool_version},
         {"created_at", m.created_at}};
}

RunManifest read_manifest(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw std::runtime_error("cannot read manifest " + path.string());
    }
    const auto j = nlohmann::json::parse(in);
    RunManifest m;
    for (const auto& i : j.at("inputs")) {
        m.inputs.push_back({i.at("role").get<std::string>(), i.at("path").get<std::string>(),
                            i.at("sha256").get<std::string>(), i.at("bytes").get<std::uintmax_t>()});
    }
    m.mode = j.at("mode").get<std::string>();
    m.domain_granularity = j.at("domain_granularity").get<std::string>();
    m.pairwise = j.at("pairwise").get<std::string>();
    m.correlation = j.at("correlation").get<std::string>();
    m.top_k = j.at("top_k").get<std::size_t>();
    m.output_dir = j.at("output_dir").get<std::string>();
    m.tool_version = j.at("tool_version").get<std::string>();
    m.created_at = j.at("created_at").get<std::string>();
    return m;
}

void write_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw std::runtime_error("cannot write manifest " + path.string());
    }
    out << nlohmann::json(manifest).dump(2) << '\n';
}

std::vector<std::string> verify_manifest(const RunManifest& manifest) {
    std::vector<std::string> bad;
    for (const auto& in : manifest.inputs) {
        std::error_code ec;
        if (!std::filesystem::is_regular_file(in.path, ec) || sha256_file(in.path) != in.sha256) {
            bad.push_back(in.role + ": " + in.path.string());
        }
    }
    return bad;
}

std::string utc_now() {
    const auto now = std::chrono::floor<std::chrono::seconds>(std::chrono::system_clock::now());
    return fmt::format("{:%Y-%m-%dT%H:%M:%SZ}", now);
}

}  // namespace geotrack::report
