#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace geotrack::report {

std::string sha256_file(const std::filesystem::path& path);

struct ManifestInput {
    std::string role;  // dataset, ads, trackers, psl, sidecar
    std::filesystem::path path;
    std::string sha256;
    std::uintmax_t bytes = 0;
};

struct RunManifest {
    std::vector<ManifestInput> inputs;
    std::string mode;
    std::string domain_granularity;
    std::string pairwise;
    std::string correlation;
    std::size_t top_k = 0;
    std::filesystem::path output_dir;
    std::string tool_version;
    std::string created_at;  // UTC; the only time-dependent field of a run
};

// Hashes each (role, path) input. Throws std::runtime_error for unreadable files.
std::vector<ManifestInput> hash_inputs(const std::vector<std::pair<std::string, std::filesystem::path>>& inputs);

void to_json(nlohmann::json& j, const RunManifest& m);
RunManifest read_manifest(const std::filesystem::path& path);
void write_manifest(const RunManifest& manifest, const std::filesystem::path& path);

// Inputs whose current hash differs from the recorded one (or that vanished).
std::vector<std::string> verify_manifest(const RunManifest& manifest);

std::string utc_now();

}  // namespace geotrack::report
