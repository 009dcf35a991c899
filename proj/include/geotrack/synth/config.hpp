#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

namespace geotrack::synth {

struct CountryPlan {
    std::string code;
    std::int64_t n_sites = 250;
    double mean_requests = 111.0;
    double sd_requests = 116.0;
    double mean_proportion_hits = 0.06;  // tracker-list hits / requests
    double sd_proportion = 0.05;
    std::optional<double> cookie_correlation;  // overrides the global value
};

struct SynthConfig {
    std::vector<CountryPlan> countries;
    std::int64_t tracker_domain_pool = 50;
    std::int64_t ad_domain_pool = 30;
    std::int64_t cdn_domain_pool = 40;
    // Third-party cookies per third-party request, before noise.
    double cookie_intensity = 0.5;
    // Target Pearson r between third-party requests and cookies per country.
    double cookie_correlation = 0.7;
    // Share of non-hit, non-document requests sent to CDN third parties.
    double third_party_share = 0.3;
    // Tracker share minus ad share, per visit in expectation.
    double ad_gap = 0.0;
    std::uint64_t seed = 1;
};

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Throws ConfigError naming the first violated constraint.
void validate(const SynthConfig& config);

// Four countries at the per-country request and hit-proportion targets
// (US 0.08, AU 0.06, DE 0.05, JP 0.05; SD 0.05), 250 sites each, tracker
// share 0.018 above ad share.
SynthConfig four_country_preset(std::uint64_t seed);

void to_json(nlohmann::json& j, const CountryPlan& c);
void from_json(const nlohmann::json& j, CountryPlan& c);
void to_json(nlohmann::json& j, const SynthConfig& c);
// Missing keys keep their defaults; unknown keys are rejected.
void from_json(const nlohmann::json& j, SynthConfig& c);

SynthConfig load_config(const std::filesystem::path& path);

}  // namespace geotrack::synth
