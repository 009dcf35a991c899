#include "geotrack/synth/config.hpp"

#include <fstream>
#include <set>

namespace geotrack::synth {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) {
        throw ConfigError("invalid synth config: " + what);
    }
}

bool is_proportion(double p) { return p >= 0.0 && p <= 1.0; }

template <typename T>
void read_optional(const nlohmann::json& j, const char* key, T& out) {
    if (const auto it = j.find(key); it != j.end()) {
        out = it->get<T>();
    }
}

void reject_unknown(const nlohmann::json& j, std::initializer_list<const char*> known, const char* where) {
    const std::set<std::string> keys(known.begin(), known.end());
    for (const auto& [key, _] : j.items()) {
        if (!keys.contains(key)) {
            throw ConfigError(std::string("unknown key '") + key + "' in " + where);
        }
    }
}

}  // namespace

void validate(const SynthConfig& config) {
    require(!config.countries.empty(), "no countries");
    std::set<std::string> codes;
    for (const auto& c : config.countries) {
        const std::string at = " (country '" + c.code + "')";
        require(!c.code.empty(), "empty country code");
        require(codes.insert(c.code).second, "duplicate country" + at);
        require(c.n_sites >= 1, "n_sites must be >= 1" + at);
        require(c.mean_requests >= 1.0, "mean_requests must be >= 1" + at);
        require(c.sd_requests >= 0.0, "sd_requests must be >= 0" + at);
        require(is_proportion(c.mean_proportion_hits), "mean_proportion_hits outside [0,1]" + at);
        require(c.sd_proportion >= 0.0, "sd_proportion must be >= 0" + at);
        require(c.mean_proportion_hits >= config.ad_gap, "ad_gap exceeds mean_proportion_hits" + at);
        if (c.cookie_correlation) {
            require(*c.cookie_correlation >= -1.0 && *c.cookie_correlation <= 1.0,
                    "cookie_correlation outside [-1,1]" + at);
        }
    }
    require(config.tracker_domain_pool >= 1 && config.ad_domain_pool >= 1 && config.cdn_domain_pool >= 1,
            "domain pools must be >= 1");
    require(config.cookie_intensity >= 0.0, "cookie_intensity must be >= 0");
    require(config.cookie_correlation >= -1.0 && config.cookie_correlation <= 1.0, "cookie_correlation outside [-1,1]");
    require(is_proportion(config.third_party_share), "third_party_share outside [0,1]");
    require(is_proportion(config.ad_gap), "ad_gap outside [0,1]");
}

SynthConfig four_country_preset(std::uint64_t seed) {
    SynthConfig c;
    c.seed = seed;
    c.ad_gap = 0.018;
    c.countries = {
            {"US", 250, 120.59, 105.10, 0.08, 0.05, 0.715},
            {"AU", 250, 99.19, 80.70, 0.06, 0.05, 0.691},
            {"DE", 250, 121.04, 160.74, 0.05, 0.05, 0.634},
            {"JP", 250, 103.15, 101.64, 0.05, 0.05, 0.778},
    };
    return c;
}

void to_json(nlohmann::json& j, const CountryPlan& c) {
    j = {{"code", c.code},
         {"n_sites", c.n_sites},
         {"mean_requests", c.mean_requests},
         {"sd_requests", c.sd_requests},
         {"mean_proportion_hits", c.mean_proportion_hits},
         {"sd_proportion", c.sd_proportion}};
    if (c.cookie_correlation) {
        j["cookie_correlation"] = *c.cookie_correlation;
    }
}

void from_json(const nlohmann::json& j, CountryPlan& c) {
    reject_unknown(j,
                   {"code", "n_sites", "mean_requests", "sd_requests", "mean_proportion_hits", "sd_proportion",
                    "cookie_correlation"},
                   "country");
    c.code = j.at("code").get<std::string>();
    read_optional(j, "n_sites", c.n_sites);
    read_optional(j, "mean_requests", c.mean_requests);
    read_optional(j, "sd_requests", c.sd_requests);
    read_optional(j, "mean_proportion_hits", c.mean_proportion_hits);
    read_optional(j, "sd_proportion", c.sd_proportion);
    if (j.contains("cookie_correlation")) {
        c.cookie_correlation = j["cookie_correlation"].get<double>();
    }
}

void to_json(nlohmann::json& j, const SynthConfig& c) {
    j = {{"countries", c.countries},
         {"tracker_domain_pool", c.tracker_domain_pool},
         {"ad_domain_pool", c.ad_domain_pool},
         {"cdn_domain_pool", c.cdn_domain_pool},
         {"cookie_intensity", c.cookie_intensity},
         {"cookie_correlation", c.cookie_correlation},
         {"third_party_share", c.third_party_share},
         {"ad_gap", c.ad_gap},
         {"seed", c.seed}};
}

void from_json(const nlohmann::json& j, SynthConfig& c) {
    reject_unknown(j,
                   {"countries", "tracker_domain_pool", "ad_domain_pool", "cdn_domain_pool", "cookie_intensity",
                    "cookie_correlation", "third_party_share", "ad_gap", "seed"},
                   "config");
    c.countries = j.at("countries").get<std::vector<CountryPlan>>();
    read_optional(j, "tracker_domain_pool", c.tracker_domain_pool);
    read_optional(j, "ad_domain_pool", c.ad_domain_pool);
    read_optional(j, "cdn_domain_pool", c.cdn_domain_pool);
    read_optional(j, "cookie_intensity", c.cookie_intensity);
    read_optional(j, "cookie_correlation", c.cookie_correlation);
    read_optional(j, "third_party_share", c.third_party_share);
    read_optional(j, "ad_gap", c.ad_gap);
    read_optional(j, "seed", c.seed);
}

SynthConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ConfigError("cannot open config " + path.string());
    }
    try {
        auto config = nlohmann::json::parse(in).get<SynthConfig>();
        validate(config);
        return config;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
}

}  // namespace geotrack::synth
