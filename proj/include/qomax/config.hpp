#pragma once

#include <fstream>
#include <string>

#include <json.hpp>

#include "qomax/errors.hpp"
#include "qomax/presets.hpp"

namespace qomax {

// JSON wire format for reward laws, e.g. {"kind": "pareto", "c": 1.0,
// "lambda": 1.1}. Kind strings: pareto, exponential, gaussian, lognormal,
// generalized-gaussian, dirac-pareto-mixture.

inline nlohmann::json to_json(const ArmDistribution& dist) {
    using nlohmann::json;
    return std::visit(
        [](const auto& d) -> json {
            using T = std::decay_t<decltype(d)>;
            if constexpr (std::is_same_v<T, Pareto>) {
                return {{"kind", "pareto"}, {"c", d.scale_c}, {"lambda", d.lambda}};
            } else if constexpr (std::is_same_v<T, Exponential>) {
                return {{"kind", "exponential"}, {"rate", d.rate}};
            } else if constexpr (std::is_same_v<T, Gaussian>) {
                return {{"kind", "gaussian"}, {"mean", d.mean}, {"std", d.std_dev}};
            } else if constexpr (std::is_same_v<T, LogNormal>) {
                return {{"kind", "lognormal"}, {"mu", d.mu}, {"sigma", d.sigma}};
            } else if constexpr (std::is_same_v<T, GeneralizedGaussian>) {
                return {{"kind", "generalized-gaussian"}, {"beta", d.beta}};
            } else {
                return {{"kind", "dirac-pareto-mixture"},
                        {"zero_prob", d.zero_prob},
                        {"lambda", d.lambda}};
            }
        },
        dist);
}

namespace detail {

inline double require_number(const nlohmann::json& j, const char* key, const std::string& where) {
    if (!j.contains(key) || !j[key].is_number())
        throw ConfigError(where + ": missing numeric field '" + key + "'");
    return j[key].get<double>();
}

}  // namespace detail

inline ArmDistribution arm_from_json(const nlohmann::json& j, const std::string& where) {
    if (!j.contains("kind") || !j["kind"].is_string())
        throw ConfigError(where + ": arm needs a string 'kind'");
    const std::string kind = j["kind"].get<std::string>();
    try {
        if (kind == "pareto")
            return Pareto(detail::require_number(j, "c", where),
                          detail::require_number(j, "lambda", where));
        if (kind == "exponential") return Exponential(detail::require_number(j, "rate", where));
        if (kind == "gaussian")
            return Gaussian(detail::require_number(j, "mean", where),
                            detail::require_number(j, "std", where));
        if (kind == "lognormal")
            return LogNormal(detail::require_number(j, "mu", where),
                             detail::require_number(j, "sigma", where));
        if (kind == "generalized-gaussian")
            return GeneralizedGaussian(detail::require_number(j, "beta", where));
        if (kind == "dirac-pareto-mixture")
            return DiracParetoMixture(detail::require_number(j, "zero_prob", where),
                                      detail::require_number(j, "lambda", where));
    } catch (const std::invalid_argument& e) {
        throw ConfigError(where + ": " + e.what());
    }
    throw ConfigError(where + ": unknown arm kind '" + kind + "'");
}

inline PolicySpec policy_from_json(const nlohmann::json& j, const std::string& where) {
    if (!j.contains("name") || !j["name"].is_string())
        throw ConfigError(where + ": algorithm needs a string 'name'");
    std::string text = j["name"].get<std::string>();
    std::string sep = ":";
    for (const auto& [key, value] : j.items()) {
        if (key == "name") continue;
        if (!value.is_number()) throw ConfigError(where + ": parameter '" + key + "' not numeric");
        text += sep + key + "=" + value.dump();
        sep = ",";
    }
    return PolicySpec::parse(text);
}

inline ExperimentConfig config_from_json(const nlohmann::json& j) {
    ExperimentConfig config;
    config.name = j.value("experiment", std::string("custom"));
    if (!j.contains("arms") || !j["arms"].is_array()) throw ConfigError("config: 'arms' array required");
    int index = 0;
    for (const auto& arm : j["arms"]) {
        config.arms.push_back(arm_from_json(arm, "arms[" + std::to_string(index) + "]"));
        ++index;
    }
    if (!j.contains("dominant_arm") || !j["dominant_arm"].is_number_integer())
        throw ConfigError("config: integer 'dominant_arm' (1-based) required");
    config.dominant_arm = j["dominant_arm"].get<int>() - 1;
    if (j.contains("algorithms")) {
        index = 0;
        for (const auto& algo : j["algorithms"]) {
            config.algorithms.push_back(
                policy_from_json(algo, "algorithms[" + std::to_string(index) + "]"));
            ++index;
        }
    } else {
        config.algorithms = default_algorithms();
    }
    if (j.contains("horizons")) config.horizons = j["horizons"].get<std::vector<long long>>();
    if (j.contains("trajectories")) config.trajectories = j["trajectories"].get<long>();
    if (j.contains("master_seed")) config.master_seed = j["master_seed"].get<std::uint64_t>();
    config.validate();
    return config;
}

inline ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file: " + path);
    nlohmann::json j;
    try {
        in >> j;
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("config parse error in " + path + ": " + e.what());
    }
    return config_from_json(j);
}

}  // namespace qomax
