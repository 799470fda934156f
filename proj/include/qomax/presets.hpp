#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "qomax/distributions.hpp"
#include "qomax/errors.hpp"
#include "qomax/policy_spec.hpp"

namespace qomax {

struct ExperimentConfig {
    std::string name;
    std::vector<ArmDistribution> arms;
    int dominant_arm = 0;  // 0-based
    std::vector<PolicySpec> algorithms;
    std::vector<long long> horizons = {1000, 5000, 10000, 20000};
    long trajectories = 500;
    std::uint64_t master_seed = 42;

    void validate() const {
        if (arms.empty()) throw ConfigError("config: no arms");
        if (dominant_arm < 0 || dominant_arm >= static_cast<int>(arms.size()))
            throw ConfigError("config: dominant_arm out of range");
        if (algorithms.empty()) throw ConfigError("config: no algorithms");
        if (horizons.empty()) throw ConfigError("config: no horizons");
        if (!std::is_sorted(horizons.begin(), horizons.end()))
            throw ConfigError("config: horizons must be ascending");
        for (long long t : horizons) {
            if (t < static_cast<long long>(arms.size()))
                throw ConfigError("config: horizon smaller than the number of arms");
        }
        if (trajectories < 1) throw ConfigError("config: trajectories must be >= 1");
    }
};

inline std::vector<PolicySpec> default_algorithms() {
    return {PolicySpec::parse("qomax-sda:q=0.5"), PolicySpec::parse("qomax-etc:q=0.5"),
            PolicySpec::parse("threshold-ascent"), PolicySpec::parse("max-median"),
            PolicySpec::parse("uniform")};
}

// The eight built-in experiments. Arms and the dominant index are fixed
// here; algorithms, horizons, trajectory count and seed keep their defaults
// unless overridden.
inline ExperimentConfig preset(int id) {
    ExperimentConfig config;
    config.name = "preset-" + std::to_string(id);
    config.algorithms = default_algorithms();
    switch (id) {
        case 1: {
            for (double lambda : {2.1, 2.3, 1.3, 1.1, 1.9}) config.arms.emplace_back(Pareto(1.0, lambda));
            config.dominant_arm = 3;
            break;
        }
        case 2: {
            const double lambdas[] = {2.5, 2.8, 4.0, 3.0, 1.4, 1.4, 1.9};
            for (int k = 0; k < 7; ++k)
                config.arms.emplace_back(Pareto(k == 4 ? 1.1 : 1.0, lambdas[k]));
            config.dominant_arm = 4;
            break;
        }
        case 3: {
            for (double rate : {2.1, 2.4, 1.9, 1.3, 1.1, 2.9, 1.5, 2.2, 2.6, 1.4})
                config.arms.emplace_back(Exponential(rate));
            config.dominant_arm = 4;
            break;
        }
        case 4: {
            const double sigmas[] = {1.64, 2.29, 1.79, 2.67, 1.70, 1.36, 1.90, 2.19, 0.80, 0.12,
                                     1.65, 1.19, 1.88, 0.89, 3.35, 1.50, 2.22, 3.03, 1.08, 0.48};
            for (double sigma : sigmas) config.arms.emplace_back(Gaussian(1.0, sigma));
            config.dominant_arm = 14;
            break;
        }
        case 5: {
            for (double lambda : {5.0, 1.1, 2.0}) config.arms.emplace_back(Pareto(1.0, lambda));
            config.dominant_arm = 1;
            break;
        }
        case 6: {
            config.arms.emplace_back(Pareto(1.0, 1.5));
            config.arms.emplace_back(Pareto(1.0, 3.0));
            config.arms.emplace_back(DiracParetoMixture(0.8, 1.1));
            config.dominant_arm = 2;
            break;
        }
        case 7: {
            const double mus[] = {1.0, 1.5, 2.0, 3.0, 3.5};
            const double sigmas[] = {4.0, 3.0, 2.0, 1.0, 0.5};
            for (int k = 0; k < 5; ++k) config.arms.emplace_back(LogNormal(mus[k], sigmas[k]));
            config.dominant_arm = 0;
            break;
        }
        case 8: {
            for (int i = 1; i <= 8; ++i)
                config.arms.emplace_back(GeneralizedGaussian(0.2 * static_cast<double>(i)));
            config.dominant_arm = 0;
            break;
        }
        default:
            throw UnknownPreset("preset id must be in 1..8, got " + std::to_string(id));
    }
    return config;
}

}  // namespace qomax
