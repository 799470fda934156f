#pragma once

#include <algorithm>
#include <array>
#include <optional>
#include <vector>

#include "qomax/distributions.hpp"
#include "qomax/rank.hpp"
#include "qomax/simulator.hpp"

namespace qomax {

inline constexpr std::array<double, 7> kSummaryQuantiles = {0.01, 0.10, 0.25, 0.50,
                                                            0.75, 0.90, 0.99};

struct MetricsSummary {
    double mean_best_arm_fraction = 0.0;
    std::array<double, 7> pull_fraction_quantiles{};  // best-arm pull share
    std::array<double, 7> max_reward_quantiles{};
    std::optional<double> proxy_regret;
};

// Empirical quantile by the ceil(N*q) ascending rank rule.
inline double empirical_quantile(std::vector<double> values, double q) {
    if (values.empty()) throw EmptyInput("empirical_quantile: no values");
    const std::size_t rank = quantile_rank(values.size(), q);
    std::nth_element(values.begin(), values.begin() + static_cast<std::ptrdiff_t>(rank - 1),
                     values.end());
    return values[rank - 1];
}

// Proxy empirical regret: the expected maximum of the dominant arm is read
// off the per-trajectory maxima at the quantile level q~ where the oracle's
// maximum matches its own mean; heavy-tailed means are never averaged.
inline double proxy_empirical_regret(const std::vector<double>& max_rewards,
                                     const ArmDistribution& dominant, long long horizon) {
    const double expected = expected_max_approx(dominant, horizon);
    const double level = per_quantile(dominant, horizon);
    const double estimate = empirical_quantile(max_rewards, level);
    return (expected - estimate) / expected;
}

inline MetricsSummary summarize(const std::vector<TrajectoryResult>& results) {
    if (results.empty()) throw EmptyInput("summarize: no trajectories");
    std::vector<double> fractions;
    std::vector<double> maxima;
    fractions.reserve(results.size());
    maxima.reserve(results.size());
    double mean = 0.0;
    for (const auto& r : results) {
        fractions.push_back(r.best_arm_fraction);
        maxima.push_back(r.max_reward);
        mean += r.best_arm_fraction;
    }
    MetricsSummary summary;
    summary.mean_best_arm_fraction = mean / static_cast<double>(results.size());
    std::sort(fractions.begin(), fractions.end());
    std::sort(maxima.begin(), maxima.end());
    for (std::size_t i = 0; i < kSummaryQuantiles.size(); ++i) {
        const std::size_t rank = quantile_rank(results.size(), kSummaryQuantiles[i]);
        summary.pull_fraction_quantiles[i] = fractions[rank - 1];
        summary.max_reward_quantiles[i] = maxima[rank - 1];
    }
    return summary;
}

}  // namespace qomax
