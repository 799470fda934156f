#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "qomax/distributions.hpp"
#include "qomax/policies/max_median.hpp"
#include "qomax/policy_spec.hpp"
#include "qomax/reward_source.hpp"

namespace qomax {

struct TrajectoryResult {
    std::vector<long long> pulls_per_arm;  // raw observations consumed per arm
    double best_arm_fraction = 0.0;
    double max_reward = 0.0;
    long long peak_memory_cells = 0;
    std::uint64_t seed = 0;
};

namespace detail {

inline std::size_t run_etc(const PolicySpec& spec, int num_arms, long long horizon,
                           RewardSource& source) {
    const EtcSizes sizes =
        spec.etc_sizes ? *spec.etc_sizes : etc_sizes_with_fallback(horizon, num_arms);
    const long long explore = static_cast<long long>(num_arms) * sizes.samples_per_batch *
                              sizes.batch_count;
    if (explore > horizon)
        throw HorizonTooSmall("qomax-etc: exploration phase does not fit the horizon");
    EtcPolicy policy(num_arms, spec.q, sizes);
    policy.run(source);
    return policy.peak_memory_cells();
}

inline std::size_t run_sda(const PolicySpec& spec, int num_arms, RewardSource& source) {
    SdaPolicy policy(num_arms, SdaParams{spec.q, spec.gamma});
    std::size_t peak = 0;
    while (policy.step_round(source)) peak = std::max(peak, policy.memory_cells());
    return std::max(peak, policy.memory_cells());
}

inline std::size_t run_threshold_ascent(const PolicySpec& spec, int num_arms,
                                        RewardSource& source) {
    ThresholdAscentPolicy policy(num_arms, ThresholdAscentParams{spec.s, spec.delta});
    for (;;) {
        const int arm = policy.select();
        const auto x = source.draw(arm);
        if (!x) return policy.memory_cells();
        policy.update(arm, *x);
    }
}

inline std::size_t run_max_median(int num_arms, RewardSource& source, Rng& policy_rng) {
    MaxMedianPolicy policy(num_arms);
    for (;;) {
        const int arm = policy.select(policy_rng);
        const auto x = source.draw(arm);
        if (!x) return policy.memory_cells();
        policy.update(arm, *x);
    }
}

inline std::size_t run_uniform(int num_arms, RewardSource& source) {
    for (long long t = 0;; ++t) {
        if (!source.draw(uniform_select(t, num_arms))) return 0;
    }
}

}  // namespace detail

// One independent trajectory: exactly `horizon` reward draws, fully
// determined by (arms, policy, horizon, seed).
inline TrajectoryResult run_trajectory(const std::vector<ArmDistribution>& arms,
                                       const PolicySpec& policy, long long horizon,
                                       std::uint64_t seed, int dominant_arm) {
    const int num_arms = static_cast<int>(arms.size());
    SampledRewardSource source(arms, horizon, substream_seed(seed, 0));
    Rng policy_rng(substream_seed(seed, 1));

    std::size_t peak_cells = 0;
    switch (policy.kind) {
        case PolicyKind::QoMaxEtc:
            peak_cells = detail::run_etc(policy, num_arms, horizon, source);
            break;
        case PolicyKind::QoMaxSda:
            peak_cells = detail::run_sda(policy, num_arms, source);
            break;
        case PolicyKind::ThresholdAscent:
            peak_cells = detail::run_threshold_ascent(policy, num_arms, source);
            break;
        case PolicyKind::MaxMedian:
            peak_cells = detail::run_max_median(num_arms, source, policy_rng);
            break;
        case PolicyKind::Uniform:
            peak_cells = detail::run_uniform(num_arms, source);
            break;
    }

    TrajectoryResult result;
    result.pulls_per_arm = source.pulls();
    result.best_arm_fraction =
        static_cast<double>(source.pulls()[static_cast<std::size_t>(dominant_arm)]) /
        static_cast<double>(horizon);
    result.max_reward = source.max_reward();
    result.peak_memory_cells = static_cast<long long>(peak_cells);
    result.seed = seed;
    return result;
}

}  // namespace qomax
