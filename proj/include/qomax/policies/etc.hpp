#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "qomax/errors.hpp"
#include "qomax/qomax.hpp"
#include "qomax/reward_source.hpp"

namespace qomax {

struct EtcSizes {
    std::uint32_t samples_per_batch;  // n_T
    std::uint32_t batch_count;        // b_T
};

// Recommended tuning: n_T = ceil(ln T) samples per batch, b_T = ceil((ln T)^2)
// batches per arm.
inline EtcSizes etc_exploration_lengths(long long horizon, int num_arms) {
    const double log_t = std::log(static_cast<double>(horizon));
    const auto n_t = static_cast<std::uint32_t>(std::max(1.0, std::ceil(log_t)));
    const auto b_t = static_cast<std::uint32_t>(std::max(1.0, std::ceil(log_t * log_t)));
    const long long explore = static_cast<long long>(num_arms) * n_t * b_t;
    if (explore > horizon)
        throw HorizonTooSmall("qomax-etc: exploration phase does not fit the horizon");
    return {n_t, b_t};
}

// Same sizes, but when the canonical tuning overflows the horizon, b_T is
// shrunk (n_T kept) to the largest value with K * n_T * b_T <= T/2.
inline EtcSizes etc_sizes_with_fallback(long long horizon, int num_arms) {
    try {
        return etc_exploration_lengths(horizon, num_arms);
    } catch (const HorizonTooSmall&) {
        const double log_t = std::log(static_cast<double>(horizon));
        const auto n_t = static_cast<std::uint32_t>(std::max(1.0, std::ceil(log_t)));
        const long long b_t = (horizon / 2) / (static_cast<long long>(num_arms) * n_t);
        if (b_t < 1) throw;
        return {n_t, static_cast<std::uint32_t>(b_t)};
    }
}

// Arm with the largest full-history QoMax; ties go to the lowest index.
inline int etc_commit(const std::vector<ArmHistory>& histories, double q) {
    int best = 0;
    double best_value = qomax_full(histories[0], q);
    for (int k = 1; k < static_cast<int>(histories.size()); ++k) {
        const double value = qomax_full(histories[static_cast<std::size_t>(k)], q);
        if (value > best_value) {
            best = k;
            best_value = value;
        }
    }
    return best;
}

// Explore-then-commit: every arm is pulled b_T * n_T times up front, then the
// best QoMax arm is played for the rest of the horizon.
class EtcPolicy {
public:
    EtcPolicy(int num_arms, double q, EtcSizes sizes) : q_(q), sizes_(sizes) {
        histories_.resize(static_cast<std::size_t>(num_arms));
        for (int k = 0; k < num_arms; ++k) histories_[static_cast<std::size_t>(k)].arm_id = k;
    }

    void run(RewardSource& source) {
        for (int k = 0; k < static_cast<int>(histories_.size()); ++k) {
            auto& history = histories_[static_cast<std::size_t>(k)];
            for (std::uint32_t j = 0; j < sizes_.batch_count; ++j) {
                MaxRecord batch;
                for (std::uint32_t n = 1; n <= sizes_.samples_per_batch; ++n) {
                    const auto x = source.draw(k);
                    if (!x) return;
                    batch.insert(n, *x);
                }
                history.batches.push_back(std::move(batch));
            }
            history.queries = sizes_.samples_per_batch;
            peak_cells_ = std::max(peak_cells_, total_cells());
        }
        committed_ = etc_commit(histories_, q_);
        while (source.draw(committed_)) {
        }
    }

    int committed_arm() const { return committed_; }
    const std::vector<ArmHistory>& histories() const { return histories_; }
    std::size_t peak_memory_cells() const { return peak_cells_; }

private:
    std::size_t total_cells() const {
        std::size_t cells = 0;
        for (const auto& h : histories_) cells += h.memory_cells();
        return cells;
    }

    double q_;
    EtcSizes sizes_;
    std::vector<ArmHistory> histories_;
    int committed_ = -1;
    std::size_t peak_cells_ = 0;
};

}  // namespace qomax
