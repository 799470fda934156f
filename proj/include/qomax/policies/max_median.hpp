#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <vector>

#include "qomax/rng.hpp"

namespace qomax {

// Robust-statistics baseline: with probability 1/(t+1) explore uniformly,
// otherwise play the arm with the largest floor(N_i/m)-th biggest reward,
// where m is the smallest pull count. Needs every reward kept.
class MaxMedianPolicy {
public:
    explicit MaxMedianPolicy(int num_arms)
        : sorted_desc_(static_cast<std::size_t>(num_arms)),
          counts_(static_cast<std::size_t>(num_arms), 0) {}

    int select(Rng& rng) const {
        const int num_arms = static_cast<int>(counts_.size());
        for (int k = 0; k < num_arms; ++k) {
            if (counts_[static_cast<std::size_t>(k)] == 0) return k;
        }
        const double epsilon = 1.0 / static_cast<double>(total_ + 1);
        if (uniform_open01(rng) < epsilon) {
            auto arm = static_cast<int>(uniform_open01(rng) * num_arms);
            return std::min(arm, num_arms - 1);
        }
        long m = counts_[0];
        for (long c : counts_) m = std::min(m, c);
        int best = 0;
        double best_stat = order_statistic(0, m);
        for (int k = 1; k < num_arms; ++k) {
            const double stat = order_statistic(k, m);
            if (stat > best_stat) {
                best = k;
                best_stat = stat;
            }
        }
        return best;
    }

    void update(int arm, double reward) {
        auto& rewards = sorted_desc_[static_cast<std::size_t>(arm)];
        rewards.insert(std::upper_bound(rewards.begin(), rewards.end(), reward, std::greater<>()),
                       reward);
        ++counts_[static_cast<std::size_t>(arm)];
        ++total_;
    }

    // k-th largest reward of the arm, 1-based.
    double kth_largest(int arm, long k) const {
        return sorted_desc_[static_cast<std::size_t>(arm)][static_cast<std::size_t>(k - 1)];
    }

    long pulls(int arm) const { return counts_[static_cast<std::size_t>(arm)]; }
    long total_pulls() const { return total_; }
    std::size_t memory_cells() const { return static_cast<std::size_t>(total_); }

private:
    double order_statistic(int arm, long m) const {
        const long rank = counts_[static_cast<std::size_t>(arm)] / m;
        return kth_largest(arm, rank);
    }

    std::vector<std::vector<double>> sorted_desc_;
    std::vector<long> counts_;
    long total_ = 0;
};

// Round-robin baseline.
inline int uniform_select(long long round, int num_arms) {
    return static_cast<int>(round % num_arms);
}

}  // namespace qomax
