#pragma once

#include <cmath>
#include <cstddef>
#include <queue>
#include <utility>
#include <vector>

namespace qomax {

struct ThresholdAscentParams {
    long s = 100;
    double delta = 0.1;
};

// Chernoff-style upper bound on an arm's share of the top-s rewards.
inline double threshold_ascent_ucb(double mu, double n, double alpha) {
    return mu + (alpha + std::sqrt(2.0 * n * mu * alpha + alpha * alpha)) / n;
}

// Distribution-free baseline: keeps the s largest rewards seen so far and
// plays the arm with the best Chernoff-style upper bound on its share of
// them, U(mu, n) = mu + (alpha + sqrt(2*n*mu*alpha + alpha^2)) / n with
// alpha = ln(2 * n_total * K / delta).
class ThresholdAscentPolicy {
public:
    ThresholdAscentPolicy(int num_arms, ThresholdAscentParams params)
        : params_(params), above_threshold_(static_cast<std::size_t>(num_arms), 0),
          pull_counts_(static_cast<std::size_t>(num_arms), 0) {}

    int select() const {
        const int num_arms = static_cast<int>(pull_counts_.size());
        for (int k = 0; k < num_arms; ++k) {
            if (pull_counts_[static_cast<std::size_t>(k)] == 0) return k;
        }
        const double alpha =
            std::log(2.0 * static_cast<double>(total_pulls_) * num_arms / params_.delta);
        int best = 0;
        double best_index = index_of(0, alpha);
        for (int k = 1; k < num_arms; ++k) {
            const double value = index_of(k, alpha);
            if (value > best_index) {
                best = k;
                best_index = value;
            }
        }
        return best;
    }

    void update(int arm, double reward) {
        ++pull_counts_[static_cast<std::size_t>(arm)];
        ++total_pulls_;
        if (static_cast<long>(top_.size()) < params_.s) {
            top_.emplace(reward, arm);
            ++above_threshold_[static_cast<std::size_t>(arm)];
        } else if (reward > top_.top().first) {
            --above_threshold_[static_cast<std::size_t>(top_.top().second)];
            top_.pop();
            top_.emplace(reward, arm);
            ++above_threshold_[static_cast<std::size_t>(arm)];
        }
    }

    long threshold_count(int arm) const { return above_threshold_[static_cast<std::size_t>(arm)]; }
    long pulls(int arm) const { return pull_counts_[static_cast<std::size_t>(arm)]; }
    std::size_t memory_cells() const { return top_.size(); }

private:
    double index_of(int arm, double alpha) const {
        const auto n = static_cast<double>(pull_counts_[static_cast<std::size_t>(arm)]);
        const double mu = static_cast<double>(above_threshold_[static_cast<std::size_t>(arm)]) / n;
        return threshold_ascent_ucb(mu, n, alpha);
    }

    ThresholdAscentParams params_;
    std::priority_queue<std::pair<double, int>, std::vector<std::pair<double, int>>,
                        std::greater<>>
        top_;
    std::vector<long> above_threshold_;
    std::vector<long> pull_counts_;
    long total_pulls_ = 0;
};

}  // namespace qomax
