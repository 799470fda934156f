#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "qomax/qomax.hpp"
#include "qomax/rank.hpp"
#include "qomax/reward_source.hpp"

namespace qomax {

struct SdaParams {
    double q = 0.5;
    double gamma = 2.0 / 3.0;
};

// Sampling obligation f(r) = (ln r)^(1/gamma); an arm whose query count is
// below it is pulled unconditionally.
inline double forced_exploration(long round, double gamma) {
    if (round <= 1) return 0.0;
    return std::pow(std::log(static_cast<double>(round)), 1.0 / gamma);
}

// Batch count an arm must hold after n queries: ceil(n^gamma), with the
// usual guard for powers like 27^(2/3) landing epsilon above an integer.
inline std::uint32_t batch_count_target(std::uint32_t queries, double gamma) {
    if (queries == 0) return 0;
    return static_cast<std::uint32_t>(
        detail::ceil_nudged(std::pow(static_cast<double>(queries), gamma)));
}

// Most-queried arm; ties prefer the larger full QoMax, then the lowest index.
inline int sda_leader(const std::vector<ArmHistory>& histories, double q) {
    int best = 0;
    double best_qomax = qomax_full(histories[0], q);
    for (int k = 1; k < static_cast<int>(histories.size()); ++k) {
        const auto& h = histories[static_cast<std::size_t>(k)];
        const auto& b = histories[static_cast<std::size_t>(best)];
        if (h.queries < b.queries) continue;
        const double k_qomax = qomax_full(h, q);
        if (h.queries > b.queries || k_qomax > best_qomax) {
            best = k;
            best_qomax = k_qomax;
        }
    }
    return best;
}

// Duel: the challenger's full-history QoMax against the leader's QoMax over
// the matching subsample (last n_k queries, first b_k batches). The leader
// keeps ties.
inline bool sda_duel_challenger_wins(const ArmHistory& challenger, const ArmHistory& leader,
                                     double q) {
    const double challenger_qomax = qomax_full(challenger, q);
    const double leader_qomax =
        qomax_subsample(leader, challenger.queries,
                        static_cast<std::uint32_t>(challenger.batch_count()), q);
    return challenger_qomax > leader_qomax;
}

inline int sda_duel(const ArmHistory& challenger, const ArmHistory& leader, double q) {
    return sda_duel_challenger_wins(challenger, leader, q) ? challenger.arm_id : leader.arm_id;
}

// Round-based subsampling duelling algorithm with QoMax comparisons.
// Each round: pick the leader, duel it against every challenger, then pull
// the winning/forced arms. A pulled arm appends one sample to each of its
// batches; challengers additionally open batches up to ceil(n^gamma), while
// the leader's batch count only tracks the largest challenger's.
class SdaPolicy {
public:
    SdaPolicy(int num_arms, SdaParams params) : params_(params) {
        histories_.resize(static_cast<std::size_t>(num_arms));
        for (int k = 0; k < num_arms; ++k) histories_[static_cast<std::size_t>(k)].arm_id = k;
    }

    // Leader and pull set for the round about to be collected.
    std::vector<int> plan_round(long round) const {
        const int num_arms = static_cast<int>(histories_.size());
        if (round <= 1) {
            std::vector<int> all(static_cast<std::size_t>(num_arms));
            for (int k = 0; k < num_arms; ++k) all[static_cast<std::size_t>(k)] = k;
            return all;
        }
        const int leader = sda_leader(histories_, params_.q);
        const double obligation = forced_exploration(round, params_.gamma);
        std::vector<int> pulls;
        for (int k = 0; k < num_arms; ++k) {
            if (k == leader) continue;
            const auto& challenger = histories_[static_cast<std::size_t>(k)];
            if (static_cast<double>(challenger.queries) < obligation ||
                sda_duel_challenger_wins(challenger, histories_[static_cast<std::size_t>(leader)],
                                         params_.q)) {
                pulls.push_back(k);
            }
        }
        if (pulls.empty()) pulls.push_back(leader);
        return pulls;
    }

    // Runs one full round. Returns false once the reward budget is exhausted.
    bool step_round(RewardSource& source) {
        ++round_;
        leader_ = round_ == 1 ? -1 : sda_leader(histories_, params_.q);
        last_pulls_ = plan_round(round_);
        for (int k : last_pulls_) {
            if (!collect(source, k, /*as_challenger=*/k != leader_)) return false;
        }
        if (leader_ >= 0 && !align_leader(source)) return false;
        return !source.exhausted();
    }

    long round() const { return round_; }
    int leader() const { return leader_; }
    const std::vector<int>& last_pulls() const { return last_pulls_; }
    const std::vector<ArmHistory>& histories() const { return histories_; }
    const SdaParams& params() const { return params_; }

    std::size_t memory_cells() const {
        std::size_t cells = 0;
        for (const auto& h : histories_) cells += h.memory_cells();
        return cells;
    }

private:
    // One query: a fresh sample for every existing batch, then (for
    // challengers) new batches backfilled with the full n_k samples each.
    bool collect(RewardSource& source, int k, bool as_challenger) {
        auto& history = histories_[static_cast<std::size_t>(k)];
        ++history.queries;
        for (auto& batch : history.batches) {
            const auto x = source.draw(k);
            if (!x) return false;
            batch.insert(history.queries, *x);
        }
        if (!as_challenger) return true;
        const std::uint32_t target = batch_count_target(history.queries, params_.gamma);
        return grow_batches(source, history, target);
    }

    bool align_leader(RewardSource& source) {
        std::uint32_t target = 0;
        for (const auto& h : histories_) {
            if (h.arm_id != leader_)
                target = std::max(target, static_cast<std::uint32_t>(h.batch_count()));
        }
        return grow_batches(source, histories_[static_cast<std::size_t>(leader_)], target);
    }

    bool grow_batches(RewardSource& source, ArmHistory& history, std::uint32_t target) {
        while (history.batch_count() < target) {
            MaxRecord batch;
            for (std::uint32_t n = 1; n <= history.queries; ++n) {
                const auto x = source.draw(history.arm_id);
                if (!x) return false;  // truncated batch never enters the estimator state
                batch.insert(n, *x);
            }
            history.batches.push_back(std::move(batch));
        }
        return true;
    }

    SdaParams params_;
    std::vector<ArmHistory> histories_;
    long round_ = 0;
    int leader_ = -1;
    std::vector<int> last_pulls_;
};

}  // namespace qomax
