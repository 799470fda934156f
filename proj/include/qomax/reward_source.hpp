#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <vector>

#include "qomax/distributions.hpp"
#include "qomax/rng.hpp"

namespace qomax {

// Budgeted stream of rewards. Policies pull through this interface; the
// horizon lives here, so every policy shares the same draw accounting and
// the same truncation behaviour when the budget runs out.
class RewardSource {
public:
    virtual ~RewardSource() = default;

    // One reward from the given arm, or nullopt once the budget is spent.
    virtual std::optional<double> draw(int arm) = 0;
    virtual long long remaining() const = 0;

    bool exhausted() const { return remaining() == 0; }
};

// Lazily draws i.i.d. rewards from the arm distributions; realizes exactly
// the cells a policy asks for, in collection order, from one seeded stream.
class SampledRewardSource final : public RewardSource {
public:
    SampledRewardSource(const std::vector<ArmDistribution>& arms, long long budget,
                        std::uint64_t seed)
        : arms_(&arms), remaining_(budget), rng_(seed), pulls_(arms.size(), 0) {}

    std::optional<double> draw(int arm) override {
        if (remaining_ == 0) return std::nullopt;
        --remaining_;
        ++pulls_[static_cast<std::size_t>(arm)];
        const double x = sample((*arms_)[static_cast<std::size_t>(arm)], rng_);
        if (drawn_ == 0 || x > max_reward_) max_reward_ = x;
        ++drawn_;
        return x;
    }

    long long remaining() const override { return remaining_; }
    long long drawn() const { return drawn_; }
    double max_reward() const { return max_reward_; }
    const std::vector<long long>& pulls() const { return pulls_; }

private:
    const std::vector<ArmDistribution>* arms_;
    long long remaining_;
    long long drawn_ = 0;
    double max_reward_ = 0.0;
    Rng rng_;
    std::vector<long long> pulls_;
};

// Replays fixed per-arm reward tables; test double for order-based
// invariants such as scale equivariance.
class TableRewardSource final : public RewardSource {
public:
    TableRewardSource(std::vector<std::vector<double>> tables, long long budget, double scale = 1.0)
        : tables_(std::move(tables)), cursors_(tables_.size(), 0), remaining_(budget),
          scale_(scale) {}

    std::optional<double> draw(int arm) override {
        const auto k = static_cast<std::size_t>(arm);
        if (remaining_ == 0 || cursors_[k] >= tables_[k].size()) return std::nullopt;
        --remaining_;
        return scale_ * tables_[k][cursors_[k]++];
    }

    long long remaining() const override { return remaining_; }

private:
    std::vector<std::vector<double>> tables_;
    std::vector<std::size_t> cursors_;
    long long remaining_;
    double scale_;
};

}  // namespace qomax
