#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "qomax/errors.hpp"
#include "qomax/max_record.hpp"
#include "qomax/rank.hpp"

namespace qomax {

// Per-arm sample history: queries (one per selection of the arm) spread over
// equally sized batches, each batch kept as a compressed maxima record.
struct ArmHistory {
    int arm_id = 0;
    std::uint32_t queries = 0;  // n_k; every batch holds exactly this many samples
    std::vector<MaxRecord> batches;

    std::size_t batch_count() const { return batches.size(); }
    std::size_t memory_cells() const {
        std::size_t cells = 0;
        for (const auto& b : batches) cells += b.memory_cells();
        return cells;
    }
};

// Quantile of order q over a set of batch maxima: the value of ascending
// rank ceil(b*q).
inline double qomax_of_maxima(std::vector<double> maxima, double q) {
    if (maxima.empty()) throw EmptyInput("qomax_of_maxima: no batch maxima");
    const std::size_t rank = quantile_rank(maxima.size(), q);
    std::nth_element(maxima.begin(), maxima.begin() + static_cast<std::ptrdiff_t>(rank - 1),
                     maxima.end());
    return maxima[rank - 1];
}

// QoMax of an arm's full history.
inline double qomax_full(const ArmHistory& history, double q) {
    if (history.batches.empty()) throw EmptyHistory("qomax_full: arm has no batches");
    std::vector<double> maxima;
    maxima.reserve(history.batches.size());
    for (const auto& b : history.batches) maxima.push_back(b.batch_max());
    return qomax_of_maxima(std::move(maxima), q);
}

// QoMax of the leader's subsample: its first b_sub batches restricted to
// their last n_sub queries. The restriction is a suffix-max lookup per
// batch, so the subsample is never materialized.
inline double qomax_subsample(const ArmHistory& leader, std::uint32_t n_sub, std::uint32_t b_sub,
                              double q) {
    if (n_sub == 0 || b_sub == 0) throw EmptyInput("qomax_subsample: empty subsample");
    if (n_sub > leader.queries || b_sub > leader.batch_count())
        throw SubsampleTooLarge("qomax_subsample: subsample exceeds leader history");
    const std::uint32_t cutoff = leader.queries - n_sub;
    std::vector<double> maxima;
    maxima.reserve(b_sub);
    for (std::uint32_t j = 0; j < b_sub; ++j) maxima.push_back(leader.batches[j].suffix_max(cutoff));
    return qomax_of_maxima(std::move(maxima), q);
}

}  // namespace qomax
