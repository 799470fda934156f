#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "qomax/errors.hpp"

namespace qomax {

// Rolling-maxima history of one batch: the stored values are strictly
// decreasing, their 1-based query indices strictly increasing, and the value
// at the first stored index > c is the maximum over everything inserted
// after query c. Keeping only this frontier is what drops the expected
// footprint of an N-sample batch to H_N cells.
class MaxRecord {
public:
    // Inserts the sample for the given query. Any stored value <= the new
    // sample can never be a suffix maximum again and is evicted; ties evict
    // the older entry so the freshest index survives.
    void insert(std::uint32_t query_index, double value) {
        if (!indices_.empty() && query_index <= indices_.back())
            throw OutOfOrderIndex("MaxRecord: query indices must arrive in increasing order");
        const auto keep_end = std::partition_point(values_.begin(), values_.end(),
                                                   [value](double v) { return v > value; });
        const auto kept = static_cast<std::size_t>(keep_end - values_.begin());
        values_.resize(kept);
        indices_.resize(kept);
        values_.push_back(value);
        indices_.push_back(query_index);
    }

    // Maximum over all samples with query index > cutoff.
    double suffix_max(std::uint32_t cutoff) const {
        if (indices_.empty()) throw EmptyRecord("MaxRecord: record is empty");
        const auto it = std::upper_bound(indices_.begin(), indices_.end(), cutoff);
        if (it == indices_.end()) throw EmptySuffix("MaxRecord: cutoff at or past last query");
        return values_[static_cast<std::size_t>(it - indices_.begin())];
    }

    double batch_max() const {
        if (values_.empty()) throw EmptyRecord("MaxRecord: record is empty");
        return values_.front();
    }

    std::size_t memory_cells() const { return values_.size(); }
    bool empty() const { return values_.empty(); }
    std::uint32_t last_index() const {
        if (indices_.empty()) throw EmptyRecord("MaxRecord: record is empty");
        return indices_.back();
    }

    const std::vector<std::uint32_t>& indices() const { return indices_; }
    const std::vector<double>& values() const { return values_; }

private:
    std::vector<std::uint32_t> indices_;
    std::vector<double> values_;
};

}  // namespace qomax
