#pragma once

// Brute-force references used by the tests and the diagnostic CLI
// subcommands. Everything here recomputes from raw samples and deliberately
// avoids the compressed-maxima and estimator headers.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "qomax/distributions.hpp"
#include "qomax/errors.hpp"
#include "qomax/parallel.hpp"
#include "qomax/rng.hpp"

namespace qomax::oracle {

namespace detail {

// Same rank rule as the estimator, restated locally to keep the oracle
// independent of the code paths it checks.
inline double rank_quantile(std::vector<double> values, double q) {
    if (values.empty()) throw EmptyInput("oracle: empty sample");
    if (!(q > 0.0 && q < 1.0)) throw InvalidQuantile("oracle: q must be in (0,1)");
    std::sort(values.begin(), values.end());
    long r = static_cast<long>(std::ceil(static_cast<double>(values.size()) * q - 1e-9));
    if (r < 1) r = 1;
    if (r > static_cast<long>(values.size())) r = static_cast<long>(values.size());
    return values[static_cast<std::size_t>(r - 1)];
}

}  // namespace detail

// Quantile of per-batch maxima over an uncompressed table; table[j] is
// batch j's raw sample sequence.
inline double naive_qomax(const std::vector<std::vector<double>>& table, double q) {
    if (table.empty()) throw EmptyInput("naive_qomax: no batches");
    std::vector<double> maxima;
    maxima.reserve(table.size());
    for (const auto& batch : table) {
        if (batch.empty()) throw EmptyInput("naive_qomax: empty batch");
        maxima.push_back(*std::max_element(batch.begin(), batch.end()));
    }
    return detail::rank_quantile(std::move(maxima), q);
}

// Maximum over the samples with 1-based position > cutoff.
inline double naive_suffix_max(const std::vector<double>& sequence, std::size_t cutoff) {
    if (cutoff >= sequence.size()) throw EmptySuffix("naive_suffix_max: cutoff past last sample");
    return *std::max_element(sequence.begin() + static_cast<std::ptrdiff_t>(cutoff),
                             sequence.end());
}

struct ComparisonEstimate {
    double probability;
    double std_error;
    long failures;
    long reps;
};

// Monte Carlo estimate of P(QoMax(dist1) <= QoMax(dist2)) with b batches of
// n samples per side. Replications are split across threads; each draws its
// own substream, so the count is schedule-independent.
inline ComparisonEstimate mc_comparison_prob(const ArmDistribution& dist1,
                                             const ArmDistribution& dist2, std::size_t n,
                                             std::size_t b, double q, long reps,
                                             std::uint64_t seed) {
    const unsigned workers = worker_count(static_cast<std::size_t>(reps));
    std::vector<long> fail_per_worker(workers, 0);
    parallel_for(workers, [&](std::size_t w) {
        const long lo = static_cast<long>(w) * reps / static_cast<long>(workers);
        const long hi = (static_cast<long>(w) + 1) * reps / static_cast<long>(workers);
        std::vector<double> maxima1(b);
        std::vector<double> maxima2(b);
        long failures = 0;
        for (long rep = lo; rep < hi; ++rep) {
            Rng rng(substream_seed(seed, static_cast<std::uint64_t>(rep)));
            for (std::size_t j = 0; j < b; ++j) {
                double m1 = sample(dist1, rng);
                double m2 = sample(dist2, rng);
                for (std::size_t i = 1; i < n; ++i) {
                    m1 = std::max(m1, sample(dist1, rng));
                    m2 = std::max(m2, sample(dist2, rng));
                }
                maxima1[j] = m1;
                maxima2[j] = m2;
            }
            const double q1 = detail::rank_quantile(maxima1, q);
            const double q2 = detail::rank_quantile(maxima2, q);
            if (q1 <= q2) ++failures;
        }
        fail_per_worker[w] = failures;
    });
    long failures = 0;
    for (long f : fail_per_worker) failures += f;
    const double p = static_cast<double>(failures) / static_cast<double>(reps);
    const double se = std::sqrt(std::max(p * (1.0 - p), 0.0) / static_cast<double>(reps));
    return {p, se, failures, reps};
}

// Partial harmonic sum H_N, summed smallest-first.
inline double harmonic(long n) {
    double h = 0.0;
    for (long k = n; k >= 1; --k) h += 1.0 / static_cast<double>(k);
    return h;
}

// Monte Carlo mean of the maximum of `horizon` draws.
inline double mc_expected_max(const ArmDistribution& dist, long long horizon, long reps,
                              std::uint64_t seed) {
    const unsigned workers = worker_count(static_cast<std::size_t>(reps));
    std::vector<double> sum_per_worker(workers, 0.0);
    parallel_for(workers, [&](std::size_t w) {
        const long lo = static_cast<long>(w) * reps / static_cast<long>(workers);
        const long hi = (static_cast<long>(w) + 1) * reps / static_cast<long>(workers);
        double sum = 0.0;
        for (long rep = lo; rep < hi; ++rep) {
            Rng rng(substream_seed(seed, static_cast<std::uint64_t>(rep)));
            double m = sample(dist, rng);
            for (long long t = 1; t < horizon; ++t) m = std::max(m, sample(dist, rng));
            sum += m;
        }
        sum_per_worker[w] = sum;
    });
    double total = 0.0;
    for (double s : sum_per_worker) total += s;
    return total / static_cast<double>(reps);
}

}  // namespace qomax::oracle
