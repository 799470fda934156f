#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <vector>

#include "qomax/oracle.hpp"
#include "qomax/qomax.hpp"
#include "qomax/rank.hpp"

using namespace qomax;

namespace {

// Builds a history and the matching raw table: batch j holds table[j][0..n)
// with query indices 1..n.
ArmHistory history_from_table(const std::vector<std::vector<double>>& table) {
    ArmHistory history;
    history.queries = static_cast<std::uint32_t>(table.front().size());
    for (const auto& row : table) {
        MaxRecord record;
        for (std::size_t i = 0; i < row.size(); ++i)
            record.insert(static_cast<std::uint32_t>(i + 1), row[i]);
        history.batches.push_back(std::move(record));
    }
    return history;
}

std::vector<std::vector<double>> random_table(std::size_t batches, std::size_t queries, Rng& rng,
                                              const ArmDistribution& dist) {
    std::vector<std::vector<double>> table(batches, std::vector<double>(queries));
    for (auto& row : table)
        for (auto& x : row) x = sample(dist, rng);
    return table;
}

}  // namespace

TEST_CASE("quantile rank rule") {
    CHECK(quantile_rank(4, 0.5) == 2);
    CHECK(quantile_rank(10, 0.9) == 9);   // 10*0.9 floats to 9.000000000000002
    CHECK(quantile_rank(10, 0.3) == 3);   // 10*0.3 floats to 3.0000000000000004
    CHECK(quantile_rank(10, 0.25) == 3);
    CHECK(quantile_rank(1, 0.99) == 1);
    CHECK_THROWS_AS(quantile_rank(0, 0.5), EmptyInput);
    CHECK_THROWS_AS(quantile_rank(5, 0.0), InvalidQuantile);
    CHECK_THROWS_AS(quantile_rank(5, 1.0), InvalidQuantile);
}

TEST_CASE("qomax of maxima") {
    CHECK(qomax_of_maxima({5.0, 1.0, 3.0, 2.0}, 0.5) == 2.0);
    CHECK(qomax_of_maxima({7.5}, 0.123) == 7.5);
    std::vector<double> one_to_ten = {4, 9, 1, 10, 2, 6, 3, 8, 5, 7};
    CHECK(qomax_of_maxima(one_to_ten, 0.9) == 9.0);
    CHECK_THROWS_AS(qomax_of_maxima({}, 0.5), EmptyInput);
    CHECK_THROWS_AS(qomax_of_maxima({1.0}, 1.5), InvalidQuantile);
}

TEST_CASE("qomax is monotone in the quantile level") {
    Rng rng(17);
    std::vector<double> maxima(37);
    for (auto& x : maxima) x = sample(Pareto(1.0, 1.3), rng);
    double previous = -1.0;
    for (double q = 0.05; q < 1.0; q += 0.05) {
        const double value = qomax_of_maxima(maxima, q);
        CHECK(value >= previous);
        previous = value;
    }
}

TEST_CASE("qomax over full history") {
    const auto history = history_from_table({{7.0, 1.0}, {0.5, 2.0}, {5.0, 4.0}});
    CHECK(qomax_full(history, 0.5) == 5.0);  // batch maxima {7, 2, 5}
    const auto single = history_from_table({{3.0, 8.0}});
    CHECK(qomax_full(single, 0.5) == 8.0);
    CHECK_THROWS_AS(qomax_full(ArmHistory{}, 0.5), EmptyHistory);
}

TEST_CASE("leader subsample on a hand-built history") {
    // suffix maxima over queries 7..10 are {4, 9, 1}
    const auto leader = history_from_table({
        {9, 8, 7, 6, 5, 4, 4, 3, 2, 1},
        {1, 2, 3, 4, 5, 6, 9, 1, 1, 1},
        {9, 8, 7, 6, 5, 4, 1, 1, 1, 0.5},
    });
    CHECK(qomax_subsample(leader, 4, 3, 0.5) == 4.0);
    CHECK(qomax_subsample(leader, 10, 3, 0.5) == qomax_full(leader, 0.5));
    CHECK_THROWS_AS(qomax_subsample(leader, 11, 3, 0.5), SubsampleTooLarge);
    CHECK_THROWS_AS(qomax_subsample(leader, 4, 4, 0.5), SubsampleTooLarge);
}

TEST_CASE("estimators agree with the raw-table oracle") {
    const std::vector<ArmDistribution> dists = {Pareto(1.0, 1.2), Exponential(1.5),
                                                Gaussian(0.0, 2.0), DiracParetoMixture(0.7, 1.4)};
    Rng rng(555);
    for (int instance = 0; instance < 300; ++instance) {
        const auto& dist = dists[static_cast<std::size_t>(instance) % dists.size()];
        const auto b = 1 + static_cast<std::size_t>(uniform_open01(rng) * 20.0);
        const auto n = 1 + static_cast<std::size_t>(uniform_open01(rng) * 20.0);
        const double q = 0.05 + 0.9 * uniform_open01(rng);
        const auto table = random_table(b, n, rng, dist);
        const auto history = history_from_table(table);

        CHECK(qomax_full(history, q) == oracle::naive_qomax(table, q));

        const auto n_sub = 1 + static_cast<std::uint32_t>(uniform_open01(rng) * (n - 1));
        const auto b_sub = 1 + static_cast<std::size_t>(uniform_open01(rng) * (b - 1));
        std::vector<std::vector<double>> rectangle;
        for (std::size_t j = 0; j < b_sub; ++j)
            rectangle.emplace_back(table[j].end() - n_sub, table[j].end());
        CHECK(qomax_subsample(history, n_sub, static_cast<std::uint32_t>(b_sub), q) ==
              oracle::naive_qomax(rectangle, q));
    }
}
