// Command line harness: experiment runner plus the storage / concentration /
// expected-max diagnostics.

#include <cinttypes>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qomax/config.hpp"
#include "qomax/max_record.hpp"
#include "qomax/oracle.hpp"
#include "qomax/runner.hpp"

namespace {

// Distribution specs on the command line: kind:params, e.g. "pareto:1,1.5",
// "exponential:1", "gaussian:0,1", "lognormal:1,4", "gg:0.4",
// "dirac-pareto:0.8,1.1".
qomax::ArmDistribution parse_dist_spec(const std::string& text) {
    const auto colon = text.find(':');
    if (colon == std::string::npos)
        throw qomax::ConfigError("distribution spec needs kind:params, got '" + text + "'");
    const std::string kind = text.substr(0, colon);
    std::vector<double> params;
    std::string rest = text.substr(colon + 1);
    std::size_t pos = 0;
    while (pos <= rest.size()) {
        auto comma = rest.find(',', pos);
        if (comma == std::string::npos) comma = rest.size();
        try {
            params.push_back(std::stod(rest.substr(pos, comma - pos)));
        } catch (const std::exception&) {
            throw qomax::ConfigError("bad number in distribution spec '" + text + "'");
        }
        pos = comma + 1;
    }
    const auto need = [&](std::size_t n) {
        if (params.size() != n)
            throw qomax::ConfigError("distribution '" + kind + "' takes " + std::to_string(n) +
                                     " parameter(s)");
    };
    if (kind == "pareto") {
        need(2);
        return qomax::Pareto(params[0], params[1]);
    }
    if (kind == "exponential") {
        need(1);
        return qomax::Exponential(params[0]);
    }
    if (kind == "gaussian") {
        need(2);
        return qomax::Gaussian(params[0], params[1]);
    }
    if (kind == "lognormal") {
        need(2);
        return qomax::LogNormal(params[0], params[1]);
    }
    if (kind == "gg" || kind == "generalized-gaussian") {
        need(1);
        return qomax::GeneralizedGaussian(params[0]);
    }
    if (kind == "dirac-pareto" || kind == "dirac-pareto-mixture") {
        need(2);
        return qomax::DiracParetoMixture(params[0], params[1]);
    }
    throw qomax::ConfigError("unknown distribution kind '" + kind + "'");
}

std::vector<std::size_t> parse_batches(const std::string& text) {
    std::vector<std::size_t> batches;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto comma = text.find(',', pos);
        if (comma == std::string::npos) comma = text.size();
        batches.push_back(static_cast<std::size_t>(std::stoul(text.substr(pos, comma - pos))));
        pos = comma + 1;
    }
    return batches;
}

int cmd_run(const std::string& config_path, int preset_id, const std::vector<std::string>& algos,
            std::vector<long long> horizons, long trajectories, std::uint64_t seed, bool has_seed,
            const std::string& out_dir, bool raw) {
    qomax::ExperimentConfig config;
    if (!config_path.empty()) {
        config = qomax::load_config(config_path);
    } else if (preset_id >= 1) {
        config = qomax::preset(preset_id);
    } else {
        std::fprintf(stderr, "run: either --config or --preset is required\n");
        return 2;
    }
    if (!algos.empty()) {
        config.algorithms.clear();
        for (const auto& a : algos) config.algorithms.push_back(qomax::PolicySpec::parse(a));
    }
    if (!horizons.empty()) config.horizons = std::move(horizons);
    if (trajectories > 0) config.trajectories = trajectories;
    if (has_seed) config.master_seed = seed;
    config.validate();
    qomax::run_experiment(config, out_dir, raw);
    std::printf("wrote %s/summary.csv (%zu algorithms x %zu horizons x %ld trajectories)\n",
                out_dir.c_str(), config.algorithms.size(), config.horizons.size(),
                config.trajectories);
    return 0;
}

int cmd_storage_bench(long n, long reps, std::uint64_t seed, const std::string& dist_spec) {
    const qomax::ArmDistribution dist = parse_dist_spec(dist_spec);
    std::vector<std::size_t> cells(static_cast<std::size_t>(reps));
    qomax::parallel_for(static_cast<std::size_t>(reps), [&](std::size_t rep) {
        qomax::Rng rng(qomax::substream_seed(seed, rep));
        qomax::MaxRecord record;
        for (long i = 1; i <= n; ++i)
            record.insert(static_cast<std::uint32_t>(i), qomax::sample(dist, rng));
        cells[rep] = record.memory_cells();
    });
    double mean = 0.0;
    std::size_t max_cells = 0;
    for (std::size_t c : cells) {
        mean += static_cast<double>(c);
        max_cells = std::max(max_cells, c);
    }
    mean /= static_cast<double>(reps);
    std::printf("n=%ld reps=%ld mean_cells=%.4f harmonic=%.4f max_cells=%zu\n", n, reps, mean,
                qomax::oracle::harmonic(n), max_cells);
    return 0;
}

int cmd_concentration(const std::vector<std::string>& pair, std::size_t n,
                      const std::string& batches, double q, long reps, std::uint64_t seed,
                      const std::string& out_path) {
    const auto dist1 = parse_dist_spec(pair[0]);
    const auto dist2 = parse_dist_spec(pair[1]);
    std::ofstream file;
    std::ostream* out = &std::cout;
    if (!out_path.empty()) {
        file.open(out_path, std::ios::binary);
        if (!file) throw qomax::Error("cannot write " + out_path);
        out = &file;
    }
    *out << "b,p_failure,se,failures,reps\n";
    for (std::size_t b : parse_batches(batches)) {
        const auto est = qomax::oracle::mc_comparison_prob(dist1, dist2, n, b, q, reps,
                                                           qomax::substream_seed(seed, b));
        char line[160];
        std::snprintf(line, sizeof(line), "%zu,%.9g,%.9g,%ld,%ld\n", b, est.probability,
                      est.std_error, est.failures, est.reps);
        *out << line;
    }
    return 0;
}

int cmd_expected_max(const std::string& dist_spec, long long horizon, long reps,
                     std::uint64_t seed) {
    const auto dist = parse_dist_spec(dist_spec);
    const double approx = qomax::expected_max_approx(dist, horizon);
    std::printf("dist=%s horizon=%lld expected_max=%.6f per_quantile=%.6f\n", dist_spec.c_str(),
                horizon, approx, qomax::per_quantile(dist, horizon));
    if (reps > 0) {
        const double mc = qomax::oracle::mc_expected_max(dist, horizon, reps, seed);
        std::printf("monte_carlo=%.6f (reps=%ld) rel_diff=%.4f\n", mc, reps,
                    (mc - approx) / approx);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Extreme bandit experiments: QoMax-ETC / QoMax-SDA and baselines"};
    app.require_subcommand(1);

    auto* run = app.add_subcommand("run", "run an experiment and write summary.csv");
    std::string config_path;
    int preset_id = 0;
    std::vector<std::string> algos;
    std::vector<long long> horizons;
    long trajectories = 0;
    std::uint64_t seed = 0;
    std::string out_dir = "out";
    bool raw = false;
    run->add_option("--config", config_path, "JSON experiment config");
    run->add_option("--preset", preset_id, "built-in experiment id (1..8)")->check(CLI::Range(1, 8));
    run->add_option("--algo", algos, "algorithm spec, e.g. qomax-sda:q=0.5,gamma=0.667");
    run->add_option("--horizon", horizons, "horizon(s) T");
    run->add_option("--trajectories", trajectories, "independent trajectories per cell");
    auto* seed_opt = run->add_option("--seed", seed, "master seed");
    run->add_option("-o,--out", out_dir, "output directory");
    run->add_flag("--raw", raw, "also write trajectories.jsonl");

    auto* storage = app.add_subcommand("storage-bench", "rolling-maxima storage cost vs H_N");
    long bench_n = 10000;
    long bench_reps = 1000;
    std::uint64_t bench_seed = 7;
    std::string bench_dist = "exponential:1";
    storage->add_option("--n", bench_n, "sequence length");
    storage->add_option("--reps", bench_reps, "number of sequences");
    storage->add_option("--seed", bench_seed, "seed");
    storage->add_option("--dist", bench_dist, "sampled distribution");

    auto* conc = app.add_subcommand("concentration", "QoMax comparison failure probability vs b");
    std::vector<std::string> pair;
    std::size_t conc_n = 30;
    std::string conc_batches = "10,40,160";
    double conc_q = 0.5;
    long conc_reps = 10000;
    std::uint64_t conc_seed = 1;
    std::string conc_out;
    conc->add_option("--pair", pair, "two distribution specs")->expected(2)->required();
    conc->add_option("--n", conc_n, "samples per batch");
    conc->add_option("--batches", conc_batches, "comma-separated batch counts");
    conc->add_option("--q", conc_q, "quantile level");
    conc->add_option("--reps", conc_reps, "replications per batch count");
    conc->add_option("--seed", conc_seed, "seed");
    conc->add_option("-o,--out", conc_out, "output CSV (default stdout)");

    auto* emax = app.add_subcommand("expected-max", "expected maximum: formula vs Monte Carlo");
    std::string emax_dist;
    long long emax_horizon = 10000;
    long emax_reps = 0;
    std::uint64_t emax_seed = 1;
    emax->add_option("--dist", emax_dist, "distribution spec")->required();
    emax->add_option("--horizon", emax_horizon, "number of draws T");
    emax->add_option("--reps", emax_reps, "Monte Carlo replications (0 = formula only)");
    emax->add_option("--seed", emax_seed, "seed");

    CLI11_PARSE(app, argc, argv);

    try {
        if (run->parsed())
            return cmd_run(config_path, preset_id, algos, std::move(horizons), trajectories, seed,
                           !seed_opt->empty(), out_dir, raw);
        if (storage->parsed()) return cmd_storage_bench(bench_n, bench_reps, bench_seed, bench_dist);
        if (conc->parsed())
            return cmd_concentration(pair, conc_n, conc_batches, conc_q, conc_reps, conc_seed,
                                     conc_out);
        if (emax->parsed()) return cmd_expected_max(emax_dist, emax_horizon, emax_reps, emax_seed);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 0;
}
