#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ilbench/algorithms.hpp"
#include "ilbench/cliff.hpp"
#include "ilbench/mdp.hpp"
#include "ilbench/rng.hpp"

namespace ilbench {

/// One algorithm entry of an experiment, with its annotation budgets.
struct AlgorithmSpec {
    std::string algorithm; // bc | stagger | warm_stagger | tragger | warm_tragger
    std::string label;     // run_group in the CSV; defaults to the algorithm name
    long long offline_pairs = 0;
    long long n_int = 0;

    double total_cost(double cost_ratio) const {
        return static_cast<double>(offline_pairs) + cost_ratio * static_cast<double>(n_int);
    }
};

/// Environment selection: a cliff preset, inline cliff parameters, or an
/// MDP file as emitted by `ilbench cliff` (mdp + expert [+ cliff_config]).
struct EnvSpec {
    std::string cliff_preset; // "figure2" | "theorem" | ""
    std::optional<CliffConfig> cliff_config;
    std::string mdp_file;
};

struct ExperimentConfig {
    EnvSpec env;
    std::vector<AlgorithmSpec> algorithms;
    double cost_ratio = 1.0; // C
    int num_runs = 1;
    std::uint64_t master_seed = 0;
    double eval_every_cost = 50.0;
    std::string out_dir;
    bool equal_cost = false;
    std::string learner = "memorizing"; // exp_weights | version_space | memorizing
    double eta = 1.0;
    int bootstrap_resamples = 1000;
    int threads = 0; // 0: ILBENCH_THREADS env var, else 1

    void validate() const;
    std::string to_json() const;
    static ExperimentConfig from_json(const std::string& text);
    static ExperimentConfig from_json_file(const std::string& path);
};

/// Aggregated learning curve of one algorithm entry on the shared cost
/// grid, with 10th/90th-percentile bootstrap bands of the mean return.
struct ExperimentCurve {
    std::string algorithm;
    std::string label;
    std::vector<double> cost;
    std::vector<double> annotations; // mean annotation count per checkpoint
    std::vector<double> return_mean;
    std::vector<double> return_p10;
    std::vector<double> return_p90;
    std::vector<double> cov_e;
    std::vector<double> cov_e_prime;
    std::vector<double> b_prime_frac;
    /// Per-run returns at each checkpoint, kept for bootstrap and checks:
    /// run_returns[r][k].
    std::vector<std::vector<double>> run_returns;
};

/// The resolved environment an experiment runs in.
struct Environment {
    TabularMdp mdp;
    DetPolicy expert;
    std::optional<CliffConfig> cliff; // engages coverage semantics + fast eval
};

Environment resolve_environment(const EnvSpec& env);

/// Seeded Monte Carlo runs for every algorithm entry; deterministic for a
/// fixed config regardless of thread count.
std::vector<ExperimentCurve> run_experiment(const ExperimentConfig& config);

struct BootstrapBand {
    double p10 = 0.0;
    double p90 = 0.0;
    bool degenerate = false; // fewer than 2 samples
};

/// Percentile bootstrap of the mean with nearest-rank percentiles.
BootstrapBand bootstrap_band(std::span<const double> samples, int resamples, Rng& rng);

/// Writes results.csv, ledger.csv, config.json and the per-panel SVG charts
/// into config.out_dir.
void emit_outputs(const std::vector<ExperimentCurve>& curves, const ExperimentConfig& config);

/// results.csv content (also written by emit_outputs).
std::string results_csv(const std::vector<ExperimentCurve>& curves);

} // namespace ilbench
