#pragma once

#include <string>
#include <vector>

#include "rml/knn.hpp"
#include "rml/solver.hpp"

namespace rml {

/// One experiment description: dataset, pipeline settings, solver settings,
/// and the repetition scheme (n_seeds consecutive seeds from base_seed).
struct ExperimentConfig {
    std::string data_path;
    LabelColumn label_column = -1;  // -1: last column
    bool has_header = false;

    double train_fraction = 0.85;
    int knn_k = 5;
    double eta = 0.8;
    double lambda = 1.0;  // single-lambda commands (train, sweep-eta)
    std::vector<double> lambda_grid = {0.125, 0.25, 0.5, 1.0,  2.0, 4.0,
                                       8.0,   16.0, 32.0, 64.0, 100.0};
    double epsilon = 1e-3;
    long max_iters = 2000;  // 0: the solver's theoretical default cap
    std::string solver = "nesterov";  // nesterov | subgradient | both
    std::uint64_t base_seed = 0;
    int n_seeds = 10;
    int cap_per_anchor = 20;
    bool standardize = true;

    void validate() const;
};

ExperimentConfig load_config_json(const std::string& path);

/// Pipeline products for one seed: standardized train/test splits and the
/// noisy triplet set.
struct PreparedSplit {
    LabeledDataset train;
    LabeledDataset test;
    TripletDataset triplets;
    std::vector<bool> flipped;
};

PreparedSplit prepare_split(const ExperimentConfig& cfg,
                            const LabeledDataset& ds, std::uint64_t seed);

/// Runs one solver on a prepared triplet set.
SolveResult run_solver(const ExperimentConfig& cfg, const std::string& method,
                       const TripletDataset& triplets, double lambda);

/// Picks lambda from the grid by leave-one-out training error, trains, and
/// reports the test error.
double run_method_on_split(const ExperimentConfig& cfg,
                           const std::string& method,
                           const PreparedSplit& split);

struct BenchRow {
    std::string method;  // rml-nesterov | rml-subgradient | eucl
    EvalReport report;
};

struct BenchReport {
    std::vector<BenchRow> rows;

    std::string to_table() const;
    std::string to_csv() const;
};

/// Table-2-style benchmark: per seed, split/generate/flip once, then run each
/// method on the same noisy triplets.
BenchReport run_bench(const ExperimentConfig& cfg, const LabeledDataset& ds);

struct SweepRow {
    double eta = 0.0;
    std::string method;
    double mean = 0.0;
    double stddev = 0.0;
};

/// Error-vs-eta curves at fixed lambda (cfg.lambda).
std::vector<SweepRow> run_sweep_eta(const ExperimentConfig& cfg,
                                    const LabeledDataset& ds,
                                    const std::vector<double>& etas);

std::string sweep_to_csv(const std::vector<SweepRow>& rows);

// --- serialization ---

std::string metric_to_json(const Metric& m);
Metric metric_from_json(const std::string& text);

/// Trace CSV with header `iter,objective,dual,gap,seconds`.
std::string trace_to_csv(const SolverTrace& trace);

void write_file(const std::string& path, const std::string& content);
std::string read_file(const std::string& path);

}  // namespace rml
