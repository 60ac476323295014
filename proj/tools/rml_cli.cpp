// Command-line front end: train a robust metric, evaluate it with kNN, run
// Table-2-style benchmarks and eta sweeps, and expose the projection
// primitives for debugging.

#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rml/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;
constexpr int kExitNumerical = 3;

struct CliOptions {
    std::string config_path;
    std::string data;
    std::string label_col;
    double eta = -1.0;
    double lambda = -1.0;
    std::vector<double> lambda_grid;
    double epsilon = -1.0;
    long max_iters = -1;
    int seeds = -1;
    long base_seed = -1;
    int k = -1;
    std::string solver;
    std::string out_dir = ".";
    bool no_standardize = false;
    bool has_header = false;
    double train_fraction = -1.0;
    int cap_per_anchor = -1;
};

void add_common_flags(CLI::App* cmd, CliOptions& opt) {
    cmd->add_option("--config", opt.config_path, "JSON config file; flags win over it");
    cmd->add_option("--data", opt.data, "input CSV path");
    cmd->add_option("--label-col", opt.label_col,
                    "label column (0-based index, or name with --has-header)");
    cmd->add_flag("--has-header", opt.has_header, "first CSV row is a header");
    cmd->add_option("--eta", opt.eta, "trusted fraction of triplets");
    cmd->add_option("--lambda", opt.lambda, "regularization weight");
    cmd->add_option("--lambda-grid", opt.lambda_grid, "lambda tuning grid");
    cmd->add_option("--epsilon", opt.epsilon, "duality-gap tolerance");
    cmd->add_option("--max-iters", opt.max_iters,
                    "iteration cap (0: theoretical default)");
    cmd->add_option("--seeds", opt.seeds, "number of repeated runs");
    cmd->add_option("--base-seed", opt.base_seed, "first seed of the run sequence");
    cmd->add_option("--k", opt.k, "kNN neighbor count");
    cmd->add_option("--solver", opt.solver, "nesterov | subgradient | both");
    cmd->add_option("--out-dir", opt.out_dir, "output directory");
    cmd->add_option("--train-fraction", opt.train_fraction, "training split fraction");
    cmd->add_option("--cap-per-anchor", opt.cap_per_anchor, "triplet cap per anchor");
    cmd->add_flag("--no-standardize", opt.no_standardize,
                  "skip z-scoring by training statistics");
}

rml::ExperimentConfig build_config(const CliOptions& opt) {
    rml::ExperimentConfig cfg;
    if (!opt.config_path.empty()) {
        cfg = rml::load_config_json(opt.config_path);
    }
    if (!opt.data.empty()) cfg.data_path = opt.data;
    if (!opt.label_col.empty()) {
        try {
            std::size_t pos = 0;
            const int idx = std::stoi(opt.label_col, &pos);
            if (pos == opt.label_col.size()) {
                cfg.label_column = idx;
            } else {
                cfg.label_column = opt.label_col;
            }
        } catch (const std::exception&) {
            cfg.label_column = opt.label_col;
        }
    }
    if (opt.has_header) cfg.has_header = true;
    if (opt.eta >= 0.0) cfg.eta = opt.eta;
    if (opt.lambda > 0.0) cfg.lambda = opt.lambda;
    if (!opt.lambda_grid.empty()) cfg.lambda_grid = opt.lambda_grid;
    if (opt.epsilon > 0.0) cfg.epsilon = opt.epsilon;
    if (opt.max_iters >= 0) cfg.max_iters = opt.max_iters;
    if (opt.seeds > 0) cfg.n_seeds = opt.seeds;
    if (opt.base_seed >= 0) cfg.base_seed = static_cast<std::uint64_t>(opt.base_seed);
    if (opt.k > 0) cfg.knn_k = opt.k;
    if (!opt.solver.empty()) cfg.solver = opt.solver;
    if (opt.train_fraction > 0.0) cfg.train_fraction = opt.train_fraction;
    if (opt.cap_per_anchor > 0) cfg.cap_per_anchor = opt.cap_per_anchor;
    if (opt.no_standardize) cfg.standardize = false;
    return cfg;
}

std::string solver_method(const std::string& solver) {
    return solver == "subgradient" ? "rml-subgradient" : "rml-nesterov";
}

int cmd_train(const CliOptions& opt) {
    rml::ExperimentConfig cfg = build_config(opt);
    cfg.validate();
    const rml::LabeledDataset ds =
        rml::load_csv(cfg.data_path, {cfg.label_column, cfg.has_header});
    const rml::PreparedSplit ps = rml::prepare_split(cfg, ds, cfg.base_seed);
    const rml::SolveResult res =
        rml::run_solver(cfg, solver_method(cfg.solver), ps.triplets, cfg.lambda);

    std::filesystem::create_directories(opt.out_dir);
    rml::write_file(opt.out_dir + "/metric.json", rml::metric_to_json(res.metric));
    rml::write_file(opt.out_dir + "/trace.csv", rml::trace_to_csv(res.trace));
    std::cout << "iterations " << res.iterations << "  objective "
              << res.final_objective << "  gap " << res.final_gap << "  "
              << (res.termination == rml::Termination::GapReached ? "converged"
                                                                  : "cap-hit")
              << "\n";
    return kExitOk;
}

int cmd_eval(const CliOptions& opt, const std::string& metric_path) {
    rml::ExperimentConfig cfg = build_config(opt);
    cfg.validate();
    const rml::LabeledDataset ds =
        rml::load_csv(cfg.data_path, {cfg.label_column, cfg.has_header});
    const rml::PreparedSplit ps = rml::prepare_split(cfg, ds, cfg.base_seed);
    rml::Metric metric = metric_path.empty()
                             ? rml::Metric::identity(ps.train.dim)
                             : rml::metric_from_json(rml::read_file(metric_path));
    const rml::EvalReport report =
        rml::evaluate(ps.train, ps.test, metric, cfg.knn_k);
    std::cout << "test error " << 100.0 * report.error_rate << "% on "
              << report.n_test << " points\n";
    return kExitOk;
}

int cmd_bench(const CliOptions& opt) {
    rml::ExperimentConfig cfg = build_config(opt);
    cfg.validate();
    const rml::LabeledDataset ds =
        rml::load_csv(cfg.data_path, {cfg.label_column, cfg.has_header});
    const rml::BenchReport report = rml::run_bench(cfg, ds);

    std::filesystem::create_directories(opt.out_dir);
    rml::write_file(opt.out_dir + "/report.txt", report.to_table());
    rml::write_file(opt.out_dir + "/report.csv", report.to_csv());
    std::cout << report.to_table();
    return kExitOk;
}

int cmd_sweep_eta(const CliOptions& opt, const std::vector<double>& etas) {
    rml::ExperimentConfig cfg = build_config(opt);
    cfg.validate();
    const rml::LabeledDataset ds =
        rml::load_csv(cfg.data_path, {cfg.label_column, cfg.has_header});
    const auto rows = rml::run_sweep_eta(cfg, ds, etas);
    const std::string csv = rml::sweep_to_csv(rows);

    std::filesystem::create_directories(opt.out_dir);
    rml::write_file(opt.out_dir + "/sweep_eta.csv", csv);
    std::cout << csv;
    return kExitOk;
}

// Debug surface: feed a JSON problem on a file or stdin, print the solution.
// {"matrix": [[...]]}                          -> PSD projection
// {"scale":, "center":, "slope":, "budget":}   -> capped-box projection
int cmd_project_test(const std::string& input_path) {
    const std::string text =
        input_path.empty()
            ? std::string(std::istreambuf_iterator<char>(std::cin), {})
            : rml::read_file(input_path);
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw rml::ParseError(std::string("project-test: ") + e.what());
    }
    nlohmann::json out;
    if (j.contains("matrix")) {
        const auto rows = j["matrix"].get<std::vector<std::vector<double>>>();
        const int d = static_cast<int>(rows.size());
        Eigen::MatrixXd m(d, d);
        for (int i = 0; i < d; ++i) {
            for (int k = 0; k < d; ++k) {
                m(i, k) = rows[i].at(k);
            }
        }
        const rml::SymmetricMatrix projected =
            rml::psd_project(rml::SymmetricMatrix::symmetrized(m));
        auto out_rows = nlohmann::json::array();
        for (int i = 0; i < d; ++i) {
            auto row = nlohmann::json::array();
            for (int k = 0; k < d; ++k) {
                row.push_back(projected(i, k));
            }
            out_rows.push_back(std::move(row));
        }
        out["projected"] = std::move(out_rows);
    } else {
        rml::ProjectionProblem p;
        const auto center = j.at("center").get<std::vector<double>>();
        const auto slope = j.at("slope").get<std::vector<double>>();
        p.center = Eigen::Map<const Eigen::VectorXd>(center.data(), center.size());
        p.slope = Eigen::Map<const Eigen::VectorXd>(slope.data(), slope.size());
        p.scale = j.value("scale", 1.0);
        p.budget = j.at("budget").get<double>();
        const rml::WeightVector q = rml::solve_projection(p);
        out["q"] = std::vector<double>(q.weights.data(),
                                       q.weights.data() + q.weights.size());
        out["sum"] = q.sum();
    }
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"robust Mahalanobis metric learning from noisy triplets"};
    app.require_subcommand(1);

    CliOptions opt;
    std::string metric_path;
    std::vector<double> etas;
    std::string project_input;

    CLI::App* train = app.add_subcommand("train", "learn one metric and write metric.json + trace.csv");
    add_common_flags(train, opt);

    CLI::App* eval = app.add_subcommand("eval", "kNN test error of a stored (or identity) metric");
    add_common_flags(eval, opt);
    eval->add_option("--metric", metric_path, "metric.json path (default: identity)");

    CLI::App* bench = app.add_subcommand("bench", "per-method mean +/- std test errors over seeds");
    add_common_flags(bench, opt);

    CLI::App* sweep = app.add_subcommand("sweep-eta", "error curves over a list of eta values");
    add_common_flags(sweep, opt);
    sweep->add_option("--etas", etas, "eta values")->required();

    CLI::App* project = app.add_subcommand("project-test", "run the PSD or capped-box projection on a JSON problem");
    project->add_option("--input", project_input, "JSON file (default: stdin)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (train->parsed()) return cmd_train(opt);
        if (eval->parsed()) return cmd_eval(opt, metric_path);
        if (bench->parsed()) return cmd_bench(opt);
        if (sweep->parsed()) return cmd_sweep_eta(opt, etas);
        if (project->parsed()) return cmd_project_test(project_input);
    } catch (const rml::NumericalFailureError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const rml::IoError& e) {
        std::cerr << "io error: " << e.what() << "\n";
        return kExitIo;
    } catch (const rml::ParseError& e) {
        std::cerr << "parse error: " << e.what() << "\n";
        return kExitIo;
    } catch (const rml::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
    return kExitUsage;
}
