#include "rml/experiment.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace rml {

namespace {

// Sub-seed derivation keeps the split and noise streams distinct.
constexpr std::uint64_t kNoiseSalt = 0x9e3779b97f4a7c15ULL;

std::string format_double(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void ExperimentConfig::validate() const {
    if (data_path.empty()) {
        throw InvalidInputError("config: data_path is required");
    }
    if (!(eta >= 0.0 && eta <= 1.0)) {
        throw InvalidInputError("config: eta must be in [0, 1]");
    }
    if (!(epsilon > 0.0) || knn_k < 1 || n_seeds < 1 || cap_per_anchor < 1 ||
        max_iters < 0 || lambda <= 0.0 || lambda_grid.empty()) {
        throw InvalidInputError("config: invalid field value");
    }
    if (solver != "nesterov" && solver != "subgradient" && solver != "both") {
        throw InvalidInputError("config: solver must be nesterov, subgradient or both");
    }
}

ExperimentConfig load_config_json(const std::string& path) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    ExperimentConfig cfg;
    try {
        if (j.contains("data")) cfg.data_path = j["data"].get<std::string>();
        if (j.contains("label_col")) {
            if (j["label_col"].is_string()) {
                cfg.label_column = j["label_col"].get<std::string>();
            } else {
                cfg.label_column = j["label_col"].get<int>();
            }
        }
        if (j.contains("has_header")) cfg.has_header = j["has_header"].get<bool>();
        if (j.contains("train_fraction"))
            cfg.train_fraction = j["train_fraction"].get<double>();
        if (j.contains("k")) cfg.knn_k = j["k"].get<int>();
        if (j.contains("eta")) cfg.eta = j["eta"].get<double>();
        if (j.contains("lambda")) cfg.lambda = j["lambda"].get<double>();
        if (j.contains("lambda_grid"))
            cfg.lambda_grid = j["lambda_grid"].get<std::vector<double>>();
        if (j.contains("epsilon")) cfg.epsilon = j["epsilon"].get<double>();
        if (j.contains("max_iters")) cfg.max_iters = j["max_iters"].get<long>();
        if (j.contains("solver")) cfg.solver = j["solver"].get<std::string>();
        if (j.contains("base_seed"))
            cfg.base_seed = j["base_seed"].get<std::uint64_t>();
        if (j.contains("seeds")) cfg.n_seeds = j["seeds"].get<int>();
        if (j.contains("cap_per_anchor"))
            cfg.cap_per_anchor = j["cap_per_anchor"].get<int>();
        if (j.contains("standardize"))
            cfg.standardize = j["standardize"].get<bool>();
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(path + ": " + e.what());
    }
    return cfg;
}

PreparedSplit prepare_split(const ExperimentConfig& cfg,
                            const LabeledDataset& ds, std::uint64_t seed) {
    auto [train, test] = split(ds, SplitSpec{cfg.train_fraction, seed});
    if (cfg.standardize) {
        const Standardizer st = Standardizer::fit(train);
        train = st.apply(train);
        test = st.apply(test);
    }
    TripletDataset clean =
        generate_triplets(train, cfg.knn_k, cfg.cap_per_anchor);
    auto [noisy, flipped] =
        inject_noise(clean, NoiseSpec{cfg.eta, seed ^ kNoiseSalt});
    return {std::move(train), std::move(test), std::move(noisy),
            std::move(flipped)};
}

SolveResult run_solver(const ExperimentConfig& cfg, const std::string& method,
                       const TripletDataset& triplets, double lambda) {
    // eta = 0 would make the feasible set a single point; the solvers require
    // a positive budget, so clamp.
    ObjectiveConfig ocfg{lambda, std::max(cfg.eta, 1e-12), &triplets};
    if (method == "rml-nesterov") {
        NesterovConfig ncfg;
        ncfg.epsilon = cfg.epsilon;
        ncfg.max_iters = cfg.max_iters;
        return solve_nesterov(ocfg, ncfg);
    }
    if (method == "rml-subgradient") {
        SubgradientConfig scfg;
        scfg.epsilon = cfg.epsilon;
        if (cfg.max_iters > 0) {
            scfg.max_iters = cfg.max_iters;
        }
        return solve_subgradient(ocfg, scfg);
    }
    throw InvalidInputError("unknown solver method: " + method);
}

double run_method_on_split(const ExperimentConfig& cfg,
                           const std::string& method,
                           const PreparedSplit& ps) {
    if (method == "eucl") {
        return evaluate(ps.train, ps.test, Metric::identity(ps.train.dim),
                        cfg.knn_k)
            .error_rate;
    }
    // lambda selection by leave-one-out training error; ties keep the
    // earlier grid entry.
    double best_err = 2.0;
    Metric best_metric = Metric::identity(ps.train.dim);
    for (double lambda : cfg.lambda_grid) {
        const SolveResult res = run_solver(cfg, method, ps.triplets, lambda);
        const double err = loo_train_error(ps.train, res.metric, cfg.knn_k);
        if (err < best_err) {
            best_err = err;
            best_metric = res.metric;
        }
    }
    return evaluate(ps.train, ps.test, best_metric, cfg.knn_k).error_rate;
}

namespace {

std::vector<std::string> method_list(const std::string& solver,
                                     bool include_eucl) {
    std::vector<std::string> methods;
    if (solver == "nesterov" || solver == "both") {
        methods.push_back("rml-nesterov");
    }
    if (solver == "subgradient" || solver == "both") {
        methods.push_back("rml-subgradient");
    }
    if (include_eucl) {
        methods.push_back("eucl");
    }
    return methods;
}

}  // namespace

BenchReport run_bench(const ExperimentConfig& cfg, const LabeledDataset& ds) {
    cfg.validate();
    const auto methods = method_list(cfg.solver, true);
    std::vector<std::vector<double>> errors(methods.size());

    for (int s = 0; s < cfg.n_seeds; ++s) {
        const PreparedSplit ps = prepare_split(cfg, ds, cfg.base_seed + s);
        for (std::size_t m = 0; m < methods.size(); ++m) {
            errors[m].push_back(run_method_on_split(cfg, methods[m], ps));
        }
    }

    BenchReport report;
    for (std::size_t m = 0; m < methods.size(); ++m) {
        report.rows.push_back({methods[m], EvalReport::from_errors(errors[m])});
    }
    return report;
}

std::string BenchReport::to_table() const {
    std::ostringstream out;
    out << "method            test error (%)\n";
    for (const auto& row : rows) {
        char line[128];
        std::snprintf(line, sizeof(line), "%-16s  %.2f +/- %.2f\n",
                      row.method.c_str(), 100.0 * row.report.mean,
                      100.0 * row.report.stddev);
        out << line;
    }
    return out.str();
}

std::string BenchReport::to_csv() const {
    std::ostringstream out;
    out << "method,mean_error,std_error,seeds\n";
    for (const auto& row : rows) {
        out << row.method << ',' << format_double(row.report.mean) << ','
            << format_double(row.report.stddev) << ','
            << row.report.per_seed_errors.size() << '\n';
    }
    return out.str();
}

std::vector<SweepRow> run_sweep_eta(const ExperimentConfig& cfg,
                                    const LabeledDataset& ds,
                                    const std::vector<double>& etas) {
    if (etas.empty()) {
        throw InvalidInputError("sweep-eta: empty eta list");
    }
    std::vector<SweepRow> rows;
    for (double eta : etas) {
        ExperimentConfig point = cfg;
        point.eta = eta;
        point.lambda_grid = {cfg.lambda};  // fixed lambda across the sweep
        const BenchReport report = run_bench(point, ds);
        for (const auto& row : report.rows) {
            rows.push_back({eta, row.method, row.report.mean, row.report.stddev});
        }
    }
    return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
    std::ostringstream out;
    out << "eta,method,mean_error,std_error\n";
    for (const auto& row : rows) {
        out << format_double(row.eta) << ',' << row.method << ','
            << format_double(row.mean) << ',' << format_double(row.stddev)
            << '\n';
    }
    return out.str();
}

std::string metric_to_json(const Metric& m) {
    nlohmann::json j;
    j["dim"] = m.dim();
    auto rows = nlohmann::json::array();
    for (int i = 0; i < m.dim(); ++i) {
        auto row = nlohmann::json::array();
        for (int k = 0; k < m.dim(); ++k) {
            row.push_back(m.matrix(i, k));
        }
        rows.push_back(std::move(row));
    }
    j["rows"] = std::move(rows);
    return j.dump(2) + "\n";
}

Metric metric_from_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
        const int dim = j.at("dim").get<int>();
        Eigen::MatrixXd m(dim, dim);
        const auto& rows = j.at("rows");
        if (static_cast<int>(rows.size()) != dim) {
            throw ParseError("metric JSON: row count != dim");
        }
        for (int i = 0; i < dim; ++i) {
            if (static_cast<int>(rows[i].size()) != dim) {
                throw ParseError("metric JSON: ragged rows");
            }
            for (int k = 0; k < dim; ++k) {
                m(i, k) = rows[i][k].get<double>();
            }
        }
        return Metric(SymmetricMatrix::from_upper(m));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("metric JSON: ") + e.what());
    }
}

std::string trace_to_csv(const SolverTrace& trace) {
    std::ostringstream out;
    out << "iter,objective,dual,gap,seconds\n";
    for (const auto& rec : trace.records) {
        out << rec.iter << ',' << format_double(rec.objective) << ','
            << format_double(rec.dual) << ',' << format_double(rec.gap) << ','
            << format_double(rec.seconds) << '\n';
    }
    return out.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw IoError("cannot write file: " + path);
    }
    out << content;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw IoError("cannot read file: " + path);
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace rml
