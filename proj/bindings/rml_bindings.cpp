// Python bindings for the core operations: PSD projection, capped-box
// projection, metric learning from point/triplet arrays, and kNN evaluation.

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>
#include <stdexcept>
#include <vector>

#include "rml/capped_simplex.hpp"
#include "rml/data_pipeline.hpp"
#include "rml/experiment.hpp"
#include "rml/knn.hpp"
#include "rml/objective.hpp"
#include "rml/solver.hpp"

namespace py = pybind11;
using namespace rml;

namespace {

LabeledDataset make_dataset(const Eigen::MatrixXd& x,
                            const std::vector<int>& y) {
    if (static_cast<int>(y.size()) != x.rows()) {
        throw std::invalid_argument("points/labels length mismatch");
    }
    LabeledDataset ds;
    ds.dim = static_cast<int>(x.cols());
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        ds.points.push_back(x.row(i).transpose());
        ds.labels.push_back(y[i]);
        ds.n_classes = std::max(ds.n_classes, y[i] + 1);
    }
    return ds;
}

TripletDataset make_triplets(const Eigen::MatrixXd& x,
                             const std::vector<std::array<int, 3>>& idx) {
    auto points = std::make_shared<std::vector<DataPoint>>();
    for (Eigen::Index i = 0; i < x.rows(); ++i) {
        points->push_back(x.row(i).transpose());
    }
    std::vector<Triplet> trips;
    for (const auto& t : idx) {
        trips.push_back({t[0], t[1], t[2]});
    }
    return TripletDataset(std::move(points), std::move(trips));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() =
        "Robust Mahalanobis metric learning: noise-tolerant triplet-based "
        "metric optimization with accelerated first-order solvers.";

    m.def(
        "psd_project",
        [](const Eigen::MatrixXd& s) {
            return psd_project(SymmetricMatrix::symmetrized(s)).dense();
        },
        py::arg("matrix"),
        "Frobenius-nearest positive-semidefinite matrix (eigenvalue "
        "clipping). The input is symmetrized first.");

    m.def(
        "project_capped_box",
        [](const Eigen::VectorXd& center, const Eigen::VectorXd& slope,
           double scale, double budget) {
            ProjectionProblem p;
            p.scale = scale;
            p.center = center;
            p.slope = slope;
            p.budget = budget;
            return solve_projection(p).weights;
        },
        py::arg("center"), py::arg("slope"), py::arg("scale") = 1.0,
        py::arg("budget") = 0.0,
        "Minimize (scale/2)||q - center||^2 + q.slope over "
        "{q in [0,1]^n : sum(q) <= budget}.");

    m.def(
        "learn_metric",
        [](const Eigen::MatrixXd& points,
           const std::vector<std::array<int, 3>>& triplets, double lam,
           double eta, double epsilon, long max_iters,
           const std::string& solver) {
            const TripletDataset td = make_triplets(points, triplets);
            const ObjectiveConfig cfg{lam, eta, &td};
            const SolveResult res = [&] {
                if (solver == "nesterov") {
                    NesterovConfig ncfg;
                    ncfg.epsilon = epsilon;
                    ncfg.max_iters = max_iters;
                    return solve_nesterov(cfg, ncfg);
                }
                if (solver == "subgradient") {
                    SubgradientConfig scfg;
                    scfg.epsilon = epsilon;
                    if (max_iters > 0) {
                        scfg.max_iters = max_iters;
                    }
                    return solve_subgradient(cfg, scfg);
                }
                throw std::invalid_argument(
                    "solver must be 'nesterov' or 'subgradient'");
            }();
            py::dict out;
            out["matrix"] = res.metric.matrix.dense();
            out["weights"] = res.weights.weights;
            out["iterations"] = res.iterations;
            out["objective"] = res.final_objective;
            out["gap"] = res.final_gap;
            out["converged"] = res.termination == Termination::GapReached;
            return out;
        },
        py::arg("points"), py::arg("triplets"), py::arg("lam") = 1.0,
        py::arg("eta") = 0.8, py::arg("epsilon") = 1e-3,
        py::arg("max_iters") = 0, py::arg("solver") = "nesterov",
        "Learn a Mahalanobis metric from triplet constraints "
        "(anchor, similar, dissimilar index rows). Returns a dict with the "
        "PSD matrix, adversarial weights, and convergence info.");

    m.def(
        "generate_triplets",
        [](const Eigen::MatrixXd& x, const std::vector<int>& y, int k,
           int cap_per_anchor) {
            const LabeledDataset ds = make_dataset(x, y);
            const TripletDataset td = generate_triplets(ds, k, cap_per_anchor);
            std::vector<std::array<int, 3>> out;
            for (const Triplet& t : td.triplets()) {
                out.push_back({t.anchor, t.similar, t.dissimilar});
            }
            return out;
        },
        py::arg("points"), py::arg("labels"), py::arg("k") = 5,
        py::arg("cap_per_anchor") = 20,
        "Triplets from k-nearest-neighbor structure: same-class neighbors "
        "paired with different-class neighbors per anchor.");

    m.def(
        "mahalanobis_distance",
        [](const Eigen::MatrixXd& a, const Eigen::VectorXd& u,
           const Eigen::VectorXd& v) {
            return mahalanobis_distance(
                Metric(SymmetricMatrix::symmetrized(a)), u, v);
        },
        py::arg("matrix"), py::arg("a"), py::arg("b"),
        "Squared Mahalanobis distance (a-b)^T A (a-b).");

    m.def(
        "knn_error",
        [](const Eigen::MatrixXd& train_x, const std::vector<int>& train_y,
           const Eigen::MatrixXd& test_x, const std::vector<int>& test_y,
           const Eigen::MatrixXd& a, int k) {
            const LabeledDataset train = make_dataset(train_x, train_y);
            const LabeledDataset test = make_dataset(test_x, test_y);
            const Metric metric(SymmetricMatrix::symmetrized(a));
            return evaluate(train, test, metric, k).error_rate;
        },
        py::arg("train_x"), py::arg("train_y"), py::arg("test_x"),
        py::arg("test_y"), py::arg("matrix"), py::arg("k") = 5,
        "kNN test error rate under the given metric.");

    m.def(
        "inject_noise",
        [](const Eigen::MatrixXd& points,
           const std::vector<std::array<int, 3>>& triplets, double eta,
           std::uint64_t seed) {
            const TripletDataset td = make_triplets(points, triplets);
            const auto [noisy, flipped] = inject_noise(td, {eta, seed});
            std::vector<std::array<int, 3>> out;
            for (const Triplet& t : noisy.triplets()) {
                out.push_back({t.anchor, t.similar, t.dissimilar});
            }
            return py::make_tuple(out, flipped);
        },
        py::arg("points"), py::arg("triplets"), py::arg("eta") = 0.8,
        py::arg("seed") = 0,
        "Flip each triplet (swap similar/dissimilar) with probability "
        "1 - eta. Returns (triplets, flipped_mask).");
}
