#include "rml/objective.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace rml {

void ObjectiveConfig::validate() const {
    if (dataset == nullptr || dataset->count() < 1) {
        throw InvalidInputError("ObjectiveConfig: dataset missing or empty");
    }
    if (!(reg_lambda > 0.0)) {
        throw InvalidInputError("ObjectiveConfig: reg_lambda must be > 0");
    }
    if (!(eta > 0.0 && eta <= 1.0)) {
        throw InvalidInputError("ObjectiveConfig: eta must be in (0, 1]");
    }
}

namespace {

void check_length(const ObjectiveConfig& cfg, const Eigen::VectorXd& q) {
    cfg.validate();
    if (q.size() != cfg.count()) {
        throw DimensionError("weight vector length does not match triplet count");
    }
}

}  // namespace

SymmetricMatrix weighted_gap_sum(const ObjectiveConfig& cfg,
                                 const Eigen::VectorXd& q) {
    check_length(cfg, q);
    SymmetricMatrix sum(cfg.dataset->dim());
    for (int i = 0; i < cfg.count(); ++i) {
        if (q(i) != 0.0) {
            sum.add_scaled(cfg.dataset->gap(i), q(i));
        }
    }
    return sum;
}

double eval_objective(const ObjectiveConfig& cfg, const Eigen::VectorXd& q) {
    const SymmetricMatrix projected = psd_project(weighted_gap_sum(cfg, q));
    const double norm = projected.frobenius_norm();
    return -q.sum() + norm * norm / (2.0 * cfg.reg_lambda);
}

Metric recover_metric(const ObjectiveConfig& cfg, const Eigen::VectorXd& q) {
    return Metric(
        psd_project(weighted_gap_sum(cfg, q)).scaled(1.0 / cfg.reg_lambda));
}

Eigen::VectorXd eval_gradient(const ObjectiveConfig& cfg,
                              const Eigen::VectorXd& q) {
    const SymmetricMatrix projected = psd_project(weighted_gap_sum(cfg, q));
    Eigen::VectorXd grad(cfg.count());
    for (int i = 0; i < cfg.count(); ++i) {
        grad(i) =
            -1.0 + frobenius_inner(cfg.dataset->gap(i), projected) / cfg.reg_lambda;
    }
    return grad;
}

double lipschitz_bound(const ObjectiveConfig& cfg) {
    cfg.validate();
    const TripletDataset& ds = *cfg.dataset;
    SymmetricMatrix z_sum(ds.dim());
    for (int i = 0; i < ds.count(); ++i) {
        const Triplet& t = ds.triplet(i);
        z_sum.add_scaled(
            SymmetricMatrix::outer(ds.point(t.anchor) - ds.point(t.dissimilar)),
            1.0);
    }
    double total = 0.0;
    for (int i = 0; i < ds.count(); ++i) {
        const double term =
            1.0 + std::abs(frobenius_inner(ds.gap(i), z_sum)) / cfg.reg_lambda;
        total += term * term;
    }
    return std::sqrt(total);
}

double eval_dual(const ObjectiveConfig& cfg, const Metric& a) {
    cfg.validate();
    if (a.dim() != cfg.dataset->dim()) {
        throw DimensionError("eval_dual: metric dimension mismatch");
    }
    const int n = cfg.count();

    // Coefficients of the inner linear maximization over the capped box.
    std::vector<double> coeff(n);
    for (int i = 0; i < n; ++i) {
        coeff[i] = 1.0 - frobenius_inner(a.matrix, cfg.dataset->gap(i));
    }

    // Greedy: weight 1 to the largest positive coefficients until the budget
    // runs out, a fractional weight at the boundary, 0 elsewhere. Ties break
    // by lowest index.
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int i, int j) { return coeff[i] > coeff[j]; });

    double remaining = cfg.budget();
    double best = 0.0;
    for (int idx : order) {
        if (coeff[idx] <= 0.0 || remaining <= 0.0) {
            break;
        }
        const double w = std::min(1.0, remaining);
        best += w * coeff[idx];
        remaining -= w;
    }

    const double norm = a.matrix.frobenius_norm();
    return -0.5 * cfg.reg_lambda * norm * norm - best;
}

double duality_gap(const ObjectiveConfig& cfg, const Eigen::VectorXd& q,
                   const Metric& a) {
    return eval_objective(cfg, q) - eval_dual(cfg, a);
}

}  // namespace rml
