#include "rml/capped_simplex.hpp"

#include <algorithm>
#include <cmath>

namespace rml {

bool WeightVector::feasible(double tol) const {
    for (int i = 0; i < size(); ++i) {
        if (!(weights(i) >= -tol && weights(i) <= 1.0 + tol)) {
            return false;
        }
    }
    return sum() <= capacity + tol;
}

double ProjectionProblem::objective(const Eigen::VectorXd& q) const {
    double value = 0.5 * scale * (q - center).squaredNorm() + q.dot(slope);
    if (offset.size() > 0) {
        value -= offset.dot(slope);
    }
    return value;
}

namespace {

Eigen::VectorXd clipped_solution(const Eigen::VectorXd& base, double mu) {
    return (base.array() - mu).cwiseMax(0.0).cwiseMin(1.0).matrix();
}

}  // namespace

WeightVector solve_projection(const ProjectionProblem& p, double* mu_out) {
    const int n = static_cast<int>(p.center.size());
    if (n < 1 || p.slope.size() != n ||
        (p.offset.size() != 0 && p.offset.size() != n)) {
        throw InvalidInputError("solve_projection: inconsistent vector sizes");
    }
    if (!(p.scale > 0.0) || !(p.budget > 0.0) || !p.center.allFinite() ||
        !p.slope.allFinite() || !std::isfinite(p.scale) ||
        !std::isfinite(p.budget)) {
        throw InvalidInputError("solve_projection: non-finite or non-positive input");
    }

    // Unconstrained-in-mu stationary point per coordinate.
    const Eigen::VectorXd base = p.center - p.slope / p.scale;

    // mu = 0 branch: budget slack or vacuous (budget >= N covers the whole box).
    Eigen::VectorXd q = clipped_solution(base, 0.0);
    if (p.budget >= static_cast<double>(n) || q.sum() <= p.budget) {
        if (mu_out != nullptr) {
            *mu_out = 0.0;
        }
        return {q, p.budget};
    }

    // sum_i clip(base_i - mu) is continuous and nonincreasing in mu; at
    // mu = max_i base_i every coordinate clips to 0, so the root is bracketed.
    double lo = 0.0;
    double hi = base.maxCoeff();
    const double tol = 1e-10 * std::max(1.0, p.budget);
    double mu = 0.0;
    for (int iter = 0; iter < 200; ++iter) {
        mu = 0.5 * (lo + hi);
        const double total = clipped_solution(base, mu).sum();
        if (std::abs(total - p.budget) <= tol) {
            break;
        }
        if (total > p.budget) {
            lo = mu;
        } else {
            hi = mu;
        }
    }
    if (mu_out != nullptr) {
        *mu_out = mu;
    }
    return {clipped_solution(base, mu), p.budget};
}

}  // namespace rml
