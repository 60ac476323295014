#pragma once

#include <Eigen/Dense>

#include "rml/errors.hpp"

namespace rml {

/// Adversarial constraint weights q in the capped box
/// {q in [0,1]^N : sum q_i <= capacity}.
struct WeightVector {
    Eigen::VectorXd weights;
    double capacity = 0.0;

    int size() const { return static_cast<int>(weights.size()); }
    double sum() const { return weights.sum(); }
    bool feasible(double tol = 1e-8) const;
};

/// min over q in [0,1]^N with sum(q) <= budget of
///   (scale/2) ||q - center||^2 + (q - offset)^T slope.
/// The offset only shifts the objective by a constant; it never moves the
/// minimizer, and solve_projection is invariant to it.
struct ProjectionProblem {
    double scale = 1.0;
    Eigen::VectorXd center;
    Eigen::VectorXd offset;  // may be empty, treated as zero
    Eigen::VectorXd slope;
    double budget = 0.0;

    double objective(const Eigen::VectorXd& q) const;
};

/// Exact KKT solution: q_i = clip_[0,1](center_i - slope_i/scale - mu), with
/// the multiplier mu found by bisection when the budget is active. If
/// `mu_out` is non-null it receives the multiplier (the KKT certificate
/// mu * (sum q - budget) = 0 holds within 1e-8).
WeightVector solve_projection(const ProjectionProblem& p,
                              double* mu_out = nullptr);

}  // namespace rml
