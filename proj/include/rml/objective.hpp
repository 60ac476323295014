#pragma once

#include "rml/capped_simplex.hpp"
#include "rml/model.hpp"

namespace rml {

/// Problem instance for the robust dual objective
///   L(q) = -sum q_i + (1/2 lambda) || proj_psd(sum q_i K_i) ||_F^2
/// minimized over the capped box {q in [0,1]^N : sum q <= N eta}.
struct ObjectiveConfig {
    double reg_lambda = 1.0;  // regularization weight, > 0
    double eta = 1.0;         // trusted fraction of triplets, in (0, 1]
    const TripletDataset* dataset = nullptr;

    void validate() const;
    int count() const { return dataset->count(); }
    double budget() const { return dataset->count() * eta; }
};

/// sum_i q_i K_i over the cached gap matrices.
SymmetricMatrix weighted_gap_sum(const ObjectiveConfig& cfg,
                                 const Eigen::VectorXd& q);

double eval_objective(const ObjectiveConfig& cfg, const Eigen::VectorXd& q);

/// A = (1/lambda) proj_psd(sum q_i K_i); always PSD.
Metric recover_metric(const ObjectiveConfig& cfg, const Eigen::VectorXd& q);

/// Gradient of L: component i is -1 + (1/lambda) tr(K_i proj_psd(sum q_j K_j)).
/// The projection is computed once and reused across components.
Eigen::VectorXd eval_gradient(const ObjectiveConfig& cfg,
                              const Eigen::VectorXd& q);

/// Lipschitz bound sqrt(sum_i (1 + |tr(K_i Z)| / lambda)^2) with
/// Z = sum_i (x_i - z_i)(x_i - z_i)^T.
double lipschitz_bound(const ObjectiveConfig& cfg);

/// Concave dual value H(A) = -(lambda/2)||A||_F^2 - max_{q} sum q_i (1 - tr(A K_i)),
/// the inner maximum solved exactly by greedy budget filling.
double eval_dual(const ObjectiveConfig& cfg, const Metric& a);

/// L(q) - H(A); nonnegative for feasible arguments by weak duality.
double duality_gap(const ObjectiveConfig& cfg, const Eigen::VectorXd& q,
                   const Metric& a);

}  // namespace rml
