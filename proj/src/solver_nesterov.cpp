#include <chrono>
#include <cmath>

#include "rml/solver.hpp"

namespace rml {

namespace {

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
}

}  // namespace

SolveResult solve_nesterov(const ObjectiveConfig& cfg,
                           const NesterovConfig& ncfg) {
    cfg.validate();
    if (!(ncfg.epsilon > 0.0) || ncfg.max_iters < 0 || ncfg.trace_every < 1) {
        throw InvalidInputError("solve_nesterov: bad config");
    }
    const auto start = std::chrono::steady_clock::now();

    const int n = cfg.count();
    const int d = cfg.dataset->dim();
    const double lambda = cfg.reg_lambda;
    const double budget = cfg.budget();
    const double lip = lipschitz_bound(cfg);

    long max_iters = ncfg.max_iters;
    if (max_iters == 0) {
        max_iters = 10 * static_cast<long>(
                             std::ceil(std::sqrt(2.0 * lip * budget / ncfg.epsilon)));
        max_iters = std::max<long>(max_iters, 1);
    }

    Eigen::VectorXd z = Eigen::VectorXd::Zero(n);
    Eigen::VectorXd q_best;
    double f_best = 0.0;
    bool have_best = false;

    // Running weighted sums for the history terms: sum_j (j+1)/2 * grad(z_j)
    // and sum_j (j+1)/2 * Ahat_j.
    Eigen::VectorXd grad_wsum = Eigen::VectorXd::Zero(n);
    SymmetricMatrix ahat_wsum(d);

    SolveResult result{Metric(SymmetricMatrix(d)), WeightVector{z, budget}};

    for (long t = 0; t < max_iters; ++t) {
        // Ahat_t = (1/lambda) proj_psd(sum z_i K_i), gradient and value at z_t.
        const SymmetricMatrix projected = psd_project(weighted_gap_sum(cfg, z));
        SymmetricMatrix a_hat = projected.scaled(1.0 / lambda);
        Eigen::VectorXd grad(n);
        for (int i = 0; i < n; ++i) {
            // tr(K_i Ahat_t) == tr(K_i proj)/lambda
            grad(i) = -1.0 + frobenius_inner(cfg.dataset->gap(i), a_hat);
        }
        const double proj_norm = projected.frobenius_norm();
        const double f_z = -z.sum() + proj_norm * proj_norm / (2.0 * lambda);
        if (!grad.allFinite() || !std::isfinite(f_z)) {
            throw NumericalFailureError("solve_nesterov: non-finite iterate", t);
        }

        // Gradient-model step around z_t.
        ProjectionProblem step;
        step.scale = lip;
        step.center = z;
        step.slope = grad;
        step.budget = budget;
        const Eigen::VectorXd q_hat = solve_projection(step).weights;

        // q_t = argmin of L over {q_{t-1}, q_hat, z_t}; at t = 0 the set is
        // {q_hat, z_0}.
        const double f_hat = eval_objective(cfg, q_hat);
        if (!have_best) {
            q_best = z;
            f_best = f_z;
            have_best = true;
        } else if (f_z < f_best) {
            q_best = z;
            f_best = f_z;
        }
        if (f_hat < f_best) {
            q_best = q_hat;
            f_best = f_hat;
        }

        // History-weighted step for the extrapolation sequence.
        const double weight = 0.5 * static_cast<double>(t + 1);
        grad_wsum += weight * grad;
        ProjectionProblem hist;
        hist.scale = lip;
        hist.center = Eigen::VectorXd::Zero(n);
        hist.slope = grad_wsum;
        hist.budget = budget;
        const Eigen::VectorXd w = solve_projection(hist).weights;

        if (ncfg.observer) {
            ncfg.observer(t, z, q_best, w);
        }

        const double tt = static_cast<double>(t);
        z = (2.0 / (tt + 3.0)) * w + ((tt + 1.0) / (tt + 3.0)) * q_best;

        // Averaged metric A_t and the duality gap.
        ahat_wsum.add_scaled(a_hat, weight);
        Metric a_t(ahat_wsum.scaled(4.0 / ((tt + 1.0) * (tt + 2.0))));

        result.iterations = t + 1;
        result.metric = a_t;
        result.weights = WeightVector{q_best, budget};
        result.final_objective = f_best;

        if ((t + 1) % ncfg.trace_every == 0 || t + 1 == max_iters) {
            const double h = eval_dual(cfg, a_t);
            double gap = f_best - h;
            if (!std::isfinite(gap)) {
                throw NumericalFailureError("solve_nesterov: non-finite gap", t);
            }
            if (gap < 0.0 && gap >= -1e-8) {
                gap = 0.0;  // weak duality holds exactly only in exact arithmetic
            }
            result.final_gap = gap;
            result.trace.records.push_back(
                {t, f_best, h, gap, elapsed_seconds(start)});
            if (gap <= ncfg.epsilon) {
                result.termination = Termination::GapReached;
                return result;
            }
        }
    }
    result.termination = Termination::CapHit;
    return result;
}

}  // namespace rml
