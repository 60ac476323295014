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

Eigen::VectorXd project_feasible(const Eigen::VectorXd& point, double budget) {
    ProjectionProblem p;
    p.scale = 1.0;
    p.center = point;
    p.slope = Eigen::VectorXd::Zero(point.size());
    p.budget = budget;
    return solve_projection(p).weights;
}

}  // namespace

SolveResult solve_subgradient(const ObjectiveConfig& cfg,
                              const SubgradientConfig& scfg) {
    cfg.validate();
    if (!(scfg.epsilon > 0.0) || scfg.max_iters < 1 ||
        !(scfg.armijo_c > 0.0 && scfg.armijo_c < 1.0) ||
        !(scfg.backtrack_factor > 0.0 && scfg.backtrack_factor < 1.0) ||
        scfg.initial_step < 0.0 || scfg.trace_every < 1) {
        throw InvalidInputError("solve_subgradient: bad config");
    }
    const auto start = std::chrono::steady_clock::now();

    const int n = cfg.count();
    const double budget = cfg.budget();
    const double step0 = scfg.initial_step > 0.0
                             ? scfg.initial_step
                             : 1.0 / lipschitz_bound(cfg);

    Eigen::VectorXd q = Eigen::VectorXd::Zero(n);
    double f = eval_objective(cfg, q);

    SolveResult result{recover_metric(cfg, q), WeightVector{q, budget}};

    for (long t = 0; t < scfg.max_iters; ++t) {
        const Metric a = recover_metric(cfg, q);
        result.iterations = t + 1;
        result.metric = a;
        result.weights = WeightVector{q, budget};
        result.final_objective = f;

        if ((t % scfg.trace_every) == 0 || t + 1 == scfg.max_iters) {
            const double h = eval_dual(cfg, a);
            double gap = f - h;
            if (!std::isfinite(gap)) {
                throw NumericalFailureError("solve_subgradient: non-finite gap", t);
            }
            if (gap < 0.0 && gap >= -1e-8) {
                gap = 0.0;
            }
            result.final_gap = gap;
            result.trace.records.push_back(
                {t, f, h, gap, elapsed_seconds(start)});
            if (gap <= scfg.epsilon) {
                result.termination = Termination::GapReached;
                return result;
            }
        }

        if (scfg.observer) {
            scfg.observer(t, q, q, q);
        }

        const Eigen::VectorXd grad = eval_gradient(cfg, q);
        if (!grad.allFinite()) {
            throw NumericalFailureError("solve_subgradient: non-finite gradient",
                                        t);
        }
        const double grad_sq = grad.squaredNorm();

        // Backtracking line search on the projected step; keeps the best
        // candidate seen in case Armijo never fires.
        double step = step0;
        Eigen::VectorXd best_q = q;
        double best_f = f;
        bool accepted = false;
        for (int bt = 0; bt < 50; ++bt) {
            const Eigen::VectorXd cand = project_feasible(q - step * grad, budget);
            const double f_cand = eval_objective(cfg, cand);
            if (f_cand < best_f) {
                best_q = cand;
                best_f = f_cand;
            }
            if (f_cand <= f - scfg.armijo_c * step * grad_sq) {
                accepted = true;
                break;
            }
            step *= scfg.backtrack_factor;
        }
        (void)accepted;
        q = best_q;
        f = best_f;
    }
    result.termination = Termination::CapHit;
    return result;
}

}  // namespace rml
