#pragma once

#include <functional>
#include <vector>

#include "rml/objective.hpp"

namespace rml {

/// Diagnostic hook: called once per iteration with the solver's working
/// points (for Nesterov: z_t, q_t, w_t; for the subgradient method the last
/// two arguments repeat q_t).
using IterateObserver = std::function<void(
    long t, const Eigen::VectorXd& z, const Eigen::VectorXd& q,
    const Eigen::VectorXd& w)>;

struct NesterovConfig {
    double epsilon = 1e-3;  // target duality gap, > 0
    // 0 means the default cap 10 * ceil(sqrt(2 L N eta / epsilon)), ten times
    // the theoretical iteration bound.
    long max_iters = 0;
    // The gap (and hence the stopping test) is evaluated every `trace_every`
    // iterations.
    int trace_every = 1;
    IterateObserver observer;
};

struct SubgradientConfig {
    double epsilon = 1e-3;
    long max_iters = 100000;
    double armijo_c = 1e-4;
    double backtrack_factor = 0.5;
    double initial_step = 0.0;  // 0 means 1/L with L from the Lipschitz bound
    int trace_every = 1;
    IterateObserver observer;
};

struct TraceRecord {
    long iter = 0;
    double objective = 0.0;  // L(q_t)
    double dual = 0.0;       // H(A_t)
    double gap = 0.0;        // objective - dual
    double seconds = 0.0;    // wallclock since solve start
};

struct SolverTrace {
    std::vector<TraceRecord> records;
};

enum class Termination { GapReached, CapHit };

struct SolveResult {
    Metric metric;
    WeightVector weights;
    long iterations = 0;
    double final_objective = 0.0;
    double final_gap = 0.0;
    Termination termination = Termination::GapReached;
    SolverTrace trace;
};

/// Nesterov smooth minimization of L(q) over the capped box, with
/// duality-gap termination. Returns the gap-averaged metric A_T.
SolveResult solve_nesterov(const ObjectiveConfig& cfg,
                           const NesterovConfig& ncfg);

/// Projected-gradient baseline with Armijo backtracking; same termination
/// criterion, returns recover_metric(q_T).
SolveResult solve_subgradient(const ObjectiveConfig& cfg,
                              const SubgradientConfig& scfg);

}  // namespace rml
