#include <doctest.h>

#include <cmath>

#include "rml/capped_simplex.hpp"
#include "rml/rng.hpp"
#include "test_util.hpp"

using namespace rml;
using namespace rml::test;

namespace {

ProjectionProblem random_problem(Rng& rng, int n) {
    ProjectionProblem p;
    p.scale = rng.uniform(0.2, 5.0);
    p.center = random_vector(rng, n, -1.0, 2.0);
    p.slope = random_vector(rng, n, -3.0, 3.0);
    p.budget = rng.uniform(0.3, n);
    return p;
}

/// Brute-force grid minimum over the feasible set, ~`points` grid points.
double grid_minimum(const ProjectionProblem& p, long points) {
    const int n = static_cast<int>(p.center.size());
    const int steps =
        std::max(2, static_cast<int>(std::round(std::pow(points, 1.0 / n))));
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> idx(n, 0);
    Eigen::VectorXd q(n);
    while (true) {
        double total = 0.0;
        for (int i = 0; i < n; ++i) {
            q(i) = static_cast<double>(idx[i]) / (steps - 1);
            total += q(i);
        }
        if (total <= p.budget) {
            best = std::min(best, p.objective(q));
        }
        int pos = 0;
        while (pos < n && ++idx[pos] == steps) {
            idx[pos++] = 0;
        }
        if (pos == n) {
            break;
        }
    }
    return best;
}

}  // namespace

TEST_CASE("solve_projection: zero center and slope gives zero") {
    ProjectionProblem p;
    p.scale = 1.0;
    p.center = Eigen::VectorXd::Zero(3);
    p.slope = Eigen::VectorXd::Zero(3);
    p.budget = 2.0;
    double mu = -1.0;
    const WeightVector q = solve_projection(p, &mu);
    CHECK(q.weights.norm() == 0.0);
    CHECK(mu == 0.0);
}

TEST_CASE("solve_projection: symmetric two-coordinate split") {
    ProjectionProblem p;
    p.scale = 1.0;
    p.center = Eigen::VectorXd::Ones(2);
    p.slope = Eigen::VectorXd::Zero(2);
    p.budget = 1.0;
    double mu = 0.0;
    const WeightVector q = solve_projection(p, &mu);
    CHECK(q.weights(0) == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(q.weights(1) == doctest::Approx(0.5).epsilon(1e-8));
    CHECK(mu == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("solve_projection: large positive slope clips to zero") {
    Rng rng(4);
    ProjectionProblem p;
    p.scale = 2.0;
    p.center = random_vector(rng, 5, 0.0, 1.0);
    p.slope = Eigen::VectorXd::Constant(5, 10.0 * p.scale);
    p.budget = 3.0;
    CHECK(solve_projection(p).weights.norm() == 0.0);
}

TEST_CASE("solve_projection: vacuous budget skips the bisection") {
    Rng rng(8);
    ProjectionProblem p = random_problem(rng, 4);
    p.budget = 4.0;  // >= N: box alone decides
    double mu = -1.0;
    const WeightVector q = solve_projection(p, &mu);
    CHECK(mu == 0.0);
    const Eigen::VectorXd expected =
        (p.center - p.slope / p.scale).cwiseMax(0.0).cwiseMin(1.0);
    CHECK((q.weights - expected).norm() == 0.0);
}

TEST_CASE("solve_projection: matches brute-force grid oracle") {
    Rng rng(100);
    for (int rep = 0; rep < 30; ++rep) {
        const int n = 2 + static_cast<int>(rng.below(3));
        const ProjectionProblem p = random_problem(rng, n);
        const WeightVector q = solve_projection(p);
        CHECK(q.feasible(1e-8));
        CHECK(p.objective(q.weights) <= grid_minimum(p, 1000000) + 1e-6);
    }
}

TEST_CASE("solve_projection: KKT certificate") {
    Rng rng(55);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = 2 + static_cast<int>(rng.below(6));
        const ProjectionProblem p = random_problem(rng, n);
        double mu = -1.0;
        const WeightVector q = solve_projection(p, &mu);
        CHECK(mu >= 0.0);
        CHECK(std::abs(mu * (q.sum() - p.budget)) <= 1e-8);
    }
}

TEST_CASE("solve_projection: invariant to the offset vector") {
    Rng rng(21);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 2 + static_cast<int>(rng.below(4));
        ProjectionProblem a = random_problem(rng, n);
        ProjectionProblem b = a;
        b.offset = random_vector(rng, n, -5.0, 5.0);
        const Eigen::VectorXd qa = solve_projection(a).weights;
        const Eigen::VectorXd qb = solve_projection(b).weights;
        CHECK((qa - qb).cwiseAbs().maxCoeff() <= 1e-12);
    }
}

TEST_CASE("clipped sum is nonincreasing in the multiplier") {
    Rng rng(31);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 3 + static_cast<int>(rng.below(4));
        const ProjectionProblem p = random_problem(rng, n);
        const Eigen::VectorXd base = p.center - p.slope / p.scale;
        double prev = std::numeric_limits<double>::infinity();
        for (double mu = 0.0; mu <= 2.0; mu += 0.05) {
            const double total =
                (base.array() - mu).cwiseMax(0.0).cwiseMin(1.0).sum();
            CHECK(total <= prev + 1e-12);
            prev = total;
        }
    }
}

TEST_CASE("solve_projection rejects non-finite input") {
    ProjectionProblem p;
    p.scale = 1.0;
    p.center = Eigen::VectorXd::Constant(2, std::numeric_limits<double>::infinity());
    p.slope = Eigen::VectorXd::Zero(2);
    p.budget = 1.0;
    CHECK_THROWS_AS(solve_projection(p), InvalidInputError);
}
