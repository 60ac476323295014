#include <doctest.h>

#include <memory>

#include "rml/objective.hpp"
#include "test_util.hpp"

using namespace rml;
using namespace rml::test;

namespace {

DataPoint pt(std::initializer_list<double> vals) {
    DataPoint p(static_cast<int>(vals.size()));
    int i = 0;
    for (double v : vals) {
        p(i++) = v;
    }
    return p;
}

/// One-triplet dataset whose gap matrix is [k] (d = 1): anchor 0, similar
/// sqrt(-k) when k < 0, dissimilar sqrt(k) when k > 0.
TripletDataset scalar_triplet(double k) {
    const double root = std::sqrt(std::abs(k));
    std::vector<DataPoint> points{pt({0.0}), pt({k < 0 ? root : 0.0}),
                                  pt({k > 0 ? root : 0.0})};
    return TripletDataset(
        std::make_shared<const std::vector<DataPoint>>(std::move(points)),
        {{0, 1, 2}});
}

}  // namespace

TEST_CASE("eval_objective: trivial and NSD cases") {
    Rng rng(2);
    const TripletDataset ds = random_triplets(rng, 3, 2);
    const ObjectiveConfig cfg{1.0, 0.5, &ds};
    CHECK(eval_objective(cfg, Eigen::VectorXd::Zero(3)) == doctest::Approx(0.0));

    const TripletDataset nsd = scalar_triplet(-2.0);
    const ObjectiveConfig cfg1{1.0, 1.0, &nsd};
    CHECK(eval_objective(cfg1, Eigen::VectorXd::Ones(1)) ==
          doctest::Approx(-1.0));

    CHECK_THROWS_AS(eval_objective(cfg, Eigen::VectorXd::Zero(5)),
                    DimensionError);
}

TEST_CASE("eval_objective matches clipped-eigenvalue oracle") {
    Rng rng(12);
    const TripletDataset ds = random_triplets(rng, 3, 2);
    const ObjectiveConfig cfg{1.0, 1.0, &ds};
    const Eigen::VectorXd q = random_feasible_q(rng, 3, cfg.budget());

    SymmetricMatrix sum(2);
    for (int i = 0; i < 3; ++i) {
        sum.add_scaled(ds.gap(i), q(i));
    }
    const auto ed = jacobi_eigen(sum);
    double norm_sq = 0.0;
    for (int i = 0; i < 2; ++i) {
        const double clipped = std::max(ed.eigenvalues(i), 0.0);
        norm_sq += clipped * clipped;
    }
    CHECK(eval_objective(cfg, q) ==
          doctest::Approx(-q.sum() + norm_sq / 2.0).epsilon(1e-10));
}

TEST_CASE("recover_metric") {
    Rng rng(3);
    const TripletDataset ds = random_triplets(rng, 4, 3);
    const ObjectiveConfig cfg{2.0, 1.0, &ds};

    const Metric zero = recover_metric(cfg, Eigen::VectorXd::Zero(4));
    CHECK(zero.matrix.frobenius_norm() == 0.0);

    // single triplet with K = diag(1, -1), lambda = 2 -> A = diag(0.5, 0)
    std::vector<DataPoint> points{pt({0.0, 0.0}), pt({0.0, 1.0}), pt({1.0, 0.0})};
    const TripletDataset diag_ds(
        std::make_shared<const std::vector<DataPoint>>(std::move(points)),
        {{0, 1, 2}});
    const ObjectiveConfig dcfg{2.0, 1.0, &diag_ds};
    const Metric a = recover_metric(dcfg, Eigen::VectorXd::Ones(1));
    CHECK(a.matrix(0, 0) == doctest::Approx(0.5));
    CHECK(a.matrix(1, 1) == doctest::Approx(0.0));

    // definitional identity: lambda * A == psd_project(sum q K)
    const Eigen::VectorXd q = random_feasible_q(rng, 4, cfg.budget());
    const Metric m = recover_metric(cfg, q);
    const SymmetricMatrix projected = psd_project(weighted_gap_sum(cfg, q));
    CHECK(max_abs_diff(m.matrix.scaled(cfg.reg_lambda), projected) <= 1e-10);
    CHECK(eigendecompose(m.matrix).eigenvalues.minCoeff() >= -1e-8);
}

TEST_CASE("eval_gradient: closed-form cases") {
    Rng rng(6);
    const TripletDataset ds = random_triplets(rng, 4, 2);
    const ObjectiveConfig cfg{1.5, 1.0, &ds};
    const Eigen::VectorXd g0 = eval_gradient(cfg, Eigen::VectorXd::Zero(4));
    for (int i = 0; i < 4; ++i) {
        CHECK(g0(i) == doctest::Approx(-1.0));
    }

    // single PSD K, q = 1, lambda = 1: gradient = -1 + ||K||_F^2
    const TripletDataset psd_ds = scalar_triplet(3.0);
    const ObjectiveConfig pcfg{1.0, 1.0, &psd_ds};
    const Eigen::VectorXd g = eval_gradient(pcfg, Eigen::VectorXd::Ones(1));
    CHECK(g(0) == doctest::Approx(-1.0 + 9.0));
}

TEST_CASE("eval_gradient matches central finite differences") {
    const int sizes[] = {2, 5, 20};
    const int dims[] = {2, 5};
    Rng rng(123);
    for (int n : sizes) {
        for (int d : dims) {
            const TripletDataset ds = random_triplets(rng, n, d);
            const ObjectiveConfig cfg{1.0, 1.0, &ds};
            for (int rep = 0; rep < 20; ++rep) {
                Eigen::VectorXd q(n);
                for (int i = 0; i < n; ++i) {
                    q(i) = rng.uniform(0.3, 0.7);
                }
                const Eigen::VectorXd grad = eval_gradient(cfg, q);
                const double h = 1e-5;
                for (int i = 0; i < n; ++i) {
                    Eigen::VectorXd qp = q, qm = q;
                    qp(i) += h;
                    qm(i) -= h;
                    const double fd =
                        (eval_objective(cfg, qp) - eval_objective(cfg, qm)) /
                        (2.0 * h);
                    CHECK(grad(i) ==
                          doctest::Approx(fd).epsilon(1e-5));
                }
            }
        }
    }
}

TEST_CASE("lipschitz_bound: degenerate, scalar, and sampled dominance") {
    // all anchors equal to their dissimilar point -> Z = 0 -> bound = sqrt(N)
    std::vector<DataPoint> pts{pt({0.0}), pt({1.0})};
    auto table = std::make_shared<const std::vector<DataPoint>>(pts);
    const TripletDataset degen(table, {{0, 1, 0}, {0, 1, 0}, {0, 1, 0}});
    const ObjectiveConfig dcfg{1.0, 1.0, &degen};
    CHECK(lipschitz_bound(dcfg) == doctest::Approx(std::sqrt(3.0)));

    // d=1, x=0, y=0, z=1: K = [1], Z = [1], bound = 2
    std::vector<DataPoint> pts2{pt({0.0}), pt({0.0}), pt({1.0})};
    const TripletDataset scalar(
        std::make_shared<const std::vector<DataPoint>>(std::move(pts2)),
        {{0, 1, 2}});
    const ObjectiveConfig scfg{1.0, 1.0, &scalar};
    CHECK(lipschitz_bound(scfg) == doctest::Approx(2.0));

    Rng rng(17);
    const TripletDataset ds = random_triplets(rng, 8, 3);
    const ObjectiveConfig cfg{1.0, 0.7, &ds};
    const double bound = lipschitz_bound(cfg);
    for (int rep = 0; rep < 100; ++rep) {
        const Eigen::VectorXd q = random_feasible_q(rng, 8, cfg.budget());
        CHECK(bound >= eval_gradient(cfg, q).norm());
    }
}

TEST_CASE("eval_dual: uniform, saturated, and fractional-budget cases") {
    Rng rng(19);
    const TripletDataset ds = random_triplets(rng, 10, 2);
    const ObjectiveConfig cfg{1.0, 0.8, &ds};
    // A = 0: all coefficients are 1, budget 8 fully used
    CHECK(eval_dual(cfg, Metric(SymmetricMatrix(2))) == doctest::Approx(-8.0));

    // tr(A K_i) >= 1 for all i -> inner max is 0
    const TripletDataset one = scalar_triplet(2.0);  // K = [2]
    const ObjectiveConfig ocfg{3.0, 1.0, &one};
    const Metric big(SymmetricMatrix::diagonal(pt({5.0})));  // tr(A K) = 10
    CHECK(eval_dual(ocfg, big) == doctest::Approx(-0.5 * 3.0 * 25.0));
}

TEST_CASE("eval_dual greedy equals enumeration oracle, fractional budget") {
    Rng rng(23);
    const int n = 6;
    const TripletDataset ds = random_triplets(rng, n, 2);
    const ObjectiveConfig cfg{1.0, 2.5 / n, &ds};  // budget = 2.5
    const Metric a(random_psd(rng, 2));

    std::vector<double> coeff(n);
    for (int i = 0; i < n; ++i) {
        coeff[i] = 1.0 - frobenius_inner(a.matrix, ds.gap(i));
    }
    // Enumerate maximizer candidates: any 2 coordinates at 1 plus any other
    // at the fractional 0.5, or fewer actives.
    double best = 0.0;
    for (int i = 0; i < n; ++i) {
        best = std::max(best, std::max(coeff[i], 0.0));
        for (int j = 0; j < n; ++j) {
            if (j == i) continue;
            const double two = std::max(coeff[i], 0.0) + std::max(coeff[j], 0.0);
            best = std::max(best, two);
            for (int f = 0; f < n; ++f) {
                if (f == i || f == j) continue;
                best = std::max(best, coeff[i] + coeff[j] + 0.5 * coeff[f]);
            }
        }
    }
    const double norm = a.matrix.frobenius_norm();
    CHECK(eval_dual(cfg, a) ==
          doctest::Approx(-0.5 * norm * norm - best).epsilon(1e-10));
}

TEST_CASE("eval_dual greedy equals 0/1 vertex enumeration, integer budget") {
    Rng rng(29);
    for (int rep = 0; rep < 20; ++rep) {
        const int n = 3 + static_cast<int>(rng.below(4));  // <= 6
        const int b = 1 + static_cast<int>(rng.below(n));
        const TripletDataset ds = random_triplets(rng, n, 2);
        const ObjectiveConfig cfg{1.0, static_cast<double>(b) / n, &ds};
        const Metric a(random_psd(rng, 2));

        std::vector<double> coeff(n);
        for (int i = 0; i < n; ++i) {
            coeff[i] = 1.0 - frobenius_inner(a.matrix, ds.gap(i));
        }
        double best = -std::numeric_limits<double>::infinity();
        for (int bits = 0; bits < (1 << n); ++bits) {
            if (__builtin_popcount(bits) > b) continue;
            double v = 0.0;
            for (int i = 0; i < n; ++i) {
                if (bits & (1 << i)) v += coeff[i];
            }
            best = std::max(best, v);
        }
        const double norm = a.matrix.frobenius_norm();
        CHECK(eval_dual(cfg, a) ==
              doctest::Approx(-0.5 * norm * norm - best).epsilon(1e-10));
    }
}

TEST_CASE("duality_gap: composition and weak duality") {
    Rng rng(31);
    const TripletDataset ds = random_triplets(rng, 10, 2);
    const ObjectiveConfig cfg{1.0, 0.8, &ds};
    CHECK(duality_gap(cfg, Eigen::VectorXd::Zero(10),
                      Metric(SymmetricMatrix(2))) == doctest::Approx(8.0));

    for (int rep = 0; rep < 1000; ++rep) {
        const Eigen::VectorXd q = random_feasible_q(rng, 10, cfg.budget());
        const Eigen::VectorXd q2 = random_feasible_q(rng, 10, cfg.budget());
        CHECK(duality_gap(cfg, q, recover_metric(cfg, q2)) >= -1e-8);
    }
}

TEST_CASE("scaling consistency: features x c with lambda x c^4") {
    Rng rng(37);
    const double c = 1.7;
    const int n = 5, d = 3;
    std::vector<DataPoint> pts, pts_scaled;
    for (int i = 0; i < 3 * n; ++i) {
        pts.push_back(random_vector(rng, d));
        pts_scaled.push_back(c * pts.back());
    }
    std::vector<Triplet> trips;
    for (int i = 0; i < n; ++i) {
        trips.push_back({3 * i, 3 * i + 1, 3 * i + 2});
    }
    const TripletDataset base(
        std::make_shared<const std::vector<DataPoint>>(std::move(pts)), trips);
    const TripletDataset scaled(
        std::make_shared<const std::vector<DataPoint>>(std::move(pts_scaled)),
        trips);
    const double lambda0 = 0.8;
    const ObjectiveConfig cfg0{lambda0, 1.0, &base};
    const ObjectiveConfig cfg1{lambda0 * c * c * c * c, 1.0, &scaled};
    for (int rep = 0; rep < 10; ++rep) {
        const Eigen::VectorXd q = random_feasible_q(rng, n, cfg0.budget());
        CHECK(eval_objective(cfg1, q) ==
              doctest::Approx(eval_objective(cfg0, q)).epsilon(1e-8));
    }
}
