#pragma once

#include <Eigen/Dense>
#include <memory>
#include <vector>

#include "rml/linalg.hpp"

namespace rml {

using DataPoint = Eigen::VectorXd;

/// Indices into a shared point table. Anchors repeat across many triplets,
/// so triplets reference points instead of copying them.
struct Triplet {
    int anchor = 0;
    int similar = 0;
    int dissimilar = 0;
};

/// Gap matrix K = (x-z)(x-z)^T - (x-y)(x-y)^T for anchor x, similar y,
/// dissimilar z. tr(A K) is the triplet's margin under metric A.
SymmetricMatrix build_gap_matrix(const DataPoint& anchor,
                                 const DataPoint& similar,
                                 const DataPoint& dissimilar);

/// Immutable set of triplet constraints over a shared point table, with the
/// gap matrices precomputed (every solver pass touches all of them).
class TripletDataset {
public:
    TripletDataset(std::shared_ptr<const std::vector<DataPoint>> points,
                   std::vector<Triplet> triplets);

    int dim() const { return dim_; }
    int count() const { return static_cast<int>(triplets_.size()); }

    const Triplet& triplet(int i) const { return triplets_[i]; }
    const SymmetricMatrix& gap(int i) const { return gaps_[i]; }
    const DataPoint& point(int i) const { return (*points_)[i]; }
    const std::vector<Triplet>& triplets() const { return triplets_; }
    std::shared_ptr<const std::vector<DataPoint>> point_table() const {
        return points_;
    }

    /// Returns a copy with similar/dissimilar exchanged on the masked
    /// triplets; each affected gap matrix is negated exactly.
    TripletDataset with_swaps(const std::vector<bool>& mask) const;

private:
    std::shared_ptr<const std::vector<DataPoint>> points_;
    std::vector<Triplet> triplets_;
    std::vector<SymmetricMatrix> gaps_;
    int dim_;
};

/// A learned Mahalanobis metric: a PSD matrix A defining
/// d_A(a, b) = (a-b)^T A (a-b) (squared form, no square root).
struct Metric {
    SymmetricMatrix matrix;

    explicit Metric(SymmetricMatrix m) : matrix(std::move(m)) {}
    static Metric identity(int dim) { return Metric(SymmetricMatrix::identity(dim)); }
    int dim() const { return matrix.dim(); }
};

double mahalanobis_distance(const Metric& m, const DataPoint& a,
                            const DataPoint& b);

/// d_A(x, z) - d_A(x, y); equals tr(A K) for the triplet's gap matrix K.
double triplet_margin(const Metric& m, const DataPoint& anchor,
                      const DataPoint& similar, const DataPoint& dissimilar);

}  // namespace rml
