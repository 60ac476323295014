#include "rml/model.hpp"

namespace rml {

SymmetricMatrix build_gap_matrix(const DataPoint& anchor,
                                 const DataPoint& similar,
                                 const DataPoint& dissimilar) {
    if (anchor.size() != similar.size() || anchor.size() != dissimilar.size()) {
        throw DimensionError("build_gap_matrix: point dimensions differ");
    }
    SymmetricMatrix k = SymmetricMatrix::outer(anchor - dissimilar);
    k.add_scaled(SymmetricMatrix::outer(anchor - similar), -1.0);
    return k;
}

TripletDataset::TripletDataset(
    std::shared_ptr<const std::vector<DataPoint>> points,
    std::vector<Triplet> triplets)
    : points_(std::move(points)), triplets_(std::move(triplets)) {
    if (!points_ || points_->empty()) {
        throw InvalidInputError("TripletDataset: empty point table");
    }
    if (triplets_.empty()) {
        throw InvalidInputError("TripletDataset: needs at least one triplet");
    }
    dim_ = static_cast<int>((*points_)[0].size());
    const int n = static_cast<int>(points_->size());
    gaps_.reserve(triplets_.size());
    for (const Triplet& t : triplets_) {
        if (t.anchor < 0 || t.anchor >= n || t.similar < 0 || t.similar >= n ||
            t.dissimilar < 0 || t.dissimilar >= n) {
            throw InvalidInputError("TripletDataset: point index out of range");
        }
        gaps_.push_back(build_gap_matrix((*points_)[t.anchor],
                                         (*points_)[t.similar],
                                         (*points_)[t.dissimilar]));
    }
}

TripletDataset TripletDataset::with_swaps(const std::vector<bool>& mask) const {
    if (mask.size() != triplets_.size()) {
        throw DimensionError("with_swaps: mask length mismatch");
    }
    TripletDataset out = *this;
    for (std::size_t i = 0; i < mask.size(); ++i) {
        if (mask[i]) {
            std::swap(out.triplets_[i].similar, out.triplets_[i].dissimilar);
            // Exchanging y and z exchanges the two outer-product terms,
            // so the cached gap matrix negates exactly.
            out.gaps_[i] = -out.gaps_[i];
        }
    }
    return out;
}

double mahalanobis_distance(const Metric& m, const DataPoint& a,
                            const DataPoint& b) {
    if (a.size() != b.size() || a.size() != m.dim()) {
        throw DimensionError("mahalanobis_distance: dimension mismatch");
    }
    const Eigen::VectorXd diff = a - b;
    return diff.dot(m.matrix.apply(diff));
}

double triplet_margin(const Metric& m, const DataPoint& anchor,
                      const DataPoint& similar, const DataPoint& dissimilar) {
    return mahalanobis_distance(m, anchor, dissimilar) -
           mahalanobis_distance(m, anchor, similar);
}

}  // namespace rml
