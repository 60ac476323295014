#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "rml/model.hpp"

namespace rml {

struct LabeledDataset {
    std::vector<DataPoint> points;
    std::vector<int> labels;  // contiguous in [0, n_classes)
    int dim = 0;
    int n_classes = 0;
    std::vector<std::string> label_names;  // original label text, by class id

    int size() const { return static_cast<int>(points.size()); }
};

struct SplitSpec {
    double train_fraction = 0.85;
    std::uint64_t seed = 0;
};

struct NoiseSpec {
    double eta = 1.0;  // each triplet is flipped with probability 1 - eta
    std::uint64_t seed = 0;
};

/// Label column chosen by 0-based index or by header name.
using LabelColumn = std::variant<int, std::string>;

struct CsvOptions {
    LabelColumn label_column = -1;  // -1 means last column
    bool has_header = false;
};

/// Loads a numeric CSV with one label column (which may be string-valued).
/// Labels are remapped to 0..n_classes-1 in order of first appearance.
LabeledDataset load_csv(const std::string& path, const CsvOptions& opts = {});

/// Seeded random partition; train size = round(train_fraction * n).
std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& ds,
                                                const SplitSpec& spec);

/// Per-feature affine transform fitted on the training split and applied to
/// both splits (z-scoring; zero-variance features pass through unscaled).
struct Standardizer {
    Eigen::VectorXd mean;
    Eigen::VectorXd scale;  // 1 / stddev

    static Standardizer fit(const LabeledDataset& train);
    LabeledDataset apply(const LabeledDataset& ds) const;
};

/// Triplets from class labels and k-nearest-neighbor structure: for each
/// anchor, same-class neighbors pair with different-class neighbors, capped
/// per anchor, ordered by increasing similar- then dissimilar-distance.
TripletDataset generate_triplets(const LabeledDataset& train, int k,
                                 int cap_per_anchor);

/// Flips each triplet (swap similar/dissimilar, negate the gap matrix)
/// independently with probability 1 - eta. Returns the noisy dataset and the
/// mask of flipped indices.
std::pair<TripletDataset, std::vector<bool>> inject_noise(
    const TripletDataset& td, const NoiseSpec& spec);

}  // namespace rml
