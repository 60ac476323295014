#include "rml/data_pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "rml/rng.hpp"

namespace rml {

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        fields.push_back(field);
    }
    if (!line.empty() && line.back() == ',') {
        fields.emplace_back();
    }
    return fields;
}

std::string trimmed(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r\n");
    if (begin == std::string::npos) {
        return "";
    }
    const auto end = s.find_last_not_of(" \t\r\n");
    return s.substr(begin, end - begin + 1);
}

}  // namespace

LabeledDataset load_csv(const std::string& path, const CsvOptions& opts) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open file: " + path);
    }

    std::vector<std::vector<std::string>> rows;
    std::string line;
    std::vector<std::string> header;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trimmed(line).empty()) {
            continue;
        }
        auto fields = split_fields(line);
        if (opts.has_header && header.empty()) {
            header = fields;
            continue;
        }
        rows.push_back(std::move(fields));
    }
    if (rows.empty()) {
        throw ParseError(path + ": no data rows");
    }

    const int n_cols = static_cast<int>(rows[0].size());
    int label_col;
    if (std::holds_alternative<int>(opts.label_column)) {
        label_col = std::get<int>(opts.label_column);
        if (label_col == -1) {
            label_col = n_cols - 1;
        }
    } else {
        const std::string& name = std::get<std::string>(opts.label_column);
        auto it = std::find(header.begin(), header.end(), name);
        if (it == header.end()) {
            throw ParseError(path + ": unknown label column '" + name + "'");
        }
        label_col = static_cast<int>(it - header.begin());
    }
    if (label_col < 0 || label_col >= n_cols) {
        throw ParseError(path + ": label column out of range");
    }

    LabeledDataset ds;
    ds.dim = n_cols - 1;
    if (ds.dim < 1) {
        throw ParseError(path + ": no feature columns");
    }
    std::map<std::string, int> label_ids;
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const auto& fields = rows[r];
        if (static_cast<int>(fields.size()) != n_cols) {
            throw ParseError(path + ": ragged row " + std::to_string(r + 1));
        }
        DataPoint x(ds.dim);
        int fi = 0;
        for (int c = 0; c < n_cols; ++c) {
            if (c == label_col) {
                continue;
            }
            const std::string cell = trimmed(fields[c]);
            std::size_t pos = 0;
            double v;
            try {
                v = std::stod(cell, &pos);
            } catch (const std::exception&) {
                throw ParseError(path + ": non-numeric feature at row " +
                                 std::to_string(r + 1));
            }
            if (pos != cell.size() || !std::isfinite(v)) {
                throw ParseError(path + ": non-numeric feature at row " +
                                 std::to_string(r + 1));
            }
            x(fi++) = v;
        }
        const std::string label = trimmed(fields[label_col]);
        auto [it, inserted] =
            label_ids.emplace(label, static_cast<int>(label_ids.size()));
        if (inserted) {
            ds.label_names.push_back(label);
        }
        ds.points.push_back(std::move(x));
        ds.labels.push_back(it->second);
    }
    ds.n_classes = static_cast<int>(label_ids.size());
    return ds;
}

std::pair<LabeledDataset, LabeledDataset> split(const LabeledDataset& ds,
                                                const SplitSpec& spec) {
    if (ds.size() == 0) {
        throw InvalidInputError("split: empty dataset");
    }
    if (!(spec.train_fraction > 0.0 && spec.train_fraction < 1.0)) {
        throw SplitError("split: train_fraction must be in (0, 1)");
    }
    const int n = ds.size();
    const int n_train =
        static_cast<int>(std::lround(spec.train_fraction * n));
    if (n_train < 1 || n_train >= n) {
        throw SplitError("split: degenerate partition (train " +
                         std::to_string(n_train) + " of " + std::to_string(n) +
                         ")");
    }

    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    Rng rng(spec.seed);
    rng.shuffle(order);

    auto take = [&](int begin, int end) {
        LabeledDataset out;
        out.dim = ds.dim;
        out.n_classes = ds.n_classes;
        out.label_names = ds.label_names;
        for (int i = begin; i < end; ++i) {
            out.points.push_back(ds.points[order[i]]);
            out.labels.push_back(ds.labels[order[i]]);
        }
        return out;
    };
    return {take(0, n_train), take(n_train, n)};
}

Standardizer Standardizer::fit(const LabeledDataset& train) {
    if (train.size() == 0) {
        throw InvalidInputError("Standardizer: empty training set");
    }
    const int d = train.dim;
    const int n = train.size();
    Standardizer s;
    s.mean = Eigen::VectorXd::Zero(d);
    for (const auto& x : train.points) {
        s.mean += x;
    }
    s.mean /= n;
    Eigen::VectorXd var = Eigen::VectorXd::Zero(d);
    for (const auto& x : train.points) {
        var += (x - s.mean).cwiseAbs2();
    }
    var /= n;
    s.scale = Eigen::VectorXd::Ones(d);
    for (int j = 0; j < d; ++j) {
        if (var(j) > 0.0) {
            s.scale(j) = 1.0 / std::sqrt(var(j));
        }
    }
    return s;
}

LabeledDataset Standardizer::apply(const LabeledDataset& ds) const {
    LabeledDataset out = ds;
    for (auto& x : out.points) {
        x = (x - mean).cwiseProduct(scale);
    }
    return out;
}

TripletDataset generate_triplets(const LabeledDataset& train, int k,
                                 int cap_per_anchor) {
    const int n = train.size();
    if (k < 1 || k >= n) {
        throw InvalidInputError("generate_triplets: need 1 <= k < |train|");
    }
    if (cap_per_anchor < 1) {
        throw InvalidInputError("generate_triplets: cap_per_anchor must be >= 1");
    }

    auto points = std::make_shared<const std::vector<DataPoint>>(train.points);
    std::vector<Triplet> triplets;

    for (int a = 0; a < n; ++a) {
        // k nearest neighbors under Euclidean distance, ties by lowest index.
        std::vector<std::pair<double, int>> dist;
        dist.reserve(n - 1);
        for (int j = 0; j < n; ++j) {
            if (j != a) {
                dist.emplace_back((train.points[a] - train.points[j]).squaredNorm(),
                                  j);
            }
        }
        std::sort(dist.begin(), dist.end());

        std::vector<int> same, other;  // each in increasing distance order
        for (int r = 0; r < k; ++r) {
            const int j = dist[r].second;
            (train.labels[j] == train.labels[a] ? same : other).push_back(j);
        }

        int emitted = 0;
        for (int y : same) {
            for (int z : other) {
                if (emitted == cap_per_anchor) {
                    break;
                }
                triplets.push_back({a, y, z});
                ++emitted;
            }
            if (emitted == cap_per_anchor) {
                break;
            }
        }
    }

    if (triplets.empty()) {
        throw EmptyTripletError(
            "generate_triplets: no anchor has both a same-class and a "
            "different-class neighbor");
    }
    return TripletDataset(std::move(points), std::move(triplets));
}

std::pair<TripletDataset, std::vector<bool>> inject_noise(
    const TripletDataset& td, const NoiseSpec& spec) {
    if (!(spec.eta >= 0.0 && spec.eta <= 1.0)) {
        throw InvalidInputError("inject_noise: eta must be in [0, 1]");
    }
    Rng rng(spec.seed);
    std::vector<bool> mask(td.count());
    for (int i = 0; i < td.count(); ++i) {
        mask[i] = rng.uniform() < 1.0 - spec.eta;
    }
    return {td.with_swaps(mask), mask};
}

}  // namespace rml
