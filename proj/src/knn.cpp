#include "rml/knn.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace rml {

EvalReport EvalReport::from_errors(std::vector<double> errors) {
    EvalReport r;
    r.per_seed_errors = std::move(errors);
    const int n = static_cast<int>(r.per_seed_errors.size());
    if (n == 0) {
        return r;
    }
    r.mean = std::accumulate(r.per_seed_errors.begin(),
                             r.per_seed_errors.end(), 0.0) /
             n;
    if (n > 1) {
        double ss = 0.0;
        for (double e : r.per_seed_errors) {
            ss += (e - r.mean) * (e - r.mean);
        }
        r.stddev = std::sqrt(ss / (n - 1));
    }
    return r;
}

namespace {

int classify(const LabeledDataset& train, const Metric& metric,
             const DataPoint& query, int k, int exclude) {
    const int n = train.size();
    std::vector<std::pair<double, int>> dist;
    dist.reserve(n);
    for (int j = 0; j < n; ++j) {
        if (j == exclude) {
            continue;
        }
        dist.emplace_back(mahalanobis_distance(metric, query, train.points[j]),
                          j);
    }
    std::partial_sort(dist.begin(), dist.begin() + k, dist.end());

    std::vector<int> votes(train.n_classes, 0);
    std::vector<double> dist_sum(train.n_classes, 0.0);
    for (int r = 0; r < k; ++r) {
        const int label = train.labels[dist[r].second];
        ++votes[label];
        dist_sum[label] += dist[r].first;
    }

    int best = -1;
    for (int c = 0; c < train.n_classes; ++c) {
        if (votes[c] == 0) {
            continue;
        }
        if (best == -1 || votes[c] > votes[best] ||
            (votes[c] == votes[best] && dist_sum[c] < dist_sum[best])) {
            best = c;
        }
    }
    return best;
}

}  // namespace

int knn_classify(const LabeledDataset& train, const Metric& metric,
                 const DataPoint& query, int k) {
    if (k < 1 || k > train.size()) {
        throw InvalidInputError("knn_classify: need 1 <= k <= |train|");
    }
    if (query.size() != train.dim || metric.dim() != train.dim) {
        throw DimensionError("knn_classify: dimension mismatch");
    }
    return classify(train, metric, query, k, -1);
}

EvalReport evaluate(const LabeledDataset& train, const LabeledDataset& test,
                    const Metric& metric, int k) {
    if (test.size() == 0) {
        throw InvalidInputError("evaluate: empty test set");
    }
    int wrong = 0;
    for (int i = 0; i < test.size(); ++i) {
        if (knn_classify(train, metric, test.points[i], k) != test.labels[i]) {
            ++wrong;
        }
    }
    EvalReport r;
    r.n_test = test.size();
    r.error_rate = static_cast<double>(wrong) / test.size();
    return r;
}

double loo_train_error(const LabeledDataset& train, const Metric& metric,
                       int k) {
    if (k < 1 || k >= train.size()) {
        throw InvalidInputError("loo_train_error: need 1 <= k < |train|");
    }
    int wrong = 0;
    for (int i = 0; i < train.size(); ++i) {
        if (classify(train, metric, train.points[i], k, i) != train.labels[i]) {
            ++wrong;
        }
    }
    return static_cast<double>(wrong) / train.size();
}

}  // namespace rml
