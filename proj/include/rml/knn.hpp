#pragma once

#include "rml/data_pipeline.hpp"

namespace rml {

struct EvalReport {
    double error_rate = 0.0;
    int n_test = 0;
    std::vector<double> per_seed_errors;
    double mean = 0.0;
    double stddev = 0.0;  // sample stddev (n-1 denominator)

    /// Aggregates one error rate per seed into mean/stddev.
    static EvalReport from_errors(std::vector<double> errors);
};

/// Majority vote among the k nearest training points under d_A. Distance ties
/// break by lowest training index; vote ties by the smaller distance sum among
/// the tied labels' voters, then by smaller label id.
int knn_classify(const LabeledDataset& train, const Metric& metric,
                 const DataPoint& query, int k);

EvalReport evaluate(const LabeledDataset& train, const LabeledDataset& test,
                    const Metric& metric, int k);

/// Leave-one-out error on the training set itself (each point classified
/// against the others); used for model selection.
double loo_train_error(const LabeledDataset& train, const Metric& metric,
                       int k);

}  // namespace rml
