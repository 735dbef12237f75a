#pragma once

#include <string>
#include <vector>

#include "redbench/errors.hpp"
#include "redbench/redundancy_matrix.hpp"

namespace redbench {

// Heuristic defaults for turning per-benchmark redundancy into labels.
// There is no canonical cutoff for "representative", so both thresholds
// are configurable and reports mark them as heuristic.
inline constexpr double kDefaultAnchorThreshold = 0.8;
inline constexpr double kDefaultDistinctThreshold = 0.4;

enum class BenchmarkLabel { Anchor, Neutral, Distinct };

inline const char* benchmark_label_name(BenchmarkLabel label) {
    switch (label) {
        case BenchmarkLabel::Anchor: return "anchor";
        case BenchmarkLabel::Neutral: return "neutral";
        case BenchmarkLabel::Distinct: return "distinct";
    }
    return "?";
}

// Pairwise redundancy among the benchmarks of a Benchmark-axis matrix.
inline RedundancyMatrix cross_matrix(const ScoreMatrix& benchmarks,
                                     Metric metric, ModelSelection selection) {
    if (benchmarks.axis() != Axis::Benchmark) {
        throw DataError("cross_matrix requires a benchmark-axis matrix");
    }
    return pairwise_matrix(benchmarks, metric, std::move(selection));
}

// Labels each benchmark by its average redundancy: Anchor when it tracks
// the rest of the domain, Distinct when it barely does. Benchmarks with an
// undefined redundancy stay Neutral.
inline std::vector<BenchmarkLabel> classify(const RedundancyMatrix& matrix,
                                            double anchor_threshold,
                                            double outlier_threshold) {
    if (!(outlier_threshold < anchor_threshold)) {
        throw UsageError("distinct threshold must be below anchor threshold");
    }
    std::vector<BenchmarkLabel> labels;
    labels.reserve(matrix.size());
    for (const CorrValue& rho : matrix.per_item) {
        if (rho.defined && rho.value >= anchor_threshold) {
            labels.push_back(BenchmarkLabel::Anchor);
        } else if (rho.defined && rho.value <= outlier_threshold) {
            labels.push_back(BenchmarkLabel::Distinct);
        } else {
            labels.push_back(BenchmarkLabel::Neutral);
        }
    }
    return labels;
}

}  // namespace redbench
