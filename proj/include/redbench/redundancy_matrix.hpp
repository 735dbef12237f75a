#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "redbench/errors.hpp"
#include "redbench/metrics.hpp"
#include "redbench/score_matrix.hpp"

namespace redbench {

// Pairwise correlation structure among dimensions or benchmarks, plus the
// per-item average redundancy and the overall mean.
//
// Cells are row-major. For SRCC/PLCC the matrix is symmetric; for R2 it is
// directed row -> column with the row as the prediction, and the per-item
// average is taken over the outgoing (row) direction.
struct RedundancyMatrix {
    std::vector<std::string> item_ids;
    Metric metric = Metric::SRCC;
    ModelSelection selection;
    std::vector<CorrValue> cells;
    std::vector<CorrValue> per_item;
    std::vector<int> per_item_skipped;  // undefined pairs excluded per row
    CorrValue overall;

    std::size_t size() const { return item_ids.size(); }
    const CorrValue& cell(std::size_t i, std::size_t j) const {
        return cells[i * size() + j];
    }
};

struct FlaggedPair {
    std::size_t i = 0;
    std::size_t j = 0;
    double value = 0.0;
};

// Pairwise correlation of the columns of `items` (a selection-restricted
// Dimension- or Benchmark-axis matrix). SRCC correlates the per-column
// rank vectors; PLCC and R2 operate on the raw score columns, with column
// i as the prediction of column j in cell (i, j) for R2. Diagonal cells
// are 1 by convention. Per-item values average the defined off-diagonal
// cells of each row; the overall value averages the defined per-item
// values.
inline RedundancyMatrix pairwise_matrix(const ScoreMatrix& items,
                                        Metric metric,
                                        ModelSelection selection) {
    const std::size_t m = items.cols();
    const char* kind =
        items.axis() == Axis::Benchmark ? "benchmarks" : "dimensions";
    if (m < 2) {
        throw DataError("need at least 2 " + std::string(kind) + ", got " +
                        std::to_string(m));
    }
    if (items.rows() < 3) {
        throw DataError("need at least 3 models after selection, got " +
                        std::to_string(items.rows()));
    }

    std::vector<std::vector<double>> columns(m);
    for (std::size_t c = 0; c < m; ++c) columns[c] = items.column(c);
    std::vector<RankVector> ranks;
    if (metric == Metric::SRCC) {
        ranks.resize(m);
        for (std::size_t c = 0; c < m; ++c) ranks[c] = rank(columns[c]);
    }

    RedundancyMatrix out;
    out.item_ids = items.col_ids();
    out.metric = metric;
    out.selection = std::move(selection);
    out.cells.assign(m * m, CorrValue::undefined());

    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) {
                out.cells[i * m + j] = CorrValue::of(1.0);
                continue;
            }
            CorrValue v;
            switch (metric) {
                case Metric::SRCC:
                    v = detail::pearson(ranks[i], ranks[j]);
                    break;
                case Metric::PLCC:
                    v = detail::pearson(columns[i], columns[j]);
                    break;
                case Metric::R2:
                    v = r2(columns[i], columns[j]);
                    break;
            }
            out.cells[i * m + j] = v;
        }
    }

    out.per_item.assign(m, CorrValue::undefined());
    out.per_item_skipped.assign(m, 0);
    for (std::size_t i = 0; i < m; ++i) {
        double sum = 0.0;
        int defined = 0;
        for (std::size_t j = 0; j < m; ++j) {
            if (j == i) continue;
            const CorrValue& v = out.cells[i * m + j];
            if (v.defined) {
                sum += v.value;
                ++defined;
            } else {
                ++out.per_item_skipped[i];
            }
        }
        if (defined > 0) {
            out.per_item[i] = CorrValue::of(sum / defined);
        }
    }

    double total = 0.0;
    int counted = 0;
    for (const CorrValue& v : out.per_item) {
        if (v.defined) {
            total += v.value;
            ++counted;
        }
    }
    if (counted > 0) out.overall = CorrValue::of(total / counted);
    return out;
}

// Off-diagonal defined cells with value >= threshold, sorted by value
// descending (index order breaks ties). Symmetric metrics are deduplicated
// to unordered pairs (i < j); the directed R2 matrix keeps both directions.
inline std::vector<FlaggedPair> flag_redundant_pairs(
    const RedundancyMatrix& matrix, double threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0)) {
        throw UsageError("flag threshold must be in (0,1], got " +
                         std::to_string(threshold));
    }
    const std::size_t m = matrix.size();
    const bool symmetric = matrix.metric != Metric::R2;
    std::vector<FlaggedPair> out;
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            if (i == j) continue;
            if (symmetric && j < i) continue;
            const CorrValue& v = matrix.cell(i, j);
            if (v.defined && v.value >= threshold) {
                out.push_back(FlaggedPair{i, j, v.value});
            }
        }
    }
    std::sort(out.begin(), out.end(),
              [](const FlaggedPair& a, const FlaggedPair& b) {
                  if (a.value != b.value) return a.value > b.value;
                  if (a.i != b.i) return a.i < b.i;
                  return a.j < b.j;
              });
    return out;
}

}  // namespace redbench
