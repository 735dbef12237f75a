#pragma once

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "redbench/errors.hpp"
#include "redbench/records.hpp"

namespace redbench {

enum class Axis { Instance, Dimension, Benchmark };

inline const char* axis_name(Axis a) {
    switch (a) {
        case Axis::Instance: return "instance";
        case Axis::Dimension: return "dimension";
        case Axis::Benchmark: return "benchmark";
    }
    return "?";
}

// Dense models x columns score table. Construction guarantees no missing
// cells, unique ids, values in [0, 1], and canonical (lexicographic)
// row/column order when built from records.
class ScoreMatrix {
public:
    ScoreMatrix(Axis axis, std::vector<std::string> row_ids,
                std::vector<std::string> col_ids, std::vector<double> values)
        : axis_(axis),
          row_ids_(std::move(row_ids)),
          col_ids_(std::move(col_ids)),
          values_(std::move(values)) {
        if (values_.size() != row_ids_.size() * col_ids_.size()) {
            throw DataError("score matrix: value count " +
                            std::to_string(values_.size()) +
                            " does not match " +
                            std::to_string(row_ids_.size()) + "x" +
                            std::to_string(col_ids_.size()));
        }
        check_unique(row_ids_, "row");
        check_unique(col_ids_, "column");
        for (double v : values_) {
            if (!(v >= 0.0 && v <= 1.0)) {
                throw DataError("score matrix: cell value " +
                                std::to_string(v) + " outside [0,1]");
            }
        }
    }

    Axis axis() const { return axis_; }
    std::size_t rows() const { return row_ids_.size(); }
    std::size_t cols() const { return col_ids_.size(); }
    const std::vector<std::string>& row_ids() const { return row_ids_; }
    const std::vector<std::string>& col_ids() const { return col_ids_; }
    const std::vector<double>& values() const { return values_; }

    double at(std::size_t r, std::size_t c) const {
        return values_[r * cols() + c];
    }

    std::vector<double> column(std::size_t c) const {
        std::vector<double> out(rows());
        for (std::size_t r = 0; r < rows(); ++r) out[r] = at(r, c);
        return out;
    }

    // Per-row mean over all columns; the "overall performance" used for
    // Top-K / Bottom-K selection.
    std::vector<double> row_means() const {
        std::vector<double> out(rows(), 0.0);
        for (std::size_t r = 0; r < rows(); ++r) {
            double sum = 0.0;
            for (std::size_t c = 0; c < cols(); ++c) sum += at(r, c);
            out[r] = sum / static_cast<double>(cols());
        }
        return out;
    }

    // Keeps only the given rows, preserving this matrix's row order and the
    // full column set.
    ScoreMatrix restrict_rows(const std::vector<std::string>& keep) const {
        std::unordered_set<std::string> wanted(keep.begin(), keep.end());
        std::vector<std::string> new_rows;
        std::vector<double> new_values;
        new_rows.reserve(wanted.size());
        new_values.reserve(wanted.size() * cols());
        for (std::size_t r = 0; r < rows(); ++r) {
            if (!wanted.count(row_ids_[r])) continue;
            new_rows.push_back(row_ids_[r]);
            new_values.insert(new_values.end(), values_.begin() + r * cols(),
                              values_.begin() + (r + 1) * cols());
        }
        if (new_rows.size() != wanted.size()) {
            throw DataError("restrict_rows: some requested models are not in "
                            "the matrix");
        }
        return ScoreMatrix(axis_, std::move(new_rows), col_ids_,
                           std::move(new_values));
    }

private:
    static void check_unique(const std::vector<std::string>& ids,
                             const char* what) {
        std::unordered_set<std::string> seen;
        for (const auto& id : ids) {
            if (!seen.insert(id).second) {
                throw DataError(std::string("score matrix: duplicate ") +
                                what + " id '" + id + "'");
            }
        }
    }

    Axis axis_;
    std::vector<std::string> row_ids_;
    std::vector<std::string> col_ids_;
    std::vector<double> values_;
};

struct BuildResult {
    ScoreMatrix matrix;
    // Models present in the input but lacking complete coverage of the
    // requested columns; excluded per the model-intersection rule.
    std::vector<std::string> dropped_models;
};

namespace detail {

// benchmark -> instance -> dimension, all lexicographic.
using BenchLayout = std::map<std::string, std::map<std::string, std::string>>;

}  // namespace detail

// Builds a dense matrix from per-instance records. Instance axis: one
// column per instance with raw scores. Dimension axis: one column per
// dimension, cell = mean of the model's scores over that dimension's
// instances. Benchmark axis: one column per benchmark (the `benchmark`
// argument is ignored), cell = mean over all that benchmark's instances.
// Rows are restricted to models with complete coverage of every requested
// column; dropped models are reported.
inline BuildResult build_matrix(const std::vector<EvalRecord>& records,
                                const std::string& benchmark, Axis axis) {
    std::vector<const EvalRecord*> pool;
    pool.reserve(records.size());
    for (const auto& rec : records) {
        if (axis == Axis::Benchmark || rec.benchmark_id == benchmark) {
            pool.push_back(&rec);
        }
    }
    if (pool.empty()) {
        if (axis == Axis::Benchmark) throw DataError("no records in input");
        throw DataError("no records for benchmark '" + benchmark + "'");
    }

    detail::BenchLayout layout;
    for (const auto* rec : pool) {
        layout[rec->benchmark_id][rec->instance_id] = rec->dimension_id;
    }

    // The instance census a model must match in full to count as complete.
    std::size_t total_instances = 0;
    for (const auto& [bench, instances] : layout) {
        total_instances += instances.size();
        if (instances.empty()) {
            throw DataError("benchmark '" + bench + "' has no instances");
        }
    }

    std::unordered_map<std::string,
                       std::unordered_map<std::string, double>>
        model_scores;  // model -> (bench \x1f instance) -> score
    for (const auto* rec : pool) {
        model_scores[rec->model_id][rec->benchmark_id + '\x1f' +
                                    rec->instance_id] = rec->score;
    }

    std::vector<std::string> complete;
    std::vector<std::string> dropped;
    for (const auto& [model, scores] : model_scores) {
        if (scores.size() == total_instances) {
            complete.push_back(model);
        } else {
            dropped.push_back(model);
        }
    }
    std::sort(complete.begin(), complete.end());
    std::sort(dropped.begin(), dropped.end());
    if (complete.empty()) {
        throw DataError(
            "no model has complete coverage of the requested columns "
            "(model intersection is empty)");
    }

    std::vector<std::string> col_ids;
    std::vector<double> values;

    if (axis == Axis::Instance) {
        const auto& instances = layout.begin()->second;
        for (const auto& [inst, dim] : instances) col_ids.push_back(inst);
        values.reserve(complete.size() * col_ids.size());
        const std::string& bench = layout.begin()->first;
        for (const auto& model : complete) {
            const auto& scores = model_scores[model];
            for (const auto& inst : col_ids) {
                values.push_back(scores.at(bench + '\x1f' + inst));
            }
        }
    } else if (axis == Axis::Dimension) {
        const std::string& bench = layout.begin()->first;
        // dimension -> sorted instance ids
        std::map<std::string, std::vector<std::string>> dims;
        for (const auto& [inst, dim] : layout.begin()->second) {
            dims[dim].push_back(inst);
        }
        for (const auto& [dim, insts] : dims) col_ids.push_back(dim);
        values.reserve(complete.size() * col_ids.size());
        for (const auto& model : complete) {
            const auto& scores = model_scores[model];
            for (const auto& dim : col_ids) {
                const auto& insts = dims[dim];
                double sum = 0.0;
                for (const auto& inst : insts) {
                    sum += scores.at(bench + '\x1f' + inst);
                }
                values.push_back(sum / static_cast<double>(insts.size()));
            }
        }
    } else {
        for (const auto& [bench, insts] : layout) col_ids.push_back(bench);
        values.reserve(complete.size() * col_ids.size());
        for (const auto& model : complete) {
            const auto& scores = model_scores[model];
            for (const auto& [bench, insts] : layout) {
                double sum = 0.0;
                for (const auto& [inst, dim] : insts) {
                    sum += scores.at(bench + '\x1f' + inst);
                }
                values.push_back(sum / static_cast<double>(insts.size()));
            }
        }
    }

    return BuildResult{
        ScoreMatrix(axis, std::move(complete), std::move(col_ids),
                    std::move(values)),
        std::move(dropped)};
}

// Builds a Benchmark-axis matrix from pre-aggregated leaderboard rows,
// keeping the models that have a score for every benchmark.
inline BuildResult build_benchmark_matrix(
    const std::vector<BenchmarkScore>& rows) {
    if (rows.empty()) throw DataError("no benchmark scores in input");
    std::set<std::string> bench_set;
    for (const auto& row : rows) bench_set.insert(row.benchmark_id);
    std::vector<std::string> col_ids(bench_set.begin(), bench_set.end());

    std::map<std::string, std::unordered_map<std::string, double>> by_model;
    for (const auto& row : rows) {
        by_model[row.model_id][row.benchmark_id] = row.score;
    }

    std::vector<std::string> complete;
    std::vector<std::string> dropped;
    std::vector<double> values;
    for (const auto& [model, scores] : by_model) {
        if (scores.size() == col_ids.size()) {
            complete.push_back(model);
        } else {
            dropped.push_back(model);
        }
    }
    if (complete.empty()) {
        throw DataError(
            "no model has a score on every benchmark "
            "(model intersection is empty)");
    }
    values.reserve(complete.size() * col_ids.size());
    for (const auto& model : complete) {
        const auto& scores = by_model[model];
        for (const auto& bench : col_ids) values.push_back(scores.at(bench));
    }
    return BuildResult{ScoreMatrix(Axis::Benchmark, std::move(complete),
                                   std::move(col_ids), std::move(values)),
                       std::move(dropped)};
}

enum class SelectionMode { All, TopK, BottomK };

inline const char* selection_mode_name(SelectionMode m) {
    switch (m) {
        case SelectionMode::All: return "all";
        case SelectionMode::TopK: return "top";
        case SelectionMode::BottomK: return "bottom";
    }
    return "?";
}

// The model subset an analysis ran on. `selected_ids` is ordered by the
// ordering score (descending for All/TopK, ascending for BottomK) with
// lexicographic model-id tie-breaks; `ordering_scores` is parallel to it.
struct ModelSelection {
    SelectionMode mode = SelectionMode::All;
    int k = 0;
    std::vector<std::string> selected_ids;
    std::vector<double> ordering_scores;
};

struct SelectionResult {
    ModelSelection selection;
    ScoreMatrix matrix;  // rows restricted, canonical row order preserved
};

// Selects All / Top-K / Bottom-K models by their row mean over all columns
// of `matrix` (overall performance) and returns the row-restricted matrix.
inline SelectionResult select_models(const ScoreMatrix& matrix,
                                     SelectionMode mode, int k = 0) {
    if (mode != SelectionMode::All && k <= 0) {
        throw UsageError("selection k must be positive, got " +
                         std::to_string(k));
    }
    std::vector<double> means = matrix.row_means();
    std::vector<std::size_t> order(matrix.rows());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    bool ascending = (mode == SelectionMode::BottomK);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        if (means[a] != means[b]) {
            return ascending ? means[a] < means[b] : means[a] > means[b];
        }
        return matrix.row_ids()[a] < matrix.row_ids()[b];
    });
    std::size_t take = matrix.rows();
    if (mode != SelectionMode::All) {
        take = std::min<std::size_t>(static_cast<std::size_t>(k),
                                     matrix.rows());
    }

    ModelSelection sel;
    sel.mode = mode;
    sel.k = (mode == SelectionMode::All) ? 0 : k;
    for (std::size_t i = 0; i < take; ++i) {
        sel.selected_ids.push_back(matrix.row_ids()[order[i]]);
        sel.ordering_scores.push_back(means[order[i]]);
    }
    ScoreMatrix restricted = matrix.restrict_rows(sel.selected_ids);
    return SelectionResult{std::move(sel), std::move(restricted)};
}

// Parses the CLI selection grammar: `all`, `top:K`, or `bottom:K`.
inline std::pair<SelectionMode, int> parse_selection_spec(
    const std::string& spec) {
    if (spec == "all") return {SelectionMode::All, 0};
    auto parse_k = [&](std::size_t prefix_len) {
        int k = 0;
        const char* first = spec.data() + prefix_len;
        const char* last = spec.data() + spec.size();
        auto [ptr, ec] = std::from_chars(first, last, k);
        if (ec != std::errc{} || ptr != last || k <= 0) {
            throw UsageError("invalid selection '" + spec +
                             "' (expected all, top:K, or bottom:K)");
        }
        return k;
    };
    if (spec.rfind("top:", 0) == 0) {
        return {SelectionMode::TopK, parse_k(4)};
    }
    if (spec.rfind("bottom:", 0) == 0) {
        return {SelectionMode::BottomK, parse_k(7)};
    }
    throw UsageError("invalid selection '" + spec +
                     "' (expected all, top:K, or bottom:K)");
}

}  // namespace redbench
