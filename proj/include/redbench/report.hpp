#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "redbench/cross_benchmark.hpp"
#include "redbench/instance_redundancy.hpp"
#include "redbench/records.hpp"
#include "redbench/redundancy_matrix.hpp"

namespace redbench {

inline constexpr std::string_view kReportSchemaVersion = "redbench-report/1";

inline std::uint64_t fnv1a64(std::string_view bytes) {
    std::uint64_t hash = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        hash ^= c;
        hash *= 0x100000001b3ULL;
    }
    return hash;
}

inline std::string hex64(std::uint64_t value) {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "%016llx",
                  static_cast<unsigned long long>(value));
    return buf;
}

// Content hash of a record set, independent of input order and format.
inline std::string records_fingerprint(const std::vector<EvalRecord>& records) {
    std::vector<std::string> lines;
    lines.reserve(records.size());
    for (const auto& rec : records) {
        char score[40];
        std::snprintf(score, sizeof(score), "%.17g", rec.score);
        lines.push_back(rec.model_id + ',' + rec.benchmark_id + ',' +
                        rec.dimension_id + ',' + rec.instance_id + ',' +
                        score);
    }
    std::sort(lines.begin(), lines.end());
    std::string joined;
    for (const auto& line : lines) {
        joined += line;
        joined.push_back('\n');
    }
    return hex64(fnv1a64(joined));
}

inline nlohmann::json to_json(const CorrValue& v) {
    if (!v.defined) return nullptr;
    return v.value;
}

inline nlohmann::json to_json(const ModelSelection& sel) {
    nlohmann::json j;
    j["mode"] = selection_mode_name(sel.mode);
    if (sel.mode != SelectionMode::All) j["k"] = sel.k;
    j["model_count"] = sel.selected_ids.size();
    j["selected_ids"] = sel.selected_ids;
    return j;
}

namespace detail {

inline nlohmann::json matrix_core_json(const RedundancyMatrix& matrix) {
    nlohmann::json j;
    j["metric"] = metric_name(matrix.metric);
    j["selection"] = to_json(matrix.selection);
    j["item_ids"] = matrix.item_ids;
    nlohmann::json cells = nlohmann::json::array();
    for (const CorrValue& v : matrix.cells) cells.push_back(to_json(v));
    j["cells"] = cells;
    nlohmann::json per_item = nlohmann::json::array();
    int skipped_total = 0;
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        per_item.push_back(to_json(matrix.per_item[i]));
        skipped_total += matrix.per_item_skipped[i];
    }
    j["per_item"] = per_item;
    j["overall"] = to_json(matrix.overall);
    j["undefined_pairs_skipped"] = skipped_total;
    return j;
}

}  // namespace detail

// Dimension-redundancy report fragment.
inline nlohmann::json dims_fragment(const RedundancyMatrix& matrix,
                                    const std::vector<FlaggedPair>& flagged,
                                    double flag_threshold,
                                    const std::string& benchmark) {
    nlohmann::json j = detail::matrix_core_json(matrix);
    j["analysis"] = "dimension_redundancy";
    j["benchmark"] = benchmark;
    j["flag_threshold"] = flag_threshold;
    nlohmann::json pairs = nlohmann::json::array();
    for (const FlaggedPair& p : flagged) {
        pairs.push_back({{"a", matrix.item_ids[p.i]},
                         {"b", matrix.item_ids[p.j]},
                         {"value", p.value}});
    }
    j["flagged_pairs"] = pairs;
    return j;
}

// Instance-redundancy report fragment.
inline nlohmann::json instances_fragment(const RedundancyCurve& curve,
                                         const std::string& benchmark,
                                         std::size_t instance_count) {
    nlohmann::json j;
    j["analysis"] = "instance_redundancy";
    j["benchmark"] = benchmark;
    j["metric"] = metric_name(curve.metric);
    j["selection"] = to_json(curve.selection);
    j["seed"] = curve.seed;
    j["trials"] = curve.trials;
    j["threshold"] = curve.threshold;
    j["instance_count"] = instance_count;
    nlohmann::json points = nlohmann::json::array();
    for (const CurvePoint& p : curve.points) {
        nlohmann::json point;
        point["ratio"] = p.ratio;
        point["mean"] = p.defined ? nlohmann::json(p.mean_corr)
                                  : nlohmann::json(nullptr);
        point["std"] = p.defined ? nlohmann::json(p.std_corr)
                                 : nlohmann::json(nullptr);
        point["undefined"] = p.undefined_trials;
        points.push_back(point);
    }
    j["points"] = points;
    j["minimal_sufficient_ratio"] =
        curve.minimal_sufficient_ratio.has_value()
            ? nlohmann::json(*curve.minimal_sufficient_ratio)
            : nlohmann::json(nullptr);
    return j;
}

// Cross-benchmark report fragment.
inline nlohmann::json cross_fragment(const RedundancyMatrix& matrix,
                                     const std::vector<BenchmarkLabel>& labels,
                                     double anchor_threshold,
                                     double distinct_threshold) {
    nlohmann::json j = detail::matrix_core_json(matrix);
    j["analysis"] = "cross_benchmark_redundancy";
    j["anchor_threshold"] = anchor_threshold;
    j["distinct_threshold"] = distinct_threshold;
    j["thresholds_heuristic"] = true;
    nlohmann::json lbl = nlohmann::json::object();
    for (std::size_t i = 0; i < matrix.size(); ++i) {
        lbl[matrix.item_ids[i]] = benchmark_label_name(labels[i]);
    }
    j["labels"] = lbl;
    return j;
}

// CSV mirror of curve points.
inline std::string curve_points_csv(const RedundancyCurve& curve) {
    std::string out = "ratio,mean_corr,std_corr,undefined_trials\n";
    for (const CurvePoint& p : curve.points) {
        out += nlohmann::json(p.ratio).dump();
        out.push_back(',');
        if (p.defined) {
            out += nlohmann::json(p.mean_corr).dump();
            out.push_back(',');
            out += nlohmann::json(p.std_corr).dump();
        } else {
            out.push_back(',');
        }
        out.push_back(',');
        out += std::to_string(p.undefined_trials);
        out.push_back('\n');
    }
    return out;
}

namespace detail {

inline nlohmann::json recommendations_from(
    const std::vector<nlohmann::json>& fragments) {
    nlohmann::json rec = nlohmann::json::object();
    nlohmann::json dim_checks = nlohmann::json::array();
    nlohmann::json inst_checks = nlohmann::json::array();
    nlohmann::json cross_checks = nlohmann::json::array();

    for (const auto& frag : fragments) {
        const std::string analysis = frag.value("analysis", "");
        if (analysis == "dimension_redundancy") {
            nlohmann::json check;
            check["benchmark"] = frag.value("benchmark", "");
            check["metric"] = frag.value("metric", "");
            check["flagged_pairs"] = frag.value("flagged_pairs",
                                                nlohmann::json::array());
            check["note"] =
                check["flagged_pairs"].empty()
                    ? "no dimension pairs above the similarity threshold"
                    : "review whether the flagged dimension pairs assess "
                      "distinct capabilities";
            dim_checks.push_back(check);
        } else if (analysis == "instance_redundancy") {
            nlohmann::json check;
            check["benchmark"] = frag.value("benchmark", "");
            check["metric"] = frag.value("metric", "");
            auto ratio = frag.value("minimal_sufficient_ratio",
                                    nlohmann::json());
            check["minimal_sufficient_ratio"] = ratio;
            auto count = frag.value("instance_count", std::size_t{0});
            check["instance_count"] = count;
            if (ratio.is_number() && count > 0) {
                std::size_t keep =
                    sample_count(ratio.get<double>(), count);
                check["suggested_instance_count"] = keep;
                check["removable_instances"] = count - keep;
                check["note"] =
                    keep < count
                        ? "the subset ranking matches the full benchmark at "
                          "the threshold; the instance count can be reduced"
                        : "no reduction: only the full set reaches the "
                          "threshold";
            } else {
                check["suggested_instance_count"] = nullptr;
                check["removable_instances"] = nullptr;
                check["note"] = "no sampling ratio reached the threshold";
            }
            inst_checks.push_back(check);
        } else if (analysis == "cross_benchmark_redundancy") {
            nlohmann::json check;
            check["metric"] = frag.value("metric", "");
            nlohmann::json anchors = nlohmann::json::array();
            nlohmann::json distinct = nlohmann::json::array();
            nlohmann::json labels =
                frag.value("labels", nlohmann::json::object());
            for (const auto& [bench, label] : labels.items()) {
                if (label == "anchor") anchors.push_back(bench);
                if (label == "distinct") distinct.push_back(bench);
            }
            check["anchors"] = anchors;
            check["distinct"] = distinct;
            check["note"] =
                "anchor benchmarks are representative of the domain; "
                "distinct ones capture unique aspects or noise "
                "(thresholds are heuristic)";
            cross_checks.push_back(check);
        }
    }
    rec["dimension_redundancy_check"] = dim_checks;
    rec["instance_redundancy_check"] = inst_checks;
    rec["cross_benchmark_redundancy_check"] = cross_checks;
    return rec;
}

}  // namespace detail

// Merges analysis fragments into the final report document with the
// practice-recommendation checklist.
inline nlohmann::json emit_report(const std::vector<nlohmann::json>& fragments,
                                  const std::string& records_fingerprint_hex) {
    if (fragments.empty()) {
        throw DataError("emit_report: no analysis fragments");
    }
    nlohmann::json doc;
    doc["schema_version"] = kReportSchemaVersion;
    doc["records_fingerprint"] = records_fingerprint_hex;
    doc["fragments"] = fragments;
    doc["recommendations"] = detail::recommendations_from(fragments);
    return doc;
}

}  // namespace redbench
