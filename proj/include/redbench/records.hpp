#pragma once

#include <charconv>
#include <cstddef>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "redbench/errors.hpp"

namespace redbench {

// One model's graded result on one benchmark instance. Scores are in
// [0, 1] with 1 meaning fully correct; graded values are allowed.
struct EvalRecord {
    std::string model_id;
    std::string benchmark_id;
    std::string dimension_id;
    std::string instance_id;
    double score = 0.0;
};

// Pre-aggregated leaderboard row: one model's overall score on one
// benchmark, for cross-benchmark analysis without per-instance data.
struct BenchmarkScore {
    std::string model_id;
    std::string benchmark_id;
    double score = 0.0;
};

enum class RecordFormat { CSV, JSON };

inline bool valid_id(std::string_view id) {
    if (id.empty()) return false;
    for (char c : id) {
        bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                  (c >= '0' && c <= '9') || c == '.' || c == '_' ||
                  c == '/' || c == '-';
        if (!ok) return false;
    }
    return true;
}

namespace detail {

inline double parse_score(std::string_view text, const std::string& where) {
    double value = 0.0;
    const char* first = text.data();
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || ptr != last) {
        throw DataError(where, "malformed score '" + std::string(text) + "'");
    }
    if (!(value >= 0.0 && value <= 1.0)) {
        throw DataError(where, "score " + std::string(text) +
                                   " outside [0,1]");
    }
    return value;
}

inline std::string require_id(std::string_view text, const char* field,
                              const std::string& where) {
    if (!valid_id(text)) {
        throw DataError(where, std::string("invalid ") + field + " '" +
                                   std::string(text) +
                                   "' (allowed: [A-Za-z0-9._/-]+)");
    }
    return std::string(text);
}

inline std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        std::size_t comma = line.find(',', start);
        if (comma == std::string_view::npos) {
            out.push_back(line.substr(start));
            break;
        }
        out.push_back(line.substr(start, comma - start));
        start = comma + 1;
    }
    return out;
}

}  // namespace detail

// Accumulates records across one or more sources while enforcing the
// ingestion invariants: unique (model, benchmark, instance) keys and a
// single dimension per instance within a benchmark.
class RecordSet {
public:
    void add(EvalRecord record, const std::string& where) {
        std::string key = record.model_id + '\x1f' + record.benchmark_id +
                          '\x1f' + record.instance_id;
        if (!keys_.insert(std::move(key)).second) {
            throw DataError(where, "duplicate record key (" +
                                       record.model_id + ", " +
                                       record.benchmark_id + ", " +
                                       record.instance_id + ")");
        }
        std::string inst_key =
            record.benchmark_id + '\x1f' + record.instance_id;
        auto [it, inserted] =
            instance_dims_.emplace(inst_key, record.dimension_id);
        if (!inserted && it->second != record.dimension_id) {
            throw DataError(where, "instance (" + record.benchmark_id + ", " +
                                       record.instance_id +
                                       ") assigned to two dimensions ('" +
                                       it->second + "' and '" +
                                       record.dimension_id + "')");
        }
        records_.push_back(std::move(record));
    }

    const std::vector<EvalRecord>& records() const { return records_; }
    bool empty() const { return records_.empty(); }
    std::size_t size() const { return records_.size(); }

private:
    std::vector<EvalRecord> records_;
    std::unordered_set<std::string> keys_;
    std::unordered_map<std::string, std::string> instance_dims_;
};

inline constexpr std::string_view kRecordCsvHeader =
    "model,benchmark,dimension,instance,score";
inline constexpr std::string_view kBenchmarkCsvHeader =
    "model,benchmark,score";

namespace detail {

// Iterates non-empty lines with 1-based line numbers; tolerates CRLF and a
// missing final newline.
template <typename Fn>
void for_each_line(std::string_view text, const Fn& fn) {
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t nl = text.find('\n', pos);
        std::string_view line = (nl == std::string_view::npos)
                                    ? text.substr(pos)
                                    : text.substr(pos, nl - pos);
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        if (!line.empty()) fn(line, line_no);
        if (nl == std::string_view::npos) break;
        pos = nl + 1;
    }
}

}  // namespace detail

// Parses per-instance CSV with header `model,benchmark,dimension,instance,
// score` into `out`. `source` names the stream for diagnostics.
inline void parse_csv_records(std::string_view text, const std::string& source,
                              RecordSet& out) {
    bool saw_header = false;
    detail::for_each_line(text, [&](std::string_view line,
                                    std::size_t line_no) {
        std::string where = source + ":" + std::to_string(line_no);
        if (!saw_header) {
            if (line != kRecordCsvHeader) {
                throw DataError(where,
                                "expected header '" +
                                    std::string(kRecordCsvHeader) + "', got '" +
                                    std::string(line) + "'");
            }
            saw_header = true;
            return;
        }
        auto fields = detail::split_fields(line);
        if (fields.size() != 5) {
            throw DataError(where, "expected 5 fields, got " +
                                       std::to_string(fields.size()));
        }
        EvalRecord rec;
        rec.model_id = detail::require_id(fields[0], "model id", where);
        rec.benchmark_id = detail::require_id(fields[1], "benchmark id", where);
        rec.dimension_id = detail::require_id(fields[2], "dimension id", where);
        rec.instance_id = detail::require_id(fields[3], "instance id", where);
        rec.score = detail::parse_score(fields[4], where);
        out.add(std::move(rec), where);
    });
    if (!saw_header) throw DataError(source, "empty input");
}

// Parses a JSON array of objects with keys model/benchmark/dimension/
// instance/score into `out`.
inline void parse_json_records(std::string_view text,
                               const std::string& source, RecordSet& out) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw DataError(source, std::string("JSON parse error: ") + e.what());
    }
    if (!doc.is_array()) {
        throw DataError(source, "expected a JSON array of record objects");
    }
    for (std::size_t i = 0; i < doc.size(); ++i) {
        std::string where = source + ":records[" + std::to_string(i) + "]";
        const auto& obj = doc[i];
        if (!obj.is_object()) throw DataError(where, "expected an object");
        auto field = [&](const char* key) -> std::string {
            auto it = obj.find(key);
            if (it == obj.end() || !it->is_string()) {
                throw DataError(where, std::string("missing string field '") +
                                           key + "'");
            }
            return detail::require_id(it->get<std::string>(), key, where);
        };
        EvalRecord rec;
        rec.model_id = field("model");
        rec.benchmark_id = field("benchmark");
        rec.dimension_id = field("dimension");
        rec.instance_id = field("instance");
        auto score_it = obj.find("score");
        if (score_it == obj.end() || !score_it->is_number()) {
            throw DataError(where, "missing numeric field 'score'");
        }
        double score = score_it->get<double>();
        if (!(score >= 0.0 && score <= 1.0)) {
            throw DataError(where, "score outside [0,1]");
        }
        rec.score = score;
        out.add(std::move(rec), where);
    }
}

inline RecordSet parse_records(std::string_view text, RecordFormat format,
                               const std::string& source = "input") {
    RecordSet set;
    if (format == RecordFormat::CSV) {
        parse_csv_records(text, source, set);
    } else {
        parse_json_records(text, source, set);
    }
    return set;
}

// Parses pre-aggregated CSV with header `model,benchmark,score`. Duplicate
// (model, benchmark) pairs are rejected.
inline std::vector<BenchmarkScore> parse_benchmark_scores_csv(
    std::string_view text, const std::string& source) {
    std::vector<BenchmarkScore> rows;
    std::unordered_set<std::string> seen;
    bool saw_header = false;
    detail::for_each_line(text, [&](std::string_view line,
                                    std::size_t line_no) {
        std::string where = source + ":" + std::to_string(line_no);
        if (!saw_header) {
            if (line != kBenchmarkCsvHeader) {
                throw DataError(where, "expected header '" +
                                           std::string(kBenchmarkCsvHeader) +
                                           "', got '" + std::string(line) +
                                           "'");
            }
            saw_header = true;
            return;
        }
        auto fields = detail::split_fields(line);
        if (fields.size() != 3) {
            throw DataError(where, "expected 3 fields, got " +
                                       std::to_string(fields.size()));
        }
        BenchmarkScore row;
        row.model_id = detail::require_id(fields[0], "model id", where);
        row.benchmark_id = detail::require_id(fields[1], "benchmark id", where);
        row.score = detail::parse_score(fields[2], where);
        if (!seen.insert(row.model_id + '\x1f' + row.benchmark_id).second) {
            throw DataError(where, "duplicate (model, benchmark) pair (" +
                                       row.model_id + ", " + row.benchmark_id +
                                       ")");
        }
        rows.push_back(std::move(row));
    });
    if (!saw_header) throw DataError(source, "empty input");
    return rows;
}

// True if the first line is the pre-aggregated header.
inline bool looks_like_benchmark_scores_csv(std::string_view text) {
    std::size_t nl = text.find('\n');
    std::string_view first =
        (nl == std::string_view::npos) ? text : text.substr(0, nl);
    if (!first.empty() && first.back() == '\r') first.remove_suffix(1);
    return first == kBenchmarkCsvHeader;
}

}  // namespace redbench
