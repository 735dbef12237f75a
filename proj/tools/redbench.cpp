// redbench: quantifies redundancy in model-evaluation benchmarks from
// per-instance result records, at three levels: correlations among a
// benchmark's dimensions, stability of model rankings under instance
// subsampling, and correlations across benchmarks within a domain.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_set>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "redbench/redbench.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw redbench::DataError(path.string(), "cannot read file");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// Write-temp-then-rename so consumers never observe partial files.
void write_atomic(const fs::path& path, const std::string& content) {
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) {
            throw redbench::DataError(tmp.string(), "cannot write file");
        }
        out << content;
        if (!out.flush()) {
            throw redbench::DataError(tmp.string(), "write failed");
        }
    }
    fs::rename(tmp, path);
}

struct LoadedInput {
    fs::path path;
    std::string fingerprint;  // content hash of the file bytes
};

struct Inputs {
    redbench::RecordSet records;
    std::vector<redbench::BenchmarkScore> benchmark_scores;
    std::vector<LoadedInput> files;
    bool has_records = false;
    bool has_benchmark_scores = false;
};

Inputs load_inputs(const std::vector<std::string>& paths,
                   bool allow_preaggregated) {
    Inputs in;
    for (const auto& p : paths) {
        fs::path path(p);
        std::string text = read_file(path);
        in.files.push_back(
            {path, redbench::hex64(redbench::fnv1a64(text))});
        std::string name = path.filename().string();
        if (path.extension() == ".json") {
            redbench::parse_json_records(text, name, in.records);
            in.has_records = true;
        } else if (allow_preaggregated &&
                   redbench::looks_like_benchmark_scores_csv(text)) {
            auto rows = redbench::parse_benchmark_scores_csv(text, name);
            in.benchmark_scores.insert(in.benchmark_scores.end(), rows.begin(),
                                       rows.end());
            in.has_benchmark_scores = true;
        } else {
            redbench::parse_csv_records(text, name, in.records);
            in.has_records = true;
        }
    }
    if (in.has_records && in.has_benchmark_scores) {
        throw redbench::UsageError(
            "cannot mix per-instance record files with pre-aggregated "
            "model,benchmark,score files in one run");
    }
    return in;
}

std::vector<redbench::EvalRecord> apply_excludes(
    const std::vector<redbench::EvalRecord>& records,
    const std::vector<std::string>& exclude_dims,
    const std::vector<std::string>& exclude_instances) {
    if (exclude_dims.empty() && exclude_instances.empty()) return records;
    std::unordered_set<std::string> dims(exclude_dims.begin(),
                                         exclude_dims.end());
    std::unordered_set<std::string> instances(exclude_instances.begin(),
                                              exclude_instances.end());
    std::vector<redbench::EvalRecord> out;
    out.reserve(records.size());
    for (const auto& rec : records) {
        if (dims.count(rec.dimension_id)) continue;
        if (instances.count(rec.instance_id)) continue;
        out.push_back(rec);
    }
    if (out.empty()) {
        throw redbench::DataError(
            "all records were removed by --exclude-dims/--exclude-instances");
    }
    return out;
}

// Parse errors already carry file:line locations; dataset-level errors
// raised after parsing (empty model intersection, missing benchmark, too
// few models) get the input file names attached here instead.
template <typename Fn>
auto with_input_context(const std::vector<LoadedInput>& files, Fn&& fn) {
    try {
        return fn();
    } catch (const redbench::DataError& e) {
        std::string names;
        for (const auto& f : files) {
            if (!names.empty()) names += ", ";
            names += f.path.filename().string();
        }
        throw redbench::DataError(names, e.what());
    }
}

std::vector<redbench::Metric> parse_metric_spec(const std::string& spec) {
    using redbench::Metric;
    if (spec == "srcc") return {Metric::SRCC};
    if (spec == "plcc") return {Metric::PLCC};
    if (spec == "r2") return {Metric::R2};
    if (spec == "all") return {Metric::SRCC, Metric::PLCC, Metric::R2};
    throw redbench::UsageError("invalid metric '" + spec +
                               "' (expected srcc, plcc, r2, or all)");
}

void warn_dropped(const std::vector<std::string>& dropped) {
    if (dropped.empty()) return;
    std::cerr << "warning: dropped " << dropped.size()
              << " model(s) without complete coverage:";
    for (const auto& id : dropped) std::cerr << ' ' << id;
    std::cerr << '\n';
}

json inputs_json(const std::vector<LoadedInput>& files) {
    json arr = json::array();
    for (const auto& f : files) {
        arr.push_back({{"path", f.path.string()}, {"fnv1a64", f.fingerprint}});
    }
    return arr;
}

// Every run leaves a manifest with the arguments, resolved options, and
// input hashes needed to replay it exactly.
void write_manifest(const fs::path& path, const std::string& subcommand,
                    const std::vector<std::string>& argv, json options,
                    const std::vector<LoadedInput>& files) {
    json manifest;
    manifest["schema_version"] = std::string(redbench::kReportSchemaVersion);
    manifest["subcommand"] = subcommand;
    manifest["argv"] = argv;
    manifest["options"] = std::move(options);
    manifest["inputs"] = inputs_json(files);
    write_atomic(path, manifest.dump(2) + "\n");
}

struct CommonArgs {
    std::vector<std::string> inputs;
    std::string metric = "srcc";
    std::string select = "all";
    std::string out_dir;
    std::vector<std::string> exclude_dims;
    std::vector<std::string> exclude_instances;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool with_excludes = true) {
    cmd->add_option("--input", args.inputs, "input record file(s) (CSV/JSON)")
        ->required()
        ->expected(-1);
    cmd->add_option("--metric", args.metric,
                    "correlation metric: srcc|plcc|r2|all")
        ->capture_default_str();
    cmd->add_option("--select", args.select,
                    "model selection: all|top:K|bottom:K")
        ->capture_default_str();
    cmd->add_option("--out-dir", args.out_dir, "output directory")->required();
    if (with_excludes) {
        cmd->add_option("--exclude-dims", args.exclude_dims,
                        "dimension ids to drop before aggregation");
        cmd->add_option("--exclude-instances", args.exclude_instances,
                        "instance ids to drop before aggregation");
    }
}

fs::path prepare_out_dir(const std::string& out_dir) {
    fs::path dir(out_dir);
    fs::create_directories(dir);
    return dir;
}

json selection_options_json(const std::string& select) {
    auto [mode, k] = redbench::parse_selection_spec(select);
    json j;
    j["mode"] = redbench::selection_mode_name(mode);
    if (mode != redbench::SelectionMode::All) j["k"] = k;
    return j;
}

// ---------------------------------------------------------------------------
// dims

struct DimsArgs {
    CommonArgs common;
    std::string benchmark;
    double flag_threshold = redbench::kDefaultThreshold;
};

int run_dims(const DimsArgs& args, const std::vector<std::string>& argv) {
    auto inputs = load_inputs(args.common.inputs, false);
    auto [mode, k] = redbench::parse_selection_spec(args.common.select);
    auto metrics = parse_metric_spec(args.common.metric);
    fs::path dir = prepare_out_dir(args.common.out_dir);

    auto [instance_build, selected, dims, fingerprint] = with_input_context(
        inputs.files, [&]() {
            auto records = apply_excludes(inputs.records.records(),
                                          args.common.exclude_dims,
                                          args.common.exclude_instances);
            auto instances = redbench::build_matrix(
                records, args.benchmark, redbench::Axis::Instance);
            auto sel =
                redbench::select_models(instances.matrix, mode, k);
            auto dim_build = redbench::build_matrix(
                records, args.benchmark, redbench::Axis::Dimension);
            auto restricted =
                dim_build.matrix.restrict_rows(sel.selection.selected_ids);
            auto fp = redbench::records_fingerprint(records);
            return std::make_tuple(std::move(instances), std::move(sel),
                                   std::move(restricted), std::move(fp));
        });
    warn_dropped(instance_build.dropped_models);

    for (auto metric : metrics) {
        auto matrix = with_input_context(inputs.files, [&]() {
            return redbench::pairwise_matrix(dims, metric,
                                             selected.selection);
        });
        auto flagged =
            redbench::flag_redundant_pairs(matrix, args.flag_threshold);
        json fragment = redbench::dims_fragment(matrix, flagged,
                                                args.flag_threshold,
                                                args.benchmark);
        fragment["records_fingerprint"] = fingerprint;
        std::string name = redbench::metric_name(metric);
        redbench::svg::HeatmapOptions heat;
        heat.title = args.benchmark + " dimension redundancy (" + name + ")";
        redbench::svg::BarOptions bars;
        bars.title = args.benchmark + " per-dimension redundancy (" + name +
                     ")";
        write_atomic(dir / ("heatmap_" + name + ".svg"),
                     redbench::svg::heatmap_svg(matrix, heat));
        write_atomic(dir / ("bars_" + name + ".svg"),
                     redbench::svg::bar_svg(matrix.item_ids, matrix.per_item,
                                            bars));
        write_atomic(dir / ("dims_" + name + ".json"),
                     fragment.dump(2) + "\n");
    }

    json options;
    options["benchmark"] = args.benchmark;
    options["metric"] = args.common.metric;
    options["selection"] = selection_options_json(args.common.select);
    options["flag_threshold"] = args.flag_threshold;
    options["exclude_dims"] = args.common.exclude_dims;
    options["exclude_instances"] = args.common.exclude_instances;
    options["records_fingerprint"] = fingerprint;
    options["dropped_models"] = instance_build.dropped_models;
    write_manifest(dir / "run.json", "dims", argv, options, inputs.files);
    return 0;
}

// ---------------------------------------------------------------------------
// instances

struct InstancesArgs {
    CommonArgs common;
    std::string benchmark;
    std::string ratios;  // empty = default grid
    int trials = redbench::kDefaultTrials;
    std::uint64_t seed = 0;
    double threshold = redbench::kDefaultThreshold;
};

int run_instances(const InstancesArgs& args,
                  const std::vector<std::string>& argv) {
    auto inputs = load_inputs(args.common.inputs, false);
    auto [mode, k] = redbench::parse_selection_spec(args.common.select);
    auto metrics = parse_metric_spec(args.common.metric);
    std::vector<double> ratios = args.ratios.empty()
                                     ? redbench::default_ratio_grid()
                                     : redbench::parse_ratio_spec(args.ratios);
    fs::path dir = prepare_out_dir(args.common.out_dir);

    auto [instance_build, selected, fingerprint] = with_input_context(
        inputs.files, [&]() {
            auto records = apply_excludes(inputs.records.records(),
                                          args.common.exclude_dims,
                                          args.common.exclude_instances);
            auto instances = redbench::build_matrix(
                records, args.benchmark, redbench::Axis::Instance);
            auto sel = redbench::select_models(instances.matrix, mode, k);
            auto fp = redbench::records_fingerprint(records);
            return std::make_tuple(std::move(instances), std::move(sel),
                                   std::move(fp));
        });
    warn_dropped(instance_build.dropped_models);

    for (auto metric : metrics) {
        redbench::SamplingPlan plan{ratios, args.trials, args.seed, metric};
        auto curve = with_input_context(inputs.files, [&]() {
            return redbench::curve(selected.matrix, plan, selected.selection,
                                   args.threshold);
        });
        json fragment = redbench::instances_fragment(
            curve, args.benchmark, selected.matrix.cols());
        fragment["records_fingerprint"] = fingerprint;
        std::string name = redbench::metric_name(metric);
        redbench::svg::CurveOptions copts;
        copts.title = args.benchmark + " instance redundancy (" + name + ")";
        write_atomic(dir / ("curve_" + name + ".svg"),
                     redbench::svg::curve_svg(curve, copts));
        write_atomic(dir / ("instances_" + name + ".json"),
                     fragment.dump(2) + "\n");
        write_atomic(dir / ("instances_" + name + ".csv"),
                     redbench::curve_points_csv(curve));
    }

    json options;
    options["benchmark"] = args.benchmark;
    options["metric"] = args.common.metric;
    options["selection"] = selection_options_json(args.common.select);
    options["ratios"] = ratios;
    options["trials"] = args.trials;
    options["seed"] = args.seed;
    options["threshold"] = args.threshold;
    options["exclude_dims"] = args.common.exclude_dims;
    options["exclude_instances"] = args.common.exclude_instances;
    options["records_fingerprint"] = fingerprint;
    options["dropped_models"] = instance_build.dropped_models;
    write_manifest(dir / "run.json", "instances", argv, options, inputs.files);
    return 0;
}

// ---------------------------------------------------------------------------
// cross

struct CrossArgs {
    CommonArgs common;
    double anchor = redbench::kDefaultAnchorThreshold;
    double distinct = redbench::kDefaultDistinctThreshold;
};

int run_cross(const CrossArgs& args, const std::vector<std::string>& argv) {
    auto inputs = load_inputs(args.common.inputs, true);
    auto [mode, k] = redbench::parse_selection_spec(args.common.select);
    auto metrics = parse_metric_spec(args.common.metric);

    if (inputs.has_benchmark_scores &&
        (!args.common.exclude_dims.empty() ||
         !args.common.exclude_instances.empty())) {
        throw redbench::UsageError(
            "--exclude-dims/--exclude-instances require per-instance "
            "records, not pre-aggregated scores");
    }
    fs::path dir = prepare_out_dir(args.common.out_dir);

    auto [build, selected, fingerprint] = with_input_context(
        inputs.files, [&]() {
            if (inputs.has_benchmark_scores) {
                auto built =
                    redbench::build_benchmark_matrix(inputs.benchmark_scores);
                std::string joined;
                for (const auto& f : inputs.files) joined += f.fingerprint;
                auto fp = redbench::hex64(redbench::fnv1a64(joined));
                auto sel = redbench::select_models(built.matrix, mode, k);
                return std::make_tuple(std::move(built), std::move(sel),
                                       std::move(fp));
            }
            auto records = apply_excludes(inputs.records.records(),
                                          args.common.exclude_dims,
                                          args.common.exclude_instances);
            auto built =
                redbench::build_matrix(records, "", redbench::Axis::Benchmark);
            auto fp = redbench::records_fingerprint(records);
            auto sel = redbench::select_models(built.matrix, mode, k);
            return std::make_tuple(std::move(built), std::move(sel),
                                   std::move(fp));
        });
    warn_dropped(build.dropped_models);

    for (auto metric : metrics) {
        auto matrix = with_input_context(inputs.files, [&]() {
            return redbench::cross_matrix(selected.matrix, metric,
                                          selected.selection);
        });
        auto labels = redbench::classify(matrix, args.anchor, args.distinct);
        json fragment = redbench::cross_fragment(matrix, labels, args.anchor,
                                                 args.distinct);
        fragment["records_fingerprint"] = fingerprint;
        std::string name = redbench::metric_name(metric);
        redbench::svg::HeatmapOptions heat;
        heat.title = "cross-benchmark redundancy (" + name + ")";
        write_atomic(dir / ("cross_heatmap_" + name + ".svg"),
                     redbench::svg::heatmap_svg(matrix, heat));
        write_atomic(dir / ("cross_" + name + ".json"),
                     fragment.dump(2) + "\n");
    }

    json options;
    options["metric"] = args.common.metric;
    options["selection"] = selection_options_json(args.common.select);
    options["anchor_threshold"] = args.anchor;
    options["distinct_threshold"] = args.distinct;
    options["exclude_dims"] = args.common.exclude_dims;
    options["exclude_instances"] = args.common.exclude_instances;
    options["records_fingerprint"] = fingerprint;
    options["dropped_models"] = build.dropped_models;
    write_manifest(dir / "run.json", "cross", argv, options, inputs.files);
    return 0;
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
    std::string spec_path;
    std::string out_path;
    std::optional<std::uint64_t> seed;
};

int run_synth(const SynthArgs& args, const std::vector<std::string>& argv) {
    fs::path spec_path(args.spec_path);
    std::string text = read_file(spec_path);
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw redbench::DataError(spec_path.string(),
                                  std::string("JSON parse error: ") + e.what());
    }
    auto spec = redbench::synth_spec_from_json(doc, spec_path.string());
    if (args.seed.has_value()) spec.seed = *args.seed;
    auto records = redbench::generate(spec);

    fs::path out(args.out_path);
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    write_atomic(out, redbench::records_to_csv(records));

    json options;
    options["spec"] = spec_path.string();
    options["seed"] = spec.seed;
    options["out"] = out.string();
    options["records"] = records.size();
    std::vector<LoadedInput> files{
        {spec_path, redbench::hex64(redbench::fnv1a64(text))}};
    write_manifest(fs::path(out.string() + ".run.json"), "synth", argv,
                   options, files);
    return 0;
}

// ---------------------------------------------------------------------------
// report

struct ReportArgs {
    std::string fragments_dir;
    std::string out_path;
};

int run_report(const ReportArgs& args, const std::vector<std::string>& argv) {
    fs::path dir(args.fragments_dir);
    if (!fs::is_directory(dir)) {
        throw redbench::DataError(dir.string(), "not a directory");
    }
    std::vector<fs::path> candidates;
    for (const auto& entry : fs::directory_iterator(dir)) {
        if (!entry.is_regular_file()) continue;
        std::string name = entry.path().filename().string();
        if (entry.path().extension() != ".json") continue;
        if (name.rfind("dims_", 0) == 0 || name.rfind("instances_", 0) == 0 ||
            name.rfind("cross_", 0) == 0) {
            candidates.push_back(entry.path());
        }
    }
    std::sort(candidates.begin(), candidates.end());
    if (candidates.empty()) {
        throw redbench::DataError(dir.string(),
                                  "no analysis fragments (dims_*.json, "
                                  "instances_*.json, cross_*.json) found");
    }

    std::vector<json> fragments;
    std::vector<LoadedInput> files;
    std::vector<std::string> fingerprints;
    for (const auto& path : candidates) {
        std::string text = read_file(path);
        files.push_back({path, redbench::hex64(redbench::fnv1a64(text))});
        json frag;
        try {
            frag = json::parse(text);
        } catch (const json::parse_error& e) {
            throw redbench::DataError(path.string(),
                                      std::string("JSON parse error: ") +
                                          e.what());
        }
        if (!frag.is_object() || !frag.contains("analysis")) {
            throw redbench::DataError(path.string(),
                                      "not an analysis fragment");
        }
        if (frag.contains("records_fingerprint")) {
            fingerprints.push_back(frag["records_fingerprint"]);
        }
        fragments.push_back(std::move(frag));
    }

    std::sort(fingerprints.begin(), fingerprints.end());
    fingerprints.erase(std::unique(fingerprints.begin(), fingerprints.end()),
                       fingerprints.end());
    std::string fingerprint;
    if (fingerprints.size() == 1) {
        fingerprint = fingerprints.front();
    } else {
        std::string joined;
        for (const auto& f : fingerprints) joined += f;
        fingerprint = redbench::hex64(redbench::fnv1a64(joined));
    }

    json report = redbench::emit_report(fragments, fingerprint);
    fs::path out(args.out_path);
    if (out.has_parent_path()) fs::create_directories(out.parent_path());
    write_atomic(out, report.dump(2) + "\n");

    json options;
    options["fragments_dir"] = dir.string();
    options["out"] = out.string();
    options["fragment_count"] = fragments.size();
    write_manifest(fs::path(out.string() + ".run.json"), "report", argv,
                   options, files);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> argv_copy(argv, argv + argc);

    CLI::App app{"benchmark redundancy analysis"};
    app.require_subcommand(1);

    DimsArgs dims_args;
    auto* dims = app.add_subcommand(
        "dims", "pairwise dimension redundancy within one benchmark");
    add_common(dims, dims_args.common);
    dims->add_option("--benchmark", dims_args.benchmark,
                     "benchmark id to analyze")
        ->required();
    dims->add_option("--flag-threshold", dims_args.flag_threshold,
                     "similarity threshold for flagging dimension pairs")
        ->capture_default_str();

    InstancesArgs inst_args;
    auto* instances = app.add_subcommand(
        "instances",
        "ranking stability under random instance subsampling");
    add_common(instances, inst_args.common);
    instances
        ->add_option("--benchmark", inst_args.benchmark,
                     "benchmark id to analyze")
        ->required();
    instances->add_option(
        "--ratios", inst_args.ratios,
        "percent grid, e.g. '1,5:100:5' (default: 1% then 5% steps)");
    instances->add_option("--trials", inst_args.trials,
                          "sampling repetitions per ratio")
        ->capture_default_str();
    instances->add_option("--seed", inst_args.seed, "master sampling seed")
        ->capture_default_str();
    instances
        ->add_option("--threshold", inst_args.threshold,
                     "similarity threshold for the sufficient ratio")
        ->capture_default_str();

    CrossArgs cross_args;
    auto* cross = app.add_subcommand(
        "cross", "cross-benchmark redundancy within a domain");
    add_common(cross, cross_args.common);
    cross->add_option("--anchor", cross_args.anchor,
                      "redundancy at or above this labels a benchmark as "
                      "anchor")
        ->capture_default_str();
    cross->add_option("--distinct", cross_args.distinct,
                      "redundancy at or below this labels a benchmark as "
                      "distinct")
        ->capture_default_str();

    SynthArgs synth_args;
    auto* synth = app.add_subcommand(
        "synth", "generate synthetic records with planted structure");
    synth->add_option("--spec", synth_args.spec_path, "synthesis spec JSON")
        ->required();
    synth->add_option("--out", synth_args.out_path, "output records CSV")
        ->required();
    std::uint64_t synth_seed = 0;
    auto* seed_opt =
        synth->add_option("--seed", synth_seed, "override the spec's seed");

    ReportArgs report_args;
    auto* report = app.add_subcommand(
        "report", "merge analysis fragments into a single report");
    report
        ->add_option("--fragments", report_args.fragments_dir,
                     "directory containing fragment JSON files")
        ->required();
    report->add_option("--out", report_args.out_path, "output report JSON")
        ->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        std::cerr << "run 'redbench --help' for usage\n";
        return 1;
    }

    try {
        if (*dims) return run_dims(dims_args, argv_copy);
        if (*instances) return run_instances(inst_args, argv_copy);
        if (*cross) return run_cross(cross_args, argv_copy);
        if (*synth) {
            if (seed_opt->count() > 0) synth_args.seed = synth_seed;
            return run_synth(synth_args, argv_copy);
        }
        if (*report) return run_report(report_args, argv_copy);
    } catch (const redbench::UsageError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 1;
    } catch (const redbench::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 1;
}
