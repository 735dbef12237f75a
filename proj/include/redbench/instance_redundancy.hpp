#pragma once

#include <charconv>
#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "redbench/errors.hpp"
#include "redbench/metrics.hpp"
#include "redbench/parallel.hpp"
#include "redbench/rng.hpp"
#include "redbench/score_matrix.hpp"

namespace redbench {

// Protocol constants: T = 100 sampling repetitions per ratio, and a 0.95
// similarity threshold above which a subset ranking counts as equivalent
// to the full-benchmark ranking.
inline constexpr int kDefaultTrials = 100;
inline constexpr double kDefaultThreshold = 0.95;

struct SamplingPlan {
    std::vector<double> ratios;  // strictly increasing, each in (0, 1]
    int trials = kDefaultTrials;
    std::uint64_t seed = 0;
    Metric metric = Metric::SRCC;

    void validate() const {
        if (ratios.empty()) throw UsageError("sampling plan has no ratios");
        double prev = 0.0;
        for (double r : ratios) {
            if (!(r > 0.0 && r <= 1.0)) {
                throw UsageError("sampling ratio " + std::to_string(r) +
                                 " outside (0,1]");
            }
            if (!(r > prev)) {
                throw UsageError("sampling ratios must be strictly increasing");
            }
            prev = r;
        }
        if (trials < 1) throw UsageError("trials must be >= 1");
    }
};

// Default ratio grid: 1%, then 5% steps up to 100%.
inline std::vector<double> default_ratio_grid() {
    std::vector<double> out;
    out.push_back(0.01);
    for (int pct = 5; pct <= 100; pct += 5) {
        out.push_back(static_cast<double>(pct) / 100.0);
    }
    return out;
}

// Parses the CLI ratio grammar: a comma list of percents and a:b:step
// ranges, e.g. "1,5:100:5". Returns ratios in (0,1].
inline std::vector<double> parse_ratio_spec(const std::string& spec) {
    auto parse_num = [&](std::string_view text) {
        double v = 0.0;
        auto [ptr, ec] =
            std::from_chars(text.data(), text.data() + text.size(), v);
        if (ec != std::errc{} || ptr != text.data() + text.size()) {
            throw UsageError("invalid ratio spec '" + spec + "': bad number '" +
                             std::string(text) + "'");
        }
        return v;
    };
    std::vector<double> percents;
    std::size_t start = 0;
    while (start <= spec.size()) {
        std::size_t comma = spec.find(',', start);
        std::string_view part =
            (comma == std::string::npos)
                ? std::string_view(spec).substr(start)
                : std::string_view(spec).substr(start, comma - start);
        if (part.empty()) {
            throw UsageError("invalid ratio spec '" + spec +
                             "': empty element");
        }
        std::size_t c1 = part.find(':');
        if (c1 == std::string_view::npos) {
            percents.push_back(parse_num(part));
        } else {
            std::size_t c2 = part.find(':', c1 + 1);
            if (c2 == std::string_view::npos) {
                throw UsageError("invalid ratio spec '" + spec +
                                 "': range needs a:b:step");
            }
            double a = parse_num(part.substr(0, c1));
            double b = parse_num(part.substr(c1 + 1, c2 - c1 - 1));
            double step = parse_num(part.substr(c2 + 1));
            if (step <= 0.0 || b < a) {
                throw UsageError("invalid ratio spec '" + spec +
                                 "': bad range bounds");
            }
            for (int k = 0;; ++k) {
                double v = a + step * k;
                if (v > b + 1e-9) break;
                percents.push_back(v);
            }
        }
        if (comma == std::string::npos) break;
        start = comma + 1;
    }
    std::vector<double> ratios;
    ratios.reserve(percents.size());
    for (double p : percents) ratios.push_back(p / 100.0);
    SamplingPlan probe{ratios, 1, 0, Metric::SRCC};
    probe.validate();
    return ratios;
}

// Subset size at a sampling ratio: round half up, clamped to [1, M].
inline std::size_t sample_count(double ratio, std::size_t total) {
    auto s = static_cast<long long>(std::llround(ratio *
                                                 static_cast<double>(total)));
    if (s < 1) s = 1;
    if (s > static_cast<long long>(total)) s = static_cast<long long>(total);
    return static_cast<std::size_t>(s);
}

struct GroundTruth {
    std::vector<double> accuracy;  // per-model mean over all instances
    RankVector ranks;
};

// Per-model accuracy over the full instance set and its ranking.
inline GroundTruth ground_truth_ranking(const ScoreMatrix& instances) {
    if (instances.rows() < 3) {
        throw DataError("need at least 3 models after selection, got " +
                        std::to_string(instances.rows()));
    }
    if (instances.cols() < 1) throw DataError("benchmark has no instances");
    GroundTruth gt;
    gt.accuracy = instances.row_means();
    gt.ranks = rank(gt.accuracy);
    return gt;
}

struct CurvePoint {
    double ratio = 0.0;
    double mean_corr = 0.0;
    double std_corr = 0.0;
    int undefined_trials = 0;
    bool defined = false;  // false when every trial was undefined
};

struct RedundancyCurve {
    Metric metric = Metric::SRCC;
    ModelSelection selection;
    std::uint64_t seed = 0;
    int trials = kDefaultTrials;
    double threshold = kDefaultThreshold;
    std::vector<CurvePoint> points;
    std::optional<double> minimal_sufficient_ratio;
};

namespace detail {

// Column-major copy of the instance matrix; keeps per-trial accumulation
// over sampled columns contiguous.
struct ColumnData {
    std::size_t models = 0;
    std::size_t instances = 0;
    std::vector<double> data;  // data[c * models + r]

    explicit ColumnData(const ScoreMatrix& m)
        : models(m.rows()), instances(m.cols()), data(m.rows() * m.cols()) {
        for (std::size_t c = 0; c < instances; ++c) {
            for (std::size_t r = 0; r < models; ++r) {
                data[c * models + r] = m.at(r, c);
            }
        }
    }
};

// One sampling trial: draw s instances without replacement, compute the
// per-model subset accuracy, correlate against the full-set statistics.
// Sampled columns are accumulated in ascending index order, so an s == M
// draw reproduces the ground-truth accuracies bit for bit.
inline CorrValue sampled_trial(const ColumnData& cols, const GroundTruth& gt,
                               double ratio, std::uint64_t trial_seed,
                               Metric metric) {
    const std::size_t s = sample_count(ratio, cols.instances);
    SplitMix64 rng(trial_seed);
    std::vector<std::size_t> picks =
        sample_without_replacement(cols.instances, s, rng);
    std::vector<double> acc(cols.models, 0.0);
    for (std::size_t c : picks) {
        const double* col = cols.data.data() + c * cols.models;
        for (std::size_t r = 0; r < cols.models; ++r) acc[r] += col[r];
    }
    for (double& v : acc) v /= static_cast<double>(s);
    switch (metric) {
        case Metric::SRCC: return pearson(rank(acc), gt.ranks);
        case Metric::PLCC: return pearson(acc, gt.accuracy);
        case Metric::R2: return r2(acc, gt.accuracy);
    }
    return CorrValue::undefined();
}

}  // namespace detail

// One sampling trial against a full instance matrix.
inline CorrValue run_trial(const ScoreMatrix& instances, double ratio,
                           std::uint64_t trial_seed, Metric metric) {
    if (!(ratio > 0.0 && ratio <= 1.0)) {
        throw UsageError("sampling ratio must be in (0,1]");
    }
    detail::ColumnData cols(instances);
    GroundTruth gt = ground_truth_ranking(instances);
    return detail::sampled_trial(cols, gt, ratio, trial_seed, metric);
}

// Smallest grid ratio whose mean correlation reaches the threshold.
inline std::optional<double> minimal_ratio(
    const std::vector<CurvePoint>& points, double threshold) {
    if (!(threshold > 0.0 && threshold <= 1.0)) {
        throw UsageError("threshold must be in (0,1], got " +
                         std::to_string(threshold));
    }
    for (const CurvePoint& p : points) {
        if (p.defined && p.mean_corr >= threshold) return p.ratio;
    }
    return std::nullopt;
}

inline std::optional<double> minimal_ratio(const RedundancyCurve& curve,
                                           double threshold) {
    return minimal_ratio(curve.points, threshold);
}

// Monte-Carlo redundancy curve: for every plan ratio, the mean and sample
// standard deviation of the subset-vs-full correlation over `trials`
// repetitions. Per-trial seeds are derived from (seed, ratio index, trial
// index), so the result is independent of scheduling and thread count.
// Undefined trials (zero-variance subsets) are excluded from the mean and
// counted per point.
inline RedundancyCurve curve(const ScoreMatrix& instances,
                             const SamplingPlan& plan,
                             ModelSelection selection,
                             double threshold = kDefaultThreshold) {
    plan.validate();
    if (!(threshold > 0.0 && threshold <= 1.0)) {
        throw UsageError("threshold must be in (0,1], got " +
                         std::to_string(threshold));
    }
    detail::ColumnData cols(instances);
    GroundTruth gt = ground_truth_ranking(instances);

    const std::size_t n_ratios = plan.ratios.size();
    const std::size_t n_trials = static_cast<std::size_t>(plan.trials);
    std::vector<CorrValue> results(n_ratios * n_trials);
    parallel_for(n_ratios * n_trials, [&](std::size_t task) {
        std::size_t ri = task / n_trials;
        std::size_t ti = task % n_trials;
        std::uint64_t trial_seed = derive_seed(plan.seed, ri, ti);
        results[task] = detail::sampled_trial(cols, gt, plan.ratios[ri],
                                              trial_seed, plan.metric);
    });

    RedundancyCurve out;
    out.metric = plan.metric;
    out.selection = std::move(selection);
    out.seed = plan.seed;
    out.trials = plan.trials;
    out.threshold = threshold;
    out.points.reserve(n_ratios);
    for (std::size_t ri = 0; ri < n_ratios; ++ri) {
        CurvePoint point;
        point.ratio = plan.ratios[ri];
        double sum = 0.0;
        int defined = 0;
        for (std::size_t ti = 0; ti < n_trials; ++ti) {
            const CorrValue& v = results[ri * n_trials + ti];
            if (v.defined) {
                sum += v.value;
                ++defined;
            } else {
                ++point.undefined_trials;
            }
        }
        if (defined > 0) {
            point.defined = true;
            point.mean_corr = sum / defined;
            if (defined > 1) {
                double ss = 0.0;
                for (std::size_t ti = 0; ti < n_trials; ++ti) {
                    const CorrValue& v = results[ri * n_trials + ti];
                    if (!v.defined) continue;
                    double d = v.value - point.mean_corr;
                    ss += d * d;
                }
                point.std_corr = std::sqrt(ss / (defined - 1));
            }
        }
        out.points.push_back(point);
    }
    out.minimal_sufficient_ratio = minimal_ratio(out.points, threshold);
    return out;
}

}  // namespace redbench
