#include <catch2/catch_amalgamated.hpp>

#include <vector>

#include "redbench/cross_benchmark.hpp"
#include "redbench/score_matrix.hpp"
#include "redbench/synth.hpp"
#include "support/fixtures.hpp"

using redbench::Axis;
using redbench::BenchmarkLabel;
using redbench::Metric;
using redbench::ModelSelection;
using redbench::ScoreMatrix;

namespace {

ScoreMatrix bench_matrix(const std::vector<std::string>& benchmarks,
                         const std::vector<std::vector<double>>& cols) {
    std::size_t n = cols.front().size();
    std::vector<std::string> rows;
    for (std::size_t r = 0; r < n; ++r) rows.push_back("m" + std::to_string(r));
    std::vector<double> values(n * cols.size());
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < cols.size(); ++c) {
            values[r * cols.size() + c] = cols[c][r];
        }
    }
    return ScoreMatrix(Axis::Benchmark, rows, benchmarks, values);
}

}  // namespace

TEST_CASE("cross_matrix: identical benchmarks are fully redundant") {
    std::vector<double> col{0.9, 0.2, 0.6, 0.4};
    auto m = bench_matrix({"A", "B"}, {col, col});
    auto rm = redbench::cross_matrix(m, Metric::SRCC, ModelSelection{});
    REQUIRE(rm.per_item[0].value == 1.0);
    REQUIRE(rm.per_item[1].value == 1.0);
    REQUIRE(rm.overall.value == 1.0);
}

TEST_CASE("cross_matrix: l=2 reduces to the single pairwise correlation") {
    auto m = bench_matrix({"A", "B"},
                          {{0.9, 0.2, 0.6, 0.4}, {0.5, 0.3, 0.8, 0.1}});
    auto rm = redbench::cross_matrix(m, Metric::SRCC, ModelSelection{});
    REQUIRE(rm.per_item[0].value == rm.cell(0, 1).value);
}

TEST_CASE("cross_matrix: requires a benchmark axis and 2+ benchmarks") {
    ScoreMatrix dims(Axis::Dimension, {"m0", "m1", "m2"}, {"a", "b"},
                     {0.1, 0.2, 0.3, 0.4, 0.5, 0.6});
    REQUIRE_THROWS_AS(
        redbench::cross_matrix(dims, Metric::SRCC, ModelSelection{}),
        redbench::DataError);
    auto single = bench_matrix({"A"}, {{0.9, 0.2, 0.6}});
    REQUIRE_THROWS_AS(
        redbench::cross_matrix(single, Metric::SRCC, ModelSelection{}),
        redbench::DataError);
}

TEST_CASE("cross_matrix: planted noise benchmark scores lowest") {
    auto specs = fixtures::cross_domain_specs();
    std::vector<redbench::EvalRecord> records;
    for (const auto& spec : specs) {
        auto part = redbench::generate(spec);
        records.insert(records.end(), part.begin(), part.end());
    }
    auto built = redbench::build_matrix(records, "", Axis::Benchmark);
    REQUIRE(built.matrix.cols() == 4);
    auto rm =
        redbench::cross_matrix(built.matrix, Metric::SRCC, ModelSelection{});
    std::size_t noise_idx = 0;
    for (std::size_t i = 0; i < rm.item_ids.size(); ++i) {
        if (rm.item_ids[i] == "benchNoise") noise_idx = i;
    }
    for (std::size_t i = 0; i < rm.item_ids.size(); ++i) {
        if (i == noise_idx) continue;
        REQUIRE(rm.per_item[noise_idx].value < rm.per_item[i].value);
    }
    auto labels = redbench::classify(rm, redbench::kDefaultAnchorThreshold,
                                     redbench::kDefaultDistinctThreshold);
    REQUIRE(labels[noise_idx] == BenchmarkLabel::Distinct);
}

TEST_CASE("cross_matrix: permutation consistency") {
    std::vector<std::vector<double>> cols{{0.9, 0.2, 0.6, 0.4},
                                          {0.5, 0.3, 0.8, 0.1},
                                          {0.7, 0.6, 0.2, 0.9}};
    auto r1 = redbench::cross_matrix(bench_matrix({"A", "B", "C"}, cols),
                                     Metric::SRCC, ModelSelection{});
    auto r2 = redbench::cross_matrix(
        bench_matrix({"C", "A", "B"}, {cols[2], cols[0], cols[1]}),
        Metric::SRCC, ModelSelection{});
    REQUIRE(r1.per_item[0].value == r2.per_item[1].value);
    REQUIRE_THAT(r2.overall.value,
                 Catch::Matchers::WithinAbs(r1.overall.value, 1e-12));
}

TEST_CASE("cross_matrix: duplicating a benchmark raises its redundancy") {
    std::vector<std::vector<double>> cols{{0.9, 0.2, 0.6, 0.4},
                                          {0.5, 0.3, 0.8, 0.1}};
    auto base = redbench::cross_matrix(bench_matrix({"A", "B"}, cols),
                                       Metric::SRCC, ModelSelection{});
    auto extended = redbench::cross_matrix(
        bench_matrix({"A", "A2", "B"}, {cols[0], cols[0], cols[1]}),
        Metric::SRCC, ModelSelection{});
    REQUIRE(extended.per_item[0].value > base.per_item[0].value);
}

TEST_CASE("cross_matrix: SRCC invariant to per-benchmark monotone rescaling") {
    std::vector<std::vector<double>> cols{{0.9, 0.2, 0.6, 0.4},
                                          {0.5, 0.3, 0.8, 0.1}};
    auto scaled = cols;
    for (double& v : scaled[0]) v *= 0.01;  // percent vs fraction
    auto r1 = redbench::cross_matrix(bench_matrix({"A", "B"}, cols),
                                     Metric::SRCC, ModelSelection{});
    auto r2 = redbench::cross_matrix(bench_matrix({"A", "B"}, scaled),
                                     Metric::SRCC, ModelSelection{});
    REQUIRE(r1.cell(0, 1).value == r2.cell(0, 1).value);
}

TEST_CASE("classify") {
    auto m = bench_matrix({"A", "B", "C"}, {{0.9, 0.2, 0.6, 0.4},
                                            {0.5, 0.3, 0.8, 0.1},
                                            {0.7, 0.6, 0.2, 0.9}});
    auto rm = redbench::cross_matrix(m, Metric::SRCC, ModelSelection{});

    SECTION("direct thresholding") {
        rm.per_item[0] = redbench::CorrValue::of(0.9);
        rm.per_item[1] = redbench::CorrValue::of(0.5);
        rm.per_item[2] = redbench::CorrValue::of(0.2);
        auto labels = redbench::classify(rm, 0.8, 0.3);
        REQUIRE(labels == std::vector<BenchmarkLabel>{BenchmarkLabel::Anchor,
                                                      BenchmarkLabel::Neutral,
                                                      BenchmarkLabel::Distinct});
    }
    SECTION("equal redundancies share a label") {
        for (auto& v : rm.per_item) v = redbench::CorrValue::of(0.85);
        auto labels = redbench::classify(rm, 0.8, 0.3);
        for (auto l : labels) REQUIRE(l == BenchmarkLabel::Anchor);
    }
    SECTION("undefined redundancy stays neutral") {
        rm.per_item[1] = redbench::CorrValue::undefined();
        auto labels = redbench::classify(rm, 0.8, 0.3);
        REQUIRE(labels[1] == BenchmarkLabel::Neutral);
    }
    SECTION("threshold ordering enforced") {
        REQUIRE_THROWS_AS(redbench::classify(rm, 0.3, 0.8),
                          redbench::UsageError);
    }
}
