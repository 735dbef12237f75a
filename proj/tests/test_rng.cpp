#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <set>

#include "redbench/parallel.hpp"
#include "redbench/rng.hpp"

TEST_CASE("splitmix64 streams are deterministic") {
    redbench::SplitMix64 a(42);
    redbench::SplitMix64 b(42);
    for (int i = 0; i < 100; ++i) REQUIRE(a.next() == b.next());
    redbench::SplitMix64 c(43);
    REQUIRE(redbench::SplitMix64(42).next() != c.next());
}

TEST_CASE("next_below stays in range and hits all buckets") {
    redbench::SplitMix64 rng(7);
    std::set<std::uint64_t> seen;
    for (int i = 0; i < 2000; ++i) {
        auto v = rng.next_below(10);
        REQUIRE(v < 10);
        seen.insert(v);
    }
    REQUIRE(seen.size() == 10);
}

TEST_CASE("next_unit is in (0,1]") {
    redbench::SplitMix64 rng(11);
    for (int i = 0; i < 1000; ++i) {
        double u = rng.next_unit();
        REQUIRE(u > 0.0);
        REQUIRE(u <= 1.0);
    }
}

TEST_CASE("next_normal has roughly standard moments") {
    redbench::SplitMix64 rng(13);
    const int n = 20000;
    double sum = 0.0, sum2 = 0.0;
    for (int i = 0; i < n; ++i) {
        double z = rng.next_normal();
        sum += z;
        sum2 += z * z;
    }
    double mean = sum / n;
    double var = sum2 / n - mean * mean;
    REQUIRE_THAT(mean, Catch::Matchers::WithinAbs(0.0, 0.05));
    REQUIRE_THAT(var, Catch::Matchers::WithinAbs(1.0, 0.1));
}

TEST_CASE("derive_seed separates streams") {
    auto s00 = redbench::derive_seed(42, 0, 0);
    REQUIRE(s00 == redbench::derive_seed(42, 0, 0));
    REQUIRE(s00 != redbench::derive_seed(42, 0, 1));
    REQUIRE(s00 != redbench::derive_seed(42, 1, 0));
    REQUIRE(s00 != redbench::derive_seed(43, 0, 0));
}

TEST_CASE("full-population sample is a permutation") {
    redbench::SplitMix64 rng(3);
    auto picks = redbench::sample_without_replacement(20, 20, rng);
    REQUIRE(picks.size() == 20);
    for (std::size_t i = 0; i < 20; ++i) REQUIRE(picks[i] == i);
}

TEST_CASE("worker_count respects RED_THREADS") {
    ::setenv("RED_THREADS", "3", 1);
    REQUIRE(redbench::worker_count() == 3);
    ::setenv("RED_THREADS", "0", 1);
    REQUIRE(redbench::worker_count() >= 1);  // 0 means auto
    ::setenv("RED_THREADS", "junk", 1);
    REQUIRE(redbench::worker_count() >= 1);
    ::unsetenv("RED_THREADS");
    REQUIRE(redbench::worker_count() >= 1);
}

TEST_CASE("parallel_for covers every task exactly once") {
    std::vector<int> hits(137, 0);
    ::setenv("RED_THREADS", "4", 1);
    redbench::parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    ::unsetenv("RED_THREADS");
    for (int h : hits) REQUIRE(h == 1);
}
