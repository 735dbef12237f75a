#pragma once

// Frozen synthetic fixtures shared by the unit and acceptance suites. The
// seeds and planted structure are fixed; the stochastic bounds asserted on
// them were established by running the oracle first.

#include <cstdint>
#include <vector>

#include "redbench/records.hpp"
#include "redbench/rng.hpp"
#include "redbench/synth.hpp"

namespace fixtures {

// Two dimensions sharing one latent trait plus one orthogonal dimension;
// 200 models x 500 instances per dimension, noiseless.
inline redbench::SynthSpec planted_spec() {
    redbench::SynthSpec spec;
    spec.benchmark_id = "planted";
    spec.seed = 42;
    spec.discrimination = 1.7;
    spec.noise = 0.0;
    spec.abilities = redbench::sample_abilities(200, 2, 1.0, 7);
    spec.dimensions = {
        {"shared_a", {1.0, 0.0}, 500, 1.0},
        {"shared_b", {1.0, 0.0}, 500, 1.0},
        {"ortho", {0.0, 1.0}, 500, 1.0},
    };
    return spec;
}

// Four benchmarks over one shared model population: three track the same
// latent trait, the fourth follows an unrelated trait and plays the role
// of pure noise for the domain.
inline std::vector<redbench::SynthSpec> cross_domain_specs() {
    auto abilities = redbench::sample_abilities(60, 3, 1.0, 11);
    std::vector<redbench::SynthSpec> specs;
    const struct {
        const char* bench;
        std::vector<double> loadings;
        std::uint64_t seed;
    } defs[] = {
        {"benchA", {1.0, 0.0, 0.0}, 101},
        {"benchB", {0.95, 0.05, 0.0}, 102},
        {"benchC", {0.9, 0.1, 0.0}, 103},
        {"benchNoise", {0.0, 0.0, 1.0}, 104},
    };
    for (const auto& def : defs) {
        redbench::SynthSpec spec;
        spec.benchmark_id = def.bench;
        spec.seed = def.seed;
        spec.discrimination = 1.7;
        spec.noise = 0.3;
        spec.abilities = abilities;
        spec.dimensions = {{"main", def.loadings, 150, 1.0}};
        specs.push_back(std::move(spec));
    }
    return specs;
}

// 100 models in two tiers. The top tier has independent per-trait
// abilities (differentiated skills); the bottom tier is dominated by a
// single general factor with a compressed spread, so its rankings agree
// across dimensions.
inline redbench::SynthSpec tiered_spec() {
    std::vector<std::vector<double>> abilities;
    redbench::SplitMix64 rng(redbench::derive_seed(2024, 0x7153));
    for (int m = 0; m < 50; ++m) {
        abilities.push_back({1.5 + rng.next_normal(),
                             1.5 + rng.next_normal(),
                             1.5 + rng.next_normal()});
    }
    for (int m = 0; m < 50; ++m) {
        double general = -2.5 + 0.8 * rng.next_normal();
        abilities.push_back({general + 0.05 * rng.next_normal(),
                             general + 0.05 * rng.next_normal(),
                             general + 0.05 * rng.next_normal()});
    }
    redbench::SynthSpec spec;
    spec.benchmark_id = "tiered";
    spec.seed = 2024;
    spec.discrimination = 1.7;
    spec.noise = 0.0;
    spec.abilities = std::move(abilities);
    spec.dimensions = {
        {"percept", {1.0, 0.0, 0.0}, 150, 1.0},
        {"reason", {0.0, 1.0, 0.0}, 150, 1.0},
        {"knowledge", {0.0, 0.0, 1.0}, 150, 1.0},
        {"mixed_pr", {0.7, 0.7, 0.0}, 150, 1.0},
        {"mixed_rk", {0.0, 0.7, 0.7}, 150, 1.0},
    };
    return spec;
}

// Single-trait i.i.d. population for the instance-redundancy curve checks.
// Abilities are packed tightly and responses are noisy, so small subsets
// genuinely scramble the ranking and the curve climbs across the grid
// instead of saturating at the first point.
inline redbench::SynthSpec iid_spec(std::size_t n_models,
                                    std::size_t n_instances) {
    redbench::SynthSpec spec;
    spec.benchmark_id = "iid";
    spec.seed = 9;
    spec.discrimination = 1.7;
    spec.noise = 3.0;
    spec.abilities = redbench::sample_abilities(n_models, 1, 0.25, 5);
    spec.dimensions = {{"main", {1.0}, n_instances, 1.0}};
    return spec;
}

// Tiny hand-checkable record set: 3 models x 4 instances in 2 dimensions.
inline std::vector<redbench::EvalRecord> tiny_records() {
    using R = redbench::EvalRecord;
    return {
        R{"m1", "B", "ocr", "q1", 1.0},  R{"m1", "B", "ocr", "q2", 0.0},
        R{"m1", "B", "logic", "q3", 1.0}, R{"m1", "B", "logic", "q4", 1.0},
        R{"m2", "B", "ocr", "q1", 0.0},  R{"m2", "B", "ocr", "q2", 1.0},
        R{"m2", "B", "logic", "q3", 0.5}, R{"m2", "B", "logic", "q4", 0.0},
        R{"m3", "B", "ocr", "q1", 1.0},  R{"m3", "B", "ocr", "q2", 1.0},
        R{"m3", "B", "logic", "q3", 0.0}, R{"m3", "B", "logic", "q4", 0.5},
    };
}

}  // namespace fixtures
