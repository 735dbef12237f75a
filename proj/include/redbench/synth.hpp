#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <string>
#include <unordered_set>
#include <vector>

#include <nlohmann/json.hpp>

#include "redbench/errors.hpp"
#include "redbench/records.hpp"
#include "redbench/rng.hpp"

namespace redbench {

// One synthetic dimension: a direction in latent-trait space plus an
// instance count and a difficulty spread (standard deviation of per-
// instance difficulty).
struct SynthDimension {
    std::string id;
    std::vector<double> trait_loadings;
    std::size_t n_instances = 0;
    double difficulty_spread = 0.0;
};

// Latent-trait response model for generating evaluation records with a
// planted correlation structure. A model's score on instance q of
// dimension d is
//   sigma(discrimination * (loadings_d . ability_m - b_q) + eps)
// with b_q ~ N(0, difficulty_spread^2), eps ~ N(0, noise^2), and sigma the
// logistic function. Scores are graded by default; `binarize` draws 0/1
// responses with that probability instead.
struct SynthSpec {
    std::string benchmark_id = "synth";
    std::vector<std::vector<double>> abilities;  // n_models x n_traits
    std::vector<SynthDimension> dimensions;
    double noise = 0.0;
    double discrimination = 1.0;
    std::uint64_t seed = 0;
    bool binarize = false;

    std::size_t n_models() const { return abilities.size(); }
    std::size_t n_traits() const {
        return abilities.empty() ? 0 : abilities.front().size();
    }

    void validate() const {
        if (n_models() < 3) {
            throw DataError("synth spec: need at least 3 models, got " +
                            std::to_string(n_models()));
        }
        std::size_t k = n_traits();
        if (k == 0) throw DataError("synth spec: abilities have no traits");
        for (const auto& a : abilities) {
            if (a.size() != k) {
                throw DataError("synth spec: ragged ability vectors");
            }
        }
        if (dimensions.empty()) {
            throw DataError("synth spec: no dimensions");
        }
        if (!(discrimination > 0.0)) {
            throw DataError("synth spec: discrimination must be positive");
        }
        if (noise < 0.0) throw DataError("synth spec: negative noise");
        if (!valid_id(benchmark_id)) {
            throw DataError("synth spec: invalid benchmark id '" +
                            benchmark_id + "'");
        }
        std::unordered_set<std::string> dim_ids;
        for (const auto& dim : dimensions) {
            if (!valid_id(dim.id)) {
                throw DataError("synth spec: invalid dimension id '" + dim.id +
                                "'");
            }
            if (!dim_ids.insert(dim.id).second) {
                throw DataError("synth spec: duplicate dimension id '" +
                                dim.id + "'");
            }
            if (dim.n_instances < 1) {
                throw DataError("synth spec: dimension '" + dim.id +
                                "' has no instances");
            }
            if (dim.trait_loadings.size() != k) {
                throw DataError("synth spec: dimension '" + dim.id +
                                "' loadings do not match trait count");
            }
            if (dim.difficulty_spread < 0.0) {
                throw DataError("synth spec: dimension '" + dim.id +
                                "' has negative difficulty spread");
            }
            double norm2 = 0.0;
            for (double l : dim.trait_loadings) norm2 += l * l;
            if (norm2 == 0.0) {
                throw DataError("synth spec: dimension '" + dim.id +
                                "' has all-zero loadings");
            }
        }
    }
};

namespace detail {

inline std::string padded_index(std::size_t i, std::size_t total) {
    std::size_t width = 1;
    for (std::size_t v = (total > 0 ? total - 1 : 0); v >= 10; v /= 10) {
        ++width;
    }
    if (width < 3) width = 3;
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%0*zu", static_cast<int>(width), i);
    return buf;
}

inline double logistic(double z) { return 1.0 / (1.0 + std::exp(-z)); }

}  // namespace detail

// Draws n_models x n_traits abilities i.i.d. from N(0, spread^2).
inline std::vector<std::vector<double>> sample_abilities(std::size_t n_models,
                                                         std::size_t n_traits,
                                                         double spread,
                                                         std::uint64_t seed) {
    SplitMix64 rng(derive_seed(seed, 0x4142));
    std::vector<std::vector<double>> out(n_models,
                                         std::vector<double>(n_traits));
    for (auto& row : out) {
        for (double& v : row) v = rng.next_normal() * spread;
    }
    return out;
}

// Generates the full record set for a spec. Deterministic given the seed;
// each dimension consumes its own derived stream, so generation order does
// not leak across dimensions. Loadings are normalized to unit length.
inline std::vector<EvalRecord> generate(const SynthSpec& spec) {
    spec.validate();
    const std::size_t n = spec.n_models();
    std::vector<EvalRecord> records;

    std::vector<std::string> model_ids(n);
    for (std::size_t m = 0; m < n; ++m) {
        model_ids[m] = "m" + detail::padded_index(m, n);
    }

    for (std::size_t di = 0; di < spec.dimensions.size(); ++di) {
        const SynthDimension& dim = spec.dimensions[di];
        double norm = 0.0;
        for (double l : dim.trait_loadings) norm += l * l;
        norm = std::sqrt(norm);
        std::vector<double> loadings = dim.trait_loadings;
        for (double& l : loadings) l /= norm;

        std::vector<double> signal(n, 0.0);
        for (std::size_t m = 0; m < n; ++m) {
            double dot = 0.0;
            for (std::size_t t = 0; t < loadings.size(); ++t) {
                dot += loadings[t] * spec.abilities[m][t];
            }
            signal[m] = dot;
        }

        SplitMix64 rng(derive_seed(spec.seed, di));
        std::vector<double> difficulty(dim.n_instances);
        for (double& b : difficulty) {
            b = rng.next_normal() * dim.difficulty_spread;
        }

        for (std::size_t q = 0; q < dim.n_instances; ++q) {
            std::string instance_id =
                dim.id + "_q" + detail::padded_index(q, dim.n_instances);
            for (std::size_t m = 0; m < n; ++m) {
                double z = spec.discrimination * (signal[m] - difficulty[q]);
                if (spec.noise > 0.0) z += rng.next_normal() * spec.noise;
                double p = detail::logistic(z);
                double score;
                if (spec.binarize) {
                    score = (rng.next_unit() <= p) ? 1.0 : 0.0;
                } else {
                    score = std::clamp(p, 0.0, 1.0);
                }
                records.push_back(EvalRecord{model_ids[m], spec.benchmark_id,
                                             dim.id, instance_id, score});
            }
        }
    }
    return records;
}

// Parses the `synth` subcommand's JSON spec. Abilities are either given
// explicitly ("abilities": [[...], ...]) or sampled i.i.d. via
// "models": {"count": N, "traits": K, "spread": S, "seed": X}; reusing the
// same models block across spec files yields the same model population, so
// multi-benchmark fixtures stay comparable.
inline SynthSpec synth_spec_from_json(const nlohmann::json& doc,
                                      const std::string& source) {
    if (!doc.is_object()) {
        throw DataError(source, "synth spec must be a JSON object");
    }
    SynthSpec spec;
    spec.benchmark_id = doc.value("benchmark", std::string("synth"));
    spec.seed = doc.value("seed", std::uint64_t{0});
    spec.noise = doc.value("noise", 0.0);
    spec.discrimination = doc.value("discrimination", 1.0);
    spec.binarize = doc.value("binarize", false);

    if (doc.contains("abilities")) {
        const auto& arr = doc["abilities"];
        if (!arr.is_array()) {
            throw DataError(source, "'abilities' must be an array of arrays");
        }
        for (const auto& row : arr) {
            spec.abilities.push_back(row.get<std::vector<double>>());
        }
    } else if (doc.contains("models")) {
        const auto& m = doc["models"];
        auto count = m.value("count", std::size_t{0});
        auto traits = m.value("traits", std::size_t{1});
        double spread = m.value("spread", 1.0);
        auto seed = m.value("seed", std::uint64_t{0});
        spec.abilities = sample_abilities(count, traits, spread, seed);
    } else {
        throw DataError(source, "synth spec needs 'abilities' or 'models'");
    }

    if (!doc.contains("dimensions") || !doc["dimensions"].is_array()) {
        throw DataError(source, "synth spec needs a 'dimensions' array");
    }
    for (const auto& d : doc["dimensions"]) {
        SynthDimension dim;
        dim.id = d.value("id", std::string());
        dim.trait_loadings = d.value("loadings", std::vector<double>{});
        dim.n_instances = d.value("instances", std::size_t{0});
        dim.difficulty_spread = d.value("difficulty_spread", 0.0);
        spec.dimensions.push_back(std::move(dim));
    }
    spec.validate();
    return spec;
}

// Serializes records to the standard per-instance CSV format in generation
// order.
inline std::string records_to_csv(const std::vector<EvalRecord>& records) {
    std::string out(kRecordCsvHeader);
    out.push_back('\n');
    for (const auto& rec : records) {
        out += rec.model_id;
        out.push_back(',');
        out += rec.benchmark_id;
        out.push_back(',');
        out += rec.dimension_id;
        out.push_back(',');
        out += rec.instance_id;
        out.push_back(',');
        out += nlohmann::json(rec.score).dump();
        out.push_back('\n');
    }
    return out;
}

}  // namespace redbench
