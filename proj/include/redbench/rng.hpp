#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <vector>

namespace redbench {

// Deterministic 64-bit generator (splitmix64). The <random> distributions
// are implementation-defined, and emitted results must be byte-identical
// across toolchains, so all draws go through this.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Uniform integer in [0, bound) by multiply-shift; bound >= 1.
    std::uint64_t next_below(std::uint64_t bound) {
        return static_cast<std::uint64_t>(
            (static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

    // Uniform double in (0, 1]; never returns 0 so it is safe under log().
    double next_unit() {
        return static_cast<double>((next() >> 11) + 1) * 0x1.0p-53;
    }

    // Standard normal via Box-Muller.
    double next_normal() {
        double u1 = next_unit();
        double u2 = next_unit();
        return std::sqrt(-2.0 * std::log(u1)) *
               std::cos(2.0 * std::numbers::pi * u2);
    }

private:
    std::uint64_t state_;
};

// Mixes a master seed with stream indices so that every (ratio, trial) or
// (dimension) stream is independent and can be consumed in any order.
inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t stream,
                                 std::uint64_t index = 0) {
    SplitMix64 mix(master ^ (0xa0761d6478bd642fULL + stream));
    std::uint64_t s = mix.next();
    SplitMix64 mix2(s ^ (0xe7037ed1a0b428dbULL + index));
    return mix2.next();
}

// Draws `count` distinct indices from [0, population) by partial
// Fisher-Yates, returned ascending. The ascending order makes a
// count == population draw accumulate bit-identically to a full-set pass.
inline std::vector<std::size_t> sample_without_replacement(
    std::size_t population, std::size_t count, SplitMix64& rng) {
    std::vector<std::size_t> pool(population);
    for (std::size_t i = 0; i < population; ++i) pool[i] = i;
    for (std::size_t i = 0; i < count; ++i) {
        std::size_t j = i + static_cast<std::size_t>(
                                rng.next_below(population - i));
        std::swap(pool[i], pool[j]);
    }
    pool.resize(count);
    std::sort(pool.begin(), pool.end());
    return pool;
}

}  // namespace redbench
