#pragma once

#include <cstdint>
#include <random>

namespace qpos {

using Rng = std::mt19937_64;

// Uniform double in [0, 1) built from the top 53 bits of the generator
// output. Identical sequences on every platform for a given seed, unlike
// std::uniform_real_distribution.
inline double canonical_unit(Rng& rng) {
    return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Uniform integer in [0, n) by rejection sampling, again to keep the draw
// sequence platform-independent.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
    if (n <= 1) {
        if (n == 1) return 0;
        return 0;
    }
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t x = rng();
    while (x >= limit) x = rng();
    return x % n;
}

// Derives an independent child generator from a master seed. Used to give
// concurrent tasks (or repeated trials) their own streams.
inline Rng split_rng(std::uint64_t master_seed, std::uint64_t stream) {
    std::seed_seq seq{static_cast<std::uint64_t>(master_seed),
                      static_cast<std::uint64_t>(stream ^ 0x9e3779b97f4a7c15ULL)};
    return Rng(seq);
}

}  // namespace qpos
