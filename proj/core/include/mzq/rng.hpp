#pragma once

#include <cstdint>

namespace mzq {

// Counter-based generator: the draw for node k of degree n depends only on
// (seed, n, k), so regenerating a subset of layers, or generating them in a
// different order, reproduces identical values.
inline std::uint64_t hash_counter(std::uint64_t seed, std::uint64_t n, std::uint64_t k) {
    std::uint64_t z = seed;
    auto mix = [&z](std::uint64_t v) {
        z += 0x9e3779b97f4a7c15ULL + v;
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        z ^= z >> 31;
    };
    mix(n);
    mix(k);
    return z;
}

// Uniform draw in [0,1) with 53 random bits.
inline double uniform01(std::uint64_t seed, std::uint64_t n, std::uint64_t k) {
    return static_cast<double>(hash_counter(seed, n, k) >> 11) * 0x1.0p-53;
}

}  // namespace mzq
