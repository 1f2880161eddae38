#ifndef SPLINK_RNG_HPP
#define SPLINK_RNG_HPP

#include <cstdint>
#include <initializer_list>
#include <random>

#include "splink/bits.hpp"

namespace splink {

using Rng = std::mt19937_64;

/// splitmix64 finalizer; the standard way to turn correlated integers
/// (seed, cell, trial) into statistically independent stream seeds.
inline std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Folds a tuple of identifiers into one stream seed. Order matters.
inline std::uint64_t derive_seed(std::initializer_list<std::uint64_t> parts) {
    std::uint64_t acc = 0x243f6a8885a308d3ULL;  // arbitrary nonzero start
    for (auto p : parts) acc = mix64(acc ^ p);
    return acc;
}

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

inline Bits random_bits(Rng& rng, std::size_t n) {
    Bits out(n);
    std::uint64_t word = 0;
    int left = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (left == 0) {
            word = rng();
            left = 64;
        }
        out[i] = static_cast<std::uint8_t>(word & 1u);
        word >>= 1;
        --left;
    }
    return out;
}

}  // namespace splink

#endif
