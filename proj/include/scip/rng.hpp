// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The SCIP Authors

#pragma once

#include <cstdint>
#include <string_view>
#include <vector>

namespace scip {

/// FNV-1a, 64-bit (offset 14695981039346656037, prime 1099511628211).
constexpr std::uint64_t fnv1a64(std::string_view bytes) noexcept {
    std::uint64_t h = 14695981039346656037ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

constexpr std::uint64_t splitmix64(std::uint64_t x) noexcept {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

/// Per-item seed that depends only on the global seed and the item key, so
/// results never depend on processing order.
std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view key) noexcept;

/// SplitMix64 stream with portable bounded draws. std::uniform_*_distribution
/// is implementation-defined, so it is not used anywhere results must be
/// reproducible across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) noexcept : state_(seed) {}

    std::uint64_t next() noexcept {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    /// Uniform integer in [0, bound). bound must be positive.
    std::uint64_t below(std::uint64_t bound) noexcept;

    /// Uniform double in [0, 1) with 53 random bits.
    double unit() noexcept { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    /// First `count` entries of a seeded Fisher-Yates shuffle of 0..n-1.
    std::vector<std::size_t> sample_indices(std::size_t n, std::size_t count);

private:
    std::uint64_t state_;
};

}  // namespace scip
