// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The SCIP Authors

#include "scip/rng.hpp"

#include <algorithm>
#include <numeric>

namespace scip {

std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view key) noexcept {
    return splitmix64(global_seed ^ splitmix64(fnv1a64(key)));
}

std::uint64_t Rng::below(std::uint64_t bound) noexcept {
    // Rejection sampling on the top of the range keeps the draw unbiased.
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x = next();
    while (x >= limit) x = next();
    return x % bound;
}

std::vector<std::size_t> Rng::sample_indices(std::size_t n, std::size_t count) {
    std::vector<std::size_t> idx(n);
    std::iota(idx.begin(), idx.end(), std::size_t{0});
    count = std::min(count, n);
    for (std::size_t i = 0; i < count; ++i) {
        const auto j = i + static_cast<std::size_t>(below(n - i));
        std::swap(idx[i], idx[j]);
    }
    idx.resize(count);
    return idx;
}

}  // namespace scip
