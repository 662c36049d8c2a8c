// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The SCIP Authors

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace scip {

struct PassAtKInput {
    std::uint64_t n = 0;  ///< samples per problem
    std::uint64_t c = 0;  ///< correct samples
    std::uint64_t k = 0;
};

/// 1 when n - c < k, otherwise 1 - prod_{j=n-c+1..n} (1 - k/j). Throws
/// Error(InvalidArgument) unless 0 <= c <= n and 1 <= k <= n.
double pass_at_k(const PassAtKInput& in);

struct Rational {
    std::uint64_t num = 0;
    std::uint64_t den = 1;

    double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
    friend bool operator==(const Rational&, const Rational&) = default;
};

inline constexpr std::uint64_t kOracleMaxN = 20;

/// Enumerates every k-subset of n sample indices and returns the reduced
/// fraction containing at least one of the c correct ones. n <= 20.
Rational pass_at_k_oracle(const PassAtKInput& in);

/// Mean pass@k over problems; each entry's own k field is ignored in favour
/// of `k`. Throws Error(EmptyInput) on an empty list.
double aggregate(std::span<const PassAtKInput> per_problem, std::uint64_t k);

struct Tally {
    std::string problem_id;
    std::uint64_t n = 0;
    std::uint64_t c = 0;
};

/// Whitespace-separated `problem_id n c` lines. Blank lines and lines
/// starting with '#' are skipped.
std::vector<Tally> read_tallies(std::istream& in);

/// Shortest round-trip decimal, always with a fractional part ("1.0").
std::string format_probability(double v);

}  // namespace scip
