// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The SCIP Authors

#include "scip/passk.hpp"

#include <bit>
#include <charconv>
#include <istream>
#include <numeric>
#include <sstream>

#include "scip/error.hpp"

namespace scip {
namespace {

void check(const PassAtKInput& in) {
    if (in.k == 0) throw Error(ErrorCode::InvalidArgument, "k must be positive");
    if (in.c > in.n)
        throw Error(ErrorCode::InvalidArgument,
                    "c = " + std::to_string(in.c) + " exceeds n = " + std::to_string(in.n));
    if (in.k > in.n)
        throw Error(ErrorCode::InvalidArgument,
                    "k = " + std::to_string(in.k) + " exceeds n = " + std::to_string(in.n));
}

}  // namespace

double pass_at_k(const PassAtKInput& in) {
    check(in);
    if (in.n - in.c < in.k) return 1.0;
    // k = 1 telescopes to c / n; dividing once avoids rounding in the product.
    if (in.k == 1) return static_cast<double>(in.c) / static_cast<double>(in.n);
    double miss = 1.0;
    const auto k = static_cast<double>(in.k);
    for (std::uint64_t j = in.n - in.c + 1; j <= in.n; ++j) miss *= 1.0 - k / static_cast<double>(j);
    return 1.0 - miss;
}

Rational pass_at_k_oracle(const PassAtKInput& in) {
    check(in);
    if (in.n > kOracleMaxN)
        throw Error(ErrorCode::InvalidArgument, "oracle enumeration limited to n <= " + std::to_string(kOracleMaxN));
    // Samples 0..c-1 are the correct ones.
    const std::uint32_t correct_mask = in.c == 0 ? 0u : ((1u << in.c) - 1u);
    std::uint64_t hits = 0, total = 0;
    for (std::uint32_t subset = 0; subset < (1u << in.n); ++subset) {
        if (static_cast<std::uint64_t>(std::popcount(subset)) != in.k) continue;
        ++total;
        if (subset & correct_mask) ++hits;
    }
    const auto g = std::gcd(hits, total);
    return Rational{hits / g, total / g};
}

double aggregate(std::span<const PassAtKInput> per_problem, std::uint64_t k) {
    if (per_problem.empty()) throw Error(ErrorCode::EmptyInput, "no problems to aggregate");
    double sum = 0.0;
    for (auto p : per_problem) {
        p.k = k;
        sum += pass_at_k(p);
    }
    return sum / static_cast<double>(per_problem.size());
}

std::vector<Tally> read_tallies(std::istream& in) {
    std::vector<Tally> out;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos || line[first] == '#') continue;
        std::istringstream fields(line);
        Tally t;
        std::string n, c, extra;
        if (!(fields >> t.problem_id >> n >> c))
            throw Error(ErrorCode::Schema, "line " + std::to_string(line_no) + ": expected 'problem_id n c'");
        if (fields >> extra)
            throw Error(ErrorCode::Schema, "line " + std::to_string(line_no) + ": unexpected trailing field");
        auto parse = [&](const std::string& s, std::uint64_t& v) {
            auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
            if (ec != std::errc{} || p != s.data() + s.size())
                throw Error(ErrorCode::Schema, "line " + std::to_string(line_no) + ": '" + s + "' is not a count");
        };
        parse(n, t.n);
        parse(c, t.c);
        if (t.n == 0 || t.c > t.n)
            throw Error(ErrorCode::Schema, "line " + std::to_string(line_no) + ": need 0 <= c <= n and n > 0");
        out.push_back(std::move(t));
    }
    return out;
}

std::string format_probability(double v) {
    char buf[64];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);
    std::string s(buf, p);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

}  // namespace scip
