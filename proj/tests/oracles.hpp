// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The SCIP Authors

#pragma once

#include <algorithm>
#include <array>
#include <regex>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace scip::testing {

// Names read before any assignment to them, found line by line with regular
// expressions only. Independent of the library tokenizer.
inline std::set<std::string> undeclared_reads(const std::string& src) {
    static const std::set<std::string> builtin = {"print", "range", "len", "sum", "if", "else", "for", "in",
                                                  "while", "return", "and", "or", "not", "True", "False", "None"};
    static const std::regex assign(R"(^\s*([A-Za-z_]\w*)\s*=(?!=)(.*)$)");
    static const std::regex augmented(R"(^\s*([A-Za-z_]\w*)\s*(\+|-|\*|/|%|//|\*\*)=(.*)$)");
    static const std::regex name(R"((^|[^.\w])([A-Za-z_]\w*))");
    std::set<std::string> defined, bad;
    auto reads = [&](const std::string& expr) {
        for (std::sregex_iterator it(expr.begin(), expr.end(), name), end; it != end; ++it) {
            const auto n = (*it)[2].str();
            if (!builtin.contains(n) && !defined.contains(n)) bad.insert(n);
        }
    };
    std::istringstream in(src);
    std::string line;
    while (std::getline(in, line)) {
        std::smatch m;
        if (std::regex_match(line, m, augmented)) {
            reads(m[1].str());
            reads(m[3].str());
        } else if (std::regex_match(line, m, assign)) {
            reads(m[2].str());
            defined.insert(m[1].str());
        } else {
            reads(line);
        }
    }
    return bad;
}

// Byte ranges covered by quoted literals or '#' comments (single-line
// literals only), scanned by hand.
inline std::vector<std::pair<std::size_t, std::size_t>> protected_ranges(const std::string& s) {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    std::size_t i = 0;
    while (i < s.size()) {
        if (s[i] == '#') {
            auto e = s.find('\n', i);
            if (e == std::string::npos) e = s.size();
            out.emplace_back(i, e);
            i = e;
        } else if (s[i] == '"' || s[i] == '\'') {
            const char q = s[i];
            std::size_t j = i + 1;
            while (j < s.size() && s[j] != q && s[j] != '\n') j += (s[j] == '\\') ? 2 : 1;
            j = std::min(s.size(), j + 1);
            out.emplace_back(i, j);
            i = j;
        } else {
            ++i;
        }
    }
    return out;
}

inline bool bracket_counts_unbalanced(const std::string& s) {
    constexpr std::array<std::pair<char, char>, 3> families = {{{'(', ')'}, {'[', ']'}, {'{', '}'}}};
    return std::any_of(families.begin(), families.end(), [&](auto f) {
        return std::count(s.begin(), s.end(), f.first) != std::count(s.begin(), s.end(), f.second);
    });
}

}  // namespace scip::testing
