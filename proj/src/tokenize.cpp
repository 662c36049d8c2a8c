// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The SCIP Authors

#include "scip/tokenize.hpp"

#include <algorithm>
#include <array>

namespace scip {
namespace {

bool ident_start(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || c == '_' || c >= 0x80;
}

bool ident_char(unsigned char c) { return ident_start(c) || (c >= '0' && c <= '9'); }

bool is_digit(unsigned char c) { return c >= '0' && c <= '9'; }

bool string_prefix(std::string_view word) {
    if (word.size() > 2) return false;
    return std::all_of(word.begin(), word.end(), [](char c) {
        switch (c) {
            case 'r': case 'R': case 'b': case 'B': case 'u': case 'U': case 'f': case 'F':
                return true;
            default:
                return false;
        }
    });
}

// Longest first.
constexpr std::array<std::string_view, 40> kOperators = {
    "<=>", "===", "!==", "**=", "//=", ">>=", "<<=", "...",
    "->", "=>", ":=", "==", "!=", "<=", ">=", "<<", ">>", "**", "//", "+=",
    "-=", "*=", "/=", "%=", "&=", "|=", "^=", "@=", "&&", "||", "++", "--", "::",
    "+", "-", "*", "/", "%", "<", ">"};

constexpr std::string_view kSingleOps = "@&|^~()[]{},:.;=!?";

// Scans a quoted literal starting at `pos` (the opening quote). Returns the
// end offset (one past the closing quote).
std::size_t scan_string(std::string_view s, std::size_t pos) {
    const char q = s[pos];
    const bool triple = pos + 2 < s.size() && s[pos + 1] == q && s[pos + 2] == q;
    std::size_t i = pos + (triple ? 3 : 1);
    while (i < s.size()) {
        const char c = s[i];
        if (c == '\\') {
            i += 2;
            continue;
        }
        if (triple) {
            if (c == q && i + 2 < s.size() && s[i + 1] == q && s[i + 2] == q) return i + 3;
        } else {
            if (c == q) return i + 1;
            if (c == '\n') return i;
        }
        ++i;
    }
    return s.size();
}

}  // namespace

bool is_keyword(std::string_view w) noexcept {
    static constexpr std::array<std::string_view, 37> kKeywords = {
        "False", "None", "True", "and", "as", "assert", "async", "await", "break", "class",
        "continue", "def", "del", "elif", "else", "except", "finally", "for", "from", "global",
        "if", "import", "in", "is", "lambda", "nonlocal", "not", "or", "pass", "raise",
        "return", "try", "while", "with", "yield", "match", "case"};
    return std::find(kKeywords.begin(), kKeywords.end(), w) != kKeywords.end();
}

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = s.size();
    auto push = [&](TokenKind k, std::size_t start, std::size_t end) {
        out.push_back(Token{k, start, end - start});
        i = end;
    };
    while (i < n) {
        const auto c = static_cast<unsigned char>(s[i]);
        if (c == '\n') {
            push(TokenKind::Newline, i, i + 1);
        } else if (c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v') {
            std::size_t j = i;
            while (j < n && (s[j] == ' ' || s[j] == '\t' || s[j] == '\r' || s[j] == '\f' || s[j] == '\v')) ++j;
            push(TokenKind::Space, i, j);
        } else if (c == '#') {
            const std::size_t j = std::min(n, s.find('\n', i));
            push(TokenKind::Comment, i, j);
        } else if (c == '"' || c == '\'') {
            push(TokenKind::String, i, scan_string(s, i));
        } else if (ident_start(c)) {
            std::size_t j = i;
            while (j < n && ident_char(static_cast<unsigned char>(s[j]))) ++j;
            if (j < n && (s[j] == '"' || s[j] == '\'') && string_prefix(s.substr(i, j - i)))
                push(TokenKind::String, i, scan_string(s, j));
            else
                push(TokenKind::Identifier, i, j);
        } else if (is_digit(c) || (c == '.' && i + 1 < n && is_digit(static_cast<unsigned char>(s[i + 1])))) {
            std::size_t j = i;
            while (j < n && (ident_char(static_cast<unsigned char>(s[j])) || s[j] == '.')) ++j;
            push(TokenKind::Number, i, j);
        } else {
            const std::string_view rest = s.substr(i);
            auto op = std::find_if(kOperators.begin(), kOperators.end(),
                                   [&](std::string_view o) { return rest.starts_with(o); });
            if (op != kOperators.end())
                push(TokenKind::Operator, i, i + op->size());
            else if (kSingleOps.find(static_cast<char>(c)) != std::string_view::npos)
                push(TokenKind::Operator, i, i + 1);
            else
                push(TokenKind::Other, i, i + 1);
        }
    }
    return out;
}

}  // namespace scip
