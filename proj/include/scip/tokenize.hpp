// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The SCIP Authors

#pragma once

#include <cstddef>
#include <string_view>
#include <vector>

namespace scip {

enum class TokenKind { Identifier, Number, String, Comment, Operator, Newline, Space, Other };

struct Token {
    TokenKind kind;
    std::size_t offset;
    std::size_t length;

    std::string_view text(std::string_view source) const { return source.substr(offset, length); }
};

/// Lenient lexer for Python-like source. It never fails: unterminated
/// literals run to end of line (or end of input for triple quotes), unknown
/// bytes become Other tokens. String literals and `#` comments are single
/// tokens so nothing inside them is ever treated as code. The tokens tile the
/// input exactly.
std::vector<Token> tokenize(std::string_view source);

bool is_keyword(std::string_view word) noexcept;

}  // namespace scip
