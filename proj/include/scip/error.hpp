// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The SCIP Authors

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace scip {

/// Failure categories. Each maps to a stable machine-readable name that the
/// CLI prints on its single error line.
enum class ErrorCode {
    Io,
    MissingFile,
    Schema,
    MissingField,
    DuplicateId,
    ContentTooShort,
    InvalidUtf8,
    BadMagic,
    DimMismatch,
    NonFinite,
    ZeroVector,
    IdMismatch,
    InvalidArgument,
    InvalidFraction,
    EmptyInput,
};

std::string_view error_code_name(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
    Error(ErrorCode code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    ErrorCode code() const noexcept { return code_; }

private:
    ErrorCode code_;
};

}  // namespace scip
