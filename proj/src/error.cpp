// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The SCIP Authors

#include "scip/error.hpp"

namespace scip {

std::string_view error_code_name(ErrorCode code) noexcept {
    switch (code) {
        case ErrorCode::Io: return "io_error";
        case ErrorCode::MissingFile: return "missing_file";
        case ErrorCode::Schema: return "schema_violation";
        case ErrorCode::MissingField: return "missing_field";
        case ErrorCode::DuplicateId: return "duplicate_id";
        case ErrorCode::ContentTooShort: return "content_too_short";
        case ErrorCode::InvalidUtf8: return "invalid_utf8";
        case ErrorCode::BadMagic: return "bad_magic";
        case ErrorCode::DimMismatch: return "dim_mismatch";
        case ErrorCode::NonFinite: return "non_finite";
        case ErrorCode::ZeroVector: return "zero_vector";
        case ErrorCode::IdMismatch: return "id_mismatch";
        case ErrorCode::InvalidArgument: return "invalid_argument";
        case ErrorCode::InvalidFraction: return "invalid_fraction";
        case ErrorCode::EmptyInput: return "empty_input";
    }
    return "unknown";
}

}  // namespace scip
