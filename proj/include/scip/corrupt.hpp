// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The SCIP Authors

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scip/corpus.hpp"

namespace scip {

enum class CorruptionKind { RemoveClosedBrackets, RenameVariables, AlterConditionals, OffsetArrayIndices };

inline constexpr CorruptionKind kAllCorruptionKinds[] = {
    CorruptionKind::RemoveClosedBrackets, CorruptionKind::RenameVariables,
    CorruptionKind::AlterConditionals, CorruptionKind::OffsetArrayIndices};

std::string_view kind_name(CorruptionKind kind) noexcept;

/// Accepts the names produced by kind_name. Throws Error(InvalidArgument).
CorruptionKind parse_kind(std::string_view name);

inline constexpr double kDefaultCorruptionRate = 0.5;

struct CorruptionOperator {
    CorruptionKind kind = CorruptionKind::RemoveClosedBrackets;
    double rate = kDefaultCorruptionRate;  ///< share of eligible sites, in (0, 1]
    std::uint64_t seed = 0;
};

/// One replacement in original-text coordinates.
struct Edit {
    std::size_t offset = 0;
    std::size_t erase = 0;
    std::string insert;

    friend bool operator==(const Edit&, const Edit&) = default;
};

struct CorruptionPair {
    std::string doc_id;
    CorruptionKind kind = CorruptionKind::RemoveClosedBrackets;
    std::string original;
    std::string corrupted;
    std::size_t sites_corrupted = 0;
    std::vector<Edit> edits;  ///< sorted by offset, non-overlapping

    bool no_op() const noexcept { return sites_corrupted == 0; }

    friend bool operator==(const CorruptionPair&, const CorruptionPair&) = default;
};

/// Applies sorted, non-overlapping edits to `text`.
std::string apply_edits(std::string_view text, std::span<const Edit> edits);

/// Deletes a seeded subset of the `)`, `]`, `}` bytes. When the deletion
/// would leave every bracket family balanced, one more closer is deleted if
/// any remains.
CorruptionPair remove_closed_brackets(std::string_view content, double rate, std::uint64_t seed);

/// Picks a variable introduced by an `ident =` / `ident op=` statement and
/// renames a seeded subset of its later reads to a name that occurs nowhere
/// in the file. The declaration stays intact.
CorruptionPair rename_variables(std::string_view content, double rate, std::uint64_t seed);

/// Negates relational operator tokens: == <-> !=, < <-> >=, > <-> <=.
CorruptionPair alter_conditionals(std::string_view content, double rate, std::uint64_t seed);

/// Rewrites subscripts `name[expr]` to `name[expr+1]`.
CorruptionPair offset_array_indices(std::string_view content, double rate, std::uint64_t seed);

CorruptionPair apply_corruption(const CorruptionOperator& op, std::string_view content);

/// One pair per document in id order. Each document uses
/// derive_seed(op.seed, id) so output does not depend on `threads`.
std::vector<CorruptionPair> corrupt_corpus(const Corpus& corpus, const CorruptionOperator& op,
                                           unsigned threads = 1);

/// Line-delimited records {doc_id, kind, sites_corrupted, corrupted}.
void write_pairs(std::span<const CorruptionPair> pairs, std::ostream& out);

/// Reads records written by write_pairs. Originals (and edits) are not stored
/// in the file; when `corpus` is given the originals are filled from it and
/// every doc_id must exist there.
std::vector<CorruptionPair> read_pairs(std::istream& in, const Corpus* corpus = nullptr);

}  // namespace scip
