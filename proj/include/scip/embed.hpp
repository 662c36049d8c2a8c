// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The SCIP Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scip/corpus.hpp"

namespace scip {

inline constexpr std::size_t kDefaultEmbeddingDim = 512;
inline constexpr std::size_t kMinBuiltinDim = 8;
inline constexpr double kUnitNormTolerance = 1e-6;

/// Unit-norm float32 vectors keyed by id, stored row-major in id order.
class EmbeddingSet {
public:
    EmbeddingSet() = default;

    /// `rows` holds ids.size() * dim floats. Rows are sorted by id; every row
    /// is renormalized to unit length. Throws on duplicate ids, size
    /// mismatch, non-finite coordinates or zero rows.
    EmbeddingSet(std::size_t dim, std::vector<std::string> ids, std::vector<float> rows);

    std::size_t dim() const noexcept { return dim_; }
    std::size_t size() const noexcept { return ids_.size(); }
    bool empty() const noexcept { return ids_.empty(); }

    std::span<const std::string> ids() const noexcept { return ids_; }
    const std::string& id(std::size_t i) const { return ids_[i]; }
    std::span<const float> row(std::size_t i) const { return {data_.data() + i * dim_, dim_}; }
    std::span<const float> data() const noexcept { return data_; }

    std::optional<std::size_t> index_of(std::string_view id) const noexcept;

    /// Subset with the given ids (which must all exist).
    EmbeddingSet select(std::span<const std::string> ids) const;

    friend bool operator==(const EmbeddingSet&, const EmbeddingSet&) = default;

private:
    std::size_t dim_ = 0;
    std::vector<std::string> ids_;
    std::vector<float> data_;
};

/// Hashed-trigram feature vector of `content` (trigram-hash-v1): every 3-byte
/// window goes to bucket FNV-1a-64(window) mod dim, bucket weight is
/// log(1 + count), then L2 normalization. Content must have at least 3 bytes.
std::vector<float> trigram_embedding(std::string_view content, std::size_t dim);

/// Pre-normalization bucket weights, exposed for locality checks.
std::vector<float> trigram_weights(std::string_view content, std::size_t dim);

EmbeddingSet embed_builtin(const Corpus& corpus, std::size_t dim = kDefaultEmbeddingDim, unsigned threads = 1);

/// Embeds (id, content) pairs directly, e.g. corrupted variants of a corpus.
EmbeddingSet embed_texts(std::span<const std::string> ids, std::span<const std::string> contents,
                         std::size_t dim = kDefaultEmbeddingDim, unsigned threads = 1);

/// EMB1: little-endian "EMB1", u32 count, u32 dim, then per record u16 id
/// length, id bytes, dim float32 values.
void write_embeddings(const EmbeddingSet& set, std::ostream& out);

/// Raw EMB1 writer for `ids.size()` rows of `dim` floats, written as given.
void write_emb1(std::ostream& out, std::size_t dim, std::span<const std::string> ids, std::span<const float> rows);

/// Reads EMB1. Vectors are renormalized on load. When `expected_dim` is set,
/// a different header dim is an error.
EmbeddingSet load_embeddings(std::istream& in, std::optional<std::size_t> expected_dim = std::nullopt);

double dot(std::span<const float> x, std::span<const float> y) noexcept;

/// 1 - x.y for unit vectors. Throws Error(DimMismatch) on length mismatch.
double cosine_distance(std::span<const float> x, std::span<const float> y);

}  // namespace scip
