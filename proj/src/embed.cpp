// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The SCIP Authors

#include "scip/embed.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <numeric>
#include <ostream>

#include "scip/error.hpp"
#include "scip/parallel.hpp"
#include "scip/rng.hpp"

namespace scip {
namespace {

static_assert(sizeof(float) == 4 && std::numeric_limits<float>::is_iec559);

// Scales `row` to unit length in place. Sum of squares is accumulated in
// double in coordinate order. Rows already unit to within float rounding are
// left as they are, so stored unit vectors load back bit for bit.
void normalize(std::span<float> row, const std::string& id) {
    double sq = 0.0;
    for (float v : row) {
        if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "non-finite coordinate in vector '" + id + "'");
        sq += static_cast<double>(v) * static_cast<double>(v);
    }
    if (sq == 0.0) throw Error(ErrorCode::ZeroVector, "zero vector for '" + id + "'");
    const double norm = std::sqrt(sq);
    if (std::abs(norm - 1.0) <= 4.0 * std::numeric_limits<float>::epsilon()) return;
    for (float& v : row) v = static_cast<float>(static_cast<double>(v) / norm);
}

void put_u32(std::ostream& out, std::uint32_t v) {
    const char b[4] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF),
                       static_cast<char>((v >> 16) & 0xFF), static_cast<char>((v >> 24) & 0xFF)};
    out.write(b, 4);
}

void put_u16(std::ostream& out, std::uint16_t v) {
    const char b[2] = {static_cast<char>(v & 0xFF), static_cast<char>((v >> 8) & 0xFF)};
    out.write(b, 2);
}

void read_exact(std::istream& in, char* buf, std::size_t n, const char* what) {
    in.read(buf, static_cast<std::streamsize>(n));
    if (static_cast<std::size_t>(in.gcount()) != n)
        throw Error(ErrorCode::Schema, std::string("truncated EMB1 stream while reading ") + what);
}

std::uint32_t get_u32(std::istream& in, const char* what) {
    unsigned char b[4];
    read_exact(in, reinterpret_cast<char*>(b), 4, what);
    return std::uint32_t{b[0]} | (std::uint32_t{b[1]} << 8) | (std::uint32_t{b[2]} << 16) |
           (std::uint32_t{b[3]} << 24);
}

std::uint16_t get_u16(std::istream& in, const char* what) {
    unsigned char b[2];
    read_exact(in, reinterpret_cast<char*>(b), 2, what);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

}  // namespace

EmbeddingSet::EmbeddingSet(std::size_t dim, std::vector<std::string> ids, std::vector<float> rows) : dim_(dim) {
    if (dim == 0) throw Error(ErrorCode::InvalidArgument, "embedding dim must be positive");
    if (rows.size() != ids.size() * dim)
        throw Error(ErrorCode::DimMismatch, "row data does not match ids x dim");

    std::vector<std::size_t> order(ids.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });
    ids_.reserve(ids.size());
    data_.resize(rows.size());
    for (std::size_t r = 0; r < order.size(); ++r) {
        const auto src = order[r];
        if (r > 0 && ids[src] == ids_.back()) throw Error(ErrorCode::DuplicateId, "duplicate id '" + ids[src] + "'");
        ids_.push_back(std::move(ids[src]));
        std::copy_n(rows.begin() + static_cast<std::ptrdiff_t>(src * dim), dim,
                    data_.begin() + static_cast<std::ptrdiff_t>(r * dim));
        normalize({data_.data() + r * dim, dim}, ids_.back());
    }
}

std::optional<std::size_t> EmbeddingSet::index_of(std::string_view id) const noexcept {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
    if (it == ids_.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - ids_.begin());
}

EmbeddingSet EmbeddingSet::select(std::span<const std::string> ids) const {
    std::vector<std::string> out_ids;
    std::vector<float> rows;
    rows.reserve(ids.size() * dim_);
    for (const auto& id : ids) {
        auto idx = index_of(id);
        if (!idx) throw Error(ErrorCode::IdMismatch, "unknown embedding id '" + id + "'");
        out_ids.push_back(id);
        auto r = row(*idx);
        rows.insert(rows.end(), r.begin(), r.end());
    }
    return EmbeddingSet(dim_, std::move(out_ids), std::move(rows));
}

std::vector<float> trigram_weights(std::string_view content, std::size_t dim) {
    if (dim == 0) throw Error(ErrorCode::InvalidArgument, "embedding dim must be positive");
    std::vector<std::uint32_t> counts(dim, 0);
    for (std::size_t i = 0; i + 3 <= content.size(); ++i) ++counts[fnv1a64(content.substr(i, 3)) % dim];
    std::vector<float> w(dim);
    for (std::size_t b = 0; b < dim; ++b) w[b] = static_cast<float>(std::log1p(static_cast<double>(counts[b])));
    return w;
}

std::vector<float> trigram_embedding(std::string_view content, std::size_t dim) {
    if (content.size() < kMinContentBytes)
        throw Error(ErrorCode::ContentTooShort, "content shorter than 3 bytes cannot be embedded");
    auto w = trigram_weights(content, dim);
    normalize(w, "");
    return w;
}

EmbeddingSet embed_texts(std::span<const std::string> ids, std::span<const std::string> contents, std::size_t dim,
                         unsigned threads) {
    if (dim < kMinBuiltinDim)
        throw Error(ErrorCode::InvalidArgument, "built-in embedder needs dim >= " + std::to_string(kMinBuiltinDim));
    if (ids.size() != contents.size()) throw Error(ErrorCode::IdMismatch, "ids and contents differ in length");
    std::vector<float> rows(ids.size() * dim);
    parallel_for(ids.size(), threads, [&](std::size_t i) {
        if (contents[i].size() < kMinContentBytes)
            throw Error(ErrorCode::ContentTooShort, "content of '" + ids[i] + "' is shorter than 3 bytes");
        const auto v = trigram_embedding(contents[i], dim);
        std::copy(v.begin(), v.end(), rows.begin() + static_cast<std::ptrdiff_t>(i * dim));
    });
    return EmbeddingSet(dim, std::vector<std::string>(ids.begin(), ids.end()), std::move(rows));
}

EmbeddingSet embed_builtin(const Corpus& corpus, std::size_t dim, unsigned threads) {
    std::vector<std::string> ids, contents;
    ids.reserve(corpus.size());
    contents.reserve(corpus.size());
    for (const auto& d : corpus) {
        ids.push_back(d.id);
        contents.push_back(d.content);
    }
    return embed_texts(ids, contents, dim, threads);
}

void write_emb1(std::ostream& out, std::size_t dim, std::span<const std::string> ids, std::span<const float> rows) {
    if (rows.size() != ids.size() * dim) throw Error(ErrorCode::DimMismatch, "row data does not match ids x dim");
    out.write("EMB1", 4);
    put_u32(out, static_cast<std::uint32_t>(ids.size()));
    put_u32(out, static_cast<std::uint32_t>(dim));
    for (std::size_t i = 0; i < ids.size(); ++i) {
        const auto& id = ids[i];
        if (id.size() > 0xFFFF) throw Error(ErrorCode::InvalidArgument, "id longer than 65535 bytes");
        put_u16(out, static_cast<std::uint16_t>(id.size()));
        out.write(id.data(), static_cast<std::streamsize>(id.size()));
        for (float v : rows.subspan(i * dim, dim)) put_u32(out, std::bit_cast<std::uint32_t>(v));
    }
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "failed to write EMB1 stream");
}

void write_embeddings(const EmbeddingSet& set, std::ostream& out) { write_emb1(out, set.dim(), set.ids(), set.data()); }

EmbeddingSet load_embeddings(std::istream& in, std::optional<std::size_t> expected_dim) {
    char magic[4];
    in.read(magic, 4);
    if (in.gcount() != 4 || std::memcmp(magic, "EMB1", 4) != 0) throw Error(ErrorCode::BadMagic, "bad magic: not an EMB1 stream");
    const auto count = get_u32(in, "record count");
    const auto dim = get_u32(in, "dim");
    if (dim == 0) throw Error(ErrorCode::Schema, "EMB1 dim is zero");
    if (expected_dim && *expected_dim != dim)
        throw Error(ErrorCode::DimMismatch, "dim mismatch: stream has " + std::to_string(dim) + ", expected " +
                                                std::to_string(*expected_dim));
    std::vector<std::string> ids;
    std::vector<float> rows;
    ids.reserve(count);
    rows.reserve(static_cast<std::size_t>(count) * dim);
    for (std::uint32_t r = 0; r < count; ++r) {
        const auto len = get_u16(in, "id length");
        std::string id(len, '\0');
        read_exact(in, id.data(), len, "id");
        if (!is_valid_utf8(id)) throw Error(ErrorCode::InvalidUtf8, "invalid UTF-8 in id of record " + std::to_string(r));
        for (std::uint32_t c = 0; c < dim; ++c) {
            const float v = std::bit_cast<float>(get_u32(in, "coordinate"));
            if (!std::isfinite(v)) throw Error(ErrorCode::NonFinite, "non-finite coordinate in vector '" + id + "'");
            rows.push_back(v);
        }
        ids.push_back(std::move(id));
    }
    return EmbeddingSet(dim, std::move(ids), std::move(rows));
}

double dot(std::span<const float> x, std::span<const float> y) noexcept {
    double s = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) s += static_cast<double>(x[i]) * static_cast<double>(y[i]);
    return s;
}

double cosine_distance(std::span<const float> x, std::span<const float> y) {
    if (x.size() != y.size())
        throw Error(ErrorCode::DimMismatch, "dim mismatch: " + std::to_string(x.size()) + " vs " + std::to_string(y.size()));
    return 1.0 - dot(x, y);
}

}  // namespace scip
