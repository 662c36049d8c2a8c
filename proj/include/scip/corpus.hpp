// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The SCIP Authors

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace scip {

/// Minimum content length in bytes. The trigram embedder needs one window.
inline constexpr std::size_t kMinContentBytes = 3;

struct Document {
    std::string id;
    std::string path;
    std::string language;
    std::string content;

    friend bool operator==(const Document&, const Document&) = default;
};

/// Immutable collection of documents sorted ascending by id with no
/// duplicates. Iteration order is id order everywhere in the pipeline.
class Corpus {
public:
    Corpus() = default;

    /// Sorts by id and validates every document. Throws scip::Error on a
    /// duplicate id, empty id, short content or invalid UTF-8.
    explicit Corpus(std::vector<Document> documents);

    std::span<const Document> documents() const noexcept { return docs_; }
    std::size_t size() const noexcept { return docs_.size(); }
    bool empty() const noexcept { return docs_.empty(); }
    const Document& operator[](std::size_t i) const { return docs_[i]; }

    auto begin() const noexcept { return docs_.begin(); }
    auto end() const noexcept { return docs_.end(); }

    /// nullptr when absent.
    const Document* find(std::string_view id) const noexcept;

    friend bool operator==(const Corpus&, const Corpus&) = default;

private:
    std::vector<Document> docs_;
};

bool is_valid_utf8(std::string_view bytes) noexcept;

/// Reads one JSON object per line with string fields id, path, lang and
/// content. Blank lines are ignored. Any malformed line rejects the whole
/// stream; the error message carries the 1-based line number.
Corpus ingest(std::istream& in);

/// Writes one record per line in id order. Throws scip::Error(Io) when the
/// sink fails.
void write(const Corpus& corpus, std::ostream& out);

std::string encode_record(const Document& doc);

}  // namespace scip
