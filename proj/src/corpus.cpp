// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The SCIP Authors

#include "scip/corpus.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "scip/error.hpp"

namespace scip {
namespace {

using ordered_json = nlohmann::ordered_json;

void validate(const Document& doc, const std::string& where) {
    if (doc.id.empty()) throw Error(ErrorCode::Schema, where + "empty id");
    if (doc.content.size() < kMinContentBytes)
        throw Error(ErrorCode::ContentTooShort,
                    where + "content too short for document '" + doc.id + "' (" +
                        std::to_string(doc.content.size()) + " bytes, minimum " +
                        std::to_string(kMinContentBytes) + ")");
    for (const std::string* field : {&doc.id, &doc.path, &doc.language, &doc.content})
        if (!is_valid_utf8(*field))
            throw Error(ErrorCode::InvalidUtf8, where + "invalid UTF-8 in document '" + doc.id + "'");
}

std::string string_field(const nlohmann::json& obj, const char* name, const std::string& where) {
    auto it = obj.find(name);
    if (it == obj.end()) throw Error(ErrorCode::MissingField, where + "missing field '" + name + "'");
    if (!it->is_string())
        throw Error(ErrorCode::Schema, where + "field '" + name + "' is not a string");
    return it->get<std::string>();
}

}  // namespace

Corpus::Corpus(std::vector<Document> documents) : docs_(std::move(documents)) {
    for (const auto& d : docs_) validate(d, "");
    std::sort(docs_.begin(), docs_.end(),
              [](const Document& a, const Document& b) { return a.id < b.id; });
    auto dup = std::adjacent_find(docs_.begin(), docs_.end(),
                                  [](const Document& a, const Document& b) { return a.id == b.id; });
    if (dup != docs_.end()) throw Error(ErrorCode::DuplicateId, "duplicate id '" + dup->id + "'");
}

const Document* Corpus::find(std::string_view id) const noexcept {
    auto it = std::lower_bound(docs_.begin(), docs_.end(), id,
                               [](const Document& d, std::string_view key) { return d.id < key; });
    return (it != docs_.end() && it->id == id) ? &*it : nullptr;
}

bool is_valid_utf8(std::string_view s) noexcept {
    std::size_t i = 0;
    const std::size_t n = s.size();
    while (i < n) {
        const auto c = static_cast<unsigned char>(s[i]);
        std::size_t len;
        std::uint32_t cp;
        if (c < 0x80) {
            ++i;
            continue;
        } else if ((c & 0xE0) == 0xC0) {
            len = 2;
            cp = c & 0x1F;
        } else if ((c & 0xF0) == 0xE0) {
            len = 3;
            cp = c & 0x0F;
        } else if ((c & 0xF8) == 0xF0) {
            len = 4;
            cp = c & 0x07;
        } else {
            return false;
        }
        if (i + len > n) return false;
        for (std::size_t k = 1; k < len; ++k) {
            const auto cc = static_cast<unsigned char>(s[i + k]);
            if ((cc & 0xC0) != 0x80) return false;
            cp = (cp << 6) | (cc & 0x3F);
        }
        // Overlong forms, surrogates and values past U+10FFFF.
        if ((len == 2 && cp < 0x80) || (len == 3 && cp < 0x800) || (len == 4 && cp < 0x10000) ||
            (cp >= 0xD800 && cp <= 0xDFFF) || cp > 0x10FFFF)
            return false;
        i += len;
    }
    return true;
}

Corpus ingest(std::istream& in) {
    std::vector<Document> docs;
    std::vector<std::size_t> line_of;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.find_first_not_of(" \t") == std::string::npos) continue;
        const std::string where = "line " + std::to_string(line_no) + ": ";
        if (!is_valid_utf8(line)) throw Error(ErrorCode::InvalidUtf8, where + "invalid UTF-8");
        nlohmann::json obj;
        try {
            obj = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw Error(ErrorCode::Schema, where + "malformed record: " + e.what());
        }
        if (!obj.is_object()) throw Error(ErrorCode::Schema, where + "record is not an object");
        Document doc{string_field(obj, "id", where), string_field(obj, "path", where),
                     string_field(obj, "lang", where), string_field(obj, "content", where)};
        validate(doc, where);
        docs.push_back(std::move(doc));
        line_of.push_back(line_no);
    }
    if (in.bad()) throw Error(ErrorCode::Io, "read failure");

    std::vector<std::size_t> order(docs.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return docs[a].id < docs[b].id; });
    for (std::size_t i = 1; i < order.size(); ++i) {
        if (docs[order[i]].id == docs[order[i - 1]].id) {
            const auto later = std::max(order[i], order[i - 1]);
            throw Error(ErrorCode::DuplicateId, "line " + std::to_string(line_of[later]) +
                                                    ": duplicate id '" + docs[later].id + "'");
        }
    }
    return Corpus(std::move(docs));
}

std::string encode_record(const Document& doc) {
    ordered_json obj;
    obj["id"] = doc.id;
    obj["path"] = doc.path;
    obj["lang"] = doc.language;
    obj["content"] = doc.content;
    return obj.dump(-1, ' ', false, nlohmann::json::error_handler_t::strict);
}

void write(const Corpus& corpus, std::ostream& out) {
    for (const auto& doc : corpus) out << encode_record(doc) << '\n';
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "failed to write corpus");
}

}  // namespace scip
