// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The SCIP Authors

#include "scip/corrupt.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <istream>
#include <map>
#include <ostream>
#include <set>

#include <json.hpp>

#include "scip/error.hpp"
#include "scip/parallel.hpp"
#include "scip/rng.hpp"
#include "scip/tokenize.hpp"

namespace scip {
namespace {

void check_rate(double rate) {
    if (!(rate > 0.0 && rate <= 1.0))
        throw Error(ErrorCode::InvalidFraction, "corruption rate must be in (0, 1], got " + std::to_string(rate));
}

// Number of sites to corrupt: round(rate * eligible), at least one.
std::size_t site_budget(std::size_t eligible, double rate) {
    if (eligible == 0) return 0;
    const auto m = static_cast<std::size_t>(std::llround(rate * static_cast<double>(eligible)));
    return std::clamp<std::size_t>(m, 1, eligible);
}

std::vector<std::size_t> choose_sites(std::size_t eligible, double rate, Rng& rng) {
    auto picked = rng.sample_indices(eligible, site_budget(eligible, rate));
    std::sort(picked.begin(), picked.end());
    return picked;
}

CorruptionPair make_pair(CorruptionKind kind, std::string_view content, std::vector<Edit> edits) {
    std::sort(edits.begin(), edits.end(), [](const Edit& a, const Edit& b) { return a.offset < b.offset; });
    CorruptionPair pair;
    pair.kind = kind;
    pair.original = std::string(content);
    pair.corrupted = apply_edits(content, edits);
    pair.sites_corrupted = edits.size();
    pair.edits = std::move(edits);
    return pair;
}

// Index of the previous token that is not whitespace, or npos.
std::size_t prev_significant(const std::vector<Token>& toks, std::size_t i) {
    while (i > 0) {
        --i;
        if (toks[i].kind != TokenKind::Space) return i;
    }
    return std::string_view::npos;
}

std::size_t next_significant(const std::vector<Token>& toks, std::size_t i) {
    for (++i; i < toks.size(); ++i)
        if (toks[i].kind != TokenKind::Space) return i;
    return toks.size();
}

bool is_augmented_assign(std::string_view op) {
    static constexpr std::array<std::string_view, 13> kAug = {
        "+=", "-=", "*=", "/=", "%=", "&=", "|=", "^=", "@=", "**=", "//=", ">>=", "<<="};
    return std::find(kAug.begin(), kAug.end(), op) != kAug.end();
}

}  // namespace

std::string_view kind_name(CorruptionKind kind) noexcept {
    switch (kind) {
        case CorruptionKind::RemoveClosedBrackets: return "remove_closed_brackets";
        case CorruptionKind::RenameVariables: return "rename_variables";
        case CorruptionKind::AlterConditionals: return "alter_conditionals";
        case CorruptionKind::OffsetArrayIndices: return "offset_array_indices";
    }
    return "unknown";
}

CorruptionKind parse_kind(std::string_view name) {
    for (auto k : kAllCorruptionKinds)
        if (kind_name(k) == name) return k;
    throw Error(ErrorCode::InvalidArgument, "unknown corruption kind '" + std::string(name) + "'");
}

std::string apply_edits(std::string_view text, std::span<const Edit> edits) {
    std::string out;
    out.reserve(text.size() + 16);
    std::size_t cursor = 0;
    for (const auto& e : edits) {
        out.append(text.substr(cursor, e.offset - cursor));
        out.append(e.insert);
        cursor = e.offset + e.erase;
    }
    out.append(text.substr(cursor));
    return out;
}

CorruptionPair remove_closed_brackets(std::string_view content, double rate, std::uint64_t seed) {
    check_rate(rate);
    std::vector<std::size_t> sites;
    for (std::size_t i = 0; i < content.size(); ++i)
        if (content[i] == ')' || content[i] == ']' || content[i] == '}') sites.push_back(i);

    Rng rng(seed);
    auto picked = choose_sites(sites.size(), rate, rng);

    constexpr std::string_view kOpen = "([{";
    constexpr std::string_view kClose = ")]}";
    std::array<long, 3> balance{};
    for (char c : content) {
        if (auto f = kOpen.find(c); f != std::string_view::npos) ++balance[f];
        if (auto f = kClose.find(c); f != std::string_view::npos) --balance[f];
    }
    for (auto s : picked) ++balance[kClose.find(content[sites[s]])];
    const bool all_balanced = std::all_of(balance.begin(), balance.end(), [](long b) { return b == 0; });
    if (all_balanced && picked.size() < sites.size()) {
        // Delete the first closer not already chosen.
        std::vector<bool> taken(sites.size(), false);
        for (auto s : picked) taken[s] = true;
        auto extra = static_cast<std::size_t>(std::find(taken.begin(), taken.end(), false) - taken.begin());
        picked.push_back(extra);
    }

    std::vector<Edit> edits;
    edits.reserve(picked.size());
    for (auto s : picked) edits.push_back(Edit{sites[s], 1, {}});
    return make_pair(CorruptionKind::RemoveClosedBrackets, content, std::move(edits));
}

CorruptionPair rename_variables(std::string_view content, double rate, std::uint64_t seed) {
    check_rate(rate);
    const auto toks = tokenize(content);

    // Walk tokens tracking statement starts: first token of a line outside
    // brackets, or the first token after ';'.
    struct Declared {
        std::string name;
        std::size_t token;
    };
    std::vector<Declared> declarations;
    std::map<std::string, std::size_t, std::less<>> first_decl;
    std::set<std::string, std::less<>> identifiers;
    long depth = 0;
    bool at_statement_start = true;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        const auto& t = toks[i];
        const auto text = t.text(content);
        switch (t.kind) {
            case TokenKind::Space:
            case TokenKind::Comment:
                continue;
            case TokenKind::Newline:
                if (depth == 0) at_statement_start = true;
                continue;
            case TokenKind::Identifier: {
                identifiers.emplace(text);
                if (at_statement_start && !is_keyword(text) && !first_decl.contains(text)) {
                    const auto j = next_significant(toks, i);
                    if (j < toks.size() && toks[j].kind == TokenKind::Operator) {
                        const auto op = toks[j].text(content);
                        if (op == "=" || is_augmented_assign(op)) {
                            first_decl.emplace(std::string(text), i);
                            declarations.push_back({std::string(text), i});
                        }
                    }
                }
                break;
            }
            case TokenKind::Operator:
                if (text == "(" || text == "[" || text == "{") ++depth;
                if (text == ")" || text == "]" || text == "}") depth = std::max(0L, depth - 1);
                if (text == ";" && depth == 0) {
                    at_statement_start = true;
                    continue;
                }
                break;
            default:
                break;
        }
        at_statement_start = false;
    }

    // Reads of each declared name after its declaration. Attribute accesses
    // (`obj.name`) and plain re-assignment targets (`name = ...`, `f(name=1)`)
    // are not reads.
    auto usages_of = [&](const Declared& d) {
        std::vector<std::size_t> uses;
        for (std::size_t i = d.token + 1; i < toks.size(); ++i) {
            if (toks[i].kind != TokenKind::Identifier || toks[i].text(content) != d.name) continue;
            const auto p = prev_significant(toks, i);
            if (p != std::string_view::npos && toks[p].text(content) == ".") continue;
            const auto nx = next_significant(toks, i);
            if (nx < toks.size() && toks[nx].text(content) == "=") continue;
            uses.push_back(i);
        }
        return uses;
    };

    std::vector<std::pair<std::size_t, std::vector<std::size_t>>> candidates;
    for (std::size_t d = 0; d < declarations.size(); ++d) {
        auto uses = usages_of(declarations[d]);
        if (!uses.empty()) candidates.emplace_back(d, std::move(uses));
    }
    if (candidates.empty()) return make_pair(CorruptionKind::RenameVariables, content, {});

    Rng rng(seed);
    const auto& [decl_index, uses] = candidates[rng.below(candidates.size())];
    const auto& target = declarations[decl_index].name;

    std::string fresh;
    static constexpr char kHex[] = "0123456789abcdef";
    do {
        const auto bits = rng.next();
        fresh = target + "_";
        for (int s = 12; s >= 0; s -= 4) fresh.push_back(kHex[(bits >> s) & 0xF]);
    } while (identifiers.contains(fresh) || content.find(fresh) != std::string_view::npos);

    std::vector<Edit> edits;
    for (auto u : choose_sites(uses.size(), rate, rng))
        edits.push_back(Edit{toks[uses[u]].offset, toks[uses[u]].length, fresh});
    return make_pair(CorruptionKind::RenameVariables, content, std::move(edits));
}

CorruptionPair alter_conditionals(std::string_view content, double rate, std::uint64_t seed) {
    check_rate(rate);
    static const std::map<std::string_view, std::string_view> kNegation = {
        {"==", "!="}, {"!=", "=="}, {"<", ">="}, {">=", "<"}, {">", "<="}, {"<=", ">"}};
    const auto toks = tokenize(content);
    std::vector<std::size_t> sites;
    for (std::size_t i = 0; i < toks.size(); ++i)
        if (toks[i].kind == TokenKind::Operator && kNegation.contains(toks[i].text(content))) sites.push_back(i);

    Rng rng(seed);
    std::vector<Edit> edits;
    for (auto s : choose_sites(sites.size(), rate, rng)) {
        const auto& t = toks[sites[s]];
        edits.push_back(Edit{t.offset, t.length, std::string(kNegation.at(t.text(content)))});
    }
    return make_pair(CorruptionKind::AlterConditionals, content, std::move(edits));
}

CorruptionPair offset_array_indices(std::string_view content, double rate, std::uint64_t seed) {
    check_rate(rate);
    const auto toks = tokenize(content);

    // Matching closer for every opener, by token index.
    std::vector<std::size_t> match(toks.size(), toks.size());
    std::vector<std::size_t> stack;
    for (std::size_t i = 0; i < toks.size(); ++i) {
        if (toks[i].kind != TokenKind::Operator) continue;
        const auto text = toks[i].text(content);
        if (text == "(" || text == "[" || text == "{") {
            stack.push_back(i);
        } else if (text == ")" || text == "]" || text == "}") {
            const char want = text == ")" ? '(' : text == "]" ? '[' : '{';
            if (!stack.empty() && content[toks[stack.back()].offset] == want) {
                match[stack.back()] = i;
                stack.pop_back();
            }
        }
    }

    // A subscript is `[` directly after a name, a closing `]` or `)`, with a
    // matched `]` and a non-empty body.
    std::vector<std::size_t> closers;
    for (std::size_t i = 1; i < toks.size(); ++i) {
        if (toks[i].kind != TokenKind::Operator || toks[i].text(content) != "[") continue;
        if (match[i] == toks.size()) continue;
        const auto& prev = toks[i - 1];
        const auto prev_text = prev.text(content);
        const bool subscripted = (prev.kind == TokenKind::Identifier && !is_keyword(prev_text)) ||
                                 (prev.kind == TokenKind::Operator && (prev_text == "]" || prev_text == ")"));
        if (!subscripted) continue;
        if (next_significant(toks, i) == match[i]) continue;
        closers.push_back(toks[match[i]].offset);
    }

    Rng rng(seed);
    std::vector<Edit> edits;
    for (auto s : choose_sites(closers.size(), rate, rng)) edits.push_back(Edit{closers[s], 0, "+1"});
    return make_pair(CorruptionKind::OffsetArrayIndices, content, std::move(edits));
}

CorruptionPair apply_corruption(const CorruptionOperator& op, std::string_view content) {
    switch (op.kind) {
        case CorruptionKind::RemoveClosedBrackets: return remove_closed_brackets(content, op.rate, op.seed);
        case CorruptionKind::RenameVariables: return rename_variables(content, op.rate, op.seed);
        case CorruptionKind::AlterConditionals: return alter_conditionals(content, op.rate, op.seed);
        case CorruptionKind::OffsetArrayIndices: return offset_array_indices(content, op.rate, op.seed);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown corruption kind");
}

std::vector<CorruptionPair> corrupt_corpus(const Corpus& corpus, const CorruptionOperator& op, unsigned threads) {
    check_rate(op.rate);
    std::vector<CorruptionPair> pairs(corpus.size());
    parallel_for(corpus.size(), threads, [&](std::size_t i) {
        const auto& doc = corpus[i];
        CorruptionOperator local = op;
        local.seed = derive_seed(op.seed, doc.id);
        pairs[i] = apply_corruption(local, doc.content);
        pairs[i].doc_id = doc.id;
    });
    return pairs;
}

void write_pairs(std::span<const CorruptionPair> pairs, std::ostream& out) {
    for (const auto& p : pairs) {
        nlohmann::ordered_json rec;
        rec["doc_id"] = p.doc_id;
        rec["kind"] = kind_name(p.kind);
        rec["sites_corrupted"] = p.sites_corrupted;
        rec["corrupted"] = p.corrupted;
        out << rec.dump(-1, ' ', false, nlohmann::json::error_handler_t::strict) << '\n';
    }
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "failed to write corruption pairs");
}

std::vector<CorruptionPair> read_pairs(std::istream& in, const Corpus* corpus) {
    std::vector<CorruptionPair> pairs;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const std::string where = "line " + std::to_string(line_no) + ": ";
        nlohmann::json rec;
        try {
            rec = nlohmann::json::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw Error(ErrorCode::Schema, where + "malformed pair record: " + e.what());
        }
        for (const char* field : {"doc_id", "kind", "sites_corrupted", "corrupted"})
            if (!rec.is_object() || !rec.contains(field))
                throw Error(ErrorCode::MissingField, where + "missing field '" + field + "'");
        CorruptionPair p;
        try {
            p.doc_id = rec["doc_id"].get<std::string>();
            p.kind = parse_kind(rec["kind"].get<std::string>());
            p.sites_corrupted = rec["sites_corrupted"].get<std::size_t>();
            p.corrupted = rec["corrupted"].get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::Schema, where + e.what());
        }
        if (corpus) {
            const auto* doc = corpus->find(p.doc_id);
            if (!doc) throw Error(ErrorCode::IdMismatch, where + "unknown doc_id '" + p.doc_id + "'");
            p.original = doc->content;
        }
        pairs.push_back(std::move(p));
    }
    return pairs;
}

}  // namespace scip
