// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The SCIP Authors

#include <gtest/gtest.h>

#include <algorithm>
#include <array>
#include <random>
#include <regex>
#include <set>
#include <sstream>

#include "scip/corrupt.hpp"
#include "scip/error.hpp"
#include "scip/tokenize.hpp"
#include "oracles.hpp"

namespace {

using namespace scip;
using namespace scip::testing;

void expect_local(const CorruptionPair& p) {
    EXPECT_EQ(apply_edits(p.original, p.edits), p.corrupted);
    EXPECT_EQ(p.edits.size(), p.sites_corrupted);
    for (std::size_t i = 1; i < p.edits.size(); ++i)
        EXPECT_LE(p.edits[i - 1].offset + p.edits[i - 1].erase, p.edits[i].offset);
}

TEST(Tokenize, TilesInputAndMasksLiterals) {
    const std::string src = "if a == b:  # x < y\n    s = 'p[0] != q'\n    t = f\"{v}\"\n";
    const auto toks = tokenize(src);
    std::size_t cursor = 0;
    for (const auto& t : toks) {
        EXPECT_EQ(t.offset, cursor);
        cursor += t.length;
    }
    EXPECT_EQ(cursor, src.size());
    std::vector<std::string> ops;
    for (const auto& t : toks)
        if (t.kind == TokenKind::Operator) ops.emplace_back(t.text(src));
    EXPECT_EQ(ops, (std::vector<std::string>{"==", ":", "=", "="}));
}

TEST(Tokenize, TripleQuotedAndLongestMatch) {
    const std::string src = "x = \"\"\"a == b\n]\"\"\"\ny <<= 2 -> z";
    std::vector<std::string> ops;
    for (const auto& t : tokenize(src))
        if (t.kind == TokenKind::Operator) ops.emplace_back(t.text(src));
    EXPECT_EQ(ops, (std::vector<std::string>{"=", "<<=", "->"}));
}

// ---- remove_closed_brackets ----

TEST(RemoveClosedBrackets, ReferenceExample) {
    const auto p = remove_closed_brackets("for i in range(10):", 1.0, 0);
    EXPECT_EQ(p.corrupted, "for i in range(10:");
    EXPECT_EQ(p.sites_corrupted, 1u);
}

TEST(RemoveClosedBrackets, NoSiteIsNoOp) {
    const auto p = remove_closed_brackets("x = 1", 0.5, 3);
    EXPECT_EQ(p.corrupted, "x = 1");
    EXPECT_TRUE(p.no_op());
}

TEST(RemoveClosedBrackets, AllClosersAtFullRate) {
    EXPECT_EQ(remove_closed_brackets("f(a[0])", 1.0, 0).corrupted, "f(a[0");
}

TEST(RemoveClosedBrackets, AtLeastOneSiteAtTinyRate) {
    const auto p = remove_closed_brackets("f(a[0]) + g({})", 0.01, 7);
    EXPECT_GE(p.sites_corrupted, 1u);
    expect_local(p);
}

TEST(RemoveClosedBrackets, RateValidated) {
    EXPECT_THROW(remove_closed_brackets("f()", 0.0, 0), Error);
    EXPECT_THROW(remove_closed_brackets("f()", 1.5, 0), Error);
}

TEST(RemoveClosedBrackets, PropertySyntaxBreakingAndLocal) {
    std::mt19937_64 rng(5);
    const std::string alphabet = "()[]{}ab \n'\"#";
    for (int trial = 0; trial < 2000; ++trial) {
        std::string s(3 + rng() % 30, ' ');
        for (auto& c : s) c = alphabet[rng() % alphabet.size()];
        const double rate = 0.05 + 0.95 * static_cast<double>(rng() % 1000) / 1000.0;
        const auto p = remove_closed_brackets(s, rate, rng());
        expect_local(p);
        const auto eligible = static_cast<std::size_t>(std::count_if(s.begin(), s.end(), [](char c) {
            return c == ')' || c == ']' || c == '}';
        }));
        EXPECT_EQ(p.no_op(), eligible == 0) << s;
        for (const auto& e : p.edits) {
            EXPECT_EQ(e.erase, 1u);
            EXPECT_TRUE(e.insert.empty());
            EXPECT_NE(std::string(")]}").find(s[e.offset]), std::string::npos);
        }
        const bool has_opener = s.find_first_of("([{") != std::string::npos;
        // Only a file with no openers at all, stripped of every closer, can
        // end up balanced.
        if (!p.no_op() && (has_opener || p.sites_corrupted < eligible))
            EXPECT_TRUE(bracket_counts_unbalanced(p.corrupted)) << s;
    }
}

// ---- rename_variables ----

TEST(RenameVariables, CounterExampleKeepsDeclaration) {
    const std::string src = "counter = 0\ncounter += 1\n";
    const auto p = rename_variables(src, 0.5, 11);
    ASSERT_EQ(p.sites_corrupted, 1u);
    EXPECT_TRUE(p.corrupted.starts_with("counter = 0\ncounter_"));
    EXPECT_TRUE(p.corrupted.ends_with(" += 1\n"));
    const auto bad = undeclared_reads(p.corrupted);
    ASSERT_EQ(bad.size(), 1u);
    EXPECT_TRUE(std::regex_match(*bad.begin(), std::regex("counter_[0-9a-f]{4}")));
    EXPECT_TRUE(undeclared_reads(src).empty());
}

TEST(RenameVariables, DeclaredNeverUsedIsNoOp) {
    const auto p = rename_variables("x = 1", 1.0, 0);
    EXPECT_TRUE(p.no_op());
    EXPECT_EQ(p.corrupted, "x = 1");
}

TEST(RenameVariables, BothUsagesShareFreshName) {
    const std::string src = "n = 2\ny = n + n";
    const auto p = rename_variables(src, 1.0, 0);
    ASSERT_EQ(p.sites_corrupted, 2u);
    EXPECT_EQ(p.edits[0].insert, p.edits[1].insert);
    const auto fresh = p.edits[0].insert;
    EXPECT_EQ(p.corrupted, "n = 2\ny = " + fresh + " + " + fresh);
    EXPECT_EQ(undeclared_reads(p.corrupted), std::set<std::string>{fresh});
}

TEST(RenameVariables, FreshNameAbsentFromFile) {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const std::string src = "a = 1\nb = a * 2\nc = a + b\nprint(a, b, c)\n";
        const auto p = rename_variables(src, 0.5, seed);
        ASSERT_FALSE(p.no_op());
        EXPECT_EQ(src.find(p.edits[0].insert), std::string::npos);
        expect_local(p);
        EXPECT_FALSE(undeclared_reads(p.corrupted).empty()) << p.corrupted;
    }
}

TEST(RenameVariables, IgnoresAttributesAndLiterals) {
    const std::string src = "x = 1\nobj.x = 3\ns = 'x'\n# x\nf(x=2)\n";
    EXPECT_TRUE(rename_variables(src, 1.0, 0).no_op());
}

// ---- alter_conditionals ----

TEST(AlterConditionals, ReferenceExample) {
    EXPECT_EQ(alter_conditionals("if a == b:", 1.0, 0).corrupted, "if a != b:");
    EXPECT_EQ(alter_conditionals("if a == b:", 0.5, 42).corrupted, "if a != b:");
}

TEST(AlterConditionals, LiteralUntouched) {
    const auto p = alter_conditionals("s = 'a == b'", 1.0, 0);
    EXPECT_TRUE(p.no_op());
    EXPECT_EQ(p.corrupted, "s = 'a == b'");
}

TEST(AlterConditionals, EverySiteNegated) {
    EXPECT_EQ(alter_conditionals("if x < 0 and y > 1:", 1.0, 0).corrupted, "if x >= 0 and y <= 1:");
    EXPECT_EQ(alter_conditionals("a != b or c >= d or e <= f", 1.0, 0).corrupted, "a == b or c < d or e > f");
}

TEST(AlterConditionals, ShiftsArrowsAndIdentityUntouched) {
    EXPECT_TRUE(alter_conditionals("a << 2; b >>= 1; f = lambda: 0 -> None; x === y", 1.0, 0).no_op());
}

// ---- offset_array_indices ----

TEST(OffsetArrayIndices, ReferenceExample) {
    EXPECT_EQ(offset_array_indices("value = array[i]", 1.0, 0).corrupted, "value = array[i+1]");
}

TEST(OffsetArrayIndices, CallIsNotSubscript) {
    EXPECT_TRUE(offset_array_indices("value = f(i)", 1.0, 0).no_op());
}

TEST(OffsetArrayIndices, ChainedSubscripts) {
    EXPECT_EQ(offset_array_indices("a[i][j]", 1.0, 0).corrupted, "a[i+1][j+1]");
}

TEST(OffsetArrayIndices, ListLiteralsAndEmptyBracketsSkipped) {
    EXPECT_TRUE(offset_array_indices("x = [1, 2]\nfor v in [3]:\n    y = a[]\n", 1.0, 0).no_op());
}

TEST(OffsetArrayIndices, NestedSubscripts) {
    EXPECT_EQ(offset_array_indices("a[b[i]]", 1.0, 0).corrupted, "a[b[i+1]+1]");
}

// ---- literal safety property ----

TEST(CorruptionProperty, ContentOperatorsNeverTouchLiteralsOrComments) {
    static const std::vector<std::string> atoms = {
        "a[i]", " == ", " < ", "x", " >= ", "\"a == b[0]\"", "'x < y[1]'", "# c > d[2]\n", "\n", "(k)",
        "m[j][k]", " != ", "'\\' > '", " <= ", "f(z)", " = "};
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 1500; ++trial) {
        std::string s;
        const auto n = 1 + rng() % 12;
        for (std::size_t i = 0; i < n; ++i) s += atoms[rng() % atoms.size()];
        const auto ranges = protected_ranges(s);
        for (auto kind : {CorruptionKind::AlterConditionals, CorruptionKind::OffsetArrayIndices}) {
            const auto p = apply_corruption({kind, 1.0, rng()}, s);
            expect_local(p);
            for (const auto& e : p.edits)
                for (const auto& [lo, hi] : ranges)
                    EXPECT_FALSE(e.offset >= lo && e.offset < hi) << kind_name(kind) << " edited a literal in: " << s;
        }
    }
}

// ---- corpus level ----

Corpus three_docs() {
    return Corpus({Document{"c", "c.py", "python", "print(x[0])"}, Document{"a", "a.py", "python", "y = f(g(1))"},
                   Document{"b", "b.py", "python", "z = 1 + 2"}});
}

TEST(CorruptCorpus, OnePairPerDocInIdOrder) {
    const auto pairs = corrupt_corpus(three_docs(), {CorruptionKind::RemoveClosedBrackets, 0.5, 9});
    ASSERT_EQ(pairs.size(), 3u);
    EXPECT_EQ(pairs[0].doc_id, "a");
    EXPECT_EQ(pairs[1].doc_id, "b");
    EXPECT_EQ(pairs[2].doc_id, "c");
    EXPECT_FALSE(pairs[0].no_op());
    EXPECT_TRUE(pairs[1].no_op());
    EXPECT_EQ(pairs[1].corrupted, "z = 1 + 2");
    EXPECT_FALSE(pairs[2].no_op());
}

TEST(CorruptCorpus, DeterministicAcrossRunsAndThreads) {
    const auto corpus = three_docs();
    for (auto kind : kAllCorruptionKinds) {
        const CorruptionOperator op{kind, 0.5, 1234};
        const auto a = corrupt_corpus(corpus, op, 1);
        EXPECT_EQ(a, corrupt_corpus(corpus, op, 1));
        EXPECT_EQ(a, corrupt_corpus(corpus, op, 3));
        std::ostringstream x, y;
        write_pairs(a, x);
        write_pairs(corrupt_corpus(corpus, op, 2), y);
        EXPECT_EQ(x.str(), y.str());
    }
}

TEST(CorruptCorpus, PerDocumentSeedIndependentOfNeighbours) {
    const auto full = corrupt_corpus(three_docs(), {CorruptionKind::RemoveClosedBrackets, 0.5, 5});
    const Corpus only_c({Document{"c", "c.py", "python", "print(x[0])"}});
    EXPECT_EQ(corrupt_corpus(only_c, {CorruptionKind::RemoveClosedBrackets, 0.5, 5})[0], full[2]);
}

TEST(Pairs, WriteReadKeepsRecordFields) {
    const auto corpus = three_docs();
    const auto pairs = corrupt_corpus(corpus, {CorruptionKind::RemoveClosedBrackets, 1.0, 1});
    std::ostringstream out;
    write_pairs(pairs, out);
    std::istringstream in(out.str());
    const auto back = read_pairs(in, &corpus);
    ASSERT_EQ(back.size(), pairs.size());
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        EXPECT_EQ(back[i].doc_id, pairs[i].doc_id);
        EXPECT_EQ(back[i].kind, pairs[i].kind);
        EXPECT_EQ(back[i].sites_corrupted, pairs[i].sites_corrupted);
        EXPECT_EQ(back[i].corrupted, pairs[i].corrupted);
        EXPECT_EQ(back[i].original, pairs[i].original);
    }
}

TEST(Pairs, UnknownDocIdAgainstCorpus) {
    const auto corpus = three_docs();
    std::istringstream in(R"({"doc_id":"zz","kind":"remove_closed_brackets","sites_corrupted":0,"corrupted":"abc"})");
    EXPECT_THROW(read_pairs(in, &corpus), Error);
}

TEST(Kinds, NamesRoundTrip) {
    for (auto k : kAllCorruptionKinds) EXPECT_EQ(parse_kind(kind_name(k)), k);
    EXPECT_THROW(parse_kind("shuffle_lines"), Error);
}

}  // namespace
