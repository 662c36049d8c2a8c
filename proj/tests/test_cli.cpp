// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The SCIP Authors

#include <gtest/gtest.h>

#include <algorithm>
#include <fstream>

#include "cli_support.hpp"

namespace {

using namespace scip::testing;

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

class CliPipeline : public ::testing::Test {
protected:
    static void SetUpTestSuite() {
        tmp_ = new TempDir();
        auto ok = [](const std::vector<std::string>& a) {
            const auto r = run_scip(*tmp_, a);
            ASSERT_EQ(r.status, 0) << r.err;
        };
        ok({"ingest", "--in", SAMPLE_CORPUS, "--out", f("corpus.jsonl")});
        ok({"corrupt", "--corpus", f("corpus.jsonl"), "--kind", "remove_closed_brackets", "--seed", "3", "--out",
            f("brackets.pairs.jsonl")});
        ok({"embed", "--corpus", f("corpus.jsonl"), "--dim", "128", "--out", f("orig.emb")});
        ok({"embed", "--pairs", f("brackets.pairs.jsonl"), "--dim", "128", "--out", f("brackets.emb")});
        ok({"cluster", "--emb", f("orig.emb"), "--k", "20", "--seed", "1", "--out", f("model")});
        ok({"shift", "--model", f("model"), "--orig", f("orig.emb"), "--corrupted", f("brackets.emb"), "--kind",
            "remove_closed_brackets", "--out", f("shift.jsonl")});
        ok({"prune", "--model", f("model"), "--method", "scip", "--p", "0.2", "--corpus", f("corpus.jsonl"),
            "--emit-kept-corpus", f("kept.jsonl"), "--out", f("prune.jsonl")});
    }
    static void TearDownTestSuite() {
        delete tmp_;
        tmp_ = nullptr;
    }
    static std::string f(const std::string& name) { return tmp_->file(name); }
    static TempDir* tmp_;
};

TempDir* CliPipeline::tmp_ = nullptr;

TEST_F(CliPipeline, IngestIsCanonical) {
    EXPECT_EQ(read_file(f("corpus.jsonl")), read_file(SAMPLE_CORPUS));
}

TEST_F(CliPipeline, ScipPrunesExactBudget) {
    const auto report = read_file(f("prune.jsonl"));
    EXPECT_EQ(count_lines(report), 201u);
    EXPECT_NE(report.find("\"type\":\"summary\""), std::string::npos);
    EXPECT_EQ(count_lines(read_file(f("kept.jsonl"))), 800u);
}

TEST_F(CliPipeline, ShiftWritesTable) {
    const auto table = read_file(f("shift.jsonl.table.txt"));
    EXPECT_NE(table.find("Changed cluster"), std::string::npos);
    EXPECT_EQ(count_lines(read_file(f("shift.jsonl"))), 1001u);
}

TEST_F(CliPipeline, ManifestReplayIsByteIdentical) {
    for (const std::string out : {"brackets.pairs.jsonl", "orig.emb", "brackets.emb", "shift.jsonl", "prune.jsonl"}) {
        const auto before = read_file(f(out));
        const auto args = manifest_args(f(out));
        const auto r = run_scip(*tmp_, args);
        ASSERT_EQ(r.status, 0) << out << ": " << r.err;
        EXPECT_EQ(read_file(f(out)), before) << out;
    }
    const auto centroids = read_file(f("model.centroids.emb"));
    const auto assign = read_file(f("model.assign.jsonl"));
    ASSERT_EQ(run_scip(*tmp_, manifest_args(f("model"))).status, 0);
    EXPECT_EQ(read_file(f("model.centroids.emb")), centroids);
    EXPECT_EQ(read_file(f("model.assign.jsonl")), assign);
}

TEST_F(CliPipeline, OtherMethodsRun) {
    for (const std::string m : {"random", "ssl_prototypes", "semdedup", "d4"}) {
        const auto out = f("prune-" + m + ".jsonl");
        const auto r = run_scip(*tmp_, {"prune", "--model", f("model"), "--emb", f("orig.emb"), "--method", m,
                                        "--p", "0.1", "--out", out});
        ASSERT_EQ(r.status, 0) << m << ": " << r.err;
        EXPECT_EQ(count_lines(read_file(out)), 101u) << m;
    }
}

TEST(Cli, PassAtKTable) {
    TempDir tmp;
    {
        std::ofstream t(tmp.file("tallies.txt"));
        t << "q1 5 5\n";
    }
    const auto r = run_scip(tmp, {"passk", "--tallies", tmp.file("tallies.txt"), "--k", "1"});
    ASSERT_EQ(r.status, 0) << r.err;
    EXPECT_EQ(r.out, "k\tpass@k\n1\t1.0\n");
}

TEST(Cli, ErrorsAreJsonWithExitCodes) {
    TempDir tmp;
    auto r = run_scip(tmp, {"ingest", "--in", tmp.file("missing.jsonl"), "--out", tmp.file("x.jsonl")});
    EXPECT_EQ(r.status, 1);
    const auto j = nlohmann::json::parse(r.err);
    EXPECT_EQ(j.at("error"), "missing_file");
    EXPECT_TRUE(j.contains("message"));

    {
        std::ofstream bad(tmp.file("bad.jsonl"));
        bad << "{\"id\":\"a\",\"path\":\"a.py\",\"lang\":\"python\",\"content\":\"ab\"}\n";
    }
    r = run_scip(tmp, {"ingest", "--in", tmp.file("bad.jsonl"), "--out", tmp.file("x.jsonl")});
    EXPECT_EQ(r.status, 1);
    EXPECT_EQ(nlohmann::json::parse(r.err).at("error"), "content_too_short");

    r = run_scip(tmp, {"prune", "--bogus"});
    EXPECT_EQ(r.status, 2);
    EXPECT_EQ(nlohmann::json::parse(r.err).at("error"), "usage");

    r = run_scip(tmp, {"passk", "--tallies", tmp.file("t"), "--k", "1"});
    EXPECT_EQ(r.status, 1);
}

}  // namespace
