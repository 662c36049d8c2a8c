// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The SCIP Authors

// scip: corpus ingestion, synthetic corruption, embedding, clustering,
// corruption-shift analysis, pruning and pass@k from the command line.

#include <charconv>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "scip/analyze.hpp"
#include "scip/cluster.hpp"
#include "scip/corpus.hpp"
#include "scip/corrupt.hpp"
#include "scip/embed.hpp"
#include "scip/error.hpp"
#include "scip/manifest.hpp"
#include "scip/passk.hpp"
#include "scip/prune.hpp"

namespace {

using namespace scip;

std::string num(double v) { return format_probability(v); }

std::ifstream open_in(const std::string& path) {
    if (!std::filesystem::exists(path)) throw Error(ErrorCode::MissingFile, "no such file: " + path);
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorCode::Io, "cannot open " + path);
    return in;
}

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot open " + path + " for writing");
    return out;
}

void write_manifest(const RunManifest& m, const std::string& primary_output) {
    auto out = open_out(manifest_path_for(primary_output));
    out << to_json(m);
    if (!out) throw Error(ErrorCode::Io, "failed to write manifest");
}

Corpus read_corpus(const std::string& path) {
    auto in = open_in(path);
    return ingest(in);
}

EmbeddingSet read_embeddings(const std::string& path) {
    auto in = open_in(path);
    return load_embeddings(in);
}

std::string centroids_path(const std::string& prefix) { return prefix + ".centroids.emb"; }
std::string assignments_path(const std::string& prefix) { return prefix + ".assign.jsonl"; }

ClusterModel read_model(const std::string& prefix) {
    auto c = open_in(centroids_path(prefix));
    auto a = open_in(assignments_path(prefix));
    return load_model(c, a);
}

struct Options {
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());

    // ingest
    std::string in_path, out_path;
    // corrupt
    std::string corpus_path, kind = "remove_closed_brackets";
    double rate = kDefaultCorruptionRate;
    std::uint64_t seed = 0;
    // embed
    std::string pairs_path, external_path;
    std::size_t dim = kDefaultEmbeddingDim;
    // cluster
    std::string emb_path;
    std::size_t k = kDefaultClusters, max_iters = 100;
    double tol = 1e-6;
    // shift
    std::string model_path, orig_emb;
    std::vector<std::string> corrupt_embs, kinds;
    double threshold = kDefaultShiftThreshold;
    // prune
    std::string method = "scip", kept_corpus_path;
    double p = kDefaultPruneFraction, alpha = kDefaultAlpha, d4_share = kDefaultD4DedupShare;
    std::optional<double> tau;
    // passk
    std::string tallies_path;
    std::vector<std::uint64_t> k_list{1};
};

int cmd_ingest(const Options& o) {
    const auto corpus = read_corpus(o.in_path);
    auto out = open_out(o.out_path);
    write(corpus, out);
    RunManifest m;
    m.command = "ingest";
    m.config["documents"] = corpus.size();
    m.inputs = {{"corpus", o.in_path}};
    m.outputs = {{"corpus", o.out_path}};
    m.args = {"ingest", "--in", o.in_path, "--out", o.out_path};
    write_manifest(m, o.out_path);
    return 0;
}

int cmd_corrupt(const Options& o) {
    const auto corpus = read_corpus(o.corpus_path);
    CorruptionOperator op{parse_kind(o.kind), o.rate, o.seed};
    const auto pairs = corrupt_corpus(corpus, op, o.threads);
    auto out = open_out(o.out_path);
    write_pairs(pairs, out);
    std::size_t no_ops = 0;
    for (const auto& p : pairs) no_ops += p.no_op();
    RunManifest m;
    m.command = "corrupt";
    m.seed = o.seed;
    m.config["kind"] = o.kind;
    m.config["rate"] = o.rate;
    m.config["pairs"] = pairs.size();
    m.config["no_op_pairs"] = no_ops;
    m.inputs = {{"corpus", o.corpus_path}};
    m.outputs = {{"pairs", o.out_path}};
    m.args = {"corrupt", "--corpus", o.corpus_path, "--kind", o.kind, "--rate", num(o.rate),
              "--seed", std::to_string(o.seed), "--out", o.out_path};
    write_manifest(m, o.out_path);
    return 0;
}

int cmd_embed(const Options& o) {
    const int sources = !o.corpus_path.empty() + !o.pairs_path.empty();
    if (sources != 1) throw Error(ErrorCode::InvalidArgument, "embed needs exactly one of --corpus or --pairs");
    RunManifest m;
    m.command = "embed";
    EmbeddingSet set;
    std::vector<std::string> ids, contents;
    if (!o.corpus_path.empty()) {
        const auto corpus = read_corpus(o.corpus_path);
        for (const auto& d : corpus) {
            ids.push_back(d.id);
            contents.push_back(d.content);
        }
        m.inputs.emplace_back("corpus", o.corpus_path);
    } else {
        auto in = open_in(o.pairs_path);
        for (auto& p : read_pairs(in)) {
            ids.push_back(std::move(p.doc_id));
            contents.push_back(std::move(p.corrupted));
        }
        m.inputs.emplace_back("pairs", o.pairs_path);
    }
    m.args = {"embed", o.corpus_path.empty() ? "--pairs" : "--corpus",
              o.corpus_path.empty() ? o.pairs_path : o.corpus_path};
    if (!o.external_path.empty()) {
        set = read_embeddings(o.external_path);
        std::vector<std::string> sorted = ids;
        std::sort(sorted.begin(), sorted.end());
        if (!std::equal(sorted.begin(), sorted.end(), set.ids().begin(), set.ids().end()))
            throw Error(ErrorCode::IdMismatch, "external embedding ids do not match the input documents");
        m.config["variant"] = "external";
        m.inputs.emplace_back("external", o.external_path);
        m.args.insert(m.args.end(), {"--external", o.external_path});
    } else {
        set = embed_texts(ids, contents, o.dim, o.threads);
        m.config["variant"] = "trigram-hash-v1";
        m.args.insert(m.args.end(), {"--dim", std::to_string(o.dim)});
    }
    m.config["dim"] = set.dim();
    m.config["vectors"] = set.size();
    auto out = open_out(o.out_path);
    write_embeddings(set, out);
    m.outputs = {{"embeddings", o.out_path}};
    m.args.insert(m.args.end(), {"--out", o.out_path});
    write_manifest(m, o.out_path);
    return 0;
}

int cmd_cluster(const Options& o) {
    const auto emb = read_embeddings(o.emb_path);
    KMeansOptions opt{o.k, o.seed, o.max_iters, o.tol, o.threads};
    const auto model = kmeans(emb, opt);
    {
        auto c = open_out(centroids_path(o.out_path));
        write_centroids(model, c);
        auto a = open_out(assignments_path(o.out_path));
        write_assignments(model, a);
    }
    RunManifest m;
    m.command = "cluster";
    m.seed = o.seed;
    m.config["k"] = o.k;
    m.config["max_iters"] = o.max_iters;
    m.config["tol"] = o.tol;
    m.config["iterations"] = model.iterations;
    m.config["objective"] = model.objective;
    m.config["objective_trace"] = model.objective_trace;
    m.inputs = {{"embeddings", o.emb_path}};
    m.outputs = {{"centroids", centroids_path(o.out_path)}, {"assignments", assignments_path(o.out_path)}};
    m.args = {"cluster", "--emb", o.emb_path, "--k", std::to_string(o.k), "--seed", std::to_string(o.seed),
              "--max-iters", std::to_string(o.max_iters), "--tol", num(o.tol), "--out", o.out_path};
    write_manifest(m, o.out_path);
    return 0;
}

int cmd_shift(const Options& o) {
    if (o.corrupt_embs.empty()) throw Error(ErrorCode::InvalidArgument, "shift needs at least one --corrupted");
    if (o.kinds.size() != o.corrupt_embs.size())
        throw Error(ErrorCode::InvalidArgument, "give one --kind per --corrupted");
    const auto model = read_model(o.model_path);
    const auto originals = read_embeddings(o.orig_emb);
    std::vector<ShiftSummary> summaries;
    auto out = open_out(o.out_path);
    RunManifest m;
    m.command = "shift";
    m.config["threshold"] = o.threshold;
    m.inputs = {{"model", o.model_path}, {"originals", o.orig_emb}};
    m.args = {"shift", "--model", o.model_path, "--orig", o.orig_emb};
    for (std::size_t i = 0; i < o.corrupt_embs.size(); ++i) {
        const auto kind = parse_kind(o.kinds[i]);
        const auto corrupted = read_embeddings(o.corrupt_embs[i]);
        const auto records = shift_analysis(model, originals, corrupted, kind, o.threads);
        summaries.push_back(summarize(records, o.threshold));
        write_shift_records(records, out);
        write_shift_summary(summaries.back(), out);
        m.inputs.emplace_back("corrupted." + o.kinds[i], o.corrupt_embs[i]);
        m.args.insert(m.args.end(), {"--corrupted", o.corrupt_embs[i], "--kind", o.kinds[i]});
    }
    const std::string table_path = o.out_path + ".table.txt";
    auto table = open_out(table_path);
    table << format_shift_table(summaries);
    m.outputs = {{"records", o.out_path}, {"table", table_path}};
    m.args.insert(m.args.end(), {"--threshold", num(o.threshold), "--out", o.out_path});
    write_manifest(m, o.out_path);
    return 0;
}

int cmd_prune(const Options& o) {
    const auto model = read_model(o.model_path);
    PruneConfig cfg;
    cfg.method = parse_method(o.method);
    cfg.p = o.p;
    cfg.alpha = o.alpha;
    cfg.tau = o.tau;
    cfg.seed = o.seed;
    cfg.d4_dedup_share = o.d4_share;
    cfg.threads = o.threads;
    validate(cfg);

    std::optional<EmbeddingSet> emb;
    if (!o.emb_path.empty()) emb = read_embeddings(o.emb_path);
    const auto report = prune(model, emb ? &*emb : nullptr, cfg);
    {
        auto out = open_out(o.out_path);
        write_prune_report(report, out);
    }

    RunManifest m;
    m.command = "prune";
    m.seed = o.seed;
    m.config["method"] = o.method;
    m.config["p"] = o.p;
    m.config["alpha"] = o.alpha;
    m.config["tau"] = o.tau ? nlohmann::ordered_json(*o.tau) : nullptr;
    m.config["d4_dedup_share"] = o.d4_share;
    m.config["budget"] = report.budget;
    m.config["pruned"] = report.pruned.size();
    m.inputs = {{"model", o.model_path}};
    m.outputs = {{"report", o.out_path}};
    m.args = {"prune", "--model", o.model_path, "--method", o.method, "--p", num(o.p), "--alpha", num(o.alpha),
              "--seed", std::to_string(o.seed), "--d4-share", num(o.d4_share)};
    if (o.tau) m.args.insert(m.args.end(), {"--tau", num(*o.tau)});
    if (!o.emb_path.empty()) {
        m.inputs.emplace_back("embeddings", o.emb_path);
        m.args.insert(m.args.end(), {"--emb", o.emb_path});
    }
    if (!o.kept_corpus_path.empty()) {
        if (o.corpus_path.empty()) throw Error(ErrorCode::InvalidArgument, "--emit-kept-corpus needs --corpus");
        const auto corpus = read_corpus(o.corpus_path);
        if (corpus.size() != model.ids.size() ||
            !std::equal(corpus.begin(), corpus.end(), model.ids.begin(),
                        [](const Document& d, const std::string& id) { return d.id == id; }))
            throw Error(ErrorCode::IdMismatch, "corpus ids do not match model ids");
        std::vector<Document> kept;
        for (const auto& id : kept_ids(model, report)) kept.push_back(*corpus.find(id));
        auto out = open_out(o.kept_corpus_path);
        write(Corpus(std::move(kept)), out);
        m.inputs.emplace_back("corpus", o.corpus_path);
        m.outputs.emplace_back("kept_corpus", o.kept_corpus_path);
        m.args.insert(m.args.end(), {"--corpus", o.corpus_path, "--emit-kept-corpus", o.kept_corpus_path});
    }
    m.args.insert(m.args.end(), {"--out", o.out_path});
    write_manifest(m, o.out_path);
    return 0;
}

int cmd_passk(const Options& o) {
    auto in = open_in(o.tallies_path);
    const auto tallies = read_tallies(in);
    if (tallies.empty()) throw Error(ErrorCode::EmptyInput, "tally file has no problems");
    std::vector<PassAtKInput> inputs;
    for (const auto& t : tallies) inputs.push_back({t.n, t.c, 0});
    std::ostringstream table;
    table << "k\tpass@k\n";
    nlohmann::ordered_json results = nlohmann::ordered_json::object();
    for (auto k : o.k_list) {
        const double v = aggregate(inputs, k);
        table << k << '\t' << format_probability(v) << '\n';
        results[std::to_string(k)] = v;
    }
    std::cout << table.str();
    if (!o.out_path.empty()) {
        auto out = open_out(o.out_path);
        out << table.str();
        RunManifest m;
        m.command = "passk";
        m.config["problems"] = tallies.size();
        m.config["k"] = o.k_list;
        m.config["pass_at_k"] = results;
        m.inputs = {{"tallies", o.tallies_path}};
        m.outputs = {{"table", o.out_path}};
        std::string ks;
        for (auto k : o.k_list) ks += (ks.empty() ? "" : ",") + std::to_string(k);
        m.args = {"passk", "--tallies", o.tallies_path, "--k", ks, "--out", o.out_path};
        write_manifest(m, o.out_path);
    }
    return 0;
}

void print_error(std::string_view code, std::string_view message) {
    nlohmann::json j;
    j["error"] = code;
    j["message"] = message;
    std::cerr << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace) << '\n';
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Embedding-guided pruning of code corpora"};
    app.require_subcommand(1);
    Options o;
    app.add_option("--threads", o.threads, "Worker threads; outputs do not depend on it")
        ->check(CLI::PositiveNumber);

    auto* ingest_cmd = app.add_subcommand("ingest", "Validate a corpus and write it in canonical id order");
    ingest_cmd->add_option("--in", o.in_path, "Input corpus (JSON lines)")->required();
    ingest_cmd->add_option("--out", o.out_path, "Output corpus")->required();

    auto* corrupt_cmd = app.add_subcommand("corrupt", "Apply one synthetic corruption to every document");
    corrupt_cmd->add_option("--corpus", o.corpus_path)->required();
    corrupt_cmd->add_option("--kind", o.kind, "remove_closed_brackets | rename_variables | alter_conditionals | "
                                              "offset_array_indices")
        ->capture_default_str();
    corrupt_cmd->add_option("--rate", o.rate, "Share of eligible sites corrupted")->capture_default_str();
    corrupt_cmd->add_option("--seed", o.seed)->capture_default_str();
    corrupt_cmd->add_option("--out", o.out_path, "Pair records (JSON lines)")->required();

    auto* embed_cmd = app.add_subcommand("embed", "Embed a corpus or corrupted pairs into an EMB1 file");
    embed_cmd->add_option("--corpus", o.corpus_path);
    embed_cmd->add_option("--pairs", o.pairs_path, "Embed the corrupted side of a pair file");
    embed_cmd->add_option("--dim", o.dim, "Built-in embedder dimension")->capture_default_str();
    embed_cmd->add_option("--external", o.external_path, "Precomputed EMB1 vectors to validate and normalize");
    embed_cmd->add_option("--out", o.out_path)->required();

    auto* cluster_cmd = app.add_subcommand("cluster", "Spherical k-means over an EMB1 file");
    cluster_cmd->add_option("--emb", o.emb_path)->required();
    cluster_cmd->add_option("--k", o.k)->capture_default_str();
    cluster_cmd->add_option("--seed", o.seed)->capture_default_str();
    cluster_cmd->add_option("--max-iters", o.max_iters)->capture_default_str();
    cluster_cmd->add_option("--tol", o.tol)->capture_default_str();
    cluster_cmd->add_option("--out", o.out_path, "Model prefix")->required();

    auto* shift_cmd = app.add_subcommand("shift", "Measure how corruption moves documents in the clustering");
    shift_cmd->add_option("--model", o.model_path, "Model prefix")->required();
    shift_cmd->add_option("--orig", o.orig_emb, "Original embeddings")->required();
    shift_cmd->add_option("--corrupted", o.corrupt_embs, "Corrupted embeddings (repeatable)")->required();
    shift_cmd->add_option("--kind", o.kinds, "Corruption kind for each --corrupted")->required();
    shift_cmd->add_option("--threshold", o.threshold)->capture_default_str();
    shift_cmd->add_option("--out", o.out_path)->required();

    auto* prune_cmd = app.add_subcommand("prune", "Select documents to prune");
    prune_cmd->add_option("--model", o.model_path, "Model prefix")->required();
    prune_cmd->add_option("--emb", o.emb_path, "Embeddings (semdedup, d4)");
    prune_cmd->add_option("--method", o.method, "scip | random | ssl_prototypes | semdedup | d4")
        ->capture_default_str();
    prune_cmd->add_option("--p", o.p, "Fraction to prune")->capture_default_str();
    prune_cmd->add_option("--alpha", o.alpha, "Size vs distance weight (scip)")->capture_default_str();
    prune_cmd->add_option("--tau", o.tau, "Fixed duplicate threshold (semdedup, d4)");
    prune_cmd->add_option("--seed", o.seed)->capture_default_str();
    prune_cmd->add_option("--d4-share", o.d4_share, "Share of the d4 budget spent on deduplication")
        ->capture_default_str();
    prune_cmd->add_option("--corpus", o.corpus_path, "Corpus for --emit-kept-corpus");
    prune_cmd->add_option("--emit-kept-corpus", o.kept_corpus_path, "Write surviving documents here");
    prune_cmd->add_option("--out", o.out_path, "Report (JSON lines)")->required();

    auto* passk_cmd = app.add_subcommand("passk", "pass@k from per-problem sample tallies");
    passk_cmd->add_option("--tallies", o.tallies_path, "Lines of 'problem_id n c'")->required();
    passk_cmd->add_option("--k", o.k_list, "k values")->delimiter(',')->capture_default_str();
    passk_cmd->add_option("--out", o.out_path, "Also write the table (and a manifest) here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        print_error("usage", e.what());
        return 2;
    }

    try {
        if (ingest_cmd->parsed()) return cmd_ingest(o);
        if (corrupt_cmd->parsed()) return cmd_corrupt(o);
        if (embed_cmd->parsed()) return cmd_embed(o);
        if (cluster_cmd->parsed()) return cmd_cluster(o);
        if (shift_cmd->parsed()) return cmd_shift(o);
        if (prune_cmd->parsed()) return cmd_prune(o);
        if (passk_cmd->parsed()) return cmd_passk(o);
    } catch (const Error& e) {
        print_error(error_code_name(e.code()), e.what());
        return 1;
    } catch (const std::exception& e) {
        print_error("internal", e.what());
        return 1;
    }
    return 2;
}
