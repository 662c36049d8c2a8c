// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The SCIP Authors

#include "scip/prune.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <set>

#include <json.hpp>

#include "scip/error.hpp"
#include "scip/parallel.hpp"
#include "scip/rng.hpp"

namespace scip {
namespace {

PruneReport start_report(const PruneConfig& config, std::size_t n) {
    validate(config);
    PruneReport r;
    r.method = config.method;
    r.config = config;
    r.n_total = n;
    r.budget = prune_budget(config.p, n);
    r.budget_rounded_to_zero = config.p > 0.0 && r.budget == 0;
    return r;
}

PrunedEntry entry_for(const ClusterModel& model, std::size_t i, std::string reason, double score) {
    const auto& a = model.assignment[i];
    return PrunedEntry{model.ids[i], a.cluster, model.sizes[a.cluster], a.distance, std::move(reason), score};
}

void finish(PruneReport& r, const ClusterModel* model) {
    r.kept_count = r.n_total - r.pruned.size();
    if (!model) return;
    r.per_cluster_pruned.assign(model->k(), 0);
    for (auto& e : r.pruned) {
        auto it = std::lower_bound(model->ids.begin(), model->ids.end(), e.id);
        const auto i = static_cast<std::size_t>(it - model->ids.begin());
        const auto& a = model->assignment[i];
        e.cluster = a.cluster;
        e.cluster_size = model->sizes[a.cluster];
        e.distance = a.distance;
        ++r.per_cluster_pruned[a.cluster];
    }
}

// Model rows ordered by ascending distance, ties by id (rows are id-sorted).
std::vector<std::size_t> by_ascending_distance(const ClusterModel& model) {
    std::vector<std::size_t> order(model.ids.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        return model.assignment[a].distance < model.assignment[b].distance;
    });
    return order;
}

void check_embeddings(const ClusterModel& model, const EmbeddingSet& emb) {
    if (emb.dim() != model.dim)
        throw Error(ErrorCode::DimMismatch, "embedding dim " + std::to_string(emb.dim()) + " does not match model dim " +
                                                std::to_string(model.dim));
    if (!std::equal(emb.ids().begin(), emb.ids().end(), model.ids.begin(), model.ids.end()))
        throw Error(ErrorCode::IdMismatch, "embedding ids do not match model ids");
}

// Within-cluster duplicate structure for SemDeDup.
class DuplicateIndex {
public:
    struct Candidate {
        std::size_t row;         // model row
        double centroid_sim;     // similarity to own centroid
    };

    DuplicateIndex(const ClusterModel& model, const EmbeddingSet& emb, unsigned threads) {
        const std::size_t k = model.k();
        clusters_.resize(k);
        for (std::size_t i = 0; i < model.ids.size(); ++i) clusters_[model.assignment[i].cluster].members.push_back(i);
        parallel_for(k, threads, [&](std::size_t c) {
            auto& cl = clusters_[c];
            const auto centroid = model.centroid(c);
            for (auto m : cl.members) cl.centroid_sim.push_back(dot(emb.row(m), centroid));
            for (std::size_t a = 0; a < cl.members.size(); ++a)
                for (std::size_t b = a + 1; b < cl.members.size(); ++b)
                    cl.edges.push_back({dot(emb.row(cl.members[a]), emb.row(cl.members[b])), a, b});
            std::stable_sort(cl.edges.begin(), cl.edges.end(),
                             [](const EdgeT& x, const EdgeT& y) { return x.sim > y.sim; });
        });
    }

    /// Documents pruned at threshold tau (pairs with similarity > tau are
    /// duplicates; each duplicate group keeps its member least similar to
    /// the centroid, ties to the lowest id). Ordered by descending centroid
    /// similarity, ties by id.
    std::vector<Candidate> pruned_at(double tau) const {
        std::vector<Candidate> out;
        for (const auto& cl : clusters_) {
            const std::size_t m = cl.members.size();
            std::vector<std::size_t> parent(m);
            std::iota(parent.begin(), parent.end(), std::size_t{0});
            auto find = [&](std::size_t x) {
                while (parent[x] != x) x = parent[x] = parent[parent[x]];
                return x;
            };
            for (const auto& e : cl.edges) {
                if (!(e.sim > tau)) break;
                const auto ra = find(e.a), rb = find(e.b);
                if (ra != rb) parent[std::max(ra, rb)] = std::min(ra, rb);
            }
            // Survivor per group: least centroid similarity, then lowest id.
            std::vector<std::size_t> keeper(m, m);
            for (std::size_t i = 0; i < m; ++i) {
                const auto g = find(i);
                if (keeper[g] == m || cl.centroid_sim[i] < cl.centroid_sim[keeper[g]]) keeper[g] = i;
            }
            for (std::size_t i = 0; i < m; ++i)
                if (keeper[find(i)] != i) out.push_back({cl.members[i], cl.centroid_sim[i]});
        }
        std::sort(out.begin(), out.end(), [](const Candidate& a, const Candidate& b) {
            if (a.centroid_sim != b.centroid_sim) return a.centroid_sim > b.centroid_sim;
            return a.row < b.row;
        });
        return out;
    }

    std::size_t count_at(double tau) const { return pruned_at(tau).size(); }

private:
    struct EdgeT {
        double sim;
        std::size_t a, b;
    };
    struct Cluster {
        std::vector<std::size_t> members;
        std::vector<double> centroid_sim;
        std::vector<EdgeT> edges;
    };
    std::vector<Cluster> clusters_;
};

struct DedupResult {
    std::vector<DuplicateIndex::Candidate> pruned;
    double tau = 0.0;
};

// Largest tau in [-1, 1] (32 bisection steps) whose pruned count reaches
// `target`, then the list is cut to `target`. Falls short only when even
// tau = -1 cannot produce enough duplicates.
DedupResult dedup_to_target(const DuplicateIndex& index, std::size_t target) {
    if (target == 0) return {{}, 1.0};
    double lo = -1.0, hi = 1.0;
    if (index.count_at(lo) < target) return {index.pruned_at(lo), lo};
    for (int it = 0; it < 32; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (index.count_at(mid) >= target)
            lo = mid;
        else
            hi = mid;
    }
    auto pruned = index.pruned_at(lo);
    pruned.resize(target);
    return {std::move(pruned), lo};
}

}  // namespace

std::string_view method_name(PruneMethod m) noexcept {
    switch (m) {
        case PruneMethod::Scip: return "scip";
        case PruneMethod::Random: return "random";
        case PruneMethod::SslPrototypes: return "ssl_prototypes";
        case PruneMethod::SemDeDup: return "semdedup";
        case PruneMethod::D4: return "d4";
    }
    return "unknown";
}

PruneMethod parse_method(std::string_view name) {
    for (auto m : {PruneMethod::Scip, PruneMethod::Random, PruneMethod::SslPrototypes, PruneMethod::SemDeDup,
                   PruneMethod::D4})
        if (method_name(m) == name) return m;
    throw Error(ErrorCode::InvalidArgument, "unknown prune method '" + std::string(name) + "'");
}

void validate(const PruneConfig& c) {
    if (!(c.p >= 0.0 && c.p < 1.0))
        throw Error(ErrorCode::InvalidFraction, "p must be in [0, 1), got " + std::to_string(c.p));
    if (!(c.alpha >= 0.0 && c.alpha <= 1.0))
        throw Error(ErrorCode::InvalidFraction, "alpha must be in [0, 1], got " + std::to_string(c.alpha));
    if (c.tau && !(*c.tau >= -1.0 && *c.tau <= 1.0))
        throw Error(ErrorCode::InvalidFraction, "tau must be in [-1, 1], got " + std::to_string(*c.tau));
    if (!(c.d4_dedup_share >= 0.0 && c.d4_dedup_share <= 1.0))
        throw Error(ErrorCode::InvalidFraction, "d4 dedup share must be in [0, 1]");
}

std::size_t prune_budget(double p, std::size_t n) {
    return static_cast<std::size_t>(std::floor(p * static_cast<double>(n) + 1e-9));
}

std::vector<std::string> PruneReport::pruned_ids() const {
    std::vector<std::string> out;
    out.reserve(pruned.size());
    for (const auto& e : pruned) out.push_back(e.id);
    return out;
}

PruneReport prune_scip(const ClusterModel& model, const PruneConfig& config) {
    auto r = start_report(config, model.ids.size());
    const std::size_t size_share = static_cast<std::size_t>(std::floor(config.alpha * static_cast<double>(r.budget) + 1e-9));
    const std::size_t distance_share = r.budget - size_share;

    std::vector<std::size_t> order(model.ids.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
        const auto& x = model.assignment[a];
        const auto& y = model.assignment[b];
        const auto sx = model.sizes[x.cluster], sy = model.sizes[y.cluster];
        if (sx != sy) return sx < sy;
        if (x.cluster != y.cluster) return x.cluster < y.cluster;
        return x.distance > y.distance;
    });
    std::vector<bool> removed(model.ids.size(), false);
    for (std::size_t j = 0; j < size_share; ++j) {
        const auto i = order[j];
        removed[i] = true;
        r.pruned.push_back(entry_for(model, i, "size", static_cast<double>(model.sizes[model.assignment[i].cluster])));
    }

    std::vector<std::size_t> survivors;
    for (std::size_t i = 0; i < model.ids.size(); ++i)
        if (!removed[i]) survivors.push_back(i);
    std::stable_sort(survivors.begin(), survivors.end(), [&](std::size_t a, std::size_t b) {
        return model.assignment[a].distance > model.assignment[b].distance;
    });
    for (std::size_t j = 0; j < distance_share; ++j) {
        const auto i = survivors[j];
        r.pruned.push_back(entry_for(model, i, "distance", model.assignment[i].distance));
    }
    finish(r, &model);
    return r;
}

PruneReport prune_random(std::span<const std::string> ids, const PruneConfig& config) {
    auto r = start_report(config, ids.size());
    Rng rng(config.seed);
    const auto picks = rng.sample_indices(ids.size(), r.budget);
    for (std::size_t j = 0; j < picks.size(); ++j)
        r.pruned.push_back(PrunedEntry{ids[picks[j]], 0, 0, 0.0, "random", static_cast<double>(j)});
    finish(r, nullptr);
    return r;
}

PruneReport prune_ssl_prototypes(const ClusterModel& model, const PruneConfig& config) {
    auto r = start_report(config, model.ids.size());
    const auto order = by_ascending_distance(model);
    for (std::size_t j = 0; j < r.budget; ++j)
        r.pruned.push_back(entry_for(model, order[j], "prototype", model.assignment[order[j]].distance));
    finish(r, &model);
    return r;
}

PruneReport prune_semdedup(const ClusterModel& model, const EmbeddingSet& embeddings, const PruneConfig& config) {
    check_embeddings(model, embeddings);
    auto r = start_report(config, model.ids.size());
    const DuplicateIndex index(model, embeddings, config.threads);
    DedupResult result;
    if (config.tau) {
        r.threshold_mode = true;
        result = {index.pruned_at(*config.tau), *config.tau};
    } else {
        result = dedup_to_target(index, r.budget);
    }
    r.tau_used = result.tau;
    for (const auto& c : result.pruned) r.pruned.push_back(entry_for(model, c.row, "duplicate", c.centroid_sim));
    finish(r, &model);
    return r;
}

PruneReport prune_d4(const ClusterModel& model, const EmbeddingSet& embeddings, const PruneConfig& config) {
    check_embeddings(model, embeddings);
    auto r = start_report(config, model.ids.size());
    if (r.budget == 0) {
        finish(r, &model);
        return r;
    }
    const auto stage1_budget =
        static_cast<std::size_t>(std::floor(static_cast<double>(r.budget) * config.d4_dedup_share + 1e-9));

    const DuplicateIndex index(model, embeddings, config.threads);
    DedupResult dedup;
    if (config.tau) {
        dedup = {index.pruned_at(*config.tau), *config.tau};
        if (dedup.pruned.size() > stage1_budget) dedup.pruned.resize(stage1_budget);
    } else {
        dedup = dedup_to_target(index, stage1_budget);
    }
    r.tau_used = dedup.tau;
    std::vector<bool> removed(model.ids.size(), false);
    for (const auto& c : dedup.pruned) {
        removed[c.row] = true;
        r.pruned.push_back(entry_for(model, c.row, "d4-dedup", c.centroid_sim));
    }

    const std::size_t stage2_budget = r.budget - r.pruned.size();
    if (stage2_budget > 0) {
        std::vector<std::string> survivors;
        for (std::size_t i = 0; i < model.ids.size(); ++i)
            if (!removed[i]) survivors.push_back(model.ids[i]);
        const auto sub = embeddings.select(survivors);
        KMeansOptions opt;
        opt.k = std::min(model.k(), sub.size());
        opt.seed = config.seed;
        opt.max_iters = config.recluster_max_iters;
        opt.tol = config.recluster_tol;
        opt.threads = config.threads;
        const auto remodel = kmeans(sub, opt);
        const auto order = by_ascending_distance(remodel);
        for (std::size_t j = 0; j < stage2_budget; ++j) {
            const auto i = order[j];
            r.pruned.push_back(PrunedEntry{remodel.ids[i], 0, 0, 0.0, "d4-prototype", remodel.assignment[i].distance});
        }
    }
    finish(r, &model);
    return r;
}

PruneReport prune(const ClusterModel& model, const EmbeddingSet* embeddings, const PruneConfig& config) {
    auto need = [&]() -> const EmbeddingSet& {
        if (!embeddings)
            throw Error(ErrorCode::InvalidArgument, std::string(method_name(config.method)) + " needs embeddings");
        return *embeddings;
    };
    switch (config.method) {
        case PruneMethod::Scip: return prune_scip(model, config);
        case PruneMethod::Random: {
            auto r = prune_random(model.ids, config);
            finish(r, &model);
            return r;
        }
        case PruneMethod::SslPrototypes: return prune_ssl_prototypes(model, config);
        case PruneMethod::SemDeDup: return prune_semdedup(model, need(), config);
        case PruneMethod::D4: return prune_d4(model, need(), config);
    }
    throw Error(ErrorCode::InvalidArgument, "unknown prune method");
}

std::vector<std::string> kept_ids(const ClusterModel& model, const PruneReport& report) {
    const auto pruned = report.pruned_ids();
    const std::set<std::string, std::less<>> gone(pruned.begin(), pruned.end());
    std::vector<std::string> out;
    for (const auto& id : model.ids)
        if (!gone.contains(id)) out.push_back(id);
    return out;
}

void write_prune_report(const PruneReport& r, std::ostream& out) {
    auto dump = [&](const nlohmann::ordered_json& j) {
        out << j.dump(-1, ' ', false, nlohmann::json::error_handler_t::strict) << '\n';
    };
    for (std::size_t rank = 0; rank < r.pruned.size(); ++rank) {
        const auto& e = r.pruned[rank];
        nlohmann::ordered_json j;
        j["type"] = "pruned";
        j["rank"] = rank;
        j["id"] = e.id;
        j["cluster"] = e.cluster;
        j["cluster_size"] = e.cluster_size;
        j["distance"] = e.distance;
        j["reason"] = e.reason;
        j["score"] = e.score;
        dump(j);
    }
    nlohmann::ordered_json s;
    s["type"] = "summary";
    s["method"] = method_name(r.method);
    nlohmann::ordered_json cfg;
    cfg["p"] = r.config.p;
    cfg["alpha"] = r.config.alpha;
    cfg["tau"] = r.config.tau ? nlohmann::ordered_json(*r.config.tau) : nullptr;
    cfg["seed"] = r.config.seed;
    cfg["d4_dedup_share"] = r.config.d4_dedup_share;
    cfg["recluster_max_iters"] = r.config.recluster_max_iters;
    cfg["recluster_tol"] = r.config.recluster_tol;
    s["config"] = cfg;
    s["n_total"] = r.n_total;
    s["budget"] = r.budget;
    s["pruned_count"] = r.pruned.size();
    s["kept_count"] = r.kept_count;
    s["per_cluster_pruned"] = r.per_cluster_pruned;
    s["budget_rounded_to_zero"] = r.budget_rounded_to_zero;
    s["threshold_mode"] = r.threshold_mode;
    s["tau_used"] = r.tau_used ? nlohmann::ordered_json(*r.tau_used) : nullptr;
    dump(s);
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "failed to write prune report");
}

}  // namespace scip
