// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The SCIP Authors

#include "scip/cluster.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <ostream>

#include <json.hpp>

#include "scip/error.hpp"
#include "scip/parallel.hpp"
#include "scip/rng.hpp"

namespace scip {
namespace {

// Points per reduction chunk in the centroid update. Fixed so the floating
// point summation order never depends on the thread count.
constexpr std::size_t kReduceChunk = 64;

std::string centroid_id(std::size_t c) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "c%04zu", c);
    return buf;
}

double assign_all(const EmbeddingSet& x, std::span<const float> centroids, std::vector<Assignment>& out,
                  unsigned threads) {
    out.resize(x.size());
    parallel_for(x.size(), threads, [&](std::size_t i) { out[i] = nearest_centroid(centroids, x.dim(), x.row(i)); });
    double obj = 0.0;
    for (const auto& a : out) obj += a.distance;
    return obj;
}

std::vector<float> kmeanspp_init(const EmbeddingSet& x, std::size_t k, Rng& rng) {
    const std::size_t n = x.size(), dim = x.dim();
    std::vector<float> centroids;
    centroids.reserve(k * dim);
    std::vector<bool> chosen(n, false);

    auto add = [&](std::size_t i) {
        chosen[i] = true;
        auto r = x.row(i);
        centroids.insert(centroids.end(), r.begin(), r.end());
    };
    add(static_cast<std::size_t>(rng.below(n)));

    std::vector<double> weight(n);
    for (std::size_t i = 0; i < n; ++i)
        weight[i] = std::max(0.0, cosine_distance(x.row(i), {centroids.data(), dim}));

    while (centroids.size() < k * dim) {
        double total = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            if (!chosen[i]) total += weight[i];
        std::size_t pick = n;
        if (total > 0.0) {
            const double target = rng.unit() * total;
            double acc = 0.0;
            for (std::size_t i = 0; i < n; ++i) {
                if (chosen[i] || weight[i] <= 0.0) continue;
                acc += weight[i];
                pick = i;
                if (acc > target) break;
            }
        } else {
            // Remaining points coincide with chosen centroids.
            for (std::size_t i = 0; i < n && pick == n; ++i)
                if (!chosen[i]) pick = i;
        }
        add(pick);
        const std::span<const float> c{centroids.data() + centroids.size() - dim, dim};
        for (std::size_t i = 0; i < n; ++i) weight[i] = std::min(weight[i], std::max(0.0, cosine_distance(x.row(i), c)));
    }
    return centroids;
}

// Mean of members, renormalized. Empty clusters receive the point farthest
// from its current centroid (ties to the lowest index), one distinct point
// per empty cluster.
std::vector<float> update_centroids(const EmbeddingSet& x, const std::vector<Assignment>& assignment,
                                    std::span<const float> old_centroids, std::size_t k, unsigned threads) {
    const std::size_t n = x.size(), dim = x.dim();
    const std::size_t chunks = (n + kReduceChunk - 1) / kReduceChunk;
    std::vector<std::vector<double>> partial(chunks);
    std::vector<std::vector<std::size_t>> partial_counts(chunks);
    parallel_for(chunks, threads, [&](std::size_t ch) {
        auto& sum = partial[ch];
        auto& cnt = partial_counts[ch];
        sum.assign(k * dim, 0.0);
        cnt.assign(k, 0);
        const std::size_t hi = std::min(n, (ch + 1) * kReduceChunk);
        for (std::size_t i = ch * kReduceChunk; i < hi; ++i) {
            const auto c = assignment[i].cluster;
            ++cnt[c];
            auto r = x.row(i);
            double* dst = sum.data() + c * dim;
            for (std::size_t d = 0; d < dim; ++d) dst[d] += r[d];
        }
    });
    std::vector<double> sum(k * dim, 0.0);
    std::vector<std::size_t> counts(k, 0);
    for (std::size_t ch = 0; ch < chunks; ++ch) {
        for (std::size_t j = 0; j < k * dim; ++j) sum[j] += partial[ch][j];
        for (std::size_t c = 0; c < k; ++c) counts[c] += partial_counts[ch][c];
    }

    std::vector<float> centroids(k * dim);
    std::vector<bool> donor_used(n, false);
    for (std::size_t c = 0; c < k; ++c) {
        float* dst = centroids.data() + c * dim;
        double sq = 0.0;
        for (std::size_t d = 0; d < dim; ++d) sq += sum[c * dim + d] * sum[c * dim + d];
        if (counts[c] > 0 && sq > 0.0) {
            const double norm = std::sqrt(sq);
            for (std::size_t d = 0; d < dim; ++d) dst[d] = static_cast<float>(sum[c * dim + d] / norm);
            continue;
        }
        if (counts[c] > 0) {
            // Members cancel out exactly; keep the previous centroid.
            std::copy_n(old_centroids.begin() + static_cast<std::ptrdiff_t>(c * dim), dim, dst);
            continue;
        }
        std::size_t far = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (donor_used[i]) continue;
            if (far == n || assignment[i].distance > assignment[far].distance) far = i;
        }
        if (far == n) {
            std::copy_n(old_centroids.begin() + static_cast<std::ptrdiff_t>(c * dim), dim, dst);
            continue;
        }
        donor_used[far] = true;
        auto r = x.row(far);
        std::copy(r.begin(), r.end(), dst);
    }
    return centroids;
}

}  // namespace

Assignment nearest_centroid(std::span<const float> centroids, std::size_t dim, std::span<const float> v) {
    if (v.size() != dim) throw Error(ErrorCode::DimMismatch, "vector dim " + std::to_string(v.size()) +
                                                                 " does not match model dim " + std::to_string(dim));
    Assignment best{0, std::numeric_limits<double>::infinity()};
    const std::size_t k = centroids.size() / dim;
    for (std::size_t c = 0; c < k; ++c) {
        const double d = 1.0 - dot(centroids.subspan(c * dim, dim), v);
        if (d < best.distance) best = {c, d};
    }
    return best;
}

ClusterModel kmeans(const EmbeddingSet& x, const KMeansOptions& opt) {
    if (opt.k == 0) throw Error(ErrorCode::InvalidArgument, "k must be positive");
    if (opt.k > x.size())
        throw Error(ErrorCode::InvalidArgument,
                    "k = " + std::to_string(opt.k) + " exceeds number of embeddings " + std::to_string(x.size()));
    if (opt.k > 10000) throw Error(ErrorCode::InvalidArgument, "k above 10000 is not supported by the model format");
    if (!(opt.tol > 0.0)) throw Error(ErrorCode::InvalidArgument, "tol must be positive");
    if (opt.max_iters == 0) throw Error(ErrorCode::InvalidArgument, "max_iters must be positive");

    Rng rng(opt.seed);
    ClusterModel model;
    model.dim = x.dim();
    model.ids.assign(x.ids().begin(), x.ids().end());
    model.centroids = kmeanspp_init(x, opt.k, rng);
    double objective = assign_all(x, model.centroids, model.assignment, opt.threads);
    model.objective_trace.push_back(objective);

    std::vector<Assignment> next_assignment;
    for (std::size_t it = 0; it < opt.max_iters; ++it) {
        auto next_centroids = update_centroids(x, model.assignment, model.centroids, opt.k, opt.threads);
        const double next_objective = assign_all(x, next_centroids, next_assignment, opt.threads);
        if (next_objective > objective) break;
        model.centroids = std::move(next_centroids);
        std::swap(model.assignment, next_assignment);
        ++model.iterations;
        model.objective_trace.push_back(next_objective);
        const double improvement = objective - next_objective;
        objective = next_objective;
        if (improvement < opt.tol) break;
    }
    refresh_statistics(model);
    return model;
}

std::vector<Assignment> assign(const ClusterModel& model, const EmbeddingSet& vectors, unsigned threads) {
    if (vectors.dim() != model.dim)
        throw Error(ErrorCode::DimMismatch, "vector dim " + std::to_string(vectors.dim()) +
                                                " does not match model dim " + std::to_string(model.dim));
    std::vector<Assignment> out;
    assign_all(vectors, model.centroids, out, threads);
    return out;
}

void refresh_statistics(ClusterModel& model) {
    model.sizes.assign(model.k(), 0);
    model.objective = 0.0;
    for (const auto& a : model.assignment) {
        ++model.sizes.at(a.cluster);
        model.objective += a.distance;
    }
}

void write_centroids(const ClusterModel& model, std::ostream& out) {
    std::vector<std::string> ids;
    for (std::size_t c = 0; c < model.k(); ++c) ids.push_back(centroid_id(c));
    write_emb1(out, model.dim, ids, model.centroids);
}

void write_assignments(const ClusterModel& model, std::ostream& out) {
    for (std::size_t i = 0; i < model.ids.size(); ++i) {
        nlohmann::ordered_json rec;
        rec["id"] = model.ids[i];
        rec["cluster"] = model.assignment[i].cluster;
        rec["distance"] = model.assignment[i].distance;
        out << rec.dump(-1, ' ', false, nlohmann::json::error_handler_t::strict) << '\n';
    }
    out.flush();
    if (!out) throw Error(ErrorCode::Io, "failed to write assignments");
}

ClusterModel load_model(std::istream& centroids_in, std::istream& assignments_in) {
    const auto block = load_embeddings(centroids_in);
    ClusterModel model;
    model.dim = block.dim();
    for (std::size_t c = 0; c < block.size(); ++c) {
        if (block.id(c) != centroid_id(c))
            throw Error(ErrorCode::Schema, "unexpected centroid id '" + block.id(c) + "', expected '" + centroid_id(c) + "'");
        auto r = block.row(c);
        model.centroids.insert(model.centroids.end(), r.begin(), r.end());
    }

    std::vector<std::pair<std::string, Assignment>> rows;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(assignments_in, line)) {
        ++line_no;
        if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
        const std::string where = "assignment line " + std::to_string(line_no) + ": ";
        try {
            const auto rec = nlohmann::json::parse(line);
            for (const char* field : {"id", "cluster", "distance"})
                if (!rec.contains(field)) throw Error(ErrorCode::MissingField, where + "missing field '" + field + "'");
            Assignment a{rec["cluster"].get<std::size_t>(), rec["distance"].get<double>()};
            if (a.cluster >= model.k()) throw Error(ErrorCode::Schema, where + "cluster index out of range");
            rows.emplace_back(rec["id"].get<std::string>(), a);
        } catch (const nlohmann::json::exception& e) {
            throw Error(ErrorCode::Schema, where + e.what());
        }
    }
    std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    for (std::size_t i = 0; i < rows.size(); ++i) {
        if (i > 0 && rows[i].first == rows[i - 1].first)
            throw Error(ErrorCode::DuplicateId, "duplicate id '" + rows[i].first + "' in assignments");
        model.ids.push_back(rows[i].first);
        model.assignment.push_back(rows[i].second);
    }
    refresh_statistics(model);
    model.objective_trace = {model.objective};
    return model;
}

std::uint64_t model_digest(const ClusterModel& m) {
    std::uint64_t h = 14695981039346656037ULL;
    auto mix = [&](std::uint64_t v) { h = splitmix64(h ^ v); };
    mix(m.dim);
    for (float v : m.centroids) mix(std::bit_cast<std::uint32_t>(v));
    for (const auto& id : m.ids) mix(fnv1a64(id));
    for (const auto& a : m.assignment) {
        mix(a.cluster);
        mix(std::bit_cast<std::uint64_t>(a.distance));
    }
    for (auto s : m.sizes) mix(s);
    mix(std::bit_cast<std::uint64_t>(m.objective));
    return h;
}

}  // namespace scip
