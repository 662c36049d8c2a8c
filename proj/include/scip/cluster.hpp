// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The SCIP Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "scip/embed.hpp"

namespace scip {

inline constexpr std::size_t kDefaultClusters = 100;

struct KMeansOptions {
    std::size_t k = kDefaultClusters;
    std::uint64_t seed = 0;
    std::size_t max_iters = 100;
    double tol = 1e-6;
    unsigned threads = 1;
};

/// Nearest centroid and cosine distance to it.
struct Assignment {
    std::size_t cluster = 0;
    double distance = 0.0;

    friend bool operator==(const Assignment&, const Assignment&) = default;
};

/// Fitted spherical k-means model. Documents are kept in id order.
struct ClusterModel {
    std::size_t dim = 0;
    std::vector<float> centroids;             ///< k rows of dim, unit norm
    std::vector<std::string> ids;             ///< sorted
    std::vector<Assignment> assignment;       ///< parallel to ids
    std::vector<std::size_t> sizes;           ///< per cluster
    double objective = 0.0;                   ///< sum of assigned distances
    std::vector<double> objective_trace;      ///< objective after init and after every iteration
    std::size_t iterations = 0;

    std::size_t k() const noexcept { return dim ? centroids.size() / dim : 0; }
    std::span<const float> centroid(std::size_t c) const { return {centroids.data() + c * dim, dim}; }

    friend bool operator==(const ClusterModel&, const ClusterModel&) = default;
};

/// Nearest centroid under cosine distance; ties go to the lowest index.
Assignment nearest_centroid(std::span<const float> centroids, std::size_t dim, std::span<const float> v);

/// Spherical k-means: k-means++ seeding with cosine distance as the D^2
/// weight, then Lloyd iterations with mean-then-renormalize updates. Stops
/// when the objective improves by less than tol or after max_iters. An empty
/// cluster is reseeded with the point farthest from its centroid. If an
/// iteration would raise the objective (float rounding only), the previous
/// state is kept and fitting stops, so the trace is non-increasing.
ClusterModel kmeans(const EmbeddingSet& embeddings, const KMeansOptions& options);

/// Maps every vector to its nearest centroid. The model is not modified.
std::vector<Assignment> assign(const ClusterModel& model, const EmbeddingSet& vectors, unsigned threads = 1);

/// Rebuilds sizes and objective from the assignment.
void refresh_statistics(ClusterModel& model);

/// Centroid block in EMB1 with ids c0000, c0001, ...
void write_centroids(const ClusterModel& model, std::ostream& out);

/// Line-delimited {id, cluster, distance} records in id order.
void write_assignments(const ClusterModel& model, std::ostream& out);

ClusterModel load_model(std::istream& centroids_in, std::istream& assignments_in);

/// 64-bit digest of every field, for immutability checks.
std::uint64_t model_digest(const ClusterModel& model);

}  // namespace scip
