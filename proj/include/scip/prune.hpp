// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The SCIP Authors

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "scip/cluster.hpp"
#include "scip/embed.hpp"

namespace scip {

enum class PruneMethod { Scip, Random, SslPrototypes, SemDeDup, D4 };

std::string_view method_name(PruneMethod method) noexcept;
PruneMethod parse_method(std::string_view name);

inline constexpr double kDefaultPruneFraction = 0.20;
inline constexpr double kDefaultAlpha = 0.8;
inline constexpr double kDefaultD4DedupShare = 0.5;

struct PruneConfig {
    PruneMethod method = PruneMethod::Scip;
    double p = kDefaultPruneFraction;  ///< [0, 1)
    double alpha = kDefaultAlpha;      ///< [0, 1], Scip only
    /// SemDeDup: when set, prune every duplicate above this similarity
    /// instead of searching for the threshold that meets the budget.
    /// D4: stage-one threshold; when unset stage one searches as well.
    std::optional<double> tau;
    std::uint64_t seed = 0;
    double d4_dedup_share = kDefaultD4DedupShare;  ///< share of the budget given to D4 stage one
    std::size_t recluster_max_iters = 100;         ///< D4 stage two
    double recluster_tol = 1e-6;
    unsigned threads = 1;
};

/// Validates fractions; throws Error(InvalidFraction).
void validate(const PruneConfig& config);

/// floor(p * n) with a 1e-9 guard against representation error in p.
std::size_t prune_budget(double p, std::size_t n);

struct PrunedEntry {
    std::string id;
    std::size_t cluster = 0;       ///< in the input model
    std::size_t cluster_size = 0;  ///< in the input model
    double distance = 0.0;         ///< to the nearest input-model centroid
    std::string reason;            ///< which criterion removed it
    double score = 0.0;            ///< the value the ranking used

    friend bool operator==(const PrunedEntry&, const PrunedEntry&) = default;
};

struct PruneReport {
    PruneMethod method = PruneMethod::Scip;
    PruneConfig config;
    std::size_t n_total = 0;
    std::size_t budget = 0;
    std::vector<PrunedEntry> pruned;  ///< in pruning order
    std::size_t kept_count = 0;
    std::vector<std::size_t> per_cluster_pruned;
    bool budget_rounded_to_zero = false;  ///< p > 0 but floor(p * n) == 0
    bool threshold_mode = false;          ///< SemDeDup with a fixed tau
    std::optional<double> tau_used;

    std::vector<std::string> pruned_ids() const;
};

/// Algorithm: budget B = floor(p N), size share B_s = floor(alpha B), distance
/// share B - B_s. First prune B_s documents by ascending cluster size (ties:
/// cluster index, then descending distance, then id). Then prune the
/// remaining share from the survivors by descending distance (ties: id).
PruneReport prune_scip(const ClusterModel& model, const PruneConfig& config);

PruneReport prune_random(std::span<const std::string> ids, const PruneConfig& config);

/// Prunes the documents closest to their centroid first.
PruneReport prune_ssl_prototypes(const ClusterModel& model, const PruneConfig& config);

PruneReport prune_semdedup(const ClusterModel& model, const EmbeddingSet& embeddings, const PruneConfig& config);

PruneReport prune_d4(const ClusterModel& model, const EmbeddingSet& embeddings, const PruneConfig& config);

/// Dispatches on config.method. Every report gets per-cluster counts from
/// `model`. `embeddings` may be null for methods that do not need it.
PruneReport prune(const ClusterModel& model, const EmbeddingSet* embeddings, const PruneConfig& config);

/// Model ids not in the report, in id order.
std::vector<std::string> kept_ids(const ClusterModel& model, const PruneReport& report);

/// One {"type":"pruned",...} record per pruned document followed by a
/// {"type":"summary",...} record.
void write_prune_report(const PruneReport& report, std::ostream& out);

}  // namespace scip
