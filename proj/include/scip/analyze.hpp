// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The SCIP Authors

#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scip/cluster.hpp"
#include "scip/corrupt.hpp"
#include "scip/embed.hpp"

namespace scip {

inline constexpr double kDefaultShiftThreshold = 0.01;
inline constexpr std::size_t kHistogramBins = 50;

/// Where one document sits in the frozen original clustering before and
/// after corruption.
struct ShiftRecord {
    std::string doc_id;
    CorruptionKind kind = CorruptionKind::RemoveClosedBrackets;
    std::size_t cluster_before = 0;
    std::size_t cluster_after = 0;
    double dist_before = 0.0;
    double dist_after = 0.0;
    std::size_t size_before = 0;
    std::size_t size_after = 0;

    bool changed_cluster() const noexcept { return cluster_before != cluster_after; }
    double delta_distance() const noexcept { return dist_after - dist_before; }
    double delta_size() const noexcept {
        return static_cast<double>(size_after) - static_cast<double>(size_before);
    }

    friend bool operator==(const ShiftRecord&, const ShiftRecord&) = default;
};

/// Counts over kHistogramBins uniform bins spanning [lo, hi]. When lo == hi
/// every value lands in bin 0.
struct Histogram {
    double lo = 0.0;
    double hi = 0.0;
    std::vector<std::size_t> counts;
};

struct ShiftSummary {
    CorruptionKind kind = CorruptionKind::RemoveClosedBrackets;
    double threshold = kDefaultShiftThreshold;
    std::size_t n_pairs = 0;
    std::size_t n_changed_cluster = 0;
    std::size_t n_changed_distance = 0;  ///< |delta distance| >= threshold
    std::size_t n_retained = 0;          ///< changed cluster or changed distance
    double frac_changed_cluster = 0.0;
    double frac_changed_distance = 0.0;
    double frac_retained = 0.0;
    /// Means and histograms cover the retained records only; empty when no
    /// record is retained.
    std::optional<double> mean_delta_distance;
    std::optional<double> mean_delta_cluster_size;
    Histogram delta_distance_hist;
    Histogram delta_size_hist;
};

/// Assigns originals and corrupted vectors against the frozen model (never
/// refit). Both sets must carry the same ids and the model's dim.
std::vector<ShiftRecord> shift_analysis(const ClusterModel& model, const EmbeddingSet& originals,
                                        const EmbeddingSet& corrupted, CorruptionKind kind, unsigned threads = 1);

/// Throws Error(EmptyInput) on an empty record list.
ShiftSummary summarize(std::span<const ShiftRecord> records, double threshold = kDefaultShiftThreshold);

Histogram make_histogram(std::span<const double> values, std::size_t bins = kHistogramBins);

void write_shift_records(std::span<const ShiftRecord> records, std::ostream& out);
void write_shift_summary(const ShiftSummary& summary, std::ostream& out);

/// Plain-text table with one column per summary and two rows: changed
/// cluster and changed distance from cluster centroid.
std::string format_shift_table(std::span<const ShiftSummary> summaries);

}  // namespace scip
