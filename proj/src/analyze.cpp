// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The SCIP Authors

#include "scip/analyze.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>

#include <json.hpp>

#include "scip/error.hpp"

namespace scip {

std::vector<ShiftRecord> shift_analysis(const ClusterModel& model, const EmbeddingSet& originals,
                                        const EmbeddingSet& corrupted, CorruptionKind kind, unsigned threads) {
    if (originals.dim() != model.dim || corrupted.dim() != model.dim)
        throw Error(ErrorCode::DimMismatch, "embedding dim does not match model dim " + std::to_string(model.dim));
    if (!std::equal(originals.ids().begin(), originals.ids().end(), corrupted.ids().begin(), corrupted.ids().end()))
        throw Error(ErrorCode::IdMismatch, "original and corrupted embeddings carry different ids");

    const auto before = assign(model, originals, threads);
    const auto after = assign(model, corrupted, threads);
    std::vector<ShiftRecord> records(originals.size());
    for (std::size_t i = 0; i < records.size(); ++i) {
        auto& r = records[i];
        r.doc_id = originals.id(i);
        r.kind = kind;
        r.cluster_before = before[i].cluster;
        r.cluster_after = after[i].cluster;
        r.dist_before = before[i].distance;
        r.dist_after = after[i].distance;
        r.size_before = model.sizes[r.cluster_before];
        r.size_after = model.sizes[r.cluster_after];
    }
    return records;
}

Histogram make_histogram(std::span<const double> values, std::size_t bins) {
    Histogram h;
    h.counts.assign(bins, 0);
    if (values.empty()) return h;
    const auto [mn, mx] = std::minmax_element(values.begin(), values.end());
    h.lo = *mn;
    h.hi = *mx;
    const double width = h.hi - h.lo;
    for (double v : values) {
        std::size_t b = 0;
        if (width > 0.0) b = std::min(bins - 1, static_cast<std::size_t>((v - h.lo) / width * static_cast<double>(bins)));
        ++h.counts[b];
    }
    return h;
}

ShiftSummary summarize(std::span<const ShiftRecord> records, double threshold) {
    if (records.empty()) throw Error(ErrorCode::EmptyInput, "no shift records to summarize");
    if (!(threshold > 0.0)) throw Error(ErrorCode::InvalidArgument, "threshold must be positive");

    ShiftSummary s;
    s.kind = records.front().kind;
    s.threshold = threshold;
    s.n_pairs = records.size();
    std::vector<double> dd, ds;
    for (const auto& r : records) {
        const bool cluster_changed = r.changed_cluster();
        const bool distance_changed = std::abs(r.delta_distance()) >= threshold;
        s.n_changed_cluster += cluster_changed;
        s.n_changed_distance += distance_changed;
        if (cluster_changed || distance_changed) {
            dd.push_back(r.delta_distance());
            ds.push_back(r.delta_size());
        }
    }
    s.n_retained = dd.size();
    const auto n = static_cast<double>(s.n_pairs);
    s.frac_changed_cluster = static_cast<double>(s.n_changed_cluster) / n;
    s.frac_changed_distance = static_cast<double>(s.n_changed_distance) / n;
    s.frac_retained = static_cast<double>(s.n_retained) / n;
    if (!dd.empty()) {
        double sd = 0.0, ss = 0.0;
        for (std::size_t i = 0; i < dd.size(); ++i) {
            sd += dd[i];
            ss += ds[i];
        }
        s.mean_delta_distance = sd / static_cast<double>(dd.size());
        s.mean_delta_cluster_size = ss / static_cast<double>(ds.size());
    }
    s.delta_distance_hist = make_histogram(dd);
    s.delta_size_hist = make_histogram(ds);
    return s;
}

void write_shift_records(std::span<const ShiftRecord> records, std::ostream& out) {
    for (const auto& r : records) {
        nlohmann::ordered_json rec;
        rec["type"] = "record";
        rec["doc_id"] = r.doc_id;
        rec["kind"] = kind_name(r.kind);
        rec["cluster_before"] = r.cluster_before;
        rec["cluster_after"] = r.cluster_after;
        rec["dist_before"] = r.dist_before;
        rec["dist_after"] = r.dist_after;
        rec["size_before"] = r.size_before;
        rec["size_after"] = r.size_after;
        out << rec.dump(-1, ' ', false, nlohmann::json::error_handler_t::strict) << '\n';
    }
    if (!out) throw Error(ErrorCode::Io, "failed to write shift records");
}

void write_shift_summary(const ShiftSummary& s, std::ostream& out) {
    auto hist = [](const Histogram& h) {
        nlohmann::ordered_json j;
        j["lo"] = h.lo;
        j["hi"] = h.hi;
        j["counts"] = h.counts;
        return j;
    };
    nlohmann::ordered_json rec;
    rec["type"] = "summary";
    rec["kind"] = kind_name(s.kind);
    rec["threshold"] = s.threshold;
    rec["n_pairs"] = s.n_pairs;
    rec["n_changed_cluster"] = s.n_changed_cluster;
    rec["n_changed_distance"] = s.n_changed_distance;
    rec["n_retained"] = s.n_retained;
    rec["frac_changed_cluster"] = s.frac_changed_cluster;
    rec["frac_changed_distance"] = s.frac_changed_distance;
    rec["frac_retained"] = s.frac_retained;
    rec["mean_delta_distance"] = s.mean_delta_distance ? nlohmann::ordered_json(*s.mean_delta_distance) : nullptr;
    rec["mean_delta_cluster_size"] =
        s.mean_delta_cluster_size ? nlohmann::ordered_json(*s.mean_delta_cluster_size) : nullptr;
    rec["delta_distance_hist"] = hist(s.delta_distance_hist);
    rec["delta_size_hist"] = hist(s.delta_size_hist);
    out << rec.dump(-1, ' ', false, nlohmann::json::error_handler_t::strict) << '\n';
    if (!out) throw Error(ErrorCode::Io, "failed to write shift summary");
}

std::string format_shift_table(std::span<const ShiftSummary> summaries) {
    constexpr int kLabel = 40, kCol = 24;
    std::string out;
    char buf[128];
    std::snprintf(buf, sizeof buf, "%-*s", kLabel, "");
    out += buf;
    for (const auto& s : summaries) {
        std::snprintf(buf, sizeof buf, "%*s", kCol, std::string(kind_name(s.kind)).c_str());
        out += buf;
    }
    out += '\n';
    auto row = [&](const char* label, auto field) {
        std::snprintf(buf, sizeof buf, "%-*s", kLabel, label);
        out += buf;
        for (const auto& s : summaries) {
            std::snprintf(buf, sizeof buf, "%*.2f", kCol, field(s));
            out += buf;
        }
        out += '\n';
    };
    row("Changed cluster", [](const ShiftSummary& s) { return s.frac_changed_cluster; });
    row("Changed distance from cluster centroid", [](const ShiftSummary& s) { return s.frac_changed_distance; });
    return out;
}

}  // namespace scip
