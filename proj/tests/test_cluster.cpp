// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 The SCIP Authors

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <sstream>

#include "scip/cluster.hpp"
#include "scip/error.hpp"
#include "test_support.hpp"

namespace {

using namespace scip;
using scip::testing::make_set;
using scip::testing::unit;

EmbeddingSet random_set(std::size_t n, std::size_t dim, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<float> g;
    std::vector<std::string> ids;
    std::vector<float> rows;
    for (std::size_t i = 0; i < n; ++i) {
        ids.push_back("x" + std::to_string(1000 + i));
        for (std::size_t d = 0; d < dim; ++d) rows.push_back(g(rng));
    }
    return EmbeddingSet(dim, ids, rows);
}

// Spherical objective of a labelling with centroid = normalized member mean.
double partition_objective(const EmbeddingSet& x, const std::vector<int>& label, int k) {
    double total = 0;
    for (int c = 0; c < k; ++c) {
        std::vector<double> mean(x.dim(), 0.0);
        for (std::size_t i = 0; i < x.size(); ++i)
            if (label[i] == c)
                for (std::size_t d = 0; d < x.dim(); ++d) mean[d] += x.row(i)[d];
        double n = 0;
        for (double v : mean) n += v * v;
        n = std::sqrt(n);
        for (std::size_t i = 0; i < x.size(); ++i) {
            if (label[i] != c) continue;
            double dotp = 0;
            for (std::size_t d = 0; d < x.dim(); ++d) dotp += x.row(i)[d] * mean[d] / n;
            total += 1.0 - dotp;
        }
    }
    return total;
}

void expect_model_invariants(const EmbeddingSet& x, const ClusterModel& m) {
    ASSERT_EQ(m.assignment.size(), x.size());
    EXPECT_EQ(std::accumulate(m.sizes.begin(), m.sizes.end(), std::size_t{0}), x.size());
    for (std::size_t c = 0; c < m.k(); ++c) {
        double s = 0;
        for (float v : m.centroid(c)) s += double(v) * v;
        EXPECT_NEAR(std::sqrt(s), 1.0, kUnitNormTolerance);
    }
    for (std::size_t i = 1; i < m.objective_trace.size(); ++i)
        EXPECT_LE(m.objective_trace[i], m.objective_trace[i - 1]);
    // Brute-force nearest centroid scan; ties to the lowest index.
    for (std::size_t i = 0; i < x.size(); ++i) {
        std::size_t best = 0;
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < m.k(); ++c) {
            double dotp = 0;
            for (std::size_t d = 0; d < x.dim(); ++d) dotp += double(x.row(i)[d]) * double(m.centroid(c)[d]);
            if (1.0 - dotp < best_d) {
                best_d = 1.0 - dotp;
                best = c;
            }
        }
        EXPECT_EQ(m.assignment[i].cluster, best);
        EXPECT_NEAR(m.assignment[i].distance, best_d, 1e-12);
    }
}

TEST(KMeans, IdenticalVectorsSingleCluster) {
    const auto x = make_set({{0, 1, 0}, {0, 1, 0}, {0, 1, 0}, {0, 1, 0}});
    const auto m = kmeans(x, {1, 0, 100, 1e-6, 1});
    EXPECT_EQ(std::vector<float>(m.centroid(0).begin(), m.centroid(0).end()), (std::vector<float>{0, 1, 0}));
    EXPECT_EQ(m.objective, 0.0);
    EXPECT_EQ(m.sizes, std::vector<std::size_t>{4});
}

TEST(KMeans, TwoBasisPairsMatchExhaustiveOptimum) {
    const auto x = make_set({{1, 0}, {1, 0}, {0, 1}, {0, 1}});
    // Oracle: every labelling into two non-empty groups.
    double best = std::numeric_limits<double>::infinity();
    std::vector<int> best_label;
    for (int mask = 1; mask < 15; ++mask) {
        std::vector<int> label(4);
        for (int i = 0; i < 4; ++i) label[i] = (mask >> i) & 1;
        const double obj = partition_objective(x, label, 2);
        if (obj < best - 1e-12) {
            best = obj;
            best_label = label;
        }
    }
    EXPECT_NEAR(best, 0.0, 1e-12);
    EXPECT_EQ(best_label[0], best_label[1]);
    EXPECT_EQ(best_label[2], best_label[3]);
    EXPECT_NE(best_label[0], best_label[2]);

    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto m = kmeans(x, {2, seed, 100, 1e-6, 1});
        EXPECT_EQ(m.objective, 0.0);
        EXPECT_EQ(m.assignment[0].cluster, m.assignment[1].cluster);
        EXPECT_EQ(m.assignment[2].cluster, m.assignment[3].cluster);
        EXPECT_NE(m.assignment[0].cluster, m.assignment[2].cluster);
        EXPECT_EQ(m.sizes, (std::vector<std::size_t>{2, 2}));
    }
}

TEST(KMeans, KEqualsNGivesZeroObjective) {
    const auto x = make_set({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}, {1, 1, 0}, {0, 1, 1}});
    const auto m = kmeans(x, {5, 3, 100, 1e-6, 1});
    EXPECT_NEAR(m.objective, 0.0, 1e-7);
    EXPECT_EQ(m.sizes, std::vector<std::size_t>(5, 1));
}

TEST(KMeans, Errors) {
    const auto x = make_set({{1, 0}, {0, 1}});
    EXPECT_THROW(kmeans(x, {3, 0, 100, 1e-6, 1}), Error);
    EXPECT_THROW(kmeans(x, {0, 0, 100, 1e-6, 1}), Error);
    EXPECT_THROW(kmeans(x, {1, 0, 100, 0.0, 1}), Error);
}

TEST(KMeans, MoreClustersThanDistinctPoints) {
    const auto x = make_set({{1, 0}, {1, 0}, {1, 0}, {0, 1}});
    const auto m = kmeans(x, {3, 1, 100, 1e-6, 1});
    expect_model_invariants(x, m);
    EXPECT_EQ(m.objective, 0.0);
}

TEST(KMeans, InvariantsOnRandomData) {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto x = random_set(150, 12, seed);
        const auto m = kmeans(x, {10, seed, 100, 1e-6, 1});
        expect_model_invariants(x, m);
        EXPECT_EQ(m.objective_trace.back(), m.objective);
    }
}

TEST(KMeans, RerunAndThreadCountBitIdentical) {
    const auto x = random_set(300, 16, 42);
    const auto a = kmeans(x, {12, 7, 100, 1e-6, 1});
    EXPECT_EQ(a, kmeans(x, {12, 7, 100, 1e-6, 1}));
    EXPECT_EQ(a, kmeans(x, {12, 7, 100, 1e-6, 4}));
    EXPECT_EQ(model_digest(a), model_digest(kmeans(x, {12, 7, 100, 1e-6, 3})));
}

TEST(KMeans, NoSinglePointMoveLowersObjectiveAtFixedCentroids) {
    const auto x = random_set(60, 5, 9);
    const auto m = kmeans(x, {6, 2, 100, 1e-6, 1});
    for (std::size_t i = 0; i < x.size(); ++i)
        for (std::size_t c = 0; c < m.k(); ++c)
            EXPECT_GE(cosine_distance(x.row(i), m.centroid(c)), m.assignment[i].distance);
}

TEST(KMeans, MaxItersRespected) {
    const auto x = random_set(200, 8, 5);
    const auto m = kmeans(x, {20, 1, 2, 1e-12, 1});
    EXPECT_LE(m.iterations, 2u);
    expect_model_invariants(x, m);
}

TEST(Assign, ReproducesTrainingAssignment) {
    const auto x = random_set(100, 6, 11);
    const auto m = kmeans(x, {7, 0, 100, 1e-6, 1});
    EXPECT_EQ(assign(m, x), m.assignment);
}

TEST(Assign, VectorAtCentroidAndTies) {
    const auto m = scip::testing::make_model(3, {1, 0, 0, 0, 1, 0, 0, 0, 1, 0, 1, 0}, {"a"}, {0}, {0.0});
    // Row equal to centroid 2 (e3), and a row equidistant from centroids 1 and 3 (both e2).
    const auto v = make_set({{0, 0, 1}, {0, 1, 0}, {1, 1, 0}});
    const auto out = assign(m, v);
    EXPECT_EQ(out[0], (Assignment{2, 0.0}));
    EXPECT_EQ(out[1].cluster, 1u);
    EXPECT_EQ(out[2].cluster, 0u);  // e1 and e2 tie; lowest index wins
    EXPECT_THROW(assign(m, make_set({{1, 0}})), Error);
}

TEST(ModelIo, WriteLoadRoundTrip) {
    const auto x = random_set(80, 6, 3);
    const auto m = kmeans(x, {5, 1, 100, 1e-6, 1});
    std::stringstream c, a;
    write_centroids(m, c);
    write_assignments(m, a);
    EXPECT_NE(a.str().find("\"cluster\""), std::string::npos);
    const auto back = load_model(c, a);
    EXPECT_EQ(back.centroids, m.centroids);
    EXPECT_EQ(back.ids, m.ids);
    EXPECT_EQ(back.assignment, m.assignment);
    EXPECT_EQ(back.sizes, m.sizes);
    EXPECT_NEAR(back.objective, m.objective, 1e-9);
}

TEST(ModelIo, CentroidIdsFormatted) {
    const auto m = kmeans(make_set({{1, 0}, {0, 1}}), {2, 0, 10, 1e-6, 1});
    std::stringstream c;
    write_centroids(m, c);
    const auto block = load_embeddings(c);
    EXPECT_EQ(block.id(0), "c0000");
    EXPECT_EQ(block.id(1), "c0001");
}

TEST(ModelIo, BadClusterIndexRejected) {
    const auto m = kmeans(make_set({{1, 0}, {0, 1}}), {2, 0, 10, 1e-6, 1});
    std::stringstream c;
    write_centroids(m, c);
    std::istringstream a(R"({"id":"p00","cluster":5,"distance":0.0})");
    EXPECT_THROW(load_model(c, a), Error);
}

}  // namespace
