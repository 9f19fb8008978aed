/*
 * Copyright 2026 The sgldp Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */


#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "sgldp/error.hpp"
#include "sgldp/samplers.hpp"
#include "testutil.hpp"

namespace sgldp {
namespace {

using testing::binom_pmf;
using testing::chi2_pvalue;

TEST(SampleBlock, IdentityIsDeterministic) {
    BlockSpec s{{2, 2}, Matrix::from_rows({{1, 0}, {0, 1}})};
    for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
        auto g = sample_block(s, seed);
        EXPECT_EQ(g.n(), 4u);
        EXPECT_EQ(g.edges(), (std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {2, 3}}));
    }
    EXPECT_EQ(s.block_of(), (std::vector<std::size_t>{0, 0, 1, 1}));
}

TEST(SampleBlock, SameSeedSameGraph) {
    BlockSpec s{{5, 4, 3}, Matrix::from_rows({{0.3, 0.5, 0.1}, {0.5, 0.6, 0.2}, {0.1, 0.2, 0.9}})};
    EXPECT_EQ(sample_block(s, 42), sample_block(s, 42));
    EXPECT_NE(sample_block(s, 42), sample_block(s, 43));
}

TEST(SampleBlock, Validation) {
    EXPECT_THROW(sample_block(BlockSpec{{}, Matrix(0, 0)}, 1), Error);
    EXPECT_THROW(sample_block(BlockSpec{{0, 0}, Matrix(2, 2, 0.5)}, 1), Error);
    EXPECT_THROW(sample_block(BlockSpec{{2}, Matrix(2, 2, 0.5)}, 1), Error);
    EXPECT_THROW(sample_block(BlockSpec{{2, 1}, Matrix::from_rows({{0.5, 0.2}, {0.3, 0.5}})}, 1), Error);
    EXPECT_THROW(sample_block(BlockSpec{{2}, Matrix(1, 1, 1.5)}, 1), Error);
}

TEST(SampleBlock, EdgeFrequencies) {
    BlockSpec s{{3, 3}, Matrix(2, 2, 0.5)};
    const std::size_t trials = 100000;
    std::vector<double> per_pair(36, 0.0);
    double total = 0.0;
    for (std::size_t t = 0; t < trials; ++t) {
        auto g = sample_block(s, t);
        for (auto [u, v] : g.edges()) {
            per_pair[u * 6 + v] += 1.0;
            total += 1.0;
        }
    }
    const double sd_all = std::sqrt(0.25 / (15.0 * trials));
    EXPECT_NEAR(total / (15.0 * trials), 0.5, 3 * sd_all);
    const double sd = std::sqrt(0.25 / trials);
    for (std::size_t u = 0; u < 6; ++u)
        for (std::size_t v = u + 1; v < 6; ++v) EXPECT_NEAR(per_pair[u * 6 + v] / trials, 0.5, 4 * sd);
}

TEST(SampleBlock, DistinctBlockProbabilities) {
    Matrix p = Matrix::from_rows({{0.9, 0.2}, {0.2, 0.4}});
    BlockSpec s{{2, 3}, p};
    const std::size_t trials = 40000;
    std::vector<double> count(25, 0.0);
    for (std::size_t t = 0; t < trials; ++t)
        for (auto [u, v] : sample_block(s, 1000 + t).edges()) count[u * 5 + v] += 1.0;
    const auto blk = s.block_of();
    for (std::size_t u = 0; u < 5; ++u)
        for (std::size_t v = u + 1; v < 5; ++v) {
            const double q = p(blk[u], blk[v]);
            EXPECT_NEAR(count[u * 5 + v] / trials, q, 4 * std::sqrt(q * (1 - q) / trials));
        }
}

TEST(SampleWRandom, ConstantOneIsComplete) {
    auto r = sample_wrandom(7, StepGraphon::constant(1.0), 3);
    EXPECT_EQ(r.graph.edge_count(), 21u);
    EXPECT_EQ(r.block_counts, (std::vector<std::size_t>{7}));
    EXPECT_EQ(sample_wrandom(0, StepGraphon::constant(1.0), 3).graph.n(), 0u);
}

TEST(SampleWRandom, ConstantEdgeCountIsBinomial) {
    const double p = 0.3;
    const std::size_t trials = 10000;
    std::vector<double> obs(16, 0.0), exp(16, 0.0);
    for (std::size_t t = 0; t < trials; ++t) obs[sample_wrandom(6, StepGraphon::constant(p), t).graph.edge_count()] += 1;
    for (std::size_t k = 0; k <= 15; ++k) exp[k] = trials * binom_pmf(15, k, p);
    EXPECT_GT(chi2_pvalue(obs, exp), 0.001);
}

TEST(SampleWRandom, BlockCountsAreMultinomial) {
    auto w = make_step_graphon({0.3, 0.7}, Matrix(2, 2, 0.5));
    const std::size_t trials = 100000;
    std::vector<double> obs(11, 0.0), exp(11, 0.0);
    for (std::size_t t = 0; t < trials; ++t) {
        auto r = sample_wrandom(10, w, t);
        ASSERT_EQ(r.block_counts[0] + r.block_counts[1], 10u);
        obs[r.block_counts[0]] += 1;
    }
    for (std::size_t k = 0; k <= 10; ++k) exp[k] = trials * binom_pmf(10, k, 0.3);
    EXPECT_GT(chi2_pvalue(obs, exp), 0.001);
}

TEST(SampleWRandom, LatentPartsDriveEdges) {
    auto w = make_step_graphon({0.5, 0.5}, Matrix::from_rows({{1, 0}, {0, 1}}));
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto r = sample_wrandom(8, w, seed);
        for (std::size_t u = 0; u < 8; ++u)
            for (std::size_t v = u + 1; v < 8; ++v) EXPECT_EQ(r.graph.has_edge(u, v), r.parts[u] == r.parts[v]);
    }
    EXPECT_EQ(sample_wrandom(9, w, 5).graph, sample_wrandom(9, w, 5).graph);
}

TEST(Coupled, EqualSizesGiveEqualGraphs) {
    Matrix p = Matrix::from_rows({{0.4, 0.1}, {0.1, 0.7}});
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        auto c = coupled_block_sample({3, 4}, {3, 4}, p, seed);
        EXPECT_EQ(c.g, c.h);
        EXPECT_EQ(c.alignment.size(), 7u);
        EXPECT_EQ(c.epsilon, 0.0);
        EXPECT_EQ(alignment_distance_bound(c), 0.0);
    }
}

TEST(Coupled, ThreeThreeVersusFourThree) {
    Matrix p(2, 2, 0.5);
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        auto c = coupled_block_sample({3, 3}, {4, 3}, p, seed);
        EXPECT_NEAR(c.epsilon, 1.0 / 6.0, 1e-15);
        EXPECT_EQ(c.alignment.size(), 6u);
        EXPECT_TRUE(alignment_is_isomorphism(c));
        EXPECT_NEAR(alignment_distance_bound(c), 1.0 / 3.0, 1e-12);
        EXPECT_LE(alignment_distance_bound(c), 0.8);
        // lowest indices of each block, in order
        EXPECT_EQ(c.alignment[3], (std::pair<std::size_t, std::size_t>{3, 4}));
    }
}

TEST(Coupled, BoundAgainstEpsilon) {
    Rng rng(1);
    int checked = 0;
    while (checked < 1000) {
        const std::size_t k = 1 + rng.below(3);
        std::vector<std::size_t> a(k), b(k);
        for (std::size_t i = 0; i < k; ++i) {
            a[i] = 5 + rng.below(20);
            b[i] = a[i] + rng.below(3) - (a[i] > 1 ? rng.below(2) : 0);
        }
        const double eps = coupling_epsilon(a, b);
        if (eps > 0.1) continue;
        auto c = coupled_block_sample(a, b, testing::random_symmetric(rng, k), checked);
        EXPECT_TRUE(alignment_is_isomorphism(c));
        EXPECT_LE(alignment_distance_bound(c), 4 * eps / (1 - eps) + 1e-12);
        ++checked;
    }
}

TEST(Coupled, MarginalsAreUndistorted) {
    Matrix p = Matrix::from_rows({{0.6, 0.2}, {0.2, 0.3}});
    const std::vector<std::size_t> a{2, 2}, b{3, 2};
    const std::size_t trials = 10000;
    std::vector<double> cg(16, 0.0), ch(25, 0.0);
    for (std::size_t t = 0; t < trials; ++t) {
        auto c = coupled_block_sample(a, b, p, t);
        for (auto [u, v] : c.g.edges()) cg[u * 4 + v] += 1;
        for (auto [u, v] : c.h.edges()) ch[u * 5 + v] += 1;
    }
    auto check = [&](const std::vector<double>& cnt, const BlockSpec& s) {
        const auto blk = s.block_of();
        const std::size_t n = s.n();
        for (std::size_t u = 0; u < n; ++u)
            for (std::size_t v = u + 1; v < n; ++v) {
                const double q = p(blk[u], blk[v]);
                EXPECT_NEAR(cnt[u * n + v] / trials, q, 4 * std::sqrt(q * (1 - q) / trials));
            }
    };
    check(cg, BlockSpec{a, p});
    check(ch, BlockSpec{b, p});
}

TEST(Coupled, BrokenAlignmentIsRejected) {
    auto c = coupled_block_sample({3, 3}, {4, 3}, Matrix(2, 2, 0.5), 9);
    const std::size_t h0 = c.alignment[0].second, h1 = c.alignment[1].second;
    std::vector<std::pair<std::size_t, std::size_t>> e = c.h.edges();
    auto it = std::find(e.begin(), e.end(), std::make_pair(std::min(h0, h1), std::max(h0, h1)));
    if (it == e.end()) e.emplace_back(std::min(h0, h1), std::max(h0, h1));
    else e.erase(it);
    c.h = LabeledGraph(c.h.n(), e);
    EXPECT_FALSE(alignment_is_isomorphism(c));
    EXPECT_THROW(alignment_distance_bound(c), Error);
}

TEST(Coupled, DisjointSupportGivesInfiniteBound) {
    auto c = coupled_block_sample({3, 0}, {0, 3}, Matrix(2, 2, 0.5), 1);
    EXPECT_TRUE(c.alignment.empty());
    EXPECT_TRUE(std::isinf(alignment_distance_bound(c)));
}

}  // namespace
}  // namespace sgldp
