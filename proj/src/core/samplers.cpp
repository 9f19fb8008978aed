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


#include "sgldp/samplers.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "sgldp/error.hpp"
#include "sgldp/random.hpp"

namespace sgldp {

namespace {

// Stream tags keep the coin families of one seed apart.
constexpr std::uint64_t kTagBlock = 0xb10c;
constexpr std::uint64_t kTagLatent = 0x1a7e;
constexpr std::uint64_t kTagWEdge = 0xed9e;
constexpr std::uint64_t kTagShared = 0x5a4e;
constexpr std::uint64_t kTagOnlyG = 0x6006;
constexpr std::uint64_t kTagOnlyH = 0x4004;

bool pair_coin(std::uint64_t seed, std::uint64_t tag, std::size_t x, std::size_t y, double prob) {
    if (x > y) std::swap(x, y);
    return unit_from_bits(hash_key(seed, {tag, x, y})) < prob;
}

void validate_p(const Matrix& p, std::size_t k) {
    if (p.rows() != k || p.cols() != k)
        fail_invalid("block spec: p must be " + std::to_string(k) + " x " + std::to_string(k));
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) {
            if (!(p(i, j) >= 0.0 && p(i, j) <= 1.0)) fail_invalid("block spec: p entry outside [0,1]");
            if (p(i, j) != p(j, i)) fail_invalid("block spec: p must be symmetric");
        }
}

std::vector<std::size_t> blocks_for(const std::vector<std::size_t>& a) {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < a.size(); ++i) out.insert(out.end(), a[i], i);
    return out;
}

}  // namespace

std::size_t BlockSpec::n() const {
    std::size_t s = 0;
    for (std::size_t x : a) s += x;
    return s;
}

std::vector<std::size_t> BlockSpec::block_of() const { return blocks_for(a); }

void BlockSpec::validate() const {
    if (a.empty() || n() == 0) fail_invalid("block spec: block sizes must sum to at least 1");
    validate_p(p, a.size());
}

LabeledGraph sample_block(const BlockSpec& spec, std::uint64_t seed) {
    spec.validate();
    const auto blk = spec.block_of();
    const std::size_t n = blk.size();
    LabeledGraph g(n);
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
            if (pair_coin(seed, kTagBlock, x, y, spec.p(blk[x], blk[y]))) g.add_edge(x, y);
    return g;
}

WRandomSample sample_wrandom(std::size_t n, const StepGraphon& w, std::uint64_t seed) {
    const auto cum = w.parts().cumulative();
    const auto pos = w.parts().positive_indices();
    WRandomSample s{LabeledGraph(n), std::vector<std::size_t>(n), std::vector<std::size_t>(w.size(), 0)};
    for (std::size_t t = 0; t < n; ++t) {
        const double x = unit_from_bits(hash_key(seed, {kTagLatent, t}));
        // Dividing points belong to the right-hand part.
        std::size_t part = pos.back();
        for (std::size_t i : pos)
            if (x < cum[i]) {
                part = i;
                break;
            }
        s.parts[t] = part;
        ++s.block_counts[part];
    }
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y)
            if (pair_coin(seed, kTagWEdge, x, y, w.value(s.parts[x], s.parts[y]))) s.graph.add_edge(x, y);
    return s;
}

double coupling_epsilon(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    if (a.size() != b.size()) fail_invalid("coupling: a and b have different block counts");
    std::size_t na = 0, nb = 0, diff = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        na += a[i];
        nb += b[i];
        diff += a[i] > b[i] ? a[i] - b[i] : b[i] - a[i];
    }
    if (na == 0 || nb == 0) fail_invalid("coupling: both block vectors must be non-zero");
    return static_cast<double>(diff) / static_cast<double>(std::min(na, nb));
}

CoupledPair coupled_block_sample(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
                                 const Matrix& p, std::uint64_t seed) {
    CoupledPair pair;
    pair.epsilon = coupling_epsilon(a, b);
    validate_p(p, a.size());
    pair.a = a;
    pair.b = b;
    const auto bg = blocks_for(a), bh = blocks_for(b);
    const std::size_t ng = bg.size(), nh = bh.size();
    const std::size_t none = std::numeric_limits<std::size_t>::max();
    std::vector<std::size_t> to_h(ng, none), to_g(nh, none);
    std::size_t sa = 0, sb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const std::size_t common = std::min(a[i], b[i]);
        for (std::size_t t = 0; t < common; ++t) {
            to_h[sa + t] = sb + t;
            to_g[sb + t] = sa + t;
            pair.alignment.emplace_back(sa + t, sb + t);
        }
        sa += a[i];
        sb += b[i];
    }
    pair.g = LabeledGraph(ng);
    pair.h = LabeledGraph(nh);
    // Aligned pairs are keyed by their g labels, so both graphs read the same
    // coin no matter which side asks.
    for (std::size_t x = 0; x < ng; ++x)
        for (std::size_t y = x + 1; y < ng; ++y) {
            const double q = p(bg[x], bg[y]);
            const bool shared = to_h[x] != none && to_h[y] != none;
            if (pair_coin(seed, shared ? kTagShared : kTagOnlyG, x, y, q)) pair.g.add_edge(x, y);
        }
    for (std::size_t x = 0; x < nh; ++x)
        for (std::size_t y = x + 1; y < nh; ++y) {
            const double q = p(bh[x], bh[y]);
            const bool shared = to_g[x] != none && to_g[y] != none;
            const bool e = shared ? pair_coin(seed, kTagShared, to_g[x], to_g[y], q)
                                  : pair_coin(seed, kTagOnlyH, x, y, q);
            if (e) pair.h.add_edge(x, y);
        }
    return pair;
}

bool alignment_is_isomorphism(const CoupledPair& pair) {
    const auto& al = pair.alignment;
    for (std::size_t s = 0; s < al.size(); ++s)
        for (std::size_t t = s + 1; t < al.size(); ++t)
            if (pair.g.has_edge(al[s].first, al[t].first) != pair.h.has_edge(al[s].second, al[t].second))
                return false;
    return true;
}

double alignment_distance_bound(const CoupledPair& pair) {
    if (!alignment_is_isomorphism(pair))
        fail_runtime("coupled pair: the alignment is not an isomorphism of the aligned subgraphs");
    const double aligned = static_cast<double>(pair.alignment.size());
    if (aligned == 0.0) return std::numeric_limits<double>::infinity();
    const double sg = aligned / static_cast<double>(pair.g.n());
    const double sh = aligned / static_cast<double>(pair.h.n());
    return 2.0 * (1.0 / sg - 1.0) + 2.0 * (1.0 / sh - 1.0);
}

}  // namespace sgldp
