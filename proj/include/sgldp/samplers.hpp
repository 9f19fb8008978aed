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


#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "sgldp/graphon.hpp"
#include "sgldp/matrix.hpp"

namespace sgldp {

/// Block sizes and block-pair edge probabilities of G(a, p).
struct BlockSpec {
    std::vector<std::size_t> a;
    Matrix p;

    std::size_t n() const;
    std::size_t k() const { return a.size(); }
    /// Block of each vertex; blocks are consecutive runs of vertices.
    std::vector<std::size_t> block_of() const;
    void validate() const;
};

LabeledGraph sample_block(const BlockSpec& spec, std::uint64_t seed);

struct WRandomSample {
    LabeledGraph graph;
    std::vector<std::size_t> parts;         // latent part of each vertex
    std::vector<std::size_t> block_counts;  // vertices per part of w
};

WRandomSample sample_wrandom(std::size_t n, const StepGraphon& w, std::uint64_t seed);

/// Two block-model graphs sharing coins on aligned vertex pairs.
struct CoupledPair {
    LabeledGraph g;
    LabeledGraph h;
    std::vector<std::size_t> a, b;
    /// (vertex of g, vertex of h) for every aligned vertex, in g order.
    std::vector<std::pair<std::size_t, std::size_t>> alignment;
    double epsilon = 0.0;
};

/// epsilon = |b - a|_1 / min(|a|_1, |b|_1).
double coupling_epsilon(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b);

CoupledPair coupled_block_sample(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b,
                                 const Matrix& p, std::uint64_t seed);

/// True when the alignment maps g's aligned subgraph isomorphically onto h's.
bool alignment_is_isomorphism(const CoupledPair& pair);

/// 2(1/s_g - 1) + 2(1/s_h - 1) with s the aligned fraction of each graph.
/// Throws when the alignment is not an isomorphism of the aligned subgraphs.
double alignment_distance_bound(const CoupledPair& pair);

}  // namespace sgldp
