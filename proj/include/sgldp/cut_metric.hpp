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

#include "sgldp/graphon.hpp"
#include "sgldp/matrix.hpp"

namespace sgldp {

/// Largest number of positive-weight parts handled by exhaustive cut-norm
/// enumeration.
inline constexpr std::size_t kExactCutNormMaxParts = 22;

/// Symmetric step kernel with values in [-1,1], e.g. the difference of two
/// graphons on a common partition.
class SignedStepFn {
public:
    SignedStepFn(PartWeights parts, Matrix values);

    const PartWeights& parts() const { return parts_; }
    const Matrix& values() const { return values_; }
    std::size_t size() const { return parts_.size(); }

    /// values scaled by the part masses, restricted to positive-weight parts:
    /// entry (p,q) is w_p * w_q * f(p,q).
    Matrix weighted_kernel() const;

private:
    PartWeights parts_;
    Matrix values_;
};

/// u - v on their common interval refinement.
SignedStepFn difference(const StepGraphon& u, const StepGraphon& v);

/// u - v on the cells of the coupling c (u's parts are rows).
SignedStepFn coupled_difference(const StepGraphon& u, const StepGraphon& v, const OverlapCoupling& c);

/// max over part unions A, B of sum_{p in A, q in B} kernel(p,q); the empty
/// pair gives 0, so the result is >= 0. Gray-code enumeration of A with the
/// best B read off by sign.
double max_bilinear_exact(const Matrix& kernel);

/// Exact cut norm by enumeration; throws TooLarge above kExactCutNormMaxParts.
double cut_norm_exact(const SignedStepFn& f);

/// Lower bound on the cut norm from alternating best responses. Restart 0
/// starts from the full set; later restarts from seeded random sets.
double cut_norm_alternating(const SignedStepFn& f, unsigned restarts, std::uint64_t seed);

/// Exact when feasible, otherwise alternating with 64 restarts and seed 0.
double cut_norm(const SignedStepFn& f);

/// Cut norm of u - v on the coupling's cells: an upper bound on the cut
/// distance.
double cut_distance_upper(const StepGraphon& u, const StepGraphon& v, const OverlapCoupling& c);

struct SearchBudget {
    unsigned restarts = 64;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
};

struct DistanceEstimate {
    double upper = 1.0;
    OverlapCoupling witness;
    unsigned restarts_used = 0;
};

/// Multi-start vertex search over the transportation polytope between the
/// two part lists. Deterministic for a given budget; adding restarts never
/// raises the bound; search(u,v) and search(v,u) agree with transposed
/// witnesses.
DistanceEstimate cut_distance_search(const StepGraphon& u, const StepGraphon& v,
                                     const SearchBudget& budget = {});

/// Minimum over vertex bijections of the cut norm of the labelled overlay.
/// Both graphs need the same n <= 8.
double graph_cut_distance_exact(const LabeledGraph& g, const LabeledGraph& h);

}  // namespace sgldp
