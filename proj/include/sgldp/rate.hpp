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
#include <optional>
#include <utility>
#include <vector>

#include "sgldp/coloured.hpp"
#include "sgldp/ext_real.hpp"
#include "sgldp/graphon.hpp"
#include "sgldp/matrix.hpp"

namespace sgldp {

/// Bernoulli relative entropy h_p(rho) in nats, with 0 log 0 = 0.
ExtReal rel_entropy(double p, double rho);

/// (1/2) sum_{i,j} w_i w_j h_p(u_ij) over positive-weight cells.
ExtReal rate_Ip(double p, const StepGraphon& u);

/// Coloured rate: each cell pays h at the p entry of its colour pair.
ExtReal rate_Ik(const Matrix& p, const ColouredStepGraphon& a);

struct RateBudget {
    unsigned restarts = 64;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    /// Simplex grid step is 1/grid_resolution in rate_R.
    unsigned grid_resolution = 20;
    /// Restarts spent on each grid point and descent probe of rate_R.
    unsigned grid_restarts = 8;
    /// Up to this many coupling cells the finiteness phase enumerates all
    /// maximal support patterns.
    std::size_t exact_pattern_cells = 24;
};

struct RateReport {
    ExtReal value;
    std::optional<OverlapCoupling> witness_coupling;
    std::optional<PartWeights> witness_alpha;
    /// Restarts (J) or alpha evaluations (R) actually spent.
    std::size_t budget_used = 0;
    /// True when +inf was established by exhaustive pattern enumeration.
    bool infinity_certified = false;
};

/// alpha divided by its 1-norm; zeros stay zero.
std::vector<double> normalize_alpha(const std::vector<double>& alpha);

/// The coupling objective: (1/2) sum C[a][i] C[b][j] h_{p_ij}(u_ab) for a
/// coupling C of u's parts (rows) with the normalized alpha (columns).
ExtReal j_objective(const Matrix& p, const StepGraphon& u, const Matrix& coupling);

/// The objective at the interval-overlap coupling of u with alpha.
ExtReal block_entropy(const std::vector<double>& alpha, const Matrix& p, const StepGraphon& u);

/// Upper bound on J over couplings of u's parts with the alpha intervals.
RateReport rate_J(const std::vector<double>& alpha, const Matrix& p, const StepGraphon& u,
                  const RateBudget& budget = {});

/// Minimum of rate_J over the unit simplex: grid search then pattern descent.
RateReport rate_R(const Matrix& p, const StepGraphon& u, const RateBudget& budget = {});

/// Every simplex point of rate_R's grid, in the order they are probed.
std::vector<std::vector<double>> simplex_grid(std::size_t k, unsigned resolution);

struct ReweightResult {
    StepGraphon v;
    double epsilon = 0.0;
    double bound = 0.0;
};

/// Pull-back of u along the map sending each kappa interval linearly onto the
/// matching gamma interval; bound = 2 * epsilon with epsilon the least value
/// such that kappa_i <= (1 + epsilon) gamma_i.
ReweightResult reweight_witness(const std::vector<double>& gamma, const std::vector<double>& kappa,
                                const StepGraphon& u);

}  // namespace sgldp
