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

// Step graphons on [0,1]: finitely many parts, laid out as consecutive
// intervals in stored order, with a symmetric value matrix. Dividing points
// belong to the interval on their right. Zero-weight parts are kept as given
// and ignored by every metric and rate function.

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "sgldp/matrix.hpp"

namespace sgldp {

inline constexpr double kNormalizationTol = 1e-12;
inline constexpr double kMarginalTol = 1e-10;
inline constexpr double kSymmetryTol = 1e-12;

/// Part measures of an interval partition of [0,1].
class PartWeights {
public:
    PartWeights() = default;

    /// Validates (finite, >= 0, not all zero) and normalizes. Inputs that
    /// already sum to 1 within kNormalizationTol are stored unchanged so that
    /// serialization round-trips bit-exactly.
    explicit PartWeights(std::vector<double> raw);

    static PartWeights uniform(std::size_t m);

    std::size_t size() const { return w_.size(); }
    double operator[](std::size_t i) const { return w_[i]; }
    std::span<const double> values() const { return w_; }
    const std::vector<double>& vec() const { return w_; }

    /// 1-norm of the vector passed to the constructor.
    double original_norm() const { return norm_; }

    /// Interval end points: cumulative()[i] is the right end of part i.
    std::vector<double> cumulative() const;

    std::vector<std::size_t> positive_indices() const;

    bool operator==(const PartWeights& o) const { return w_ == o.w_; }

private:
    std::vector<double> w_;
    double norm_ = 0.0;
};

class StepGraphon {
public:
    StepGraphon() = default;

    /// Validates dimensions, [0,1] range and symmetry within kSymmetryTol,
    /// then symmetrizes exactly by averaging mirrored entries.
    StepGraphon(PartWeights parts, Matrix values);

    static StepGraphon constant(double q);

    const PartWeights& parts() const { return parts_; }
    const Matrix& values() const { return values_; }
    std::size_t size() const { return parts_.size(); }
    double weight(std::size_t i) const { return parts_[i]; }
    double value(std::size_t i, std::size_t j) const { return values_(i, j); }

    bool operator==(const StepGraphon& o) const {
        return parts_ == o.parts_ && values_ == o.values_;
    }

private:
    PartWeights parts_;
    Matrix values_;
};

StepGraphon make_step_graphon(std::vector<double> weights, const Matrix& values);
StepGraphon make_step_graphon(std::vector<double> weights,
                              const std::vector<std::vector<double>>& values);

/// Simple undirected graph on vertices 0..n-1.
class LabeledGraph {
public:
    explicit LabeledGraph(std::size_t n = 0) : n_(n), adj_(n * n, 0) {}
    LabeledGraph(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges);

    std::size_t n() const { return n_; }
    void add_edge(std::size_t u, std::size_t v);
    void remove_edge(std::size_t u, std::size_t v);
    bool has_edge(std::size_t u, std::size_t v) const { return adj_[u * n_ + v] != 0; }
    std::size_t edge_count() const;

    /// Edges as (u, v) with u < v, lexicographically sorted.
    std::vector<std::pair<std::size_t, std::size_t>> edges() const;

    /// The induced subgraph on `vertices`, relabelled 0..k-1 in that order.
    LabeledGraph induced(std::span<const std::size_t> vertices) const;

    bool operator==(const LabeledGraph&) const = default;

private:
    std::size_t n_;
    std::vector<unsigned char> adj_;
};

/// Nonnegative matrix with prescribed row and column sums: the finite
/// stand-in for a measure-preserving rearrangement between two partitions.
class OverlapCoupling {
public:
    OverlapCoupling() = default;
    OverlapCoupling(Matrix mass, PartWeights rows, PartWeights cols);

    /// Diagonal coupling of a partition with itself.
    static OverlapCoupling identity(const PartWeights& parts);

    /// Overlap lengths of the two interval layouts (northwest-corner rule).
    static OverlapCoupling interval(const PartWeights& rows, const PartWeights& cols);

    const Matrix& mass() const { return mass_; }
    const PartWeights& rows() const { return rows_; }
    const PartWeights& cols() const { return cols_; }
    double operator()(std::size_t a, std::size_t i) const { return mass_(a, i); }

    OverlapCoupling transposed() const;

    /// Positive-mass cells in (row, col) lexicographic order.
    std::vector<std::pair<std::size_t, std::size_t>> support() const;

private:
    Matrix mass_;
    PartWeights rows_;
    PartWeights cols_;
};

/// A partition refining two interval partitions, with both value matrices
/// re-expressed on it.
struct Refinement {
    PartWeights parts;
    std::vector<std::size_t> from_u;  // refined part -> part of u
    std::vector<std::size_t> from_v;  // refined part -> part of v
    Matrix u_values;
    Matrix v_values;
};

/// Interval overlay of two partitions: (length, index in a, index in b) for
/// every non-empty intersection, left to right.
struct OverlayPiece {
    double length;
    std::size_t a;
    std::size_t b;
};
std::vector<OverlayPiece> overlay(const PartWeights& a, const PartWeights& b);

StepGraphon graph_to_graphon(const LabeledGraph& g);

Refinement common_refinement(const StepGraphon& u, const StepGraphon& v);

/// Pull-back of u along the rearrangement described by c. Cell (a,i) of the
/// result has weight c(a,i) and sits inside target part i; cells are ordered
/// by target part, then by part of u. Zero-mass cells are dropped.
StepGraphon apply_coupling(const StepGraphon& u, const PartWeights& target, const OverlapCoupling& c);

/// Pull-back along x -> s*x for s in (0,1].
StepGraphon stretch_pullback(const StepGraphon& u, double s);

/// Block averages of u over a coarser partition. grouping[a] is the coarse
/// part of fine part a and must hit every index in [0, m').
StepGraphon project_steps(const StepGraphon& u, std::span<const std::size_t> grouping);

/// The coarse graphon written back on the fine partition.
StepGraphon expand_steps(const StepGraphon& coarse, std::span<const std::size_t> grouping,
                         const PartWeights& fine);

/// Reorders parts: result part t is u's part order[t].
StepGraphon permute_parts(const StepGraphon& u, std::span<const std::size_t> order);

double edge_density(const StepGraphon& u);

}  // namespace sgldp
