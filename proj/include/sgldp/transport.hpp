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

// Local search over vertices of a transportation polytope
// {C >= 0 : row sums = rows, column sums = cols}. Vertices are basic feasible
// solutions of the northwest-corner kind; moves pivot one non-basic cell into
// the spanning-tree basis.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "sgldp/matrix.hpp"

namespace sgldp {

using CellList = std::vector<std::pair<std::size_t, std::size_t>>;

/// Basic feasible solution: mass matrix plus its m+n-1 basis cells.
struct TransportVertex {
    Matrix mass;
    CellList basis;
};

TransportVertex northwest_corner(const std::vector<double>& rows, const std::vector<double>& cols,
                                 const std::vector<std::size_t>& row_order,
                                 const std::vector<std::size_t>& col_order);

/// Pivots `entering` into the basis. Returns false for a degenerate move
/// (the coupling would not change).
bool pivot(TransportVertex& v, std::pair<std::size_t, std::size_t> entering);

/// Positive-mass cells, (row, col) lexicographic.
CellList positive_support(const Matrix& mass);

/// Strict weak order used for deterministic tie-breaking between equally
/// good couplings: smaller value, then lexicographically smaller support.
bool better_coupling(double value_a, const Matrix& a, double value_b, const Matrix& b);

struct TransportSearchOptions {
    unsigned restarts = 64;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    /// (row order, col order) pairs used by the first restarts, ahead of the
    /// random orders.
    std::vector<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> preferred_orders;
    /// Cap on objective evaluations per restart.
    std::size_t max_evaluations = 20000;
};

struct TransportSearchResult {
    Matrix mass;
    double value = 0.0;
    unsigned restarts_used = 0;
};

TransportSearchResult transport_search(const std::vector<double>& rows, const std::vector<double>& cols,
                                       const std::function<double(const Matrix&)>& objective,
                                       const TransportSearchOptions& options);

}  // namespace sgldp
