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

#include "sgldp/transport.hpp"

#include <algorithm>
#include <numeric>

#include "sgldp/error.hpp"
#include "sgldp/parallel.hpp"
#include "sgldp/random.hpp"

namespace sgldp {

namespace {

// Remaining masses below this are exhausted; pivots moving less are
// degenerate.
constexpr double kMassEps = 1e-15;

std::vector<std::size_t> iota_vec(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

// Path of basis cells from row node `row` to column node `col` in the basis
// spanning tree, listed from the column end. Nodes: rows 0..m-1, cols m..m+n-1.
CellList tree_path(const CellList& basis, std::size_t m, std::size_t n, std::size_t row, std::size_t col) {
    const std::size_t nodes = m + n;
    std::vector<std::vector<std::size_t>> adj(nodes);
    for (std::size_t e = 0; e < basis.size(); ++e) {
        adj[basis[e].first].push_back(e);
        adj[m + basis[e].second].push_back(e);
    }
    const std::size_t none = static_cast<std::size_t>(-1);
    std::vector<std::size_t> via(nodes, none);
    std::vector<bool> seen(nodes, false);
    std::vector<std::size_t> stack{row};
    seen[row] = true;
    const std::size_t target = m + col;
    while (!stack.empty()) {
        const std::size_t x = stack.back();
        stack.pop_back();
        if (x == target) break;
        for (std::size_t e : adj[x]) {
            const std::size_t y = x < m ? m + basis[e].second : basis[e].first;
            if (!seen[y]) {
                seen[y] = true;
                via[y] = e;
                stack.push_back(y);
            }
        }
    }
    CellList path;
    if (!seen[target]) return path;
    std::size_t x = target;
    while (x != row) {
        const std::size_t e = via[x];
        path.push_back(basis[e]);
        x = x < m ? m + basis[e].second : basis[e].first;
    }
    return path;
}

}  // namespace

TransportVertex northwest_corner(const std::vector<double>& rows, const std::vector<double>& cols,
                                 const std::vector<std::size_t>& row_order,
                                 const std::vector<std::size_t>& col_order) {
    const std::size_t m = rows.size(), n = cols.size();
    TransportVertex v{Matrix(m, n), {}};
    if (m == 0 || n == 0) return v;
    std::size_t i = 0, j = 0;
    double rr = rows[row_order[0]], cc = cols[col_order[0]];
    for (;;) {
        const double x = std::max(0.0, std::min(rr, cc));
        const std::size_t a = row_order[i], b = col_order[j];
        v.mass(a, b) += x;
        v.basis.emplace_back(a, b);
        if (i + 1 == m && j + 1 == n) break;
        if (j + 1 == n || (i + 1 < m && rr - x <= cc - x)) {
            cc = std::max(0.0, cc - x);
            ++i;
            rr = rows[row_order[i]];
        } else {
            rr = std::max(0.0, rr - x);
            ++j;
            cc = cols[col_order[j]];
        }
    }
    return v;
}

bool pivot(TransportVertex& v, std::pair<std::size_t, std::size_t> entering) {
    const std::size_t m = v.mass.rows(), n = v.mass.cols();
    const CellList path = tree_path(v.basis, m, n, entering.first, entering.second);
    if (path.empty()) fail_runtime("transport pivot: basis is not a spanning tree");
    // path[0] touches the entering column and gets -, then signs alternate.
    double theta = v.mass(path[0].first, path[0].second);
    std::size_t leaving = 0;
    for (std::size_t k = 0; k < path.size(); k += 2) {
        const double x = v.mass(path[k].first, path[k].second);
        if (x < theta || (x == theta && path[k] < path[leaving])) {
            theta = x;
            leaving = k;
        }
    }
    if (theta <= kMassEps) return false;
    v.mass(entering.first, entering.second) += theta;
    for (std::size_t k = 0; k < path.size(); ++k) {
        double& cell = v.mass(path[k].first, path[k].second);
        if (k % 2 == 0) {
            cell = k == leaving ? 0.0 : std::max(0.0, cell - theta);
        } else {
            cell += theta;
        }
    }
    const auto it = std::find(v.basis.begin(), v.basis.end(), path[leaving]);
    *it = entering;
    return true;
}

CellList positive_support(const Matrix& mass) {
    CellList s;
    for (std::size_t a = 0; a < mass.rows(); ++a)
        for (std::size_t i = 0; i < mass.cols(); ++i)
            if (mass(a, i) > 0.0) s.emplace_back(a, i);
    return s;
}

bool better_coupling(double value_a, const Matrix& a, double value_b, const Matrix& b) {
    if (value_a != value_b) return value_a < value_b;
    return positive_support(a) < positive_support(b);
}

TransportSearchResult transport_search(const std::vector<double>& rows, const std::vector<double>& cols,
                                       const std::function<double(const Matrix&)>& objective,
                                       const TransportSearchOptions& options) {
    const std::size_t m = rows.size(), n = cols.size();
    if (m == 0 || n == 0) fail_invalid("transport search: empty marginals");
    const unsigned restarts = std::max(1u, options.restarts);

    std::vector<Matrix> masses(restarts);
    std::vector<double> values(restarts);

    parallel_for(restarts, options.jobs, [&](std::size_t r) {
        Rng rng(derive_seed(options.seed, r));
        std::vector<std::size_t> ro, co;
        if (r == 0) {
            ro = iota_vec(m);
            co = iota_vec(n);
        } else if (r - 1 < options.preferred_orders.size()) {
            ro = options.preferred_orders[r - 1].first;
            co = options.preferred_orders[r - 1].second;
        } else {
            ro = iota_vec(m);
            co = iota_vec(n);
            rng.shuffle(std::span<std::size_t>(ro));
            rng.shuffle(std::span<std::size_t>(co));
        }
        TransportVertex cur = northwest_corner(rows, cols, ro, co);
        double val = objective(cur.mass);
        std::size_t evals = 1;

        std::vector<std::pair<std::size_t, std::size_t>> cells;
        cells.reserve(m * n);
        bool improved = true;
        while (improved && evals < options.max_evaluations) {
            improved = false;
            cells.clear();
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t i = 0; i < n; ++i)
                    if (std::find(cur.basis.begin(), cur.basis.end(), std::make_pair(a, i)) ==
                        cur.basis.end())
                        cells.emplace_back(a, i);
            rng.shuffle(std::span<std::pair<std::size_t, std::size_t>>(cells));
            for (const auto& cell : cells) {
                TransportVertex trial = cur;
                if (!pivot(trial, cell)) continue;
                const double tv = objective(trial.mass);
                ++evals;
                if (tv < val - 1e-12) {
                    cur = std::move(trial);
                    val = tv;
                    improved = true;
                    break;
                }
                if (evals >= options.max_evaluations) break;
            }
        }
        masses[r] = std::move(cur.mass);
        values[r] = val;
    });

    std::size_t best = 0;
    for (std::size_t r = 1; r < restarts; ++r)
        if (better_coupling(values[r], masses[r], values[best], masses[best])) best = r;
    return {std::move(masses[best]), values[best], restarts};
}

}  // namespace sgldp
