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

#include "sgldp/cut_metric.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <string>

#include "sgldp/error.hpp"
#include "sgldp/random.hpp"
#include "sgldp/transport.hpp"

namespace sgldp {

SignedStepFn::SignedStepFn(PartWeights parts, Matrix values)
    : parts_(std::move(parts)), values_(std::move(values)) {
    const std::size_t m = parts_.size();
    if (values_.rows() != m || values_.cols() != m) fail_invalid("signed step function: shape mismatch");
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double x = values_(i, j);
            if (!(x >= -1.0 && x <= 1.0)) fail_invalid("signed step function: value outside [-1,1]");
            if (std::abs(x - values_(j, i)) > kSymmetryTol)
                fail_invalid("signed step function: values not symmetric");
        }
    }
}

Matrix SignedStepFn::weighted_kernel() const {
    const auto idx = parts_.positive_indices();
    Matrix k(idx.size(), idx.size());
    for (std::size_t p = 0; p < idx.size(); ++p)
        for (std::size_t q = 0; q < idx.size(); ++q)
            k(p, q) = parts_[idx[p]] * parts_[idx[q]] * values_(idx[p], idx[q]);
    return k;
}

SignedStepFn difference(const StepGraphon& u, const StepGraphon& v) {
    const Refinement r = common_refinement(u, v);
    Matrix d(r.parts.size(), r.parts.size());
    for (std::size_t s = 0; s < r.parts.size(); ++s)
        for (std::size_t t = 0; t < r.parts.size(); ++t) d(s, t) = r.u_values(s, t) - r.v_values(s, t);
    return SignedStepFn(r.parts, std::move(d));
}

SignedStepFn coupled_difference(const StepGraphon& u, const StepGraphon& v, const OverlapCoupling& c) {
    const Matrix& mass = c.mass();
    if (mass.rows() != u.size() || mass.cols() != v.size())
        fail_invalid("coupled difference: coupling shape does not match the graphons");
    for (std::size_t a = 0; a < u.size(); ++a)
        if (std::abs(c.rows()[a] - u.weight(a)) > kMarginalTol)
            fail_invalid("coupled difference: row marginal " + std::to_string(a) + " mismatch");
    for (std::size_t i = 0; i < v.size(); ++i)
        if (std::abs(c.cols()[i] - v.weight(i)) > kMarginalTol)
            fail_invalid("coupled difference: column marginal " + std::to_string(i) + " mismatch");
    std::vector<double> w;
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t a = 0; a < u.size(); ++a)
        for (std::size_t i = 0; i < v.size(); ++i)
            if (mass(a, i) > 0.0) {
                w.push_back(mass(a, i));
                cells.emplace_back(a, i);
            }
    Matrix d(cells.size(), cells.size());
    for (std::size_t s = 0; s < cells.size(); ++s)
        for (std::size_t t = 0; t < cells.size(); ++t)
            d(s, t) = u.value(cells[s].first, cells[t].first) - v.value(cells[s].second, cells[t].second);
    return SignedStepFn(PartWeights(std::move(w)), std::move(d));
}

namespace {

// One pass of Gray-code enumeration returning the best one-sided values for
// +kernel and -kernel together.
std::pair<double, double> max_bilinear_both(const Matrix& k) {
    const std::size_t r = k.rows();
    if (r == 0) return {0.0, 0.0};
    std::vector<double> col(r, 0.0);
    std::uint64_t in_a = 0;
    double best_pos = 0.0, best_neg = 0.0;
    std::uint64_t arg_pos = 0, arg_neg = 0;
    const std::uint64_t total = std::uint64_t{1} << r;
    for (std::uint64_t g = 1; g < total; ++g) {
        const std::size_t bit = static_cast<std::size_t>(std::countr_zero(g));
        const auto rowv = k.row(bit);
        if (in_a & (std::uint64_t{1} << bit)) {
            for (std::size_t q = 0; q < r; ++q) col[q] -= rowv[q];
        } else {
            for (std::size_t q = 0; q < r; ++q) col[q] += rowv[q];
        }
        in_a ^= std::uint64_t{1} << bit;
        double pos = 0.0, neg = 0.0;
        for (std::size_t q = 0; q < r; ++q) {
            const double x = col[q];
            if (x > 0.0) pos += x; else neg -= x;
        }
        if (pos > best_pos) {
            best_pos = pos;
            arg_pos = in_a;
        }
        if (neg > best_neg) {
            best_neg = neg;
            arg_neg = in_a;
        }
    }
    // Re-evaluate the winners from scratch so accumulated rounding in the
    // incremental column sums does not leak into the result.
    auto fresh = [&](std::uint64_t mask, double sign) {
        double total_val = 0.0;
        for (std::size_t q = 0; q < r; ++q) {
            double s = 0.0;
            for (std::size_t p = 0; p < r; ++p)
                if (mask & (std::uint64_t{1} << p)) s += k(p, q);
            s *= sign;
            if (s > 0.0) total_val += s;
        }
        return total_val;
    };
    return {arg_pos ? fresh(arg_pos, 1.0) : 0.0, arg_neg ? fresh(arg_neg, -1.0) : 0.0};
}

// Sum over A x B of sign * kernel, where A, B are membership vectors.
double bilinear(const Matrix& k, const std::vector<char>& a, const std::vector<char>& b, double sign) {
    double s = 0.0;
    for (std::size_t p = 0; p < k.rows(); ++p) {
        if (!a[p]) continue;
        for (std::size_t q = 0; q < k.cols(); ++q)
            if (b[q]) s += k(p, q);
    }
    return sign * s;
}

// Best response: the set of indices whose summed contribution is positive.
void best_response_rows(const Matrix& k, const std::vector<char>& b, double sign, std::vector<char>& a) {
    for (std::size_t p = 0; p < k.rows(); ++p) {
        double s = 0.0;
        for (std::size_t q = 0; q < k.cols(); ++q)
            if (b[q]) s += k(p, q);
        a[p] = sign * s > 0.0;
    }
}

void best_response_cols(const Matrix& k, const std::vector<char>& a, double sign, std::vector<char>& b) {
    for (std::size_t q = 0; q < k.cols(); ++q) {
        double s = 0.0;
        for (std::size_t p = 0; p < k.rows(); ++p)
            if (a[p]) s += k(p, q);
        b[q] = sign * s > 0.0;
    }
}

// Alternating maximization from the column set b; single-element flips of b
// are tried once the alternation reaches a fixed point.
double alternate_from(const Matrix& k, std::vector<char> b, double sign) {
    const std::size_t r = k.rows();
    std::vector<char> a(r, 0);
    auto settle = [&](std::vector<char>& bb, std::vector<char>& aa) {
        double val = -1.0;
        for (;;) {
            best_response_rows(k, bb, sign, aa);
            best_response_cols(k, aa, sign, bb);
            const double v = bilinear(k, aa, bb, sign);
            if (v <= val + 1e-15) return std::max(v, val);
            val = v;
        }
    };
    double best = settle(b, a);
    // Single flips of B first; pairs of flips for small kernels.
    const bool pairs = r <= 16;
    bool improved = true;
    while (improved) {
        improved = false;
        for (std::size_t q = 0; q < r && !improved; ++q) {
            for (std::size_t q2 = q; q2 < (pairs ? r : q + 1) && !improved; ++q2) {
                std::vector<char> b2 = b, a2(r, 0);
                b2[q] = !b2[q];
                if (q2 != q) b2[q2] = !b2[q2];
                const double v = settle(b2, a2);
                if (v > best + 1e-15) {
                    best = v;
                    b = std::move(b2);
                    a = std::move(a2);
                    improved = true;
                }
            }
        }
    }
    return std::max(0.0, best);
}

double alternating_kernel(const Matrix& k, unsigned restarts, std::uint64_t seed) {
    const std::size_t r = k.rows();
    if (r == 0) return 0.0;
    double best = 0.0;
    for (unsigned t = 0; t < std::max(1u, restarts); ++t) {
        std::vector<char> b(r, 1);
        if (t > 0) {
            Rng rng(derive_seed(seed, t));
            for (auto& x : b) x = static_cast<char>(rng.next() >> 63);
        }
        best = std::max(best, alternate_from(k, b, 1.0));
        best = std::max(best, alternate_from(k, b, -1.0));
    }
    return best;
}

}  // namespace

double max_bilinear_exact(const Matrix& kernel) {
    if (kernel.rows() > 63) fail_too_large("max_bilinear_exact: too many parts");
    return max_bilinear_both(kernel).first;
}

double cut_norm_exact(const SignedStepFn& f) {
    const Matrix k = f.weighted_kernel();
    if (k.rows() > kExactCutNormMaxParts)
        fail_too_large("cut_norm_exact: " + std::to_string(k.rows()) + " positive parts exceed the limit of " +
                       std::to_string(kExactCutNormMaxParts));
    const auto [pos, neg] = max_bilinear_both(k);
    return std::max(pos, neg);
}

double cut_norm_alternating(const SignedStepFn& f, unsigned restarts, std::uint64_t seed) {
    return alternating_kernel(f.weighted_kernel(), restarts, seed);
}

double cut_norm(const SignedStepFn& f) {
    if (f.parts().positive_indices().size() <= kExactCutNormMaxParts) return cut_norm_exact(f);
    return cut_norm_alternating(f, 64, 0);
}

double cut_distance_upper(const StepGraphon& u, const StepGraphon& v, const OverlapCoupling& c) {
    return cut_norm(coupled_difference(u, v, c));
}

namespace {

// Lexicographic key used to put (u, v) into a canonical order.
bool graphon_less(const StepGraphon& a, const StepGraphon& b) {
    if (a.parts().vec() != b.parts().vec()) return a.parts().vec() < b.parts().vec();
    const auto da = a.values().data(), db = b.values().data();
    return std::lexicographical_compare(da.begin(), da.end(), db.begin(), db.end());
}

std::vector<std::size_t> degree_order(const StepGraphon& u, const std::vector<std::size_t>& idx) {
    std::vector<double> deg(idx.size(), 0.0);
    for (std::size_t s = 0; s < idx.size(); ++s)
        for (std::size_t b = 0; b < u.size(); ++b) deg[s] += u.weight(b) * u.value(idx[s], b);
    std::vector<std::size_t> order(idx.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return deg[x] > deg[y]; });
    return order;
}

DistanceEstimate search_ordered(const StepGraphon& u, const StepGraphon& v, const SearchBudget& budget) {
    const auto ru = u.parts().positive_indices();
    const auto rv = v.parts().positive_indices();
    std::vector<double> rows, cols;
    for (std::size_t a : ru) rows.push_back(u.weight(a));
    for (std::size_t i : rv) cols.push_back(v.weight(i));

    // Objective on the compressed (positive parts only) coupling.
    auto objective = [&](const Matrix& mass) {
        std::vector<double> w;
        std::vector<std::pair<std::size_t, std::size_t>> cells;
        for (std::size_t a = 0; a < mass.rows(); ++a)
            for (std::size_t i = 0; i < mass.cols(); ++i)
                if (mass(a, i) > 0.0) {
                    w.push_back(mass(a, i));
                    cells.emplace_back(ru[a], rv[i]);
                }
        Matrix k(cells.size(), cells.size());
        for (std::size_t s = 0; s < cells.size(); ++s)
            for (std::size_t t = 0; t < cells.size(); ++t)
                k(s, t) = w[s] * w[t] *
                          (u.value(cells[s].first, cells[t].first) - v.value(cells[s].second, cells[t].second));
        if (cells.size() <= kExactCutNormMaxParts) {
            const auto [pos, neg] = max_bilinear_both(k);
            return std::max(pos, neg);
        }
        return alternating_kernel(k, 64, 0);
    };

    TransportSearchOptions opts;
    opts.restarts = budget.restarts;
    opts.seed = budget.seed;
    opts.jobs = budget.jobs;
    opts.preferred_orders.emplace_back(degree_order(u, ru), degree_order(v, rv));
    const TransportSearchResult res = transport_search(rows, cols, objective, opts);

    Matrix full(u.size(), v.size());
    for (std::size_t a = 0; a < ru.size(); ++a)
        for (std::size_t i = 0; i < rv.size(); ++i) full(ru[a], rv[i]) = res.mass(a, i);
    DistanceEstimate est;
    est.upper = std::min(1.0, std::max(0.0, res.value));
    est.witness = OverlapCoupling(std::move(full), u.parts(), v.parts());
    est.restarts_used = res.restarts_used;
    return est;
}

}  // namespace

DistanceEstimate cut_distance_search(const StepGraphon& u, const StepGraphon& v, const SearchBudget& budget) {
    if (graphon_less(v, u)) {
        DistanceEstimate est = search_ordered(v, u, budget);
        est.witness = est.witness.transposed();
        return est;
    }
    return search_ordered(u, v, budget);
}

double graph_cut_distance_exact(const LabeledGraph& g, const LabeledGraph& h) {
    const std::size_t n = g.n();
    if (h.n() != n) fail_invalid("graph_cut_distance_exact: graphs have different vertex counts");
    if (n > 8) fail_too_large("graph_cut_distance_exact: n > 8");
    if (n == 0) return 0.0;
    const double w2 = 1.0 / static_cast<double>(n * n);
    std::vector<std::size_t> perm(n);
    std::iota(perm.begin(), perm.end(), 0);
    double best = 1.0;
    Matrix k(n, n);
    do {
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = 0; y < n; ++y)
                k(x, y) = w2 * ((g.has_edge(x, y) ? 1.0 : 0.0) - (h.has_edge(perm[x], perm[y]) ? 1.0 : 0.0));
        const auto [pos, neg] = max_bilinear_both(k);
        best = std::min(best, std::max(pos, neg));
        if (best == 0.0) break;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace sgldp
