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


#include "sgldp/coloured.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "sgldp/error.hpp"
#include "sgldp/random.hpp"
#include "sgldp/transport.hpp"

namespace sgldp {

ColouredStepGraphon::ColouredStepGraphon(StepGraphon graphon, std::vector<std::size_t> colours, std::size_t k)
    : graphon_(std::move(graphon)), colours_(std::move(colours)), k_(k) {
    if (k_ == 0) fail_invalid("coloured graphon: k must be at least 1");
    if (colours_.size() != graphon_.size())
        fail_invalid("coloured graphon: " + std::to_string(colours_.size()) + " colours for " +
                     std::to_string(graphon_.size()) + " parts");
    for (std::size_t c : colours_)
        if (c >= k_) fail_invalid("coloured graphon: colour " + std::to_string(c + 1) + " exceeds k");
}

std::vector<double> ColouredStepGraphon::class_measures() const {
    std::vector<double> m(k_, 0.0);
    for (std::size_t p = 0; p < colours_.size(); ++p) m[colours_[p]] += graphon_.weight(p);
    return m;
}

namespace {

// The coloured difference on a list of positive-mass cells.
struct ColouredCells {
    std::size_t k = 1;
    std::vector<double> w;
    std::vector<std::size_t> ca, cb;
    Matrix u, v;
};

// Largest sum_{p in C, q in D} k(p,q) over the rows for a fixed column set.
void one_sided_response(const Matrix& m, const std::vector<char>& fixed, bool fixed_is_cols,
                        std::vector<char>& out) {
    const std::size_t r = m.rows();
    for (std::size_t p = 0; p < r; ++p) {
        double s = 0.0;
        for (std::size_t q = 0; q < r; ++q)
            if (fixed[q]) s += fixed_is_cols ? m(p, q) : m(q, p);
        out[p] = s > 0.0;
    }
}

class DkEvaluator {
public:
    explicit DkEvaluator(const ColouredCells& c) : c_(c), r_(c.w.size()) {
        std::vector<long> slot(c.k * c.k, -1);
        idx_a_.resize(r_ * r_);
        idx_b_.resize(r_ * r_);
        auto take = [&](std::size_t i, std::size_t j) {
            long& s = slot[i * c.k + j];
            if (s < 0) {
                s = static_cast<long>(pairs_.size());
                pairs_.emplace_back(i, j);
            }
            return static_cast<std::size_t>(s);
        };
        for (std::size_t p = 0; p < r_; ++p)
            for (std::size_t q = 0; q < r_; ++q) {
                idx_a_[p * r_ + q] = take(c.ca[p], c.ca[q]);
                idx_b_[p * r_ + q] = take(c.cb[p], c.cb[q]);
            }
        transpose_.resize(pairs_.size());
        for (std::size_t l = 0; l < pairs_.size(); ++l)
            transpose_[l] = static_cast<std::size_t>(slot[pairs_[l].second * c.k + pairs_[l].first]);
    }

    double colour_term() const {
        double s = 0.0;
        for (std::size_t p = 0; p < r_; ++p)
            if (c_.ca[p] != c_.cb[p]) s += 2.0 * c_.w[p];
        return s;
    }

    double cut_term() const {
        if (r_ == 0) return 0.0;
        const std::size_t l = pairs_.size();
        const double work = std::ldexp(static_cast<double>(r_), static_cast<int>(r_ + l)) / 4.0;
        if (r_ <= kExactDkMaxParts && l < 40 && work <= 0x1.0p33) return cut_term_exact();
        return cut_term_alternating(64, 0);
    }

private:
    Matrix kernel(const std::vector<double>& sigma) const {
        Matrix m(r_, r_);
        for (std::size_t p = 0; p < r_; ++p)
            for (std::size_t q = 0; q < r_; ++q)
                m(p, q) = c_.w[p] * c_.w[q] *
                          (sigma[idx_a_[p * r_ + q]] * c_.u(p, q) - sigma[idx_b_[p * r_ + q]] * c_.v(p, q));
        return m;
    }

    std::uint64_t transpose_mask(std::uint64_t mask) const {
        std::uint64_t t = 0;
        for (std::size_t b = 0; b < pairs_.size(); ++b)
            if (mask >> b & 1U) t |= std::uint64_t{1} << transpose_[b];
        return t;
    }

    // Sum_l |X_l| equals the max over sign vectors sigma of sum_l sigma_l X_l,
    // so the supremum is a max over sigma of a plain bilinear maximum. sigma,
    // its transpose and their negations give the same value.
    double cut_term_exact() const {
        const std::size_t l = pairs_.size();
        const std::uint64_t all = (std::uint64_t{1} << l) - 1;
        double best = 0.0;
        std::vector<double> sigma(l);
        for (std::uint64_t mask = 0; mask <= all; ++mask) {
            const std::uint64_t t = transpose_mask(mask);
            if (t < mask || (all & ~mask) < mask || (all & ~t) < mask) continue;
            for (std::size_t b = 0; b < l; ++b) sigma[b] = (mask >> b & 1U) ? -1.0 : 1.0;
            const Matrix m = kernel(sigma);
            best = std::max(best, std::max(max_bilinear_exact(m), max_bilinear_exact(scaled(m, -1.0))));
        }
        return best;
    }

    static Matrix scaled(Matrix m, double s) {
        for (std::size_t p = 0; p < m.rows(); ++p)
            for (std::size_t q = 0; q < m.cols(); ++q) m(p, q) *= s;
        return m;
    }

    // Per-pair integrals X_l over C x D; returns sum_l |X_l|.
    double evaluate(const std::vector<char>& cs, const std::vector<char>& ds, std::vector<double>& x) const {
        std::fill(x.begin(), x.end(), 0.0);
        for (std::size_t p = 0; p < r_; ++p) {
            if (!cs[p]) continue;
            for (std::size_t q = 0; q < r_; ++q) {
                if (!ds[q]) continue;
                const double ww = c_.w[p] * c_.w[q];
                x[idx_a_[p * r_ + q]] += ww * c_.u(p, q);
                x[idx_b_[p * r_ + q]] -= ww * c_.v(p, q);
            }
        }
        double s = 0.0;
        for (double xl : x) s += std::abs(xl);
        return s;
    }

    double cut_term_alternating(unsigned restarts, std::uint64_t seed) const {
        double best = 0.0;
        std::vector<double> x(pairs_.size()), sigma(pairs_.size());
        for (unsigned t = 0; t < restarts; ++t) {
            std::vector<char> cs(r_, 1), ds(r_, 1);
            if (t > 0) {
                Rng rng(derive_seed(seed, t));
                for (auto& b : cs) b = static_cast<char>(rng.next() >> 63);
                for (auto& b : ds) b = static_cast<char>(rng.next() >> 63);
            }
            double val = evaluate(cs, ds, x);
            for (;;) {
                for (std::size_t l = 0; l < x.size(); ++l) sigma[l] = x[l] < 0.0 ? -1.0 : 1.0;
                const Matrix m = kernel(sigma);
                std::vector<char> c2(r_), d2(r_);
                one_sided_response(m, ds, true, c2);
                one_sided_response(m, c2, false, d2);
                const double v2 = evaluate(c2, d2, x);
                if (v2 <= val + 1e-15) break;
                val = v2;
                cs = std::move(c2);
                ds = std::move(d2);
            }
            best = std::max(best, val);
        }
        return best;
    }

    const ColouredCells& c_;
    std::size_t r_;
    std::vector<std::pair<std::size_t, std::size_t>> pairs_;
    std::vector<std::size_t> idx_a_, idx_b_, transpose_;
};

double dk_cells(const ColouredCells& c) {
    DkEvaluator e(c);
    return e.cut_term() + e.colour_term();
}

void check_k(const ColouredStepGraphon& a, const ColouredStepGraphon& b) {
    if (a.k() != b.k())
        fail_invalid("coloured graphons have different colour counts (" + std::to_string(a.k()) + " vs " +
                     std::to_string(b.k()) + ")");
}

ColouredCells cells_from_mass(const ColouredStepGraphon& a, const ColouredStepGraphon& b, const Matrix& mass,
                              const std::vector<std::size_t>& ra, const std::vector<std::size_t>& rb) {
    ColouredCells c;
    c.k = a.k();
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t s = 0; s < mass.rows(); ++s)
        for (std::size_t t = 0; t < mass.cols(); ++t)
            if (mass(s, t) > 0.0) {
                c.w.push_back(mass(s, t));
                cells.emplace_back(ra[s], rb[t]);
                c.ca.push_back(a.colour(ra[s]));
                c.cb.push_back(b.colour(rb[t]));
            }
    const std::size_t r = cells.size();
    c.u = Matrix(r, r);
    c.v = Matrix(r, r);
    for (std::size_t p = 0; p < r; ++p)
        for (std::size_t q = 0; q < r; ++q) {
            c.u(p, q) = a.graphon().value(cells[p].first, cells[q].first);
            c.v(p, q) = b.graphon().value(cells[p].second, cells[q].second);
        }
    return c;
}

std::vector<std::size_t> iota_n(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

bool coloured_less(const ColouredStepGraphon& x, const ColouredStepGraphon& y) {
    if (x.graphon().parts().vec() != y.graphon().parts().vec())
        return x.graphon().parts().vec() < y.graphon().parts().vec();
    const auto dx = x.graphon().values().data(), dy = y.graphon().values().data();
    if (!std::equal(dx.begin(), dx.end(), dy.begin(), dy.end()))
        return std::lexicographical_compare(dx.begin(), dx.end(), dy.begin(), dy.end());
    return x.colours() < y.colours();
}

// Positive parts sorted by colour, then by decreasing degree.
std::vector<std::size_t> colour_degree_order(const ColouredStepGraphon& a, const std::vector<std::size_t>& idx) {
    const StepGraphon& u = a.graphon();
    std::vector<double> deg(idx.size(), 0.0);
    for (std::size_t s = 0; s < idx.size(); ++s)
        for (std::size_t b = 0; b < u.size(); ++b) deg[s] += u.weight(b) * u.value(idx[s], b);
    std::vector<std::size_t> order = iota_n(idx.size());
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        if (a.colour(idx[x]) != a.colour(idx[y])) return a.colour(idx[x]) < a.colour(idx[y]);
        return deg[x] > deg[y];
    });
    return order;
}

DistanceEstimate dk_search_ordered(const ColouredStepGraphon& a, const ColouredStepGraphon& b,
                                   const SearchBudget& budget) {
    const auto ra = a.graphon().parts().positive_indices();
    const auto rb = b.graphon().parts().positive_indices();
    std::vector<double> rows, cols;
    for (std::size_t s : ra) rows.push_back(a.graphon().weight(s));
    for (std::size_t t : rb) cols.push_back(b.graphon().weight(t));
    auto objective = [&](const Matrix& mass) { return dk_cells(cells_from_mass(a, b, mass, ra, rb)); };

    TransportSearchOptions opts;
    opts.restarts = budget.restarts;
    opts.seed = budget.seed;
    opts.jobs = budget.jobs;
    opts.preferred_orders.emplace_back(colour_degree_order(a, ra), colour_degree_order(b, rb));
    const TransportSearchResult res = transport_search(rows, cols, objective, opts);

    Matrix full(a.graphon().size(), b.graphon().size());
    for (std::size_t s = 0; s < ra.size(); ++s)
        for (std::size_t t = 0; t < rb.size(); ++t) full(ra[s], rb[t]) = res.mass(s, t);
    DistanceEstimate est;
    est.upper = std::max(0.0, res.value);
    est.witness = OverlapCoupling(std::move(full), a.graphon().parts(), b.graphon().parts());
    est.restarts_used = res.restarts_used;
    return est;
}

}  // namespace

double dk_norm(const ColouredStepGraphon& a, const ColouredStepGraphon& b) {
    check_k(a, b);
    // same argument order both ways round, so dk(a,b) == dk(b,a) bitwise
    if (coloured_less(b, a)) return dk_norm(b, a);
    const Refinement r = common_refinement(a.graphon(), b.graphon());
    ColouredCells c;
    c.k = a.k();
    c.w = r.parts.vec();
    for (std::size_t p = 0; p < c.w.size(); ++p) {
        c.ca.push_back(a.colour(r.from_u[p]));
        c.cb.push_back(b.colour(r.from_v[p]));
    }
    c.u = r.u_values;
    c.v = r.v_values;
    return dk_cells(c);
}

double dk_coupled(const ColouredStepGraphon& a, const ColouredStepGraphon& b, const OverlapCoupling& c) {
    check_k(a, b);
    const Matrix& mass = c.mass();
    if (mass.rows() != a.graphon().size() || mass.cols() != b.graphon().size())
        fail_invalid("dk_coupled: coupling shape does not match the graphons");
    for (std::size_t s = 0; s < mass.rows(); ++s)
        if (std::abs(c.rows()[s] - a.graphon().weight(s)) > kMarginalTol)
            fail_invalid("dk_coupled: row marginal " + std::to_string(s) + " mismatch");
    for (std::size_t t = 0; t < mass.cols(); ++t)
        if (std::abs(c.cols()[t] - b.graphon().weight(t)) > kMarginalTol)
            fail_invalid("dk_coupled: column marginal " + std::to_string(t) + " mismatch");
    return dk_cells(cells_from_mass(a, b, mass, iota_n(mass.rows()), iota_n(mass.cols())));
}

DistanceEstimate dk_distance_search(const ColouredStepGraphon& a, const ColouredStepGraphon& b,
                                    const SearchBudget& budget) {
    check_k(a, b);
    if (coloured_less(b, a)) {
        DistanceEstimate est = dk_search_ordered(b, a, budget);
        est.witness = est.witness.transposed();
        return est;
    }
    return dk_search_ordered(a, b, budget);
}

StepGraphon gamma_forget(const ColouredStepGraphon& a) { return a.graphon(); }

StepGraphon gamma_block(const ColouredStepGraphon& a, std::size_t i, std::size_t j, const Matrix& p) {
    const std::size_t k = a.k();
    if (i >= k || j >= k) fail_invalid("gamma_block: colour out of range");
    if (p.rows() != k || p.cols() != k) fail_invalid("gamma_block: p must be k x k");
    const double pij = p(i, j);
    if (!(pij >= 0.0 && pij <= 1.0)) fail_invalid("gamma_block: p entry outside [0,1]");
    const StepGraphon& u = a.graphon();
    Matrix v(u.size(), u.size());
    for (std::size_t x = 0; x < u.size(); ++x)
        for (std::size_t y = 0; y < u.size(); ++y) {
            const std::size_t cx = a.colour(x), cy = a.colour(y);
            const bool keep = (cx == i && cy == j) || (cx == j && cy == i);
            v(x, y) = keep ? u.value(x, y) : pij;
        }
    return StepGraphon(u.parts(), std::move(v));
}

}  // namespace sgldp
