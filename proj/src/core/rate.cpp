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


#include "sgldp/rate.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>
#include <string>

#include "sgldp/error.hpp"
#include "sgldp/parallel.hpp"
#include "sgldp/random.hpp"
#include "sgldp/transport.hpp"

namespace sgldp {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void check_unit(double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0)) fail_invalid(std::string(what) + " must lie in [0,1], got " + std::to_string(x));
}

double h_raw(double p, double rho) {
    if (p == 0.0) return rho == 0.0 ? 0.0 : kInf;
    if (p == 1.0) return rho == 1.0 ? 0.0 : kInf;
    double s = 0.0;
    if (rho > 0.0) s += rho * std::log(rho / p);
    if (rho < 1.0) s += (1.0 - rho) * std::log((1.0 - rho) / (1.0 - p));
    return std::max(0.0, s);
}

void check_p(const Matrix& p) {
    if (p.rows() != p.cols() || p.rows() == 0) fail_invalid("p must be a non-empty square matrix");
    for (std::size_t i = 0; i < p.rows(); ++i)
        for (std::size_t j = 0; j < p.cols(); ++j) {
            check_unit(p(i, j), "p entry");
            if (std::abs(p(i, j) - p(j, i)) > kSymmetryTol) fail_invalid("p must be symmetric");
        }
}

}  // namespace

ExtReal rel_entropy(double p, double rho) {
    check_unit(p, "p");
    check_unit(rho, "rho");
    const double h = h_raw(p, rho);
    return std::isinf(h) ? ExtReal::infinity() : ExtReal(h);
}

ExtReal rate_Ip(double p, const StepGraphon& u) {
    check_unit(p, "p");
    double s = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        if (u.weight(i) == 0.0) continue;
        for (std::size_t j = 0; j < u.size(); ++j) {
            if (u.weight(j) == 0.0) continue;
            const double h = h_raw(p, u.value(i, j));
            if (std::isinf(h)) return ExtReal::infinity();
            s += u.weight(i) * u.weight(j) * h;
        }
    }
    return ExtReal(0.5 * s);
}

ExtReal rate_Ik(const Matrix& p, const ColouredStepGraphon& a) {
    check_p(p);
    if (p.rows() != a.k()) fail_invalid("rate_Ik: p is not k x k");
    const StepGraphon& u = a.graphon();
    double s = 0.0;
    for (std::size_t x = 0; x < u.size(); ++x) {
        if (u.weight(x) == 0.0) continue;
        for (std::size_t y = 0; y < u.size(); ++y) {
            if (u.weight(y) == 0.0) continue;
            const double h = h_raw(p(a.colour(x), a.colour(y)), u.value(x, y));
            if (std::isinf(h)) return ExtReal::infinity();
            s += u.weight(x) * u.weight(y) * h;
        }
    }
    return ExtReal(0.5 * s);
}

std::vector<double> normalize_alpha(const std::vector<double>& alpha) {
    double total = 0.0;
    for (double x : alpha) {
        if (!std::isfinite(x) || x < 0.0) fail_invalid("alpha entries must be finite and nonnegative");
        total += x;
    }
    if (!(total > 0.0)) fail_invalid("alpha must be non-zero");
    std::vector<double> out(alpha.size());
    for (std::size_t i = 0; i < alpha.size(); ++i) out[i] = alpha[i] / total;
    return out;
}

ExtReal j_objective(const Matrix& p, const StepGraphon& u, const Matrix& c) {
    check_p(p);
    if (c.rows() != u.size() || c.cols() != p.rows()) fail_invalid("j_objective: coupling shape mismatch");
    double s = 0.0;
    for (std::size_t a = 0; a < c.rows(); ++a)
        for (std::size_t i = 0; i < c.cols(); ++i) {
            if (c(a, i) <= 0.0) continue;
            for (std::size_t b = 0; b < c.rows(); ++b)
                for (std::size_t j = 0; j < c.cols(); ++j) {
                    if (c(b, j) <= 0.0) continue;
                    const double h = h_raw(p(i, j), u.value(a, b));
                    if (std::isinf(h)) return ExtReal::infinity();
                    s += c(a, i) * c(b, j) * h;
                }
        }
    return ExtReal(0.5 * s);
}

ExtReal block_entropy(const std::vector<double>& alpha, const Matrix& p, const StepGraphon& u) {
    check_p(p);
    if (alpha.size() != p.rows()) fail_invalid("block_entropy: alpha length differs from p");
    const PartWeights target(normalize_alpha(alpha));
    const OverlapCoupling c = OverlapCoupling::interval(u.parts(), target);
    return j_objective(p, u, c.mass());
}

namespace {

// The coupling problem restricted to positive rows (u parts) and columns
// (alpha entries). Cells are numbered a * cols + i.
class JProblem {
public:
    JProblem(const std::vector<double>& alpha_hat, const Matrix& p, const StepGraphon& u)
        : rows_idx_(u.parts().positive_indices()) {
        for (std::size_t i = 0; i < alpha_hat.size(); ++i)
            if (alpha_hat[i] > 0.0) cols_idx_.push_back(i);
        for (std::size_t a : rows_idx_) rows_.push_back(u.weight(a));
        for (std::size_t i : cols_idx_) cols_.push_back(alpha_hat[i]);
        m_ = rows_.size();
        n_ = cols_.size();
        const std::size_t c = m_ * n_;
        h_ = Matrix(c, c);
        for (std::size_t a = 0; a < m_; ++a)
            for (std::size_t i = 0; i < n_; ++i)
                for (std::size_t b = 0; b < m_; ++b)
                    for (std::size_t j = 0; j < n_; ++j)
                        h_(a * n_ + i, b * n_ + j) =
                            h_raw(p(cols_idx_[i], cols_idx_[j]), u.value(rows_idx_[a], rows_idx_[b]));
    }

    std::size_t m() const { return m_; }
    std::size_t n() const { return n_; }
    std::size_t cells() const { return m_ * n_; }
    const std::vector<double>& rows() const { return rows_; }
    const std::vector<double>& cols() const { return cols_; }
    const std::vector<std::size_t>& rows_idx() const { return rows_idx_; }
    const std::vector<std::size_t>& cols_idx() const { return cols_idx_; }
    const Matrix& h() const { return h_; }

    bool compatible(std::size_t x, std::size_t y) const { return std::isfinite(h_(x, y)); }

    double value(const std::vector<double>& c) const {
        double s = 0.0;
        for (std::size_t x = 0; x < c.size(); ++x) {
            if (c[x] <= 0.0) continue;
            for (std::size_t y = 0; y < c.size(); ++y) {
                if (c[y] <= 0.0) continue;
                s += c[x] * c[y] * h_(x, y);
            }
        }
        return 0.5 * s;
    }

private:
    std::vector<std::size_t> rows_idx_, cols_idx_;
    std::vector<double> rows_, cols_;
    std::size_t m_ = 0, n_ = 0;
    Matrix h_;
};

using Pattern = std::vector<std::size_t>;  // sorted cell indices

// Bron-Kerbosch with pivoting over bitsets of up to 64 cells.
void bron_kerbosch(std::uint64_t r, std::uint64_t p, std::uint64_t x, const std::vector<std::uint64_t>& adj,
                   std::vector<std::uint64_t>& out) {
    if (p == 0 && x == 0) {
        out.push_back(r);
        return;
    }
    const std::uint64_t px = p | x;
    int pivot = std::countr_zero(px);
    int best = -1;
    for (std::uint64_t t = px; t; t &= t - 1) {
        const int u = std::countr_zero(t);
        const int c = std::popcount(p & adj[u]);
        if (c > best) {
            best = c;
            pivot = u;
        }
    }
    for (std::uint64_t cand = p & ~adj[pivot]; cand; cand &= cand - 1) {
        const int v = std::countr_zero(cand);
        const std::uint64_t bit = std::uint64_t{1} << v;
        bron_kerbosch(r | bit, p & adj[v], x & adj[v], adj, out);
        p &= ~bit;
        x |= bit;
    }
}

std::vector<Pattern> maximal_patterns_exact(const JProblem& jp) {
    const std::size_t c = jp.cells();
    std::vector<std::uint64_t> adj(c, 0);
    std::uint64_t usable = 0;
    for (std::size_t x = 0; x < c; ++x) {
        if (!jp.compatible(x, x)) continue;
        usable |= std::uint64_t{1} << x;
        for (std::size_t y = 0; y < c; ++y)
            if (y != x && jp.compatible(x, y) && jp.compatible(y, y)) adj[x] |= std::uint64_t{1} << y;
    }
    std::vector<std::uint64_t> masks;
    if (usable) bron_kerbosch(0, usable, 0, adj, masks);
    std::vector<Pattern> out;
    for (std::uint64_t mask : masks) {
        Pattern pat;
        for (std::uint64_t t = mask; t; t &= t - 1) pat.push_back(static_cast<std::size_t>(std::countr_zero(t)));
        out.push_back(std::move(pat));
    }
    std::sort(out.begin(), out.end());
    return out;
}

std::vector<Pattern> maximal_patterns_greedy(const JProblem& jp, unsigned tries, std::uint64_t seed) {
    const std::size_t c = jp.cells();
    std::set<Pattern> found;
    std::vector<std::size_t> order(c);
    for (unsigned t = 0; t < std::max(1u, tries); ++t) {
        std::iota(order.begin(), order.end(), 0);
        if (t > 0) {
            Rng rng(derive_seed(seed, 0x9a77e000ULL + t));
            rng.shuffle(std::span<std::size_t>(order));
        }
        Pattern pat;
        for (std::size_t x : order) {
            if (!jp.compatible(x, x)) continue;
            bool ok = true;
            for (std::size_t y : pat)
                if (!jp.compatible(x, y)) {
                    ok = false;
                    break;
                }
            if (ok) pat.push_back(x);
        }
        std::sort(pat.begin(), pat.end());
        if (!pat.empty()) found.insert(std::move(pat));
    }
    return {found.begin(), found.end()};
}

// Max-flow from rows to columns through the pattern's cells (Edmonds-Karp).
// Returns the cell masses when the marginals can be met. With a seed the
// neighbour order is shuffled, which yields different extreme solutions.
std::optional<std::vector<double>> pattern_flow(const JProblem& jp, const Pattern& pat,
                                                std::optional<std::uint64_t> seed) {
    const std::size_t m = jp.m(), n = jp.n();
    std::vector<double> flow(jp.cells(), 0.0);
    std::vector<double> row_left = jp.rows(), col_left = jp.cols();
    std::vector<std::vector<std::size_t>> row_cells(m), col_cells(n);
    for (std::size_t x : pat) {
        row_cells[x / n].push_back(x);
        col_cells[x % n].push_back(x);
    }
    std::optional<Rng> rng;
    if (seed) {
        rng.emplace(*seed);
        for (auto& v : row_cells) rng->shuffle(std::span<std::size_t>(v));
        for (auto& v : col_cells) rng->shuffle(std::span<std::size_t>(v));
    }
    std::vector<std::size_t> row_order(m);
    std::iota(row_order.begin(), row_order.end(), 0);
    if (rng) rng->shuffle(std::span<std::size_t>(row_order));

    constexpr double kEps = 1e-15;
    const std::size_t none = static_cast<std::size_t>(-1);
    for (;;) {
        // BFS over the residual graph: rows and columns as nodes.
        std::vector<std::size_t> via_row(m, none), via_col(n, none);  // cell used to reach node
        std::vector<char> seen_row(m, 0), seen_col(n, 0);
        std::vector<std::size_t> queue;  // encoded: rows as r, cols as m + i
        for (std::size_t r : row_order)
            if (row_left[r] > kEps) {
                seen_row[r] = 1;
                queue.push_back(r);
            }
        std::size_t end_col = none;
        for (std::size_t qi = 0; qi < queue.size() && end_col == none; ++qi) {
            const std::size_t node = queue[qi];
            if (node < m) {
                for (std::size_t x : row_cells[node]) {
                    const std::size_t i = x % n;
                    if (seen_col[i]) continue;
                    seen_col[i] = 1;
                    via_col[i] = x;
                    if (col_left[i] > kEps) {
                        end_col = i;
                        break;
                    }
                    queue.push_back(m + i);
                }
            } else {
                const std::size_t i = node - m;
                for (std::size_t x : col_cells[i]) {
                    const std::size_t r = x / n;
                    if (seen_row[r] || flow[x] <= kEps) continue;
                    seen_row[r] = 1;
                    via_row[r] = x;
                    queue.push_back(r);
                }
            }
        }
        if (end_col == none) break;
        // Trace back and find the bottleneck.
        double theta = col_left[end_col];
        std::size_t i = end_col;
        std::size_t start_row;
        for (;;) {
            const std::size_t x = via_col[i];
            const std::size_t r = x / n;
            if (via_row[r] == none) {
                start_row = r;
                break;
            }
            const std::size_t back = via_row[r];
            theta = std::min(theta, flow[back]);
            i = back % n;
        }
        theta = std::min(theta, row_left[start_row]);
        i = end_col;
        for (;;) {
            const std::size_t x = via_col[i];
            flow[x] += theta;
            const std::size_t r = x / n;
            if (via_row[r] == none) break;
            const std::size_t back = via_row[r];
            flow[back] -= theta;
            i = back % n;
        }
        col_left[end_col] -= theta;
        row_left[start_row] -= theta;
    }
    double missing = 0.0;
    for (double x : row_left) missing += std::max(0.0, x);
    if (missing > 1e-12) return std::nullopt;
    for (double& x : flow) x = std::max(0.0, x);
    return flow;
}

// Closed cycles of cells along which mass can move: +1 / -1 alternately.
struct Direction {
    std::vector<std::size_t> plus, minus;
};

std::vector<Direction> pattern_directions(const JProblem& jp, const Pattern& pat) {
    const std::size_t n = jp.n();
    std::vector<char> in(jp.cells(), 0);
    for (std::size_t x : pat) in[x] = 1;
    std::vector<Direction> dirs;
    std::set<std::vector<std::size_t>> seen;
    for (std::size_t a = 0; a < jp.m(); ++a)
        for (std::size_t b = a + 1; b < jp.m(); ++b)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j) {
                    const std::size_t ai = a * n + i, aj = a * n + j, bi = b * n + i, bj = b * n + j;
                    if (in[ai] && in[aj] && in[bi] && in[bj]) {
                        dirs.push_back({{ai, bj}, {aj, bi}});
                        seen.insert({ai, aj, bi, bj});
                    }
                }
    // Fundamental cycles of a spanning forest reach the longer cycles.
    const std::size_t m = jp.m();
    std::vector<std::size_t> parent(m + n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    CellList tree, extra;
    for (std::size_t x : pat) {
        const std::size_t r = x / n, c = m + x % n;
        const std::size_t fr = find(r), fc = find(c);
        if (fr != fc) {
            parent[fr] = fc;
            tree.emplace_back(x / n, x % n);
        } else {
            extra.emplace_back(x / n, x % n);
        }
    }
    for (const auto& e : extra) {
        // Tree path between the endpoints of e closes the cycle.
        std::vector<std::vector<std::pair<std::size_t, std::size_t>>> adj(m + n);
        for (const auto& t : tree) {
            adj[t.first].push_back(t);
            adj[m + t.second].push_back(t);
        }
        const std::size_t none = static_cast<std::size_t>(-1);
        std::vector<std::size_t> prev_node(m + n, none);
        std::vector<std::pair<std::size_t, std::size_t>> prev_cell(m + n);
        std::vector<std::size_t> stack{e.first};
        prev_node[e.first] = e.first;
        const std::size_t target = m + e.second;
        while (!stack.empty()) {
            const std::size_t v = stack.back();
            stack.pop_back();
            if (v == target) break;
            for (const auto& t : adj[v]) {
                const std::size_t w = v < m ? m + t.second : t.first;
                if (prev_node[w] == none) {
                    prev_node[w] = v;
                    prev_cell[w] = t;
                    stack.push_back(w);
                }
            }
        }
        if (prev_node[target] == none) continue;
        Direction d;
        d.plus.push_back(e.first * n + e.second);
        std::size_t v = target;
        bool minus = true;
        std::vector<std::size_t> key{e.first * n + e.second};
        while (v != e.first) {
            const auto t = prev_cell[v];
            (minus ? d.minus : d.plus).push_back(t.first * n + t.second);
            key.push_back(t.first * n + t.second);
            minus = !minus;
            v = prev_node[v];
        }
        std::sort(key.begin(), key.end());
        if (key.size() > 4 && seen.insert(key).second) dirs.push_back(std::move(d));
    }
    return dirs;
}

// Coordinate-free descent: exact minimization of the quadratic along each
// cycle direction until a sweep gains less than the tolerance.
double descend(const JProblem& jp, const std::vector<Direction>& dirs, std::vector<double>& c) {
    const Matrix& h = jp.h();
    const std::size_t cells = jp.cells();
    auto hval = [&](std::size_t x, std::size_t y) {
        const double v = h(x, y);
        return std::isfinite(v) ? v : 0.0;
    };
    std::vector<double> hc(cells, 0.0);
    auto refresh = [&] {
        for (std::size_t x = 0; x < cells; ++x) {
            double s = 0.0;
            for (std::size_t y = 0; y < cells; ++y)
                if (c[y] > 0.0) s += hval(x, y) * c[y];
            hc[x] = s;
        }
    };
    refresh();
    double val = jp.value(c);
    for (int sweep = 0; sweep < 500; ++sweep) {
        const double start = val;
        for (const Direction& d : dirs) {
            double g = 0.0, q = 0.0;
            for (std::size_t x : d.plus) g += hc[x];
            for (std::size_t x : d.minus) g -= hc[x];
            for (std::size_t x : d.plus) {
                for (std::size_t y : d.plus) q += hval(x, y);
                for (std::size_t y : d.minus) q -= hval(x, y);
            }
            for (std::size_t x : d.minus) {
                for (std::size_t y : d.plus) q -= hval(x, y);
                for (std::size_t y : d.minus) q += hval(x, y);
            }
            q *= 0.5;
            // f(t) = val + g t + q t^2 on [lo, hi].
            double lo = -kInf, hi = kInf;
            for (std::size_t x : d.plus) lo = std::max(lo, -c[x]);
            for (std::size_t x : d.minus) hi = std::min(hi, c[x]);
            if (hi - lo <= 1e-15) continue;
            auto f = [&](double t) { return g * t + q * t * t; };
            double t = f(lo) < f(hi) ? lo : hi;
            if (q > 0.0) {
                const double ts = std::clamp(-g / (2.0 * q), lo, hi);
                if (f(ts) < f(t)) t = ts;
            }
            if (t == 0.0 || f(t) >= -1e-15) continue;
            for (std::size_t x : d.plus) c[x] = t == lo && c[x] == -lo ? 0.0 : std::max(0.0, c[x] + t);
            for (std::size_t x : d.minus) c[x] = t == hi && c[x] == hi ? 0.0 : std::max(0.0, c[x] - t);
            refresh();
            val = jp.value(c);
        }
        if (start - val < 1e-9) break;
    }
    return val;
}

struct Candidate {
    double value = kInf;
    std::vector<double> cells;
};

bool candidate_better(const Candidate& a, const Candidate& b) {
    if (a.value != b.value) return a.value < b.value;
    std::vector<std::size_t> sa, sb;
    for (std::size_t x = 0; x < a.cells.size(); ++x) {
        if (a.cells[x] > 0.0) sa.push_back(x);
        if (b.cells[x] > 0.0) sb.push_back(x);
    }
    return sa < sb;
}

// The overlap coupling of the interval layouts, on the positive cells.
std::vector<double> interval_cells(const JProblem& jp) {
    const PartWeights rows(jp.rows()), cols(jp.cols());
    const auto pieces = overlay(rows, cols);
    std::vector<double> c(jp.cells(), 0.0);
    for (const auto& pc : pieces) c[pc.a * jp.n() + pc.b] += pc.length;
    return c;
}

}  // namespace

RateReport rate_J(const std::vector<double>& alpha, const Matrix& p, const StepGraphon& u,
                  const RateBudget& budget) {
    check_p(p);
    if (alpha.size() != p.rows())
        fail_invalid("rate_J: alpha has " + std::to_string(alpha.size()) + " entries but p is " +
                     std::to_string(p.rows()) + " x " + std::to_string(p.rows()));
    const std::vector<double> alpha_hat = normalize_alpha(alpha);
    const JProblem jp(alpha_hat, p, u);

    const bool exact = jp.cells() <= std::min<std::size_t>(budget.exact_pattern_cells, 64);
    std::vector<Pattern> patterns =
        exact ? maximal_patterns_exact(jp) : maximal_patterns_greedy(jp, std::max(64u, budget.restarts), budget.seed);
    std::vector<Pattern> feasible;
    for (const auto& pat : patterns)
        if (pattern_flow(jp, pat, std::nullopt)) feasible.push_back(pat);

    RateReport rep;
    if (feasible.empty()) {
        rep.value = ExtReal::infinity();
        rep.infinity_certified = exact;
        return rep;
    }

    std::vector<std::vector<Direction>> dirs(feasible.size());
    for (std::size_t s = 0; s < feasible.size(); ++s) dirs[s] = pattern_directions(jp, feasible[s]);
    const std::vector<double> interval = interval_cells(jp);

    const unsigned restarts = std::max(1u, budget.restarts);
    std::vector<Candidate> results(restarts);
    parallel_for(restarts, budget.jobs, [&](std::size_t r) {
        const std::size_t s = r % feasible.size();
        const Pattern& pat = feasible[s];
        std::vector<double> start;
        if (r < feasible.size()) {
            bool inside = true;
            for (std::size_t x = 0; x < interval.size(); ++x)
                if (interval[x] > 0.0 && !std::binary_search(pat.begin(), pat.end(), x)) inside = false;
            start = inside ? interval : *pattern_flow(jp, pat, std::nullopt);
        } else {
            const std::uint64_t seed = derive_seed(budget.seed, r);
            start = *pattern_flow(jp, pat, seed);
            if (r % 2 == 1) {
                const auto other = *pattern_flow(jp, pat, mix64(seed));
                const double lam = Rng(seed ^ 0x1a3bULL).uniform();
                for (std::size_t x = 0; x < start.size(); ++x) start[x] = lam * start[x] + (1.0 - lam) * other[x];
            }
        }
        Candidate cand;
        cand.cells = std::move(start);
        descend(jp, dirs[s], cand.cells);
        cand.value = jp.value(cand.cells);
        results[r] = std::move(cand);
    });

    std::size_t best = 0;
    for (std::size_t r = 1; r < results.size(); ++r)
        if (candidate_better(results[r], results[best])) best = r;

    Matrix full(u.size(), alpha.size());
    for (std::size_t a = 0; a < jp.m(); ++a)
        for (std::size_t i = 0; i < jp.n(); ++i) full(jp.rows_idx()[a], jp.cols_idx()[i]) = results[best].cells[a * jp.n() + i];
    const PartWeights cols(alpha_hat);
    rep.value = j_objective(p, u, full);
    rep.witness_coupling = OverlapCoupling(std::move(full), u.parts(), cols);
    rep.budget_used = restarts;
    return rep;
}

std::vector<std::vector<double>> simplex_grid(std::size_t k, unsigned resolution) {
    if (k == 0 || resolution == 0) fail_invalid("simplex_grid: k and resolution must be positive");
    std::vector<std::vector<double>> out;
    std::vector<unsigned> comp(k, 0);
    // Compositions of `resolution` into k parts, lexicographically decreasing
    // in the first coordinate.
    std::function<void(std::size_t, unsigned)> rec = [&](std::size_t pos, unsigned left) {
        if (pos + 1 == k) {
            comp[pos] = left;
            std::vector<double> a(k);
            for (std::size_t i = 0; i < k; ++i) a[i] = static_cast<double>(comp[i]) / resolution;
            out.push_back(std::move(a));
            return;
        }
        for (unsigned v = left + 1; v-- > 0;) {
            comp[pos] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, resolution);
    return out;
}

RateReport rate_R(const Matrix& p, const StepGraphon& u, const RateBudget& budget) {
    check_p(p);
    const std::size_t k = p.rows();
    const auto grid = simplex_grid(k, budget.grid_resolution);
    RateBudget probe = budget;
    probe.restarts = budget.grid_restarts;
    probe.jobs = 1;

    std::vector<RateReport> reports(grid.size());
    parallel_for(grid.size(), budget.jobs, [&](std::size_t g) { reports[g] = rate_J(grid[g], p, u, probe); });

    struct Probe {
        double value;
        std::vector<double> alpha;
        RateReport report;
    };
    std::vector<Probe> probes;
    for (std::size_t g = 0; g < grid.size(); ++g) probes.push_back({reports[g].value.value(), grid[g], reports[g]});
    std::size_t evaluations = grid.size();

    auto better = [](const Probe& a, const Probe& b) {
        if (a.value != b.value) return a.value < b.value;
        return a.alpha > b.alpha;
    };
    std::vector<std::size_t> order(probes.size());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return better(probes[x], probes[y]); });

    Probe best = probes[order[0]];
    // Pattern search around the best finite grid points: move mass between
    // two coordinates, halving the step on failure.
    const std::size_t seeds = std::min<std::size_t>(3, order.size());
    for (std::size_t s = 0; s < seeds; ++s) {
        Probe cur = probes[order[s]];
        if (!std::isfinite(cur.value) || cur.value == 0.0) continue;
        double step = 0.5 / budget.grid_resolution;
        while (step >= 1.0 / (32.0 * budget.grid_resolution)) {
            bool moved = false;
            for (std::size_t i = 0; i < k && !moved; ++i)
                for (std::size_t j = 0; j < k && !moved; ++j) {
                    if (i == j || cur.alpha[i] < step) continue;
                    std::vector<double> a = cur.alpha;
                    a[i] -= step;
                    a[j] += step;
                    RateReport rr = rate_J(a, p, u, probe);
                    ++evaluations;
                    if (rr.value.value() < cur.value - 1e-12) {
                        cur = {rr.value.value(), a, std::move(rr)};
                        moved = true;
                    }
                }
            if (!moved) step *= 0.5;
        }
        if (better(cur, best)) best = cur;
    }
    // A full-budget evaluation at the winner can only lower the value.
    if (std::isfinite(best.value) && budget.restarts > budget.grid_restarts) {
        RateReport rr = rate_J(best.alpha, p, u, budget);
        ++evaluations;
        if (rr.value.value() < best.value) best = {rr.value.value(), best.alpha, std::move(rr)};
    }

    RateReport rep = std::move(best.report);
    rep.witness_alpha = PartWeights(normalize_alpha(best.alpha));
    rep.budget_used = evaluations;
    return rep;
}

ReweightResult reweight_witness(const std::vector<double>& gamma, const std::vector<double>& kappa,
                                const StepGraphon& u) {
    if (gamma.size() != kappa.size()) fail_invalid("reweight_witness: gamma and kappa differ in length");
    const std::vector<double> g = normalize_alpha(gamma), kap = normalize_alpha(kappa);
    ReweightResult res;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (kap[i] > 0.0 && g[i] == 0.0)
            fail_invalid("reweight_witness: kappa is positive where gamma is zero (index " + std::to_string(i) + ")");
        if (g[i] > 0.0) res.epsilon = std::max(res.epsilon, kap[i] / g[i] - 1.0);
    }
    res.bound = 2.0 * res.epsilon;

    // Part (i, a) of V is the preimage of P_a inside I^gamma_i, stretched by
    // kappa_i / gamma_i.
    const PartWeights gp(g);
    const auto pieces = overlay(u.parts(), gp);
    std::vector<double> w;
    std::vector<std::size_t> origin;
    for (std::size_t i = 0; i < g.size(); ++i) {
        if (kap[i] == 0.0) continue;
        for (const auto& pc : pieces) {
            if (pc.b != i) continue;
            w.push_back(pc.length * kap[i] / g[i]);
            origin.push_back(pc.a);
        }
    }
    Matrix vals(w.size(), w.size());
    for (std::size_t s = 0; s < w.size(); ++s)
        for (std::size_t t = 0; t < w.size(); ++t) vals(s, t) = u.value(origin[s], origin[t]);
    res.v = StepGraphon(PartWeights(std::move(w)), std::move(vals));
    return res;
}

}  // namespace sgldp
