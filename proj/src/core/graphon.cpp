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

#include "sgldp/graphon.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sgldp/error.hpp"

namespace sgldp {

namespace {

// Breakpoints closer than this are treated as the same point of [0,1].
constexpr double kBreakpointTol = 1e-14;

double clamp01(double x) { return std::min(1.0, std::max(0.0, x)); }

}  // namespace

PartWeights::PartWeights(std::vector<double> raw) : w_(std::move(raw)) {
    if (w_.empty()) fail_invalid("part weights: empty weight vector");
    double sum = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i) {
        if (!std::isfinite(w_[i]) || w_[i] < 0.0)
            fail_invalid("part weights: entry " + std::to_string(i) + " is negative or not finite");
        sum += w_[i];
    }
    if (sum <= 0.0) fail_invalid("part weights: all weights are zero");
    norm_ = sum;
    if (std::abs(sum - 1.0) > kNormalizationTol) {
        for (double& x : w_) x /= sum;
    }
}

PartWeights PartWeights::uniform(std::size_t m) {
    return PartWeights(std::vector<double>(m, 1.0 / static_cast<double>(m)));
}

std::vector<double> PartWeights::cumulative() const {
    std::vector<double> c(w_.size());
    double acc = 0.0;
    for (std::size_t i = 0; i < w_.size(); ++i) {
        acc += w_[i];
        c[i] = acc;
    }
    return c;
}

std::vector<std::size_t> PartWeights::positive_indices() const {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < w_.size(); ++i)
        if (w_[i] > 0.0) idx.push_back(i);
    return idx;
}

StepGraphon::StepGraphon(PartWeights parts, Matrix values)
    : parts_(std::move(parts)), values_(std::move(values)) {
    const std::size_t m = parts_.size();
    if (values_.rows() != m || values_.cols() != m)
        fail_invalid("step graphon: values must be " + std::to_string(m) + "x" + std::to_string(m));
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < m; ++j) {
            const double x = values_(i, j);
            if (!(x >= 0.0 && x <= 1.0))
                fail_invalid("step graphon: value at (" + std::to_string(i) + "," + std::to_string(j) +
                             ") outside [0,1]");
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = i + 1; j < m; ++j) {
            const double a = values_(i, j), b = values_(j, i);
            if (std::abs(a - b) > kSymmetryTol)
                fail_invalid("step graphon: values not symmetric at (" + std::to_string(i) + "," +
                             std::to_string(j) + ")");
            const double avg = a == b ? a : 0.5 * (a + b);
            values_(i, j) = avg;
            values_(j, i) = avg;
        }
    }
}

StepGraphon StepGraphon::constant(double q) {
    return StepGraphon(PartWeights({1.0}), Matrix(1, 1, q));
}

StepGraphon make_step_graphon(std::vector<double> weights, const Matrix& values) {
    return StepGraphon(PartWeights(std::move(weights)), values);
}

StepGraphon make_step_graphon(std::vector<double> weights,
                              const std::vector<std::vector<double>>& values) {
    for (const auto& row : values)
        if (row.size() != values.size()) fail_invalid("step graphon: value matrix is not square");
    return make_step_graphon(std::move(weights), Matrix::from_rows(values));
}

LabeledGraph::LabeledGraph(std::size_t n,
                           const std::vector<std::pair<std::size_t, std::size_t>>& edges)
    : LabeledGraph(n) {
    for (auto [u, v] : edges) add_edge(u, v);
}

void LabeledGraph::add_edge(std::size_t u, std::size_t v) {
    if (u >= n_ || v >= n_)
        fail_invalid("graph: edge (" + std::to_string(u) + "," + std::to_string(v) +
                     ") has a vertex outside [0," + std::to_string(n_) + ")");
    if (u == v) fail_invalid("graph: loop at vertex " + std::to_string(u));
    adj_[u * n_ + v] = 1;
    adj_[v * n_ + u] = 1;
}

void LabeledGraph::remove_edge(std::size_t u, std::size_t v) {
    adj_[u * n_ + v] = 0;
    adj_[v * n_ + u] = 0;
}

std::size_t LabeledGraph::edge_count() const {
    std::size_t e = 0;
    for (std::size_t u = 0; u < n_; ++u)
        for (std::size_t v = u + 1; v < n_; ++v) e += has_edge(u, v);
    return e;
}

std::vector<std::pair<std::size_t, std::size_t>> LabeledGraph::edges() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t u = 0; u < n_; ++u)
        for (std::size_t v = u + 1; v < n_; ++v)
            if (has_edge(u, v)) out.emplace_back(u, v);
    return out;
}

LabeledGraph LabeledGraph::induced(std::span<const std::size_t> vertices) const {
    LabeledGraph g(vertices.size());
    for (std::size_t s = 0; s < vertices.size(); ++s)
        for (std::size_t t = s + 1; t < vertices.size(); ++t)
            if (has_edge(vertices[s], vertices[t])) g.add_edge(s, t);
    return g;
}

OverlapCoupling::OverlapCoupling(Matrix mass, PartWeights rows, PartWeights cols)
    : mass_(std::move(mass)), rows_(std::move(rows)), cols_(std::move(cols)) {
    if (mass_.rows() != rows_.size() || mass_.cols() != cols_.size())
        fail_invalid("coupling: matrix shape does not match marginals");
    for (std::size_t a = 0; a < mass_.rows(); ++a)
        for (std::size_t i = 0; i < mass_.cols(); ++i)
            if (!(mass_(a, i) >= 0.0) || !std::isfinite(mass_(a, i)))
                fail_invalid("coupling: negative or non-finite entry at (" + std::to_string(a) + "," +
                             std::to_string(i) + ")");
    const auto rs = mass_.row_sums();
    for (std::size_t a = 0; a < rs.size(); ++a)
        if (std::abs(rs[a] - rows_[a]) > kMarginalTol)
            fail_invalid("coupling: row " + std::to_string(a) + " sums to " + std::to_string(rs[a]) +
                         ", expected " + std::to_string(rows_[a]));
    const auto cs = mass_.col_sums();
    for (std::size_t i = 0; i < cs.size(); ++i)
        if (std::abs(cs[i] - cols_[i]) > kMarginalTol)
            fail_invalid("coupling: column " + std::to_string(i) + " sums to " + std::to_string(cs[i]) +
                         ", expected " + std::to_string(cols_[i]));
}

OverlapCoupling OverlapCoupling::identity(const PartWeights& parts) {
    Matrix m(parts.size(), parts.size());
    for (std::size_t i = 0; i < parts.size(); ++i) m(i, i) = parts[i];
    return OverlapCoupling(std::move(m), parts, parts);
}

OverlapCoupling OverlapCoupling::interval(const PartWeights& rows, const PartWeights& cols) {
    Matrix m(rows.size(), cols.size());
    for (const auto& piece : overlay(rows, cols)) m(piece.a, piece.b) += piece.length;
    return OverlapCoupling(std::move(m), rows, cols);
}

OverlapCoupling OverlapCoupling::transposed() const {
    return OverlapCoupling(mass_.transposed(), cols_, rows_);
}

std::vector<std::pair<std::size_t, std::size_t>> OverlapCoupling::support() const {
    std::vector<std::pair<std::size_t, std::size_t>> s;
    for (std::size_t a = 0; a < mass_.rows(); ++a)
        for (std::size_t i = 0; i < mass_.cols(); ++i)
            if (mass_(a, i) > 0.0) s.emplace_back(a, i);
    return s;
}

std::vector<OverlayPiece> overlay(const PartWeights& a, const PartWeights& b) {
    const auto ca = a.cumulative();
    const auto cb = b.cumulative();
    const auto pos_a = a.positive_indices();
    const auto pos_b = b.positive_indices();
    std::vector<OverlayPiece> out;
    std::size_t i = 0, j = 0;
    double x = 0.0;
    while (i < ca.size() && j < cb.size()) {
        if (a[i] == 0.0) {
            ++i;
            continue;
        }
        if (b[j] == 0.0) {
            ++j;
            continue;
        }
        const bool last_a = i == pos_a.back();
        const bool last_b = j == pos_b.back();
        double end;
        if (std::abs(ca[i] - cb[j]) <= kBreakpointTol || (last_a && last_b)) {
            end = std::min(ca[i], cb[j]);
            if (last_a && last_b) end = std::max(ca[i], cb[j]);
            if (end > x) out.push_back({end - x, i, j});
            ++i;
            ++j;
        } else if (ca[i] < cb[j]) {
            end = ca[i];
            if (end > x) out.push_back({end - x, i, j});
            ++i;
        } else {
            end = cb[j];
            if (end > x) out.push_back({end - x, i, j});
            ++j;
        }
        x = std::max(x, end);
    }
    return out;
}

StepGraphon graph_to_graphon(const LabeledGraph& g) {
    const std::size_t n = g.n();
    if (n == 0) fail_invalid("graph_to_graphon: graph has no vertices");
    Matrix values(n, n);
    for (std::size_t u = 0; u < n; ++u)
        for (std::size_t v = 0; v < n; ++v) values(u, v) = g.has_edge(u, v) ? 1.0 : 0.0;
    return StepGraphon(PartWeights::uniform(n), std::move(values));
}

Refinement common_refinement(const StepGraphon& u, const StepGraphon& v) {
    const auto pieces = overlay(u.parts(), v.parts());
    Refinement r;
    std::vector<double> w;
    w.reserve(pieces.size());
    for (const auto& p : pieces) {
        w.push_back(p.length);
        r.from_u.push_back(p.a);
        r.from_v.push_back(p.b);
    }
    r.parts = PartWeights(std::move(w));
    const std::size_t m = pieces.size();
    r.u_values = Matrix(m, m);
    r.v_values = Matrix(m, m);
    for (std::size_t s = 0; s < m; ++s) {
        for (std::size_t t = 0; t < m; ++t) {
            r.u_values(s, t) = u.value(r.from_u[s], r.from_u[t]);
            r.v_values(s, t) = v.value(r.from_v[s], r.from_v[t]);
        }
    }
    return r;
}

StepGraphon apply_coupling(const StepGraphon& u, const PartWeights& target, const OverlapCoupling& c) {
    const Matrix& mass = c.mass();
    if (mass.rows() != u.size() || mass.cols() != target.size())
        fail_invalid("apply_coupling: coupling shape does not match the graphon and target");
    for (std::size_t a = 0; a < u.size(); ++a)
        if (std::abs(c.rows()[a] - u.weight(a)) > kMarginalTol)
            fail_invalid("apply_coupling: row marginal " + std::to_string(a) +
                         " differs from the graphon's part weight");
    for (std::size_t i = 0; i < target.size(); ++i)
        if (std::abs(c.cols()[i] - target[i]) > kMarginalTol)
            fail_invalid("apply_coupling: column marginal " + std::to_string(i) +
                         " differs from the target weight");

    std::vector<double> w;
    std::vector<std::size_t> origin;
    for (std::size_t i = 0; i < target.size(); ++i) {
        for (std::size_t a = 0; a < u.size(); ++a) {
            if (mass(a, i) > 0.0) {
                w.push_back(mass(a, i));
                origin.push_back(a);
            }
        }
    }
    Matrix values(w.size(), w.size());
    for (std::size_t s = 0; s < w.size(); ++s)
        for (std::size_t t = 0; t < w.size(); ++t) values(s, t) = u.value(origin[s], origin[t]);
    return StepGraphon(PartWeights(std::move(w)), std::move(values));
}

StepGraphon stretch_pullback(const StepGraphon& u, double s) {
    if (!(s > 0.0 && s <= 1.0)) fail_invalid("stretch_pullback: s must lie in (0,1]");
    if (s == 1.0) return u;
    const auto cum = u.parts().cumulative();
    std::vector<double> w;
    std::vector<std::size_t> kept;
    double start = 0.0;
    for (std::size_t a = 0; a < u.size(); ++a) {
        if (start < s) {
            w.push_back((std::min(cum[a], s) - start) / s);
            kept.push_back(a);
        }
        start = cum[a];
    }
    Matrix values(kept.size(), kept.size());
    for (std::size_t x = 0; x < kept.size(); ++x)
        for (std::size_t y = 0; y < kept.size(); ++y) values(x, y) = u.value(kept[x], kept[y]);
    return StepGraphon(PartWeights(std::move(w)), std::move(values));
}

StepGraphon project_steps(const StepGraphon& u, std::span<const std::size_t> grouping) {
    if (grouping.size() != u.size())
        fail_invalid("project_steps: grouping must assign every part of the graphon");
    std::size_t coarse = 0;
    for (std::size_t g : grouping) coarse = std::max(coarse, g + 1);
    std::vector<double> w(coarse, 0.0);
    std::vector<bool> hit(coarse, false);
    for (std::size_t a = 0; a < u.size(); ++a) {
        w[grouping[a]] += u.weight(a);
        hit[grouping[a]] = true;
    }
    for (std::size_t g = 0; g < coarse; ++g)
        if (!hit[g]) fail_invalid("project_steps: coarse part " + std::to_string(g) + " is empty");

    Matrix num(coarse, coarse);
    for (std::size_t a = 0; a < u.size(); ++a)
        for (std::size_t b = 0; b < u.size(); ++b)
            num(grouping[a], grouping[b]) += u.weight(a) * u.weight(b) * u.value(a, b);
    Matrix values(coarse, coarse);
    for (std::size_t x = 0; x < coarse; ++x) {
        for (std::size_t y = x; y < coarse; ++y) {
            const double mass = w[x] * w[y];
            const double avg = mass > 0.0 ? clamp01(num(x, y) / mass) : 0.0;
            values(x, y) = avg;
            values(y, x) = avg;
        }
    }
    return StepGraphon(PartWeights(std::move(w)), std::move(values));
}

StepGraphon expand_steps(const StepGraphon& coarse, std::span<const std::size_t> grouping,
                         const PartWeights& fine) {
    if (grouping.size() != fine.size()) fail_invalid("expand_steps: grouping/fine size mismatch");
    Matrix values(fine.size(), fine.size());
    for (std::size_t a = 0; a < fine.size(); ++a) {
        for (std::size_t b = 0; b < fine.size(); ++b) {
            if (grouping[a] >= coarse.size() || grouping[b] >= coarse.size())
                fail_invalid("expand_steps: grouping index out of range");
            values(a, b) = coarse.value(grouping[a], grouping[b]);
        }
    }
    return StepGraphon(fine, std::move(values));
}

StepGraphon permute_parts(const StepGraphon& u, std::span<const std::size_t> order) {
    if (order.size() != u.size()) fail_invalid("permute_parts: order has the wrong length");
    std::vector<double> w(order.size());
    Matrix values(order.size(), order.size());
    for (std::size_t s = 0; s < order.size(); ++s) {
        w[s] = u.weight(order[s]);
        for (std::size_t t = 0; t < order.size(); ++t) values(s, t) = u.value(order[s], order[t]);
    }
    return StepGraphon(PartWeights(std::move(w)), std::move(values));
}

double edge_density(const StepGraphon& u) {
    double d = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        for (std::size_t j = 0; j < u.size(); ++j) d += u.weight(i) * u.weight(j) * u.value(i, j);
    return d;
}

}  // namespace sgldp
