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


// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "../unit/testutil.hpp"
#include "sgldp/coloured.hpp"
#include "sgldp/cut_metric.hpp"
#include "sgldp/ldp_lab.hpp"
#include "sgldp/rate.hpp"
#include "sgldp/samplers.hpp"

namespace {

using namespace sgldp;
using testing::ref_entropy;

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Outcome {
    bool ok = true;
    std::string detail;
};

Outcome entropy_identities() {
    Outcome o;
    int bad = 0;
    for (int i = 0; i <= 100; ++i) {
        const double p = i / 100.0;
        if (rel_entropy(p, p).value() != 0.0) ++bad;
        for (int j = 0; j <= 100; ++j) {
            const double rho = j / 100.0;
            if (i == 0 && j != 0 && !rel_entropy(0.0, rho).is_infinite()) ++bad;
            if (i == 100 && j != 100 && !rel_entropy(1.0, rho).is_infinite()) ++bad;
        }
        if (i == 0 || i == 100) continue;
        for (int j = 0; j + 2 <= 100; ++j) {
            const double a = rel_entropy(p, j / 100.0).value(), b = rel_entropy(p, (j + 2) / 100.0).value();
            if (rel_entropy(p, (j + 1) / 100.0).value() > 0.5 * (a + b) + 1e-12) ++bad;
        }
    }
    o.ok = bad == 0;
    o.detail = std::to_string(bad) + " violations over the 0.01 grid";
    return o;
}

// max over part unions, by listing every A and taking the best B per column
double oracle_cut_norm(const SignedStepFn& f) {
    const Matrix k = f.weighted_kernel();
    const std::size_t m = k.rows();
    double best = 0.0;
    for (std::uint32_t a = 0; a < (1u << m); ++a) {
        double pos = 0.0, neg = 0.0;
        for (std::size_t q = 0; q < m; ++q) {
            double col = 0.0;
            for (std::size_t p = 0; p < m; ++p)
                if (a >> p & 1u) col += k(p, q);
            if (col > 0) pos += col;
            else neg -= col;
        }
        best = std::max({best, pos, neg});
    }
    return best;
}

Outcome cut_norm_oracle() {
    Rng rng(2);
    int bad = 0;
    double worst = 0.0;
    for (int t = 0; t < 500; ++t) {
        const std::size_t m = 1 + rng.below(8);
        PartWeights w(testing::random_weights(rng, m));
        Matrix v(m, m);
        for (std::size_t i = 0; i < m; ++i)
            for (std::size_t j = i; j < m; ++j) v(i, j) = v(j, i) = 2 * rng.uniform() - 1;
        const SignedStepFn f(w, v);
        const double gap = std::abs(cut_norm_alternating(f, 32, t) - oracle_cut_norm(f));
        worst = std::max(worst, gap);
        if (gap > 1e-9) ++bad;
    }
    return {bad == 0, std::to_string(bad) + "/500 mismatches, worst gap " + std::to_string(worst)};
}

Outcome lipschitz() {
    Rng rng(3);
    int bad = 0;
    for (int t = 0; t < 200; ++t) {
        const std::size_t k = 1 + rng.below(3);
        auto mk = [&] {
            const std::size_t m = 1 + rng.below(5);
            std::vector<std::size_t> c(m);
            for (auto& x : c) x = rng.below(k);
            return ColouredStepGraphon(testing::random_graphon(rng, m), c, k);
        };
        auto a = mk(), b = mk();
        const double d = dk_norm(a, b);
        if (cut_norm_exact(difference(gamma_forget(a), gamma_forget(b))) > d + 1e-12) ++bad;
        Matrix p = testing::random_symmetric(rng, k);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = 0; j < k; ++j)
                if (cut_norm_exact(difference(gamma_block(a, i, j, p), gamma_block(b, i, j, p))) > d + 1e-12) ++bad;
    }
    return {bad == 0, std::to_string(bad) + " violations over 200 pairs"};
}

Outcome two_cliques() {
    auto u = make_step_graphon({0.5, 0.5}, Matrix::from_rows({{1, 0}, {0, 1}}));
    Matrix id = Matrix::from_rows({{1, 0}, {0, 1}});
    const auto half = rate_J({0.5, 0.5}, id, u);
    const auto off = rate_J({0.3, 0.7}, id, u);
    const auto r = rate_R(id, u);
    const bool ok = half.value.value() <= 1e-6 && off.value.is_infinite() && off.infinity_certified &&
                    r.value.value() <= 1e-6 && r.witness_alpha && std::abs((*r.witness_alpha)[0] - 0.5) <= 0.05 &&
                    std::abs((*r.witness_alpha)[1] - 0.5) <= 0.05;
    char buf[160];
    std::snprintf(buf, sizeof buf, "J(1/2,1/2)=%g, J(0.3,0.7)=%s%s, R=%g at alpha=(%g,%g)", half.value.value(),
                  off.value.is_infinite() ? "inf" : "finite", off.infinity_certified ? " certified" : "",
                  r.value.value(), r.witness_alpha ? (*r.witness_alpha)[0] : -1.0,
                  r.witness_alpha ? (*r.witness_alpha)[1] : -1.0);
    return {ok, buf};
}

Outcome j_scaling() {
    Rng rng(5);
    int bad = 0;
    for (int t = 0; t < 50; ++t) {
        const std::size_t k = 1 + rng.below(3);
        std::vector<double> alpha(k);
        for (auto& x : alpha) x = static_cast<double>(1 + rng.below(1024)) / 1024.0;
        auto u = testing::random_graphon(rng, 1 + rng.below(4));
        Matrix p = testing::random_symmetric(rng, k, 0.05, 0.95);
        const double base = rate_J(alpha, p, u).value.value();
        for (double c : {0.5, 2.0, 7.0}) {
            auto s = alpha;
            for (auto& x : s) x *= c;
            if (rate_J(s, p, u).value.value() != base) ++bad;
        }
    }
    return {bad == 0, std::to_string(bad) + "/150 scaled values differ"};
}

Outcome coupling_bound() {
    Rng rng(6);
    int bad_bound = 0, bad_iso = 0, n = 0;
    while (n < 1000) {
        const std::size_t k = 1 + rng.below(3);
        std::vector<std::size_t> a(k), b(k);
        for (std::size_t i = 0; i < k; ++i) {
            a[i] = 4 + rng.below(30);
            b[i] = a[i] + rng.below(4) - rng.below(3);
        }
        const double eps = coupling_epsilon(a, b);
        if (eps > 0.1) continue;
        const auto c = coupled_block_sample(a, b, testing::random_symmetric(rng, k), derive_seed(77, n));
        for (std::size_t s = 0; s < c.alignment.size(); ++s)
            for (std::size_t t = s + 1; t < c.alignment.size(); ++t) {
                const auto [x, y] = c.alignment[s];
                const auto [x2, y2] = c.alignment[t];
                if (c.g.has_edge(x, x2) != c.h.has_edge(y, y2)) {
                    ++bad_iso;
                    s = t = c.alignment.size();
                }
            }
        if (alignment_distance_bound(c) > 4 * eps / (1 - eps) + 1e-12) ++bad_bound;
        ++n;
    }
    return {bad_bound == 0 && bad_iso == 0,
            std::to_string(bad_bound) + " bound violations, " + std::to_string(bad_iso) + " non-isomorphic alignments"};
}

double oracle_tail(std::size_t m, double p, std::size_t kmin) {
    double mx = -kInf;
    std::vector<double> t;
    for (std::size_t j = kmin; j <= m; ++j) {
        t.push_back(std::lgamma(m + 1.0) - std::lgamma(j + 1.0) - std::lgamma(m - j + 1.0) + j * std::log(p) +
                    (m - j) * std::log1p(-p));
        mx = std::max(mx, t.back());
    }
    double s = 0.0;
    for (double x : t) s += std::exp(x - mx);
    return mx + std::log(s);
}

Outcome ldp_reproduction() {
    const double limit = ref_entropy(0.5, 0.8) / 2;
    const std::size_t m200 = 200 * 199 / 2;
    // smallest edge count with density >= 0.8
    const std::size_t k200 = static_cast<std::size_t>(std::ceil(0.8 * m200 - 1e-9));
    const double exact200 = exact_event_logprob(BlockSpec{{200}, Matrix(1, 1, 0.5)}, EventSpec::density_at_least(0.8))
                                .log_prob;
    const double norm = -exact200 / (200.0 * 200.0);
    const bool oracle_ok = std::abs(exact200 - oracle_tail(m200, 0.5, k200)) <= 1e-8 * std::abs(exact200);
    const std::size_t m40 = 40 * 39 / 2;
    const double o40 = oracle_tail(m40, 0.5, static_cast<std::size_t>(std::ceil(0.8 * m40 - 1e-9)));
    const auto tilted = tilted_density_logprob(40, 0.5, 0.8, 100000, 40);
    const double z = std::abs(tilted.log_prob - o40) / *tilted.stderr_log;
    char buf[200];
    std::snprintf(buf, sizeof buf, "n=200 normalized %.7f vs limit %.7f (%.2f%%), tilted n=40 off by %.2f sigma",
                  norm, limit, 100 * std::abs(norm - limit) / limit, z);
    return {oracle_ok && std::abs(norm - limit) <= 0.05 * limit && z <= 3.0, buf};
}

double enumerate_wrandom(std::size_t n, const StepGraphon& w, EventOracle& oracle) {
    const std::size_t k = w.size(), m = n * (n - 1) / 2;
    std::vector<std::size_t> lat(n, 0);
    std::vector<double> q(m);
    double total = 0.0;
    for (;;) {
        double pl = 1.0;
        for (std::size_t x : lat) pl *= w.weight(x);
        if (pl > 0.0) {
            std::size_t e = 0;
            for (std::size_t u = 0; u < n; ++u)
                for (std::size_t v = u + 1; v < n; ++v) q[e++] = w.value(lat[u], lat[v]);
            for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
                double pr = pl;
                for (std::size_t f = 0; f < m && pr > 0.0; ++f) pr *= (mask >> f & 1u) ? q[f] : 1.0 - q[f];
                if (pr == 0.0) continue;
                LabeledGraph g(n);
                e = 0;
                for (std::size_t u = 0; u < n; ++u)
                    for (std::size_t v = u + 1; v < n; ++v, ++e)
                        if (mask >> e & 1u) g.add_edge(u, v);
                if (oracle.contains(g)) total += pr;
            }
        }
        std::size_t i = 0;
        while (i < n && ++lat[i] == k) lat[i++] = 0;
        if (i == n) break;
    }
    return total;
}

Outcome convex_combination() {
    Rng rng(8);
    int bad = 0;
    double worst = 0.0;
    for (int t = 0; t < 20; ++t) {
        const std::size_t k = 1 + rng.below(3);
        auto w = testing::random_graphon(rng, k);
        const bool ball = t % 4 == 3;
        const std::size_t n = ball ? 3 + rng.below(2) : 2 + rng.below(5);
        EventSpec ev = ball ? EventSpec::ball(testing::random_graphon(rng, 2), 0.1 + 0.3 * rng.uniform(), 4)
                       : t % 2 ? EventSpec::density_at_least(rng.uniform())
                               : EventSpec::density_at_most(rng.uniform());
        EventOracle oracle(ev);
        const double direct = enumerate_wrandom(n, w, oracle);
        const double cond = std::exp(wrandom_exact_event_logprob(n, w, ev).log_prob);
        worst = std::max(worst, std::abs(direct - cond));
        if (std::abs(direct - cond) > 1e-9) ++bad;
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "%d/20 mismatches, worst gap %.3g", bad, worst);
    return {bad == 0, buf};
}

Outcome stretch_bound() {
    Rng rng(9);
    int bad = 0;
    double worst = -kInf;
    for (int t = 0; t < 100; ++t) {
        auto u = testing::random_graphon(rng, 1 + rng.below(5));
        const double s = 0.8 + 0.2 * rng.uniform();
        const double d = cut_distance_search(u, stretch_pullback(u, s)).upper;
        const double allowed = 2 * (1 / s - 1) + 0.02;
        worst = std::max(worst, d - allowed);
        if (d > allowed) ++bad;
    }
    char buf[120];
    std::snprintf(buf, sizeof buf, "%d/100 over the bound, largest excess %.3g", bad, worst);
    return {bad == 0, buf};
}

struct Criterion {
    int id;
    const char* name;
    double limit_s;  // 0: no runtime limit
    std::function<Outcome()> run;
};

}  // namespace

int main() {
    const std::vector<Criterion> all{
        {1, "entropy identities", 1, entropy_identities},
        {2, "cut-norm oracle equivalence", 30, cut_norm_oracle},
        {3, "1-Lipschitz coloured maps", 30, lipschitz},
        {4, "two-clique rates", 10, two_cliques},
        {5, "J scaling invariance", 0, j_scaling},
        {6, "coupling bound", 60, coupling_bound},
        {7, "LDP rate reproduction", 120, ldp_reproduction},
        {8, "convex-combination identity", 0, convex_combination},
        {9, "stretch bound", 60, stretch_bound},
    };
    int failed = 0;
    for (const auto& c : all) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool slow = c.limit_s > 0 && secs > c.limit_s;
        const bool pass = o.ok && !slow;
        if (!pass) ++failed;
        std::printf("%s criterion %d (%s): %s; %.2fs%s\n", pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), secs,
                    slow ? " over the time limit" : "");
        std::fflush(stdout);
    }
    return failed == 0 ? 0 : 1;
}
