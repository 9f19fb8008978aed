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

// Shared helpers for the unit tests: random instance generators and brute
// force reference computations that do not reuse library algorithms.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <vector>

#include "sgldp/graphon.hpp"
#include "sgldp/random.hpp"

namespace sgldp::testing {

inline std::vector<std::size_t> iota(std::size_t n) {
    std::vector<std::size_t> v(n);
    std::iota(v.begin(), v.end(), 0);
    return v;
}

inline std::vector<double> random_weights(Rng& rng, std::size_t m, bool allow_zero = false) {
    std::vector<double> w(m);
    for (auto& x : w) x = 0.05 + rng.uniform();
    if (allow_zero && m > 1 && rng.coin(0.3)) w[rng.below(m)] = 0.0;
    double s = std::accumulate(w.begin(), w.end(), 0.0);
    for (auto& x : w) x /= s;
    return w;
}

inline Matrix random_symmetric(Rng& rng, std::size_t m, double lo = 0.0, double hi = 1.0) {
    Matrix v(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i; j < m; ++j) v(i, j) = v(j, i) = lo + (hi - lo) * rng.uniform();
    return v;
}

inline StepGraphon random_graphon(Rng& rng, std::size_t m, bool allow_zero = false) {
    return StepGraphon(PartWeights(random_weights(rng, m, allow_zero)), random_symmetric(rng, m));
}

/// max over all pairs of part subsets (A, B) of |sum_{A x B} w_i w_j f_ij|.
inline double brute_cut_norm(const std::vector<double>& w, const Matrix& f) {
    const std::size_t m = w.size();
    double best = 0.0;
    for (std::uint32_t a = 0; a < (1u << m); ++a)
        for (std::uint32_t b = 0; b < (1u << m); ++b) {
            double s = 0.0;
            for (std::size_t i = 0; i < m; ++i) {
                if (!(a >> i & 1u)) continue;
                for (std::size_t j = 0; j < m; ++j)
                    if (b >> j & 1u) s += w[i] * w[j] * f(i, j);
            }
            best = std::max(best, std::abs(s));
        }
    return best;
}

/// Cut norm of u - v after relabelling v's parts by perm (u part i meets v
/// part perm[i]); only meaningful for equal part weights.
inline double brute_permuted_distance(const StepGraphon& u, const StepGraphon& v,
                                      const std::vector<std::size_t>& perm) {
    const std::size_t m = u.size();
    Matrix d(m, m);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < m; ++j) d(i, j) = u.value(i, j) - v.value(perm[i], perm[j]);
    return brute_cut_norm(u.parts().vec(), d);
}

/// Minimum over all part bijections, for graphons with m equal parts.
inline double brute_permutation_distance(const StepGraphon& u, const StepGraphon& v) {
    std::vector<std::size_t> perm(u.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = 1e300;
    do {
        best = std::min(best, brute_permuted_distance(u, v, perm));
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

/// Bernoulli relative entropy written out directly.
inline double ref_entropy(double p, double rho) {
    auto term = [](double x, double y) { return x == 0.0 ? 0.0 : x * std::log(x / y); };
    return term(rho, p) + term(1.0 - rho, 1.0 - p);
}

// Upper tail of the chi-square law with `df` degrees of freedom.
inline double chi2_survival(double x, double df) {
    const double a = 0.5 * df, z = 0.5 * x;
    if (z <= 0.0) return 1.0;
    const double lead = a * std::log(z) - z - std::lgamma(a);
    if (z < a + 1.0) {
        double term = 1.0 / a, sum = term;
        for (int n = 1; n < 1000; ++n) {
            term *= z / (a + n);
            sum += term;
            if (term < sum * 1e-16) break;
        }
        return 1.0 - sum * std::exp(lead);
    }
    // Lentz continued fraction
    double b = z + 1.0 - a, c = 1e300, d = 1.0 / b, h = d;
    for (int i = 1; i < 1000; ++i) {
        const double an = -i * (i - a);
        b += 2.0;
        d = an * d + b;
        c = b + an / c;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return std::exp(lead) * h;
}

// Pearson statistic after pooling cells with expectation below 5; returns
// the p-value.
inline double chi2_pvalue(const std::vector<double>& observed, const std::vector<double>& expected) {
    std::vector<double> o, e;
    double ro = 0.0, re = 0.0;
    for (std::size_t i = 0; i < observed.size(); ++i) {
        ro += observed[i];
        re += expected[i];
        if (re >= 5.0) {
            o.push_back(ro);
            e.push_back(re);
            ro = re = 0.0;
        }
    }
    if (re > 0.0 && !e.empty()) {
        o.back() += ro;
        e.back() += re;
    }
    double stat = 0.0;
    for (std::size_t i = 0; i < o.size(); ++i) stat += (o[i] - e[i]) * (o[i] - e[i]) / e[i];
    return chi2_survival(stat, static_cast<double>(o.size()) - 1.0);
}

inline double binom_pmf(std::size_t n, std::size_t k, double p) {
    return std::exp(std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
                    k * std::log(p) + (n - k) * std::log1p(-p));
}

}  // namespace sgldp::testing
