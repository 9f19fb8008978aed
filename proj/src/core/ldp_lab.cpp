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


#include "sgldp/ldp_lab.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <set>

#include "sgldp/cut_metric.hpp"
#include "sgldp/error.hpp"
#include "sgldp/parallel.hpp"
#include "sgldp/random.hpp"
#include "sgldp/rate.hpp"

namespace sgldp {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();
constexpr std::size_t kChunk = 1024;

double log_add(double x, double y) {
    if (x == kNegInf) return y;
    if (y == kNegInf) return x;
    const double m = std::max(x, y);
    return m + std::log1p(std::exp(-std::abs(x - y)));
}

double log_sum(const std::vector<double>& v) {
    double m = kNegInf;
    for (double x : v) m = std::max(m, x);
    if (m == kNegInf) return kNegInf;
    double s = 0.0;
    for (double x : v) s += std::exp(x - m);
    return m + std::log(s);
}

// count * log(ratio) with 0 * log(anything) = 0.
double count_log(double count, double ratio) { return count == 0.0 ? 0.0 : count * std::log(ratio); }

double log_choose(std::size_t m, std::size_t j) {
    return std::lgamma(static_cast<double>(m) + 1.0) - std::lgamma(static_cast<double>(j) + 1.0) -
           std::lgamma(static_cast<double>(m - j) + 1.0);
}

// log pmf of Bin(m, p) at every j.
std::vector<double> binomial_log_pmf(std::size_t m, double p) {
    std::vector<double> out(m + 1, kNegInf);
    for (std::size_t j = 0; j <= m; ++j) {
        if ((p == 0.0 && j > 0) || (p == 1.0 && j < m)) continue;
        out[j] = log_choose(m, j) + count_log(static_cast<double>(j), p) +
                 count_log(static_cast<double>(m - j), 1.0 - p);
    }
    return out;
}

std::vector<double> log_convolve(const std::vector<double>& x, const std::vector<double>& y) {
    std::vector<double> out(x.size() + y.size() - 1, kNegInf);
    std::vector<double> terms;
    for (std::size_t t = 0; t < out.size(); ++t) {
        terms.clear();
        const std::size_t lo = t >= y.size() - 1 ? t - (y.size() - 1) : 0;
        const std::size_t hi = std::min(t, x.size() - 1);
        for (std::size_t i = lo; i <= hi; ++i)
            if (x[i] != kNegInf && y[t - i] != kNegInf) terms.push_back(x[i] + y[t - i]);
        out[t] = log_sum(terms);
    }
    return out;
}

std::size_t pair_count(std::size_t n) { return n * (n - 1) / 2; }

// Block pairs as (pair count, probability).
std::vector<std::pair<std::size_t, double>> block_pair_groups(const BlockSpec& spec) {
    std::vector<std::pair<std::size_t, double>> out;
    for (std::size_t i = 0; i < spec.k(); ++i)
        for (std::size_t j = i; j < spec.k(); ++j) {
            const std::size_t m = i == j ? pair_count(spec.a[i]) : spec.a[i] * spec.a[j];
            if (m > 0) out.emplace_back(m, spec.p(i, j));
        }
    return out;
}

double convolution_work(const BlockSpec& spec) {
    double work = 0.0, acc = 1.0;
    for (const auto& [m, q] : block_pair_groups(spec)) {
        if (q == 0.0 || q == 1.0) continue;
        work += acc * static_cast<double>(m + 1);
        acc += static_cast<double>(m);
    }
    return work;
}

bool density_event(const EventSpec& e) { return e.kind != EventSpec::Kind::Ball; }

bool density_holds(const EventSpec& e, std::size_t edges, std::size_t m) {
    if (e.kind == EventSpec::Kind::DensityAtLeast) return edges >= density_min_edges(m, e.r);
    return edges <= density_max_edges(m, e.r);
}

// log P(edge count in the event) under G(a, p) by convolving the block-pair
// binomials; deterministic groups only shift the count.
double density_logprob(const BlockSpec& spec, const EventSpec& e) {
    const std::size_t n = spec.n();
    if (n < 2) fail_invalid("density events need at least two vertices");
    const std::size_t m = pair_count(n);
    std::size_t shift = 0;
    std::vector<std::pair<std::size_t, double>> random;
    for (const auto& g : block_pair_groups(spec)) {
        if (g.second == 1.0) shift += g.first;
        else if (g.second > 0.0) random.push_back(g);
    }
    if (random.size() == 1) {
        const std::size_t mr = random[0].first;
        const double q = random[0].second;
        if (e.kind == EventSpec::Kind::DensityAtLeast) {
            const std::size_t need = density_min_edges(m, e.r);
            return binomial_tail_logprob(mr, q, need > shift ? std::min(need - shift, mr + 1) : 0);
        }
        const std::size_t cap = density_max_edges(m, e.r);
        if (cap < shift) return kNegInf;
        return binomial_head_logprob(mr, q, std::min(cap - shift, mr));
    }
    std::vector<double> dist{0.0};
    for (const auto& [mr, q] : random) dist = log_convolve(dist, binomial_log_pmf(mr, q));
    std::vector<double> hits;
    for (std::size_t j = 0; j < dist.size(); ++j)
        if (density_holds(e, j + shift, m)) hits.push_back(dist[j]);
    return std::min(0.0, log_sum(hits));
}

// Calls fn(graph, log probability) for every graph of G(a, p) with positive
// probability.
void enumerate_graphs(const BlockSpec& spec, const std::function<void(const LabeledGraph&, double)>& fn) {
    const auto blk = spec.block_of();
    const std::size_t n = blk.size();
    LabeledGraph base(n);
    std::vector<std::pair<std::size_t, std::size_t>> free_pairs;
    std::vector<double> lp1, lp0;
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = x + 1; y < n; ++y) {
            const double q = spec.p(blk[x], blk[y]);
            if (q == 1.0) base.add_edge(x, y);
            else if (q > 0.0) {
                free_pairs.emplace_back(x, y);
                lp1.push_back(std::log(q));
                lp0.push_back(std::log1p(-q));
            }
        }
    const std::size_t f = free_pairs.size();
    LabeledGraph g = base;
    double lp = 0.0;
    for (double x : lp0) lp += x;
    // Gray code order flips one pair per step.
    for (std::uint64_t step = 0;; ++step) {
        fn(g, lp);
        if (step + 1 == (std::uint64_t{1} << f)) break;
        const std::size_t bit = static_cast<std::size_t>(std::countr_zero(step + 1));
        const auto [x, y] = free_pairs[bit];
        if (g.has_edge(x, y)) {
            g.remove_edge(x, y);
            lp += lp0[bit] - lp1[bit];
        } else {
            g.add_edge(x, y);
            lp += lp1[bit] - lp0[bit];
        }
    }
}

std::size_t free_pair_count(const BlockSpec& spec) {
    const auto blk = spec.block_of();
    std::size_t f = 0;
    for (std::size_t x = 0; x < blk.size(); ++x)
        for (std::size_t y = x + 1; y < blk.size(); ++y) {
            const double q = spec.p(blk[x], blk[y]);
            if (q > 0.0 && q < 1.0) ++f;
        }
    return f;
}

// Compositions of n into k nonnegative parts.
void for_each_composition(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
    std::vector<std::size_t> c(k, 0);
    std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t pos, std::size_t left) {
        if (pos + 1 == k) {
            c[pos] = left;
            fn(c);
            return;
        }
        for (std::size_t v = 0; v <= left; ++v) {
            c[pos] = v;
            rec(pos + 1, left - v);
        }
    };
    rec(0, n);
}

double composition_count(std::size_t n, std::size_t k) {
    return std::exp(log_choose(n + k - 1, k - 1));
}

// The block model obtained from W by fixing the number of vertices per
// positive part.
struct Conditioned {
    std::vector<std::size_t> parts;  // positive parts of w
    Matrix p;
    std::vector<double> log_w;
};

Conditioned conditioned_model(const StepGraphon& w) {
    Conditioned c;
    c.parts = w.parts().positive_indices();
    const std::size_t k = c.parts.size();
    c.p = Matrix(k, k);
    for (std::size_t i = 0; i < k; ++i) {
        c.log_w.push_back(std::log(w.weight(c.parts[i])));
        for (std::size_t j = 0; j < k; ++j) c.p(i, j) = w.value(c.parts[i], c.parts[j]);
    }
    return c;
}

double log_multinomial(std::size_t n, const std::vector<std::size_t>& counts, const std::vector<double>& log_w) {
    double s = std::lgamma(static_cast<double>(n) + 1.0);
    for (std::size_t i = 0; i < counts.size(); ++i)
        s += -std::lgamma(static_cast<double>(counts[i]) + 1.0) + count_log(static_cast<double>(counts[i]), std::exp(log_w[i]));
    return s;
}

LogProbEstimate finish_mc(std::size_t hits, std::size_t samples, const char* method, bool ball) {
    LogProbEstimate est;
    est.method = method;
    est.lower_bound = ball;
    const double n = static_cast<double>(samples);
    if (hits == 0) {
        est.log_prob = kNegInf;
        est.zero_hits = true;
        return est;
    }
    const double ph = static_cast<double>(hits) / n;
    est.log_prob = hits == samples ? 0.0 : std::log(ph);
    est.stderr_log = std::sqrt((1.0 - ph) / (n * ph));
    return est;
}

template <class Sampler>
LogProbEstimate run_mc(const EventSpec& event, std::size_t samples, unsigned jobs, Sampler&& sample) {
    event.validate();
    if (samples == 0) fail_invalid("mc: samples must be at least 1");
    const std::size_t chunks = (samples + kChunk - 1) / kChunk;
    std::vector<std::size_t> hits(chunks, 0);
    parallel_for(chunks, jobs, [&](std::size_t c) {
        EventOracle oracle(event);
        const std::size_t end = std::min(samples, (c + 1) * kChunk);
        for (std::size_t i = c * kChunk; i < end; ++i)
            if (oracle.contains(sample(i))) ++hits[c];
    });
    return finish_mc(std::accumulate(hits.begin(), hits.end(), std::size_t{0}), samples, "mc",
                     event.kind == EventSpec::Kind::Ball);
}

}  // namespace

EventSpec EventSpec::density_at_least(double r) {
    EventSpec e;
    e.kind = Kind::DensityAtLeast;
    e.r = r;
    e.validate();
    return e;
}

EventSpec EventSpec::density_at_most(double r) {
    EventSpec e;
    e.kind = Kind::DensityAtMost;
    e.r = r;
    e.validate();
    return e;
}

EventSpec EventSpec::ball(StepGraphon target, double eta, unsigned restarts) {
    EventSpec e;
    e.kind = Kind::Ball;
    e.target = std::move(target);
    e.eta = eta;
    e.restarts = restarts;
    e.validate();
    return e;
}

void EventSpec::validate() const {
    if (kind == Kind::Ball) {
        if (!(eta >= 0.0 && eta <= 1.0)) fail_invalid("event: eta must lie in [0,1]");
        if (target.size() == 0) fail_invalid("event: ball target is empty");
        if (restarts == 0) fail_invalid("event: ball restarts must be at least 1");
    } else if (!(r >= 0.0 && r <= 1.0)) {
        fail_invalid("event: r must lie in [0,1]");
    }
}

std::size_t density_min_edges(std::size_t m, double r) {
    const double need = (r - kDensitySlack) * static_cast<double>(m);
    if (need <= 0.0) return 0;
    return static_cast<std::size_t>(std::ceil(need));
}

std::size_t density_max_edges(std::size_t m, double r) {
    const double cap = (r + kDensitySlack) * static_cast<double>(m);
    if (cap < 0.0) return 0;
    return std::min(m, static_cast<std::size_t>(std::floor(cap)));
}

std::vector<std::uint64_t> canonical_form(const LabeledGraph& g) {
    const std::size_t n = g.n();
    // Colour refinement starting from degrees.
    std::vector<std::size_t> colour(n);
    for (std::size_t v = 0; v < n; ++v) {
        std::size_t d = 0;
        for (std::size_t w = 0; w < n; ++w) d += g.has_edge(v, w);
        colour[v] = d;
    }
    for (;;) {
        std::vector<std::vector<std::size_t>> sig(n);
        for (std::size_t v = 0; v < n; ++v) {
            sig[v].push_back(colour[v]);
            std::vector<std::size_t> nb;
            for (std::size_t w = 0; w < n; ++w)
                if (g.has_edge(v, w)) nb.push_back(colour[w]);
            std::sort(nb.begin(), nb.end());
            sig[v].insert(sig[v].end(), nb.begin(), nb.end());
        }
        auto uniq = sig;
        std::sort(uniq.begin(), uniq.end());
        uniq.erase(std::unique(uniq.begin(), uniq.end()), uniq.end());
        std::vector<std::size_t> next(n);
        for (std::size_t v = 0; v < n; ++v)
            next[v] = static_cast<std::size_t>(std::lower_bound(uniq.begin(), uniq.end(), sig[v]) - uniq.begin());
        const std::size_t before = std::set<std::size_t>(colour.begin(), colour.end()).size();
        colour = next;
        if (uniq.size() == before) break;
    }
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
        return colour[x] != colour[y] ? colour[x] < colour[y] : x < y;
    });
    // Try every ordering that keeps the colour classes in place.
    std::vector<std::pair<std::size_t, std::size_t>> classes;
    for (std::size_t s = 0; s < n;) {
        std::size_t t = s;
        while (t < n && colour[order[t]] == colour[order[s]]) ++t;
        classes.emplace_back(s, t);
        s = t;
    }
    const std::size_t bits = n * (n - 1) / 2;
    const std::size_t words = (bits + 63) / 64 + 1;
    std::vector<std::uint64_t> best, cur(words);
    auto encode = [&] {
        std::fill(cur.begin(), cur.end(), 0);
        cur[0] = n;
        std::size_t b = 0;
        for (std::size_t x = 0; x < n; ++x)
            for (std::size_t y = x + 1; y < n; ++y, ++b)
                if (g.has_edge(order[x], order[y])) cur[1 + b / 64] |= std::uint64_t{1} << (63 - b % 64);
        if (best.empty() || cur < best) best = cur;
    };
    std::function<void(std::size_t)> rec = [&](std::size_t c) {
        if (c == classes.size()) {
            encode();
            return;
        }
        auto first = order.begin() + static_cast<std::ptrdiff_t>(classes[c].first);
        auto last = order.begin() + static_cast<std::ptrdiff_t>(classes[c].second);
        std::sort(first, last);
        do {
            rec(c + 1);
        } while (std::next_permutation(first, last));
    };
    rec(0);
    return best;
}

EventOracle::EventOracle(EventSpec e) : e_(std::move(e)) { e_.validate(); }

bool EventOracle::contains(const LabeledGraph& g) {
    if (density_event(e_)) {
        if (g.n() < 2) fail_invalid("density events need at least two vertices");
        return density_holds(e_, g.edge_count(), pair_count(g.n()));
    }
    if (g.n() == 0) fail_invalid("ball events need at least one vertex");
    std::vector<std::uint64_t> key;
    if (g.n() <= 8) {
        key = canonical_form(g);
    } else {
        key.push_back(g.n());
        for (const auto& [x, y] : g.edges()) key.push_back(x * g.n() + y);
    }
    if (auto it = cache_.find(key); it != cache_.end()) return it->second;
    // Isomorphic graphs share the decision; the representative is the first
    // one seen, so decide on the canonical relabelling when available.
    LabeledGraph rep = g;
    if (g.n() <= 8) {
        rep = LabeledGraph(g.n());
        std::size_t b = 0;
        for (std::size_t x = 0; x < g.n(); ++x)
            for (std::size_t y = x + 1; y < g.n(); ++y, ++b)
                if (key[1 + b / 64] >> (63 - b % 64) & 1U) rep.add_edge(x, y);
    }
    const double d = cut_distance_search(graph_to_graphon(rep), e_.target, SearchBudget{e_.restarts, 0, 1}).upper;
    const bool in = d <= e_.eta;
    cache_.emplace(std::move(key), in);
    return in;
}

double binomial_tail_logprob(std::size_t m, double p, std::size_t k_min) {
    if (!(p >= 0.0 && p <= 1.0)) fail_invalid("binomial tail: p must lie in [0,1]");
    if (k_min > m + 1) fail_invalid("binomial tail: k_min exceeds m");
    if (k_min == 0) return 0.0;
    if (k_min == m + 1) return kNegInf;
    const auto pmf = binomial_log_pmf(m, p);
    return std::min(0.0, log_sum(std::vector<double>(pmf.begin() + static_cast<std::ptrdiff_t>(k_min), pmf.end())));
}

double binomial_head_logprob(std::size_t m, double p, std::size_t k_max) {
    if (!(p >= 0.0 && p <= 1.0)) fail_invalid("binomial head: p must lie in [0,1]");
    if (k_max > m) fail_invalid("binomial head: k_max exceeds m");
    if (k_max == m) return 0.0;
    const auto pmf = binomial_log_pmf(m, p);
    return std::min(0.0, log_sum(std::vector<double>(pmf.begin(), pmf.begin() + static_cast<std::ptrdiff_t>(k_max + 1))));
}

LogProbEstimate exact_event_logprob(const BlockSpec& spec, const EventSpec& event, const ExactOptions& opts) {
    spec.validate();
    event.validate();
    LogProbEstimate est;
    if (density_event(event)) {
        if (convolution_work(spec) > opts.max_convolution_work)
            fail_too_large("exact: edge-count convolution exceeds the work cap");
        est.log_prob = density_logprob(spec, event);
        est.method = "exact";
        return est;
    }
    const std::size_t f = free_pair_count(spec);
    if (f >= 63 || (std::uint64_t{1} << f) > opts.max_enumerated)
        fail_too_large("exact: " + std::to_string(f) + " random pairs exceed the enumeration budget");
    EventOracle oracle(event);
    double acc = kNegInf;
    enumerate_graphs(spec, [&](const LabeledGraph& g, double lp) {
        if (oracle.contains(g)) acc = log_add(acc, lp);
    });
    est.log_prob = std::min(0.0, acc);
    est.method = "enumeration";
    est.lower_bound = true;
    return est;
}

LogProbEstimate wrandom_exact_event_logprob(std::size_t n, const StepGraphon& w, const EventSpec& event,
                                            const ExactOptions& opts) {
    event.validate();
    if (n == 0) fail_invalid("W-random: n must be at least 1");
    const Conditioned c = conditioned_model(w);
    const std::size_t k = c.parts.size();
    const double comps = composition_count(n, k);
    if (density_event(event)) {
        const double m = static_cast<double>(pair_count(n));
        if (comps * m * m > opts.max_convolution_work)
            fail_too_large("W-random exact: conditioning work exceeds the cap");
    } else {
        const double graphs = std::ldexp(1.0, static_cast<int>(std::min<std::size_t>(pair_count(n), 1000)));
        if (comps * graphs > static_cast<double>(opts.max_enumerated) * 16.0)
            fail_too_large("W-random enumeration exceeds the budget");
    }
    std::vector<double> terms;
    // One oracle for every block-count class keeps ball decisions shared.
    EventOracle oracle(event);
    for_each_composition(n, k, [&](const std::vector<std::size_t>& counts) {
        const double lm = log_multinomial(n, counts, c.log_w);
        if (lm == kNegInf) return;
        BlockSpec spec{counts, c.p};
        double lp;
        if (density_event(event)) {
            lp = density_logprob(spec, event);
        } else {
            double acc = kNegInf;
            enumerate_graphs(spec, [&](const LabeledGraph& g, double l) {
                if (oracle.contains(g)) acc = log_add(acc, l);
            });
            lp = acc;
        }
        terms.push_back(lm + lp);
    });
    LogProbEstimate est;
    est.log_prob = std::min(0.0, log_sum(terms));
    est.method = density_event(event) ? "exact" : "enumeration";
    est.lower_bound = !density_event(event);
    return est;
}

LogProbEstimate mc_event_logprob(const BlockSpec& spec, const EventSpec& event, std::size_t samples,
                                 std::uint64_t seed, unsigned jobs) {
    spec.validate();
    return run_mc(event, samples, jobs, [&](std::size_t i) { return sample_block(spec, derive_seed(seed, i)); });
}

LogProbEstimate mc_wrandom_event_logprob(std::size_t n, const StepGraphon& w, const EventSpec& event,
                                         std::size_t samples, std::uint64_t seed, unsigned jobs) {
    return run_mc(event, samples, jobs,
                  [&](std::size_t i) { return sample_wrandom(n, w, derive_seed(seed, i)).graph; });
}

LogProbEstimate tilted_density_logprob(std::size_t n, double p, double r, std::size_t samples, std::uint64_t seed,
                                       bool upper, unsigned jobs) {
    if (n < 2) fail_invalid("tilted: n must be at least 2");
    if (!(p >= 0.0 && p <= 1.0) || !(r >= 0.0 && r <= 1.0)) fail_invalid("tilted: p and r must lie in [0,1]");
    if (upper && r < p) fail_invalid("tilted: the upper tail needs r >= p");
    if (!upper && r > p) fail_invalid("tilted: the lower tail needs r <= p");
    if (samples < 2) fail_invalid("tilted: samples must be at least 2");
    const std::size_t m = pair_count(n);
    const double q = r;
    const EventSpec event = upper ? EventSpec::density_at_least(r) : EventSpec::density_at_most(r);

    // Log likelihood ratio of an outcome with e edges; -inf when p rules it out.
    auto log_weight = [&](std::size_t e) {
        const double on = static_cast<double>(e), off = static_cast<double>(m - e);
        if ((p == 0.0 && e > 0) || (p == 1.0 && e < m)) return kNegInf;
        return count_log(on, p / q) + count_log(off, (1.0 - p) / (1.0 - q));
    };
    std::vector<double> lw(samples, kNegInf);
    const std::size_t chunks = (samples + kChunk - 1) / kChunk;
    parallel_for(chunks, jobs, [&](std::size_t c) {
        const std::size_t end = std::min(samples, (c + 1) * kChunk);
        for (std::size_t i = c * kChunk; i < end; ++i) {
            Rng rng(derive_seed(seed, i));
            std::size_t e = 0;
            for (std::size_t t = 0; t < m; ++t) e += rng.coin(q);
            if (density_holds(event, e, m)) lw[i] = log_weight(e);
        }
    });

    LogProbEstimate est;
    est.method = "tilted";
    double mx = kNegInf;
    for (double x : lw) mx = std::max(mx, x);
    const double ns = static_cast<double>(samples);
    if (mx == kNegInf) {
        est.log_prob = kNegInf;
        est.zero_hits = true;
        return est;
    }
    double mean = 0.0;
    for (double x : lw) mean += std::exp(x - mx);
    mean /= ns;
    double var = 0.0;
    for (double x : lw) {
        const double d = std::exp(x - mx) - mean;
        var += d * d;
    }
    var /= ns - 1.0;
    est.log_prob = std::min(0.0, mx + std::log(mean));
    est.stderr_log = std::sqrt(var / ns) / mean;
    return est;
}

void ExperimentConfig::validate() const {
    event.validate();
    if (n_grid.empty()) fail_invalid("config: nGrid is empty");
    for (std::size_t i = 1; i < n_grid.size(); ++i)
        if (n_grid[i] <= n_grid[i - 1]) fail_invalid("config: nGrid must be strictly increasing");
    if (n_grid.front() == 0) fail_invalid("config: nGrid entries must be positive");
    if (event.kind != EventSpec::Kind::Ball && n_grid.front() < 2)
        fail_invalid("config: density events need n >= 2");
    if (samples == 0) fail_invalid("config: samples must be at least 1");
    if (methods.empty()) fail_invalid("config: methods list is empty");
    for (const auto& m : methods)
        if (m != "exact" && m != "enumeration" && m != "tilted" && m != "mc")
            fail_invalid("config: unknown method '" + m + "'");
    if (model == Model::Block) {
        if (alpha.size() != p.rows() || p.rows() != p.cols())
            fail_invalid("config: alpha and p dimensions differ");
        normalize_alpha(alpha);
        BlockSpec{std::vector<std::size_t>(alpha.size(), 1), p}.validate();
    } else if (w.size() == 0) {
        fail_invalid("config: W-random model needs a graphon");
    }
}

std::vector<std::size_t> block_sizes(std::size_t n, const std::vector<double>& alpha) {
    const auto a = normalize_alpha(alpha);
    std::vector<std::size_t> out(a.size());
    std::vector<std::pair<double, std::size_t>> frac;
    std::size_t used = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double x = a[i] * static_cast<double>(n);
        out[i] = static_cast<std::size_t>(std::floor(x));
        used += out[i];
        frac.emplace_back(x - std::floor(x), i);
    }
    std::stable_sort(frac.begin(), frac.end(), [](const auto& x, const auto& y) { return x.first > y.first; });
    for (std::size_t t = 0; used < n && t < frac.size(); ++t, ++used) ++out[frac[t].second];
    return out;
}

namespace {

// The single edge probability of a one-block model, if it is one.
std::optional<double> single_probability(const ExperimentConfig& c) {
    if (c.model == ExperimentConfig::Model::Block) {
        std::size_t positive = 0, idx = 0;
        for (std::size_t i = 0; i < c.alpha.size(); ++i)
            if (c.alpha[i] > 0.0) {
                ++positive;
                idx = i;
            }
        if (positive == 1) return c.p(idx, idx);
        return std::nullopt;
    }
    const auto pos = c.w.parts().positive_indices();
    const double v = c.w.value(pos[0], pos[0]);
    for (std::size_t i : pos)
        for (std::size_t j : pos)
            if (c.w.value(i, j) != v) return std::nullopt;
    return v;
}

std::optional<LogProbEstimate> try_method(const std::string& method, const ExperimentConfig& c, std::size_t n,
                                          const std::vector<std::size_t>& blocks) {
    const bool block = c.model == ExperimentConfig::Model::Block;
    const bool density = density_event(c.event);
    const std::uint64_t seed = derive_seed(c.seed, n);
    try {
        if (method == "exact") {
            if (!density) return std::nullopt;
            if (block) return exact_event_logprob(BlockSpec{blocks, c.p}, c.event, c.exact);
            return wrandom_exact_event_logprob(n, c.w, c.event, c.exact);
        }
        if (method == "enumeration") {
            if (density) return std::nullopt;
            if (block) return exact_event_logprob(BlockSpec{blocks, c.p}, c.event, c.exact);
            return wrandom_exact_event_logprob(n, c.w, c.event, c.exact);
        }
        if (method == "tilted") {
            const auto q = single_probability(c);
            if (!density || !q) return std::nullopt;
            const bool upper = c.event.kind == EventSpec::Kind::DensityAtLeast;
            if ((upper && c.event.r < *q) || (!upper && c.event.r > *q)) return std::nullopt;
            return tilted_density_logprob(n, *q, c.event.r, c.samples, seed, upper, c.jobs);
        }
        if (block) return mc_event_logprob(BlockSpec{blocks, c.p}, c.event, c.samples, seed, c.jobs);
        return mc_wrandom_event_logprob(n, c.w, c.event, c.samples, seed, c.jobs);
    } catch (const Error& e) {
        if (e.kind() == ErrorKind::TooLarge) return std::nullopt;
        throw;
    }
}

}  // namespace

CurveResult ldp_curve(const ExperimentConfig& config) {
    config.validate();
    CurveResult res;
    const bool block = config.model == ExperimentConfig::Model::Block;
    for (std::size_t n : config.n_grid) {
        CurvePoint pt;
        pt.n = n;
        pt.speed = static_cast<double>(n) * static_cast<double>(n);
        if (block) pt.blocks = block_sizes(n, config.alpha);
        std::optional<LogProbEstimate> est;
        for (const auto& m : config.methods) {
            est = try_method(m, config, n, pt.blocks);
            if (est) break;
        }
        if (!est) fail_too_large("ldp_curve: no method is feasible at n = " + std::to_string(n));
        pt.estimate = *est;
        if (std::isfinite(est->log_prob)) pt.normalized = -est->log_prob / pt.speed;
        res.points.push_back(std::move(pt));
    }

    res.predicted_kind = "none";
    const auto q = single_probability(config);
    if (density_event(config.event) && q) {
        const double r = config.event.r;
        const bool upper = config.event.kind == EventSpec::Kind::DensityAtLeast;
        const bool atypical = upper ? r > *q : r < *q;
        res.predicted = atypical ? 0.5 * rel_entropy(*q, r).value() : 0.0;
        res.predicted_kind = "exact";
    } else if (config.event.kind == EventSpec::Kind::Ball) {
        RateBudget b;
        b.seed = config.seed;
        b.jobs = config.jobs;
        if (block) {
            res.predicted = rate_J(config.alpha, config.p, config.event.target, b).value.value();
        } else {
            const Conditioned c = conditioned_model(config.w);
            res.predicted = rate_R(c.p, config.event.target, b).value.value();
        }
        res.predicted_kind = "upper-bound";
    }
    return res;
}

}  // namespace sgldp
