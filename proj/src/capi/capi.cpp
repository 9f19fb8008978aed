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


#include "sgldp/sgldp.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <new>
#include <string>
#include <utility>

#include "sgldp/coloured.hpp"
#include "sgldp/cut_metric.hpp"
#include "sgldp/error.hpp"
#include "sgldp/graphon.hpp"
#include "sgldp/io.hpp"
#include "sgldp/ldp_lab.hpp"
#include "sgldp/random.hpp"
#include "sgldp/rate.hpp"
#include "sgldp/samplers.hpp"

struct sgldp_graphon {
    sgldp::StepGraphon v;
};
struct sgldp_coloured {
    sgldp::ColouredStepGraphon v;
};
struct sgldp_graph {
    sgldp::LabeledGraph v;
};

namespace {

thread_local std::string g_last_error;

sgldp_status fail(sgldp_status s, const std::string& msg) {
    g_last_error = msg;
    return s;
}

// Runs f, turning exceptions into a status plus message.
template <class F>
sgldp_status guard(F&& f) {
    try {
        f();
        return SGLDP_OK;
    } catch (const sgldp::Error& e) {
        switch (e.kind()) {
            case sgldp::ErrorKind::InvalidArgument: return fail(SGLDP_INVALID_ARGUMENT, e.what());
            case sgldp::ErrorKind::TooLarge: return fail(SGLDP_TOO_LARGE, e.what());
            case sgldp::ErrorKind::Runtime: break;
        }
        return fail(SGLDP_RUNTIME, e.what());
    } catch (const std::bad_alloc&) {
        return fail(SGLDP_RUNTIME, "out of memory");
    } catch (const std::exception& e) {
        return fail(SGLDP_RUNTIME, e.what());
    }
}

void need(const void* p, const char* name) {
    if (!p) sgldp::fail_invalid(std::string(name) + " is null");
}

char* dup(const std::string& s) {
    char* out = static_cast<char*>(std::malloc(s.size() + 1));
    if (!out) throw std::bad_alloc();
    std::memcpy(out, s.c_str(), s.size() + 1);
    return out;
}

sgldp::Matrix square(const double* p, std::size_t k) {
    need(p, "p");
    sgldp::Matrix m(k, k);
    for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) m(i, j) = p[i * k + j];
    return m;
}

sgldp::SearchBudget search_budget(const sgldp_budget* b) {
    sgldp::SearchBudget s;
    if (b) {
        s.restarts = b->restarts;
        s.seed = b->seed;
        s.jobs = b->jobs;
    }
    if (s.restarts == 0) sgldp::fail_invalid("budget: restarts must be at least 1");
    return s;
}

sgldp::RateBudget rate_budget(const sgldp_budget* b) {
    sgldp::RateBudget r;
    if (b) {
        r.restarts = b->restarts;
        r.seed = b->seed;
        r.jobs = b->jobs;
        r.grid_resolution = b->grid_resolution;
        r.grid_restarts = b->grid_restarts;
    }
    if (r.restarts == 0 || r.grid_restarts == 0) sgldp::fail_invalid("budget: restarts must be at least 1");
    if (r.grid_resolution == 0) sgldp::fail_invalid("budget: grid resolution must be at least 1");
    return r;
}

}  // namespace

extern "C" {

const char* sgldp_version(void) { return sgldp::io::kLibraryVersion; }
int sgldp_format_version(void) { return sgldp::io::kFormatVersion; }
const char* sgldp_last_error(void) { return g_last_error.c_str(); }
void sgldp_string_free(char* s) { std::free(s); }

uint64_t sgldp_derive_seed(uint64_t master, uint64_t index) { return sgldp::derive_seed(master, index); }

void sgldp_budget_default(sgldp_budget* b) {
    if (!b) return;
    const sgldp::RateBudget r;
    *b = sgldp_budget{r.restarts, r.seed, r.jobs, r.grid_resolution, r.grid_restarts};
}

sgldp_status sgldp_graphon_create(const double* weights, size_t m, const double* values, sgldp_graphon** out) {
    return guard([&] {
        need(out, "out");
        need(weights, "weights");
        need(values, "values");
        std::vector<double> w(weights, weights + m);
        *out = new sgldp_graphon{sgldp::make_step_graphon(std::move(w), square(values, m))};
    });
}

sgldp_status sgldp_graphon_from_json(const char* json, sgldp_graphon** out) {
    return guard([&] {
        need(out, "out");
        need(json, "json");
        *out = new sgldp_graphon{sgldp::io::graphon_from_json(sgldp::io::parse(json, "graphon"))};
    });
}

sgldp_status sgldp_graphon_to_json(const sgldp_graphon* u, char** out) {
    return guard([&] {
        need(u, "graphon");
        need(out, "out");
        *out = dup(sgldp::io::graphon_to_json(u->v).dump());
    });
}

size_t sgldp_graphon_size(const sgldp_graphon* u) { return u ? u->v.size() : 0; }
void sgldp_graphon_free(sgldp_graphon* u) { delete u; }

sgldp_status sgldp_graphon_stretch(const sgldp_graphon* u, double s, sgldp_graphon** out) {
    return guard([&] {
        need(u, "graphon");
        need(out, "out");
        *out = new sgldp_graphon{sgldp::stretch_pullback(u->v, s)};
    });
}

sgldp_status sgldp_coloured_from_json(const char* json, sgldp_coloured** out) {
    return guard([&] {
        need(out, "out");
        need(json, "json");
        *out = new sgldp_coloured{sgldp::io::coloured_from_json(sgldp::io::parse(json, "coloured graphon"))};
    });
}

void sgldp_coloured_free(sgldp_coloured* a) { delete a; }

sgldp_status sgldp_graph_from_edges(const char* text, sgldp_graph** out) {
    return guard([&] {
        need(out, "out");
        need(text, "text");
        *out = new sgldp_graph{sgldp::io::graph_from_edges(text)};
    });
}

sgldp_status sgldp_graph_to_edges(const sgldp_graph* g, char** out) {
    return guard([&] {
        need(g, "graph");
        need(out, "out");
        *out = dup(sgldp::io::graph_to_edges(g->v));
    });
}

sgldp_status sgldp_graph_to_graphon(const sgldp_graph* g, sgldp_graphon** out) {
    return guard([&] {
        need(g, "graph");
        need(out, "out");
        *out = new sgldp_graphon{sgldp::graph_to_graphon(g->v)};
    });
}

size_t sgldp_graph_vertices(const sgldp_graph* g) { return g ? g->v.n() : 0; }
size_t sgldp_graph_edge_count(const sgldp_graph* g) { return g ? g->v.edge_count() : 0; }
void sgldp_graph_free(sgldp_graph* g) { delete g; }

sgldp_status sgldp_cut_norm_difference(const sgldp_graphon* u, const sgldp_graphon* v, double* out) {
    return guard([&] {
        need(u, "u");
        need(v, "v");
        need(out, "out");
        *out = sgldp::cut_norm(sgldp::difference(u->v, v->v));
    });
}

sgldp_status sgldp_cut_distance_search(const sgldp_graphon* u, const sgldp_graphon* v, const sgldp_budget* budget,
                                       char** out_json) {
    return guard([&] {
        need(u, "u");
        need(v, "v");
        need(out_json, "out");
        const auto est = sgldp::cut_distance_search(u->v, v->v, search_budget(budget));
        *out_json = dup(sgldp::io::distance_to_json(est).dump());
    });
}

sgldp_status sgldp_graph_cut_distance_exact(const sgldp_graph* g, const sgldp_graph* h, double* out) {
    return guard([&] {
        need(g, "g");
        need(h, "h");
        need(out, "out");
        *out = sgldp::graph_cut_distance_exact(g->v, h->v);
    });
}

sgldp_status sgldp_dk_norm(const sgldp_coloured* a, const sgldp_coloured* b, double* out) {
    return guard([&] {
        need(a, "a");
        need(b, "b");
        need(out, "out");
        *out = sgldp::dk_norm(a->v, b->v);
    });
}

sgldp_status sgldp_dk_distance_search(const sgldp_coloured* a, const sgldp_coloured* b, const sgldp_budget* budget,
                                      char** out_json) {
    return guard([&] {
        need(a, "a");
        need(b, "b");
        need(out_json, "out");
        const auto est = sgldp::dk_distance_search(a->v, b->v, search_budget(budget));
        *out_json = dup(sgldp::io::distance_to_json(est).dump());
    });
}

sgldp_status sgldp_rel_entropy(double p, double rho, double* out) {
    return guard([&] {
        need(out, "out");
        *out = sgldp::rel_entropy(p, rho).value();
    });
}

sgldp_status sgldp_rate_ip(double p, const sgldp_graphon* u, double* out) {
    return guard([&] {
        need(u, "graphon");
        need(out, "out");
        if (!(p >= 0.0 && p <= 1.0)) sgldp::fail_invalid("p must lie in [0,1]");
        *out = sgldp::rate_Ip(p, u->v).value();
    });
}

sgldp_status sgldp_rate_ik(const double* p, size_t k, const sgldp_coloured* a, double* out) {
    return guard([&] {
        need(a, "coloured graphon");
        need(out, "out");
        *out = sgldp::rate_Ik(square(p, k), a->v).value();
    });
}

sgldp_status sgldp_rate_j(const double* alpha, size_t k, const double* p, const sgldp_graphon* u,
                          const sgldp_budget* budget, char** out_json) {
    return guard([&] {
        need(alpha, "alpha");
        need(u, "graphon");
        need(out_json, "out");
        const auto r = sgldp::rate_J(std::vector<double>(alpha, alpha + k), square(p, k), u->v, rate_budget(budget));
        *out_json = dup(sgldp::io::rate_report_to_json(r).dump());
    });
}

sgldp_status sgldp_rate_r(const double* p, size_t k, const sgldp_graphon* u, const sgldp_budget* budget,
                          char** out_json) {
    return guard([&] {
        need(u, "graphon");
        need(out_json, "out");
        const auto r = sgldp::rate_R(square(p, k), u->v, rate_budget(budget));
        *out_json = dup(sgldp::io::rate_report_to_json(r).dump());
    });
}

sgldp_status sgldp_reweight_witness(const double* gamma, const double* kappa, size_t k, const sgldp_graphon* u,
                                    sgldp_graphon** out_v, double* out_epsilon, double* out_bound) {
    return guard([&] {
        need(gamma, "gamma");
        need(kappa, "kappa");
        need(u, "graphon");
        need(out_v, "out");
        auto r = sgldp::reweight_witness(std::vector<double>(gamma, gamma + k), std::vector<double>(kappa, kappa + k),
                                         u->v);
        if (out_epsilon) *out_epsilon = r.epsilon;
        if (out_bound) *out_bound = r.bound;
        *out_v = new sgldp_graphon{std::move(r.v)};
    });
}

sgldp_status sgldp_sample_block(const char* spec_json, uint64_t seed, sgldp_graph** out) {
    return guard([&] {
        need(spec_json, "spec");
        need(out, "out");
        const auto spec = sgldp::io::block_spec_from_json(sgldp::io::parse(spec_json, "block spec"));
        *out = new sgldp_graph{sgldp::sample_block(spec, seed)};
    });
}

sgldp_status sgldp_sample_wrandom(size_t n, const sgldp_graphon* w, uint64_t seed, sgldp_graph** out,
                                  size_t* counts) {
    return guard([&] {
        need(w, "graphon");
        need(out, "out");
        auto s = sgldp::sample_wrandom(n, w->v, seed);
        if (counts) std::copy(s.block_counts.begin(), s.block_counts.end(), counts);
        *out = new sgldp_graph{std::move(s.graph)};
    });
}

sgldp_status sgldp_coupled_sample(const size_t* a, const size_t* b, size_t k, const double* p, uint64_t seed,
                                  char** out_json) {
    return guard([&] {
        need(a, "a");
        need(b, "b");
        need(out_json, "out");
        const auto c = sgldp::coupled_block_sample(std::vector<std::size_t>(a, a + k),
                                                   std::vector<std::size_t>(b, b + k), square(p, k), seed);
        auto j = sgldp::io::coupled_pair_to_json(c);
        const double bound = sgldp::alignment_distance_bound(c);
        j["bound"] = std::isfinite(bound) ? sgldp::io::json(bound) : sgldp::io::json("inf");
        *out_json = dup(j.dump());
    });
}

sgldp_status sgldp_binomial_tail_logprob(size_t m, double p, size_t k_min, double* out) {
    return guard([&] {
        need(out, "out");
        *out = sgldp::binomial_tail_logprob(m, p, k_min);
    });
}

sgldp_status sgldp_ldp_curve(const char* config_json, char** out_report_json, char** out_csv) {
    return guard([&] {
        need(config_json, "config");
        const auto cfg = sgldp::io::config_from_json(sgldp::io::parse(config_json, "config"), "config");
        const auto res = sgldp::ldp_curve(cfg);
        std::string report = sgldp::io::curve_report_to_json(cfg, res).dump();
        std::string csv = sgldp::io::curve_to_csv(res);
        if (out_report_json) *out_report_json = dup(report);
        if (out_csv) *out_csv = dup(csv);
    });
}

}  // extern "C"
