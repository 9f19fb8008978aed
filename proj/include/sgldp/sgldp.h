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


#ifndef SGLDP_SGLDP_H_
#define SGLDP_SGLDP_H_

/*
 * C interface to sgldp. Objects are opaque handles released with their
 * _free function. Calls return a status; on failure sgldp_last_error()
 * holds a message for the calling thread until its next failing call.
 * Strings handed out through char** must be released with
 * sgldp_string_free. Infinite values are returned as IEEE +inf / -inf.
 */

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SGLDP_API __declspec(dllexport)
#else
#define SGLDP_API __attribute__((visibility("default")))
#endif

typedef enum sgldp_status {
    SGLDP_OK = 0,
    SGLDP_INVALID_ARGUMENT = 1, /* bad shapes, ranges, malformed input */
    SGLDP_TOO_LARGE = 2,        /* over an enumeration budget */
    SGLDP_RUNTIME = 3           /* internal failure */
} sgldp_status;

typedef struct sgldp_graphon sgldp_graphon;
typedef struct sgldp_coloured sgldp_coloured;
typedef struct sgldp_graph sgldp_graph;

typedef struct sgldp_budget {
    unsigned restarts;
    uint64_t seed;
    unsigned jobs;
    unsigned grid_resolution; /* rate_R only */
    unsigned grid_restarts;   /* rate_R only */
} sgldp_budget;

SGLDP_API const char* sgldp_version(void);
SGLDP_API int sgldp_format_version(void);
SGLDP_API const char* sgldp_last_error(void);
SGLDP_API void sgldp_string_free(char* s);
/* Seed for task `index` of a batch run under `master`. */
SGLDP_API uint64_t sgldp_derive_seed(uint64_t master, uint64_t index);
/* 64 restarts, seed 0, 1 job, grid 20 with 8 restarts per point */
SGLDP_API void sgldp_budget_default(sgldp_budget* b);

/* Graphons. values is m*m row-major. */
SGLDP_API sgldp_status sgldp_graphon_create(const double* weights, size_t m, const double* values,
                                            sgldp_graphon** out);
SGLDP_API sgldp_status sgldp_graphon_from_json(const char* json, sgldp_graphon** out);
SGLDP_API sgldp_status sgldp_graphon_to_json(const sgldp_graphon* u, char** out);
SGLDP_API size_t sgldp_graphon_size(const sgldp_graphon* u);
SGLDP_API void sgldp_graphon_free(sgldp_graphon* u);
/* Pull-back of u along the stretch by s in (0,1]. */
SGLDP_API sgldp_status sgldp_graphon_stretch(const sgldp_graphon* u, double s, sgldp_graphon** out);

/* Coloured graphons: graphon JSON plus 1-based "colours" and "k". */
SGLDP_API sgldp_status sgldp_coloured_from_json(const char* json, sgldp_coloured** out);
SGLDP_API void sgldp_coloured_free(sgldp_coloured* a);

/* Graphs as edge-list text "n\nu v\n...". */
SGLDP_API sgldp_status sgldp_graph_from_edges(const char* text, sgldp_graph** out);
SGLDP_API sgldp_status sgldp_graph_to_edges(const sgldp_graph* g, char** out);
SGLDP_API sgldp_status sgldp_graph_to_graphon(const sgldp_graph* g, sgldp_graphon** out);
SGLDP_API size_t sgldp_graph_vertices(const sgldp_graph* g);
SGLDP_API size_t sgldp_graph_edge_count(const sgldp_graph* g);
SGLDP_API void sgldp_graph_free(sgldp_graph* g);

/* Cut metric. */
SGLDP_API sgldp_status sgldp_cut_norm_difference(const sgldp_graphon* u, const sgldp_graphon* v, double* out);
/* {"upper","witness","restartsUsed"} */
SGLDP_API sgldp_status sgldp_cut_distance_search(const sgldp_graphon* u, const sgldp_graphon* v,
                                                 const sgldp_budget* budget, char** out_json);
SGLDP_API sgldp_status sgldp_graph_cut_distance_exact(const sgldp_graph* g, const sgldp_graph* h, double* out);
SGLDP_API sgldp_status sgldp_dk_norm(const sgldp_coloured* a, const sgldp_coloured* b, double* out);
SGLDP_API sgldp_status sgldp_dk_distance_search(const sgldp_coloured* a, const sgldp_coloured* b,
                                                const sgldp_budget* budget, char** out_json);

/* Rates. p is k*k row-major. */
SGLDP_API sgldp_status sgldp_rel_entropy(double p, double rho, double* out);
SGLDP_API sgldp_status sgldp_rate_ip(double p, const sgldp_graphon* u, double* out);
SGLDP_API sgldp_status sgldp_rate_ik(const double* p, size_t k, const sgldp_coloured* a, double* out);
/* RateReport JSON; "value" is a number or "inf". */
SGLDP_API sgldp_status sgldp_rate_j(const double* alpha, size_t k, const double* p, const sgldp_graphon* u,
                                    const sgldp_budget* budget, char** out_json);
SGLDP_API sgldp_status sgldp_rate_r(const double* p, size_t k, const sgldp_graphon* u, const sgldp_budget* budget,
                                    char** out_json);
SGLDP_API sgldp_status sgldp_reweight_witness(const double* gamma, const double* kappa, size_t k,
                                              const sgldp_graphon* u, sgldp_graphon** out_v, double* out_epsilon,
                                              double* out_bound);

/* Samplers. spec_json is {"a":[...],"p":[[...]]}. */
SGLDP_API sgldp_status sgldp_sample_block(const char* spec_json, uint64_t seed, sgldp_graph** out);
/* counts, when non-null, receives sgldp_graphon_size(w) block counts. */
SGLDP_API sgldp_status sgldp_sample_wrandom(size_t n, const sgldp_graphon* w, uint64_t seed, sgldp_graph** out,
                                            size_t* counts);
/* {"a","b","epsilon","alignment","g","h","bound"}; g and h as edge lists */
SGLDP_API sgldp_status sgldp_coupled_sample(const size_t* a, const size_t* b, size_t k, const double* p,
                                            uint64_t seed, char** out_json);

/* LDP lab. */
SGLDP_API sgldp_status sgldp_binomial_tail_logprob(size_t m, double p, size_t k_min, double* out);
/* Experiment config JSON in; report JSON and curve CSV out (either may be null). */
SGLDP_API sgldp_status sgldp_ldp_curve(const char* config_json, char** out_report_json, char** out_csv);

#ifdef __cplusplus
}
#endif

#endif /* SGLDP_SGLDP_H_ */
