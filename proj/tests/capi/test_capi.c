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


/* Exercises the C interface from plain C. */

#include <math.h>
#include <stdio.h>
#include <stdlib.h>
#include <string.h>

#include "sgldp/sgldp.h"

static int failures = 0;

#define CHECK(cond)                                                        \
    do {                                                                   \
        if (!(cond)) {                                                     \
            fprintf(stderr, "%s:%d: check failed: %s\n", __FILE__, __LINE__, #cond); \
            ++failures;                                                    \
        }                                                                  \
    } while (0)

#define OK(call) CHECK((call) == SGLDP_OK)

static const char* kTwoCliques = "{\"weights\":[0.5,0.5],\"values\":[[1,0],[0,1]]}";

static void test_versions(void) {
    CHECK(strcmp(sgldp_version(), "0.1.0") == 0);
    CHECK(sgldp_format_version() == 1);
    sgldp_budget b;
    sgldp_budget_default(&b);
    CHECK(b.restarts == 64 && b.seed == 0 && b.jobs == 1 && b.grid_resolution == 20 && b.grid_restarts == 8);
}

static void test_graphon_handles(void) {
    const double w[2] = {0.3, 0.7};
    const double v[4] = {0.1, 0.2, 0.2, 0.9};
    sgldp_graphon* u = NULL;
    OK(sgldp_graphon_create(w, 2, v, &u));
    CHECK(sgldp_graphon_size(u) == 2);
    char* text = NULL;
    OK(sgldp_graphon_to_json(u, &text));
    sgldp_graphon* back = NULL;
    OK(sgldp_graphon_from_json(text, &back));
    double d = -1;
    OK(sgldp_cut_norm_difference(u, back, &d));
    CHECK(d == 0.0);
    sgldp_string_free(text);
    sgldp_graphon_free(back);

    const double bad[4] = {0.1, 0.3, 0.3001, 0.1};
    sgldp_graphon* none = NULL;
    CHECK(sgldp_graphon_create(w, 2, bad, &none) == SGLDP_INVALID_ARGUMENT);
    CHECK(none == NULL);
    CHECK(strlen(sgldp_last_error()) > 0);
    CHECK(sgldp_graphon_from_json("{\"weights\":[1]}", &none) == SGLDP_INVALID_ARGUMENT);
    CHECK(strstr(sgldp_last_error(), "$.values") != NULL);
    CHECK(sgldp_graphon_from_json(NULL, &none) == SGLDP_INVALID_ARGUMENT);

    sgldp_graphon* s = NULL;
    OK(sgldp_graphon_stretch(u, 0.9, &s));
    char* est = NULL;
    OK(sgldp_cut_distance_search(u, s, NULL, &est));
    CHECK(strstr(est, "\"upper\"") != NULL && strstr(est, "\"restartsUsed\"") != NULL);
    sgldp_string_free(est);
    sgldp_graphon_free(s);
    sgldp_graphon_free(u);
    sgldp_graphon_free(NULL);
}

static void test_graphs(void) {
    sgldp_graph *g = NULL, *h = NULL;
    OK(sgldp_graph_from_edges("3\n0 1\n1 2\n0 2\n", &g));
    OK(sgldp_graph_from_edges("3\n", &h));
    CHECK(sgldp_graph_vertices(g) == 3 && sgldp_graph_edge_count(g) == 3);
    double d = 0;
    OK(sgldp_graph_cut_distance_exact(g, h, &d));
    CHECK(fabs(d - 2.0 / 3.0) < 1e-12);
    sgldp_graph* bad = NULL;
    CHECK(sgldp_graph_from_edges("3\n0 5\n", &bad) == SGLDP_INVALID_ARGUMENT);
    CHECK(strstr(sgldp_last_error(), "line 2") != NULL);
    sgldp_graph_free(g);
    sgldp_graph_free(h);
}

static void test_rates(void) {
    double x = 0;
    OK(sgldp_rel_entropy(0.0, 0.3, &x));
    CHECK(isinf(x));
    OK(sgldp_rel_entropy(0.5, 0.5, &x));
    CHECK(x == 0.0);
    CHECK(sgldp_rel_entropy(1.5, 0.5, &x) == SGLDP_INVALID_ARGUMENT);

    sgldp_graphon* u = NULL;
    OK(sgldp_graphon_from_json(kTwoCliques, &u));
    const double id[4] = {1, 0, 0, 1};
    const double half[2] = {0.5, 0.5}, off[2] = {0.3, 0.7};
    char* r = NULL;
    OK(sgldp_rate_j(half, 2, id, u, NULL, &r));
    CHECK(strstr(r, "\"value\":0.0") != NULL);
    sgldp_string_free(r);
    OK(sgldp_rate_j(off, 2, id, u, NULL, &r));
    CHECK(strstr(r, "\"value\":\"inf\"") != NULL);
    CHECK(strstr(r, "\"infinityCertified\":true") != NULL);
    sgldp_string_free(r);
    OK(sgldp_rate_r(id, 2, u, NULL, &r));
    CHECK(strstr(r, "\"witnessAlpha\":[0.5,0.5]") != NULL);
    sgldp_string_free(r);
    const double zero[2] = {0, 0};
    CHECK(sgldp_rate_j(zero, 2, id, u, NULL, &r) == SGLDP_INVALID_ARGUMENT);

    sgldp_budget b;
    sgldp_budget_default(&b);
    b.restarts = 0;
    CHECK(sgldp_rate_j(half, 2, id, u, &b, &r) == SGLDP_INVALID_ARGUMENT);

    OK(sgldp_rate_ip(0.5, u, &x));
    CHECK(fabs(x - 0.5 * log(2.0)) < 1e-12);

    sgldp_graphon* v = NULL;
    double eps = 0, bound = 0;
    const double kappa[2] = {0.55, 0.45};
    OK(sgldp_reweight_witness(half, kappa, 2, u, &v, &eps, &bound));
    CHECK(fabs(eps - 0.1) < 1e-12 && fabs(bound - 0.2) < 1e-12);
    sgldp_graphon_free(v);
    sgldp_graphon_free(u);

    sgldp_coloured *a = NULL, *c = NULL;
    OK(sgldp_coloured_from_json("{\"weights\":[1],\"values\":[[0]],\"colours\":[1],\"k\":2}", &a));
    OK(sgldp_coloured_from_json("{\"weights\":[0.5,0.5],\"values\":[[0,0],[0,0]],\"colours\":[1,2],\"k\":2}", &c));
    OK(sgldp_dk_norm(a, c, &x));
    CHECK(fabs(x - 1.0) < 1e-15);
    const double p2[4] = {0.5, 0.5, 0.5, 0.5};
    OK(sgldp_rate_ik(p2, 2, c, &x));
    CHECK(fabs(x - 0.5 * log(2.0)) < 1e-12);
    sgldp_coloured_free(a);
    sgldp_coloured_free(c);
}

static void test_samplers(void) {
    sgldp_graph *g = NULL, *h = NULL;
    const char* spec = "{\"a\":[2,2],\"p\":[[1,0],[0,1]]}";
    OK(sgldp_sample_block(spec, 5, &g));
    char* e = NULL;
    OK(sgldp_graph_to_edges(g, &e));
    CHECK(strcmp(e, "4\n0 1\n2 3\n") == 0);
    sgldp_string_free(e);
    sgldp_graph_free(g);
    CHECK(sgldp_sample_block("{\"a\":[2]}", 5, &g) == SGLDP_INVALID_ARGUMENT);
    CHECK(strstr(sgldp_last_error(), "$.p") != NULL);

    sgldp_graphon* w = NULL;
    OK(sgldp_graphon_from_json(kTwoCliques, &w));
    size_t counts[2] = {0, 0};
    OK(sgldp_sample_wrandom(8, w, 3, &g, counts));
    OK(sgldp_sample_wrandom(8, w, 3, &h, NULL));
    CHECK(counts[0] + counts[1] == 8);
    CHECK(sgldp_graph_edge_count(g) == counts[0] * (counts[0] - 1) / 2 + counts[1] * (counts[1] - 1) / 2);
    double d = 1;
    OK(sgldp_graph_cut_distance_exact(g, h, &d));
    CHECK(d == 0.0);
    sgldp_graph_free(g);
    sgldp_graph_free(h);
    sgldp_graphon_free(w);

    const size_t a[2] = {3, 3}, b[2] = {4, 3};
    const double p[4] = {0.5, 0.5, 0.5, 0.5};
    char* pair = NULL;
    OK(sgldp_coupled_sample(a, b, 2, p, 1, &pair));
    CHECK(strstr(pair, "\"bound\":0.3333333333333") != NULL);
    sgldp_string_free(pair);
}

static void test_ldp(void) {
    double x = 0;
    OK(sgldp_binomial_tail_logprob(6, 0.5, 5, &x));
    CHECK(fabs(x - log(7.0 / 64.0)) < 1e-14);
    const char* cfg =
        "{\"model\":\"block\",\"alpha\":[1],\"p\":[[0.5]],"
        "\"event\":{\"kind\":\"densityAtLeast\",\"r\":0.8},\"nGrid\":[10,20],\"seed\":7}";
    char *report = NULL, *csv = NULL;
    OK(sgldp_ldp_curve(cfg, &report, &csv));
    CHECK(strncmp(csv, "n,s_n,logProb,normalized,method,stderr,limit\n10,100,", 52) == 0);
    CHECK(strstr(report, "\"formatVersion\":1") != NULL);
    sgldp_string_free(report);
    sgldp_string_free(csv);
    CHECK(sgldp_ldp_curve("{\"model\":\"block\"", &report, NULL) == SGLDP_INVALID_ARGUMENT);
    CHECK(sgldp_ldp_curve(
              "{\"model\":\"block\",\"alpha\":[1],\"p\":[[0.5]],\"event\":{\"kind\":\"densityAtLeast\",\"r\":0.8},"
              "\"nGrid\":[400],\"methods\":[\"exact\"],\"maxConvolutionWork\":10}",
              &report, NULL) == SGLDP_TOO_LARGE);
}

int main(void) {
    test_versions();
    test_graphon_handles();
    test_graphs();
    test_rates();
    test_samplers();
    test_ldp();
    if (failures) {
        fprintf(stderr, "%d C API checks failed\n", failures);
        return 1;
    }
    printf("C API checks passed\n");
    return 0;
}
