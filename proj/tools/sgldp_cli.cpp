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


// sgldp command-line front end. Talks to the library only through sgldp.h.

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "sgldp/sgldp.h"

namespace {

using json = nlohmann::json;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;

struct Failure {
    int code;
    std::string message;
};

[[noreturn]] void usage(const std::string& msg) { throw Failure{kExitUsage, msg}; }

void check(sgldp_status s) {
    if (s == SGLDP_OK) return;
    throw Failure{s == SGLDP_INVALID_ARGUMENT ? kExitUsage : kExitRuntime, sgldp_last_error()};
}

struct GraphonDel {
    void operator()(sgldp_graphon* p) const { sgldp_graphon_free(p); }
};
struct ColouredDel {
    void operator()(sgldp_coloured* p) const { sgldp_coloured_free(p); }
};
struct GraphDel {
    void operator()(sgldp_graph* p) const { sgldp_graph_free(p); }
};
struct StrDel {
    void operator()(char* p) const { sgldp_string_free(p); }
};
using Graphon = std::unique_ptr<sgldp_graphon, GraphonDel>;
using Coloured = std::unique_ptr<sgldp_coloured, ColouredDel>;
using Graph = std::unique_ptr<sgldp_graph, GraphDel>;
using CStr = std::unique_ptr<char, StrDel>;

std::string take(char* s) { return std::string(CStr(s).get()); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) usage("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

bool ends_with(const std::string& s, const std::string& tail) {
    return s.size() >= tail.size() && s.compare(s.size() - tail.size(), tail.size(), tail) == 0;
}

Graphon load_graphon(const std::string& path) {
    const std::string text = read_file(path);
    sgldp_graphon* g = nullptr;
    const sgldp_status s = sgldp_graphon_from_json(text.c_str(), &g);
    if (s != SGLDP_OK) throw Failure{s == SGLDP_INVALID_ARGUMENT ? kExitUsage : kExitRuntime, path + ": " + sgldp_last_error()};
    return Graphon(g);
}

Coloured load_coloured(const std::string& path) {
    const std::string text = read_file(path);
    sgldp_coloured* c = nullptr;
    const sgldp_status s = sgldp_coloured_from_json(text.c_str(), &c);
    if (s != SGLDP_OK) throw Failure{s == SGLDP_INVALID_ARGUMENT ? kExitUsage : kExitRuntime, path + ": " + sgldp_last_error()};
    return Coloured(c);
}

Graph load_graph(const std::string& path) {
    const std::string text = read_file(path);
    sgldp_graph* g = nullptr;
    const sgldp_status s = sgldp_graph_from_edges(text.c_str(), &g);
    if (s != SGLDP_OK) throw Failure{kExitUsage, path + ": " + sgldp_last_error()};
    return Graph(g);
}

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    std::istringstream is(s);
    while (std::getline(is, cur, sep)) out.push_back(cur);
    if (!s.empty() && s.back() == sep) out.emplace_back();
    return out;
}

double to_real(const std::string& s, const std::string& what) {
    try {
        std::size_t used = 0;
        const double x = std::stod(s, &used);
        if (used != s.size()) throw std::invalid_argument(s);
        return x;
    } catch (const std::exception&) {
        usage(what + ": '" + s + "' is not a number");
    }
}

std::size_t to_count(const std::string& s, const std::string& what) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        usage(what + ": '" + s + "' is not a nonnegative integer");
    return std::stoull(s);
}

std::vector<double> reals(const std::string& s, const std::string& what) {
    std::vector<double> v;
    for (const auto& t : split(s, ',')) v.push_back(to_real(t, what));
    if (v.empty()) usage(what + ": empty list");
    return v;
}

std::vector<std::size_t> counts(const std::string& s, const std::string& what) {
    std::vector<std::size_t> v;
    for (const auto& t : split(s, ',')) v.push_back(to_count(t, what));
    if (v.empty()) usage(what + ": empty list");
    return v;
}

// "identity3", "0.5" (constant, size k), "0.9,0.1;0.1,0.9" or a JSON file
// holding a matrix. Returns row-major entries; k is set from the text when 0.
std::vector<double> parse_matrix(const std::string& spec, std::size_t& k) {
    std::vector<std::vector<double>> rows;
    if (spec.rfind("identity", 0) == 0) {
        const std::size_t n = to_count(spec.substr(8), "--p");
        if (k != 0 && k != n) usage("--p: identity" + std::to_string(n) + " does not match k = " + std::to_string(k));
        k = n;
        std::vector<double> m(k * k, 0.0);
        for (std::size_t i = 0; i < k; ++i) m[i * k + i] = 1.0;
        return m;
    }
    if (ends_with(spec, ".json")) {
        const json j = json::parse(read_file(spec), nullptr, false);
        if (j.is_discarded() || !j.is_array()) usage(spec + ": expected a JSON array of rows");
        for (const auto& r : j) {
            if (!r.is_array()) usage(spec + ": expected a JSON array of rows");
            std::vector<double> row;
            for (const auto& x : r) {
                if (!x.is_number()) usage(spec + ": matrix entries must be numbers");
                row.push_back(x.get<double>());
            }
            rows.push_back(row);
        }
    } else if (spec.find(';') == std::string::npos && spec.find(',') == std::string::npos) {
        const double x = to_real(spec, "--p");
        if (k == 0) k = 1;
        return std::vector<double>(k * k, x);
    } else {
        for (const auto& r : split(spec, ';')) rows.push_back(reals(r, "--p"));
    }
    const std::size_t n = rows.size();
    for (const auto& r : rows)
        if (r.size() != n) usage("--p: matrix must be square");
    if (k != 0 && k != n) usage("--p: matrix is " + std::to_string(n) + "x" + std::to_string(n) + ", expected k = " + std::to_string(k));
    k = n;
    std::vector<double> m;
    for (const auto& r : rows) m.insert(m.end(), r.begin(), r.end());
    return m;
}

json matrix_json(const std::vector<double>& m, std::size_t k) {
    json rows = json::array();
    for (std::size_t i = 0; i < k; ++i) rows.push_back(std::vector<double>(m.begin() + i * k, m.begin() + (i + 1) * k));
    return rows;
}

// "10,20,40" or "a..b" / "a..b:step"; the bare range steps by a.
std::vector<std::size_t> parse_grid(const std::string& s) {
    const auto dots = s.find("..");
    if (dots == std::string::npos) return counts(s, "--n");
    const std::size_t lo = to_count(s.substr(0, dots), "--n");
    std::string rest = s.substr(dots + 2);
    std::size_t step = lo;
    if (const auto colon = rest.find(':'); colon != std::string::npos) {
        step = to_count(rest.substr(colon + 1), "--n");
        rest = rest.substr(0, colon);
    }
    const std::size_t hi = to_count(rest, "--n");
    if (step == 0 || lo == 0 || hi < lo) usage("--n: bad range '" + s + "'");
    std::vector<std::size_t> v;
    for (std::size_t n = lo; n <= hi; n += step) v.push_back(n);
    return v;
}

json parse_json_text(const std::string& text) {
    json j = json::parse(text, nullptr, false);
    if (j.is_discarded()) throw Failure{kExitRuntime, "library returned malformed JSON"};
    return j;
}

// JSON config files: {"rate": {"func": "J", ...}} or a flat object applied to
// the subcommand named on the command line.
class JsonConfig : public CLI::Config {
public:
    explicit JsonConfig(std::string sub) : sub_(std::move(sub)) {}

    std::string to_config(const CLI::App*, bool, bool, std::string) const override { return "{}"; }

    std::vector<CLI::ConfigItem> from_config(std::istream& in) const override {
        std::ostringstream ss;
        ss << in.rdbuf();
        const json j = json::parse(ss.str(), nullptr, false);
        if (j.is_discarded() || !j.is_object()) throw CLI::ConversionError("--config", "expected a JSON object");
        std::vector<CLI::ConfigItem> items;
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (it.value().is_object()) {
                for (auto jt = it.value().begin(); jt != it.value().end(); ++jt) items.push_back(item({it.key()}, jt.key(), jt.value()));
            } else {
                items.push_back(item(sub_.empty() ? std::vector<std::string>{} : std::vector<std::string>{sub_}, it.key(), it.value()));
            }
        }
        return items;
    }

private:
    static CLI::ConfigItem item(std::vector<std::string> parents, const std::string& name, const json& v) {
        CLI::ConfigItem c;
        c.parents = std::move(parents);
        c.name = name;
        auto text = [](const json& x) { return x.is_string() ? x.get<std::string>() : x.dump(); };
        if (v.is_array()) {
            std::string joined;
            for (std::size_t i = 0; i < v.size(); ++i) joined += (i ? "," : "") + text(v[i]);
            c.inputs = {joined};
        } else if (v.is_boolean()) {
            c.inputs = {v.get<bool>() ? "true" : "false"};
        } else {
            c.inputs = {text(v)};
        }
        return c;
    }

    std::string sub_;
};

// Every option of the subcommand with its final value.
json resolved(const CLI::App* sub) {
    json j = json::object();
    for (const CLI::Option* o : sub->get_options()) {
        const std::string name = o->get_single_name();
        if (name == "help" || name == "config" || name.empty()) continue;
        if (o->get_expected_min() == 0) {
            j[name] = o->count() > 0;
        } else if (o->count() > 0) {
            const auto& r = o->results();
            j[name] = r.size() == 1 ? json(r[0]) : json(r);
        } else if (!o->get_default_str().empty()) {
            j[name] = o->get_default_str();
        } else {
            j[name] = nullptr;
        }
    }
    return j;
}

struct Common {
    std::string out;
    unsigned jobs = 1;
    std::uint64_t seed = 0;
};

void add_common(CLI::App* sub, Common& c, bool seed_required) {
    sub->add_option("--out", c.out, "Output directory");
    sub->add_option("--jobs", c.jobs, "Worker threads (results do not depend on it)")->capture_default_str()->check(CLI::PositiveNumber);
    auto* s = sub->add_option("--seed", c.seed, "Master seed");
    if (seed_required) s->required();
    else s->capture_default_str();
}

json envelope(const CLI::App* sub, json result) {
    return {{"formatVersion", sgldp_format_version()},
            {"version", sgldp_version()},
            {"command", sub->get_name()},
            {"config", resolved(sub)},
            {"result", std::move(result)}};
}

void write_file(const fs::path& p, const std::string& text) {
    std::error_code ec;
    fs::create_directories(p.parent_path(), ec);
    std::ofstream out(p, std::ios::binary);
    if (!out || !(out << text)) throw Failure{kExitRuntime, "cannot write '" + p.string() + "'"};
}

void emit_report(const Common& c, const json& report) {
    const std::string text = report.dump(2) + "\n";
    if (c.out.empty()) std::cout << text;
    else write_file(fs::path(c.out) / "report.json", text);
}

sgldp_budget budget_of(unsigned restarts, std::uint64_t seed, unsigned jobs) {
    sgldp_budget b;
    sgldp_budget_default(&b);
    b.restarts = restarts;
    b.seed = seed;
    b.jobs = jobs;
    return b;
}

// --- sample -----------------------------------------------------------------

struct SampleArgs {
    Common c;
    std::string model = "block";
    std::string spec, graphon;
    std::size_t n = 0, count = 1;
};

void run_sample(const CLI::App* sub, const SampleArgs& a) {
    json samples = json::array();
    std::vector<std::pair<std::string, std::string>> files;
    std::string manifest;
    std::string spec_text;
    json spec_json;
    Graphon w;
    if (a.model == "block") {
        if (a.spec.empty()) usage("sample: --spec is required for the block model");
        spec_text = read_file(a.spec);
        spec_json = json::parse(spec_text, nullptr, false);
        if (spec_json.is_discarded()) usage(a.spec + ": malformed JSON");
    } else if (a.model == "wrandom") {
        if (a.graphon.empty()) usage("sample: --graphon is required for the wrandom model");
        w = load_graphon(a.graphon);
        spec_json = {{"graphon", parse_json_text(take([&] {
                          char* s = nullptr;
                          check(sgldp_graphon_to_json(w.get(), &s));
                          return s;
                      }()))},
                     {"n", a.n}};
    } else {
        usage("sample: --model must be block or wrandom");
    }
    for (std::size_t i = 0; i < a.count; ++i) {
        const std::uint64_t seed = sgldp_derive_seed(a.c.seed, i);
        sgldp_graph* raw = nullptr;
        json entry{{"index", i}, {"seed", seed}};
        if (a.model == "block") {
            const sgldp_status s = sgldp_sample_block(spec_text.c_str(), seed, &raw);
            if (s != SGLDP_OK) throw Failure{s == SGLDP_INVALID_ARGUMENT ? kExitUsage : kExitRuntime, a.spec + ": " + sgldp_last_error()};
        } else {
            std::vector<std::size_t> bc(sgldp_graphon_size(w.get()));
            check(sgldp_sample_wrandom(a.n, w.get(), seed, &raw, bc.data()));
            entry["blockCounts"] = bc;
        }
        Graph g(raw);
        const std::size_t n = sgldp_graph_vertices(g.get()), e = sgldp_graph_edge_count(g.get());
        entry["vertices"] = n;
        entry["edges"] = e;
        entry["density"] = n > 1 ? json(2.0 * e / (double(n) * (n - 1))) : json(nullptr);
        char* edges = nullptr;
        check(sgldp_graph_to_edges(g.get(), &edges));
        const std::string text = take(edges);
        char name[32];
        std::snprintf(name, sizeof name, "%06zu.edges", i);
        if (a.c.out.empty()) {
            entry["edgeList"] = text;
        } else {
            entry["file"] = std::string("samples/") + name;
            files.emplace_back(name, text);
        }
        json line{{"seed", seed}, {"spec", spec_json}, {"summary", {{"vertices", n}, {"edges", e}, {"density", entry["density"]}}}};
        if (entry.contains("blockCounts")) line["summary"]["blockCounts"] = entry["blockCounts"];
        manifest += line.dump() + "\n";
        samples.push_back(std::move(entry));
    }
    const json report = envelope(sub, {{"spec", spec_json}, {"samples", samples}});
    if (!a.c.out.empty()) {
        for (const auto& [name, text] : files) write_file(fs::path(a.c.out) / "samples" / name, text);
        write_file(fs::path(a.c.out) / "samples" / "manifest.jsonl", manifest);
    }
    emit_report(a.c, report);
}

// --- distance ---------------------------------------------------------------

struct DistanceArgs {
    Common c;
    std::vector<std::string> files;
    bool exact = false, coloured = false;
    unsigned restarts = 64;
};

void run_distance(const CLI::App* sub, const DistanceArgs& a) {
    const std::string& fa = a.files[0];
    const std::string& fb = a.files[1];
    const sgldp_budget b = budget_of(a.restarts, a.c.seed, a.c.jobs);
    json result;
    const bool graphs = ends_with(fa, ".edges") && ends_with(fb, ".edges");
    if (a.coloured) {
        auto x = load_coloured(fa), y = load_coloured(fb);
        if (a.exact) {
            double d = 0;
            check(sgldp_dk_norm(x.get(), y.get(), &d));
            result = {{"metric", "dk-labelled"}, {"value", d}};
        } else {
            char* s = nullptr;
            check(sgldp_dk_distance_search(x.get(), y.get(), &b, &s));
            result = parse_json_text(take(s));
            result["metric"] = "dk-search";
            result["upperBound"] = true;
        }
    } else if (graphs && a.exact) {
        auto g = load_graph(fa), h = load_graph(fb);
        double d = 0;
        check(sgldp_graph_cut_distance_exact(g.get(), h.get(), &d));
        result = {{"metric", "cut-distance-graphs"}, {"value", d}};
    } else {
        Graphon u, v;
        if (graphs) {
            auto g = load_graph(fa), h = load_graph(fb);
            sgldp_graphon *x = nullptr, *y = nullptr;
            check(sgldp_graph_to_graphon(g.get(), &x));
            u.reset(x);
            check(sgldp_graph_to_graphon(h.get(), &y));
            v.reset(y);
        } else {
            u = load_graphon(fa);
            v = load_graphon(fb);
        }
        if (a.exact) {
            double d = 0;
            check(sgldp_cut_norm_difference(u.get(), v.get(), &d));
            result = {{"metric", "cut-norm-labelled"}, {"value", d}, {"upperBound", true}};
        } else {
            char* s = nullptr;
            check(sgldp_cut_distance_search(u.get(), v.get(), &b, &s));
            result = parse_json_text(take(s));
            result["metric"] = "cut-distance-search";
            result["upperBound"] = true;
        }
    }
    emit_report(a.c, envelope(sub, result));
}

// --- rate -------------------------------------------------------------------

struct RateArgs {
    Common c;
    std::string func, graphon, p, alpha;
    unsigned restarts = 64, grid = 20, grid_restarts = 8;
};

void run_rate(const CLI::App* sub, const RateArgs& a) {
    if (a.graphon.empty()) usage("rate: --graphon is required");
    if (a.p.empty()) usage("rate: --p is required");
    sgldp_budget b = budget_of(a.restarts, a.c.seed, a.c.jobs);
    b.grid_resolution = a.grid;
    b.grid_restarts = a.grid_restarts;
    json result;
    if (a.func == "I") {
        auto u = load_graphon(a.graphon);
        const double p = to_real(a.p, "--p");
        double x = 0;
        check(sgldp_rate_ip(p, u.get(), &x));
        result = {{"value", std::isfinite(x) ? json(x) : json("inf")}};
    } else if (a.func == "Ik") {
        auto col = load_coloured(a.graphon);
        std::size_t k = 0;
        const auto p = parse_matrix(a.p, k);
        double x = 0;
        check(sgldp_rate_ik(p.data(), k, col.get(), &x));
        result = {{"value", std::isfinite(x) ? json(x) : json("inf")}, {"p", matrix_json(p, k)}};
    } else if (a.func == "J" || a.func == "R") {
        auto u = load_graphon(a.graphon);
        std::size_t k = 0;
        std::vector<double> alpha;
        if (a.func == "J") {
            if (a.alpha.empty()) usage("rate: --alpha is required for J");
            alpha = reals(a.alpha, "--alpha");
            k = alpha.size();
        }
        const auto p = parse_matrix(a.p, k);
        char* s = nullptr;
        if (a.func == "J") check(sgldp_rate_j(alpha.data(), k, p.data(), u.get(), &b, &s));
        else check(sgldp_rate_r(p.data(), k, u.get(), &b, &s));
        result = parse_json_text(take(s));
        result["p"] = matrix_json(p, k);
    } else {
        usage("rate: --func must be I, Ik, J or R");
    }
    result["func"] = a.func;
    emit_report(a.c, envelope(sub, result));
}

// --- coupling-demo ----------------------------------------------------------

struct CouplingArgs {
    Common c;
    std::string a, b, p = "0.5";
};

void run_coupling(const CLI::App* sub, const CouplingArgs& x) {
    const auto a = counts(x.a, "--a"), b = counts(x.b, "--b");
    if (a.size() != b.size()) usage("coupling-demo: --a and --b need the same number of blocks");
    std::size_t k = a.size();
    const auto p = parse_matrix(x.p, k);
    char* s = nullptr;
    check(sgldp_coupled_sample(a.data(), b.data(), k, p.data(), x.c.seed, &s));
    json r = parse_json_text(take(s));
    const double eps = r["epsilon"].get<double>();
    if (eps < 1.0) {
        const double allowed = 4 * eps / (1 - eps);
        r["epsilonBound"] = allowed;
        r["withinEpsilonBound"] = r["bound"].is_number() && r["bound"].get<double>() <= allowed + 1e-12;
    } else {
        r["epsilonBound"] = nullptr;
        r["withinEpsilonBound"] = false;
    }
    r["p"] = matrix_json(p, k);
    if (!x.c.out.empty()) {
        write_file(fs::path(x.c.out) / "samples" / "g.edges", r["g"].get<std::string>());
        write_file(fs::path(x.c.out) / "samples" / "h.edges", r["h"].get<std::string>());
    }
    emit_report(x.c, envelope(sub, r));
}

// --- ldp-curve --------------------------------------------------------------

struct CurveArgs {
    Common c;
    std::string model, event, n;
    std::size_t samples = 10000;
    std::string methods = "exact,enumeration,tilted,mc";
    unsigned ball_restarts = 16;
    std::string format = "json";
};

json curve_config(const CurveArgs& a) {
    json cfg;
    const auto colon = a.model.find(':');
    const std::string kind = a.model.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : a.model.substr(colon + 1);
    if (kind == "gnp") {
        cfg["model"] = "block";
        cfg["alpha"] = {1.0};
        cfg["p"] = {{to_real(arg, "--model")}};
    } else if (kind == "block") {
        // block:ALPHA:P, e.g. block:0.3,0.7:0.6,0.2;0.2,0.5
        const auto c2 = arg.find(':');
        if (c2 == std::string::npos) usage("--model: expected block:ALPHA:P");
        const auto alpha = reals(arg.substr(0, c2), "--model alpha");
        std::size_t k = alpha.size();
        const auto p = parse_matrix(arg.substr(c2 + 1), k);
        cfg["model"] = "block";
        cfg["alpha"] = alpha;
        cfg["p"] = matrix_json(p, k);
    } else if (kind == "wrandom") {
        auto w = load_graphon(arg);
        char* s = nullptr;
        check(sgldp_graphon_to_json(w.get(), &s));
        cfg["model"] = "wrandom";
        cfg["w"] = parse_json_text(take(s));
    } else {
        usage("--model must be gnp:P, block:ALPHA:P or wrandom:FILE");
    }
    const auto ec = a.event.find(':');
    const std::string ek = a.event.substr(0, ec);
    const std::string earg = ec == std::string::npos ? "" : a.event.substr(ec + 1);
    if (ek == "density-ge" || ek == "density-le") {
        cfg["event"] = {{"kind", ek == "density-ge" ? "densityAtLeast" : "densityAtMost"}, {"r", to_real(earg, "--event")}};
    } else if (ek == "ball") {
        const auto c2 = earg.rfind(':');
        if (c2 == std::string::npos) usage("--event: expected ball:FILE:ETA");
        auto t = load_graphon(earg.substr(0, c2));
        char* s = nullptr;
        check(sgldp_graphon_to_json(t.get(), &s));
        cfg["event"] = {{"kind", "ball"},
                        {"target", parse_json_text(take(s))},
                        {"eta", to_real(earg.substr(c2 + 1), "--event")},
                        {"restarts", a.ball_restarts}};
    } else {
        usage("--event must be density-ge:R, density-le:R or ball:FILE:ETA");
    }
    cfg["nGrid"] = parse_grid(a.n);
    cfg["samples"] = a.samples;
    cfg["seed"] = a.c.seed;
    cfg["jobs"] = a.c.jobs;
    cfg["methods"] = split(a.methods, ',');
    return cfg;
}

void run_curve(const CLI::App* sub, const CurveArgs& a) {
    if (a.format != "json" && a.format != "csv") usage("--format must be json or csv");
    const json cfg = curve_config(a);
    char *rep = nullptr, *csv = nullptr;
    check(sgldp_ldp_curve(cfg.dump().c_str(), &rep, &csv));
    const json lib = parse_json_text(take(rep));
    const std::string table = take(csv);
    const json report = envelope(sub, lib);
    if (!a.c.out.empty()) {
        write_file(fs::path(a.c.out) / "curve.csv", table);
        emit_report(a.c, report);
    } else if (a.format == "csv") {
        std::cout << "# sgldp " << sgldp_version() << " formatVersion " << sgldp_format_version() << "\n"
                  << "# config " << report["config"].dump() << "\n"
                  << table;
    } else {
        emit_report(a.c, report);
    }
}

std::string first_subcommand(int argc, char** argv) {
    for (int i = 1; i < argc; ++i) {
        const std::string s = argv[i];
        if (s == "sample" || s == "distance" || s == "rate" || s == "coupling-demo" || s == "ldp-curve") return s;
    }
    return "";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Large-deviation toolkit for block-model and step-graphon random graphs"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_version_flag("--version", std::string("sgldp ") + sgldp_version());
    app.config_formatter(std::make_shared<JsonConfig>(first_subcommand(argc, argv)));
    app.set_config("--config", "", "JSON file supplying flag values; flags on the command line win");

    SampleArgs sa;
    auto* sample = app.add_subcommand("sample", "Draw graphs from G(a,p) or G(n,W)");
    add_common(sample, sa.c, true);
    sample->add_option("--model", sa.model, "block or wrandom")->capture_default_str();
    sample->add_option("--spec", sa.spec, "BlockSpec JSON file {\"a\":[..],\"p\":[[..]]}");
    sample->add_option("--graphon", sa.graphon, "Step graphon JSON file (wrandom)");
    sample->add_option("--n", sa.n, "Vertices (wrandom)")->capture_default_str();
    sample->add_option("--count", sa.count, "Number of graphs")->capture_default_str();

    DistanceArgs da;
    auto* distance = app.add_subcommand("distance", "Cut distance or coloured distance between two files");
    add_common(distance, da.c, false);
    distance->add_option("files", da.files, "Two graphon JSON (or .edges) files")->expected(2)->required();
    distance->add_flag("--exact", da.exact, "Exact labelled distance instead of the coupling search");
    distance->add_flag("--coloured", da.coloured, "Inputs are coloured graphons");
    distance->add_option("--restarts", da.restarts, "Search restarts")->capture_default_str()->check(CLI::PositiveNumber);

    RateArgs ra;
    auto* rate = app.add_subcommand("rate", "Rate functions I, Ik, J and R");
    add_common(rate, ra.c, false);
    rate->add_option("--func", ra.func, "I, Ik, J or R")->required();
    rate->add_option("--graphon", ra.graphon, "Graphon JSON file (coloured for Ik)");
    rate->add_option("--p", ra.p, "p: number, identityK, rows 'a,b;c,d' or a JSON file");
    rate->add_option("--alpha", ra.alpha, "Comma-separated block ratios (J)");
    rate->add_option("--restarts", ra.restarts, "Optimizer restarts")->capture_default_str()->check(CLI::PositiveNumber);
    rate->add_option("--grid", ra.grid, "Simplex grid resolution (R)")->capture_default_str()->check(CLI::PositiveNumber);
    rate->add_option("--grid-restarts", ra.grid_restarts, "Restarts per grid point (R)")->capture_default_str()->check(CLI::PositiveNumber);

    CouplingArgs ca;
    auto* coupling = app.add_subcommand("coupling-demo", "Coupled pair of block-model graphs with its certified bound");
    add_common(coupling, ca.c, true);
    coupling->add_option("--a", ca.a, "Block sizes of g, comma-separated")->required();
    coupling->add_option("--b", ca.b, "Block sizes of h, comma-separated")->required();
    coupling->add_option("--p", ca.p, "Edge probabilities (as for rate --p)")->capture_default_str();

    CurveArgs cv;
    auto* curve = app.add_subcommand("ldp-curve", "Normalized log-probabilities along a grid of n");
    add_common(curve, cv.c, true);
    curve->add_option("--model", cv.model, "gnp:P, block:ALPHA:P or wrandom:FILE")->required();
    curve->add_option("--event", cv.event, "density-ge:R, density-le:R or ball:FILE:ETA")->required();
    curve->add_option("--n", cv.n, "n grid: '10,20,40' or 'a..b[:step]'")->required();
    curve->add_option("--samples", cv.samples, "Samples for tilted / mc")->capture_default_str();
    curve->add_option("--methods", cv.methods, "Methods in order of preference")->capture_default_str();
    curve->add_option("--ball-restarts", cv.ball_restarts, "Search restarts deciding ball membership")->capture_default_str();
    curve->add_option("--format", cv.format, "stdout format without --out: json or csv")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*sample) run_sample(sample, sa);
        else if (*distance) run_distance(distance, da);
        else if (*rate) run_rate(rate, ra);
        else if (*coupling) run_coupling(coupling, ca);
        else if (*curve) run_curve(curve, cv);
    } catch (const Failure& f) {
        std::cerr << "error: " << f.message << "\n";
        return f.code;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitOk;
}
