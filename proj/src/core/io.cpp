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


#include "sgldp/io.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "sgldp/error.hpp"

namespace sgldp::io {

namespace {

[[noreturn]] void bad(const std::string& path, const std::string& what) { fail_invalid(path + ": " + what); }

const json& field(const json& j, const std::string& path, const char* name) {
    if (!j.is_object()) bad(path, "expected an object");
    auto it = j.find(name);
    if (it == j.end()) bad(path + "." + name, "missing field");
    return *it;
}

double real_at(const json& j, const std::string& path) {
    if (!j.is_number()) bad(path, "expected a number");
    return j.get<double>();
}

std::uint64_t uint_at(const json& j, const std::string& path) {
    if (!j.is_number_unsigned() && !(j.is_number_integer() && j.get<std::int64_t>() >= 0))
        bad(path, "expected a nonnegative integer");
    return j.get<std::uint64_t>();
}

std::vector<std::size_t> uints_at(const json& j, const std::string& path) {
    if (!j.is_array()) bad(path, "expected an array");
    std::vector<std::size_t> v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(uint_at(j[i], path + "[" + std::to_string(i) + "]"));
    return v;
}

// Runs a constructor and prefixes its complaint with the path.
template <class F>
auto at_path(const std::string& path, F&& f) {
    try {
        return f();
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::InvalidArgument) throw;
        bad(path, e.what());
    }
}

json opt_real(double x) { return std::isfinite(x) ? json(x) : json(nullptr); }

std::string csv_real(double x) {
    if (std::isnan(x)) return "";
    if (std::isinf(x)) return x < 0 ? "-inf" : "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

const char* kind_name(EventSpec::Kind k) {
    switch (k) {
        case EventSpec::Kind::DensityAtLeast: return "densityAtLeast";
        case EventSpec::Kind::DensityAtMost: return "densityAtMost";
        case EventSpec::Kind::Ball: return "ball";
    }
    return "";
}

}  // namespace

json parse(const std::string& text, const std::string& source) {
    try {
        return json::parse(text);
    } catch (const json::parse_error& e) {
        fail_invalid(source + ": malformed JSON (" + e.what() + ")");
    }
}

json matrix_to_json(const Matrix& m) { return m.to_rows(); }

Matrix matrix_from_json(const json& j, const std::string& path) {
    if (!j.is_array()) bad(path, "expected an array of rows");
    std::vector<std::vector<double>> rows;
    for (std::size_t r = 0; r < j.size(); ++r) {
        const std::string rp = path + "[" + std::to_string(r) + "]";
        rows.push_back(reals_from_json(j[r], rp));
        if (rows[r].size() != rows[0].size()) bad(rp, "row length differs from row 0");
    }
    return Matrix::from_rows(rows);
}

std::vector<double> reals_from_json(const json& j, const std::string& path) {
    if (!j.is_array()) bad(path, "expected an array");
    std::vector<double> v;
    for (std::size_t i = 0; i < j.size(); ++i) v.push_back(real_at(j[i], path + "[" + std::to_string(i) + "]"));
    return v;
}

json graphon_to_json(const StepGraphon& u) {
    return {{"weights", u.parts().vec()}, {"values", matrix_to_json(u.values())}};
}

StepGraphon graphon_from_json(const json& j, const std::string& path) {
    auto w = reals_from_json(field(j, path, "weights"), path + ".weights");
    Matrix v = matrix_from_json(field(j, path, "values"), path + ".values");
    return at_path(path, [&] { return make_step_graphon(std::move(w), v); });
}

json coloured_to_json(const ColouredStepGraphon& a) {
    json j = graphon_to_json(a.graphon());
    std::vector<std::size_t> c;
    for (std::size_t x : a.colours()) c.push_back(x + 1);
    j["colours"] = c;
    j["k"] = a.k();
    return j;
}

ColouredStepGraphon coloured_from_json(const json& j, const std::string& path) {
    StepGraphon u = graphon_from_json(j, path);
    auto c = uints_at(field(j, path, "colours"), path + ".colours");
    const std::size_t k = uint_at(field(j, path, "k"), path + ".k");
    for (std::size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) bad(path + ".colours[" + std::to_string(i) + "]", "colours are 1-based");
        --c[i];
    }
    return at_path(path, [&] { return ColouredStepGraphon(std::move(u), std::move(c), k); });
}

std::string graph_to_edges(const LabeledGraph& g) {
    std::ostringstream os;
    os << g.n() << '\n';
    for (auto [u, v] : g.edges()) os << u << ' ' << v << '\n';
    return os.str();
}

LabeledGraph graph_from_edges(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::size_t lineno = 0;
    auto next = [&]() -> bool {
        while (std::getline(is, line)) {
            ++lineno;
            if (line.find_first_not_of(" \t\r") != std::string::npos) return true;
        }
        return false;
    };
    if (!next()) fail_invalid("edges: line 1: missing vertex count");
    std::size_t n;
    {
        std::istringstream ls(line);
        std::string rest;
        if (!(ls >> n) || (ls >> rest)) fail_invalid("edges: line " + std::to_string(lineno) + ": bad vertex count");
    }
    LabeledGraph g(n);
    while (next()) {
        std::istringstream ls(line);
        long long u, v;
        std::string rest;
        const std::string where = "edges: line " + std::to_string(lineno) + ": ";
        if (!(ls >> u >> v) || (ls >> rest)) fail_invalid(where + "expected two vertex numbers");
        if (u < 0 || v < 0 || static_cast<std::size_t>(u) >= n || static_cast<std::size_t>(v) >= n)
            fail_invalid(where + "vertex out of range");
        if (u == v) fail_invalid(where + "self-loop");
        g.add_edge(static_cast<std::size_t>(u), static_cast<std::size_t>(v));
    }
    return g;
}

json coupling_to_json(const OverlapCoupling& c) {
    return {{"rows", c.rows().vec()}, {"cols", c.cols().vec()}, {"mass", matrix_to_json(c.mass())}};
}

json distance_to_json(const DistanceEstimate& d) {
    return {{"upper", d.upper}, {"witness", coupling_to_json(d.witness)}, {"restartsUsed", d.restarts_used}};
}

json rate_report_to_json(const RateReport& r) {
    json j;
    j["value"] = r.value.is_finite() ? json(r.value.value()) : json("inf");
    j["witnessCoupling"] = r.witness_coupling ? coupling_to_json(*r.witness_coupling) : json(nullptr);
    if (r.witness_alpha) j["witnessAlpha"] = r.witness_alpha->vec();
    j["budgetUsed"] = r.budget_used;
    j["infinityCertified"] = r.infinity_certified;
    j["upperBound"] = true;
    return j;
}

json block_spec_to_json(const BlockSpec& s) { return {{"a", s.a}, {"p", matrix_to_json(s.p)}}; }

BlockSpec block_spec_from_json(const json& j, const std::string& path) {
    BlockSpec s{uints_at(field(j, path, "a"), path + ".a"), matrix_from_json(field(j, path, "p"), path + ".p")};
    at_path(path, [&] {
        s.validate();
        return 0;
    });
    return s;
}

json coupled_pair_to_json(const CoupledPair& c) {
    json al = json::array();
    for (auto [x, y] : c.alignment) al.push_back({x, y});
    return {{"a", c.a},
            {"b", c.b},
            {"epsilon", c.epsilon},
            {"alignment", al},
            {"g", graph_to_edges(c.g)},
            {"h", graph_to_edges(c.h)}};
}

json event_to_json(const EventSpec& e) {
    json j{{"kind", kind_name(e.kind)}};
    if (e.kind == EventSpec::Kind::Ball) {
        j["target"] = graphon_to_json(e.target);
        j["eta"] = e.eta;
        j["restarts"] = e.restarts;
    } else {
        j["r"] = e.r;
    }
    return j;
}

EventSpec event_from_json(const json& j, const std::string& path) {
    const json& k = field(j, path, "kind");
    if (!k.is_string()) bad(path + ".kind", "expected a string");
    const std::string kind = k.get<std::string>();
    EventSpec e;
    if (kind == "densityAtLeast" || kind == "densityAtMost") {
        const double r = real_at(field(j, path, "r"), path + ".r");
        e = kind == "densityAtLeast" ? EventSpec::density_at_least(r) : EventSpec::density_at_most(r);
    } else if (kind == "ball") {
        StepGraphon t = graphon_from_json(field(j, path, "target"), path + ".target");
        const double eta = real_at(field(j, path, "eta"), path + ".eta");
        unsigned restarts = 16;
        if (j.contains("restarts")) restarts = static_cast<unsigned>(uint_at(j["restarts"], path + ".restarts"));
        e = EventSpec::ball(std::move(t), eta, restarts);
    } else {
        bad(path + ".kind", "unknown event kind '" + kind + "'");
    }
    at_path(path, [&] {
        e.validate();
        return 0;
    });
    return e;
}

json config_to_json(const ExperimentConfig& c) {
    json j;
    if (c.model == ExperimentConfig::Model::Block) {
        j["model"] = "block";
        j["alpha"] = c.alpha;
        j["p"] = matrix_to_json(c.p);
    } else {
        j["model"] = "wrandom";
        j["w"] = graphon_to_json(c.w);
    }
    j["event"] = event_to_json(c.event);
    j["nGrid"] = c.n_grid;
    j["samples"] = c.samples;
    j["seed"] = c.seed;
    j["jobs"] = c.jobs;
    j["methods"] = c.methods;
    j["maxEnumerated"] = c.exact.max_enumerated;
    j["maxConvolutionWork"] = c.exact.max_convolution_work;
    return j;
}

ExperimentConfig config_from_json(const json& j, const std::string& path) {
    ExperimentConfig c;
    const json& m = field(j, path, "model");
    const std::string model = m.is_string() ? m.get<std::string>() : "";
    if (model == "block") {
        c.model = ExperimentConfig::Model::Block;
        c.alpha = reals_from_json(field(j, path, "alpha"), path + ".alpha");
        c.p = matrix_from_json(field(j, path, "p"), path + ".p");
    } else if (model == "wrandom") {
        c.model = ExperimentConfig::Model::WRandom;
        c.w = graphon_from_json(field(j, path, "w"), path + ".w");
    } else {
        bad(path + ".model", "expected \"block\" or \"wrandom\"");
    }
    c.event = event_from_json(field(j, path, "event"), path + ".event");
    c.n_grid = uints_at(field(j, path, "nGrid"), path + ".nGrid");
    if (j.contains("samples")) c.samples = uint_at(j["samples"], path + ".samples");
    if (j.contains("seed")) c.seed = uint_at(j["seed"], path + ".seed");
    if (j.contains("jobs")) c.jobs = static_cast<unsigned>(uint_at(j["jobs"], path + ".jobs"));
    if (j.contains("methods")) {
        const json& ms = j["methods"];
        if (!ms.is_array()) bad(path + ".methods", "expected an array");
        c.methods.clear();
        for (std::size_t i = 0; i < ms.size(); ++i) {
            if (!ms[i].is_string()) bad(path + ".methods[" + std::to_string(i) + "]", "expected a string");
            c.methods.push_back(ms[i].get<std::string>());
        }
    }
    if (j.contains("maxEnumerated")) c.exact.max_enumerated = uint_at(j["maxEnumerated"], path + ".maxEnumerated");
    if (j.contains("maxConvolutionWork"))
        c.exact.max_convolution_work = real_at(j["maxConvolutionWork"], path + ".maxConvolutionWork");
    at_path(path, [&] {
        c.validate();
        return 0;
    });
    return c;
}

std::string curve_to_csv(const CurveResult& r) {
    std::ostringstream os;
    os << "n,s_n,logProb,normalized,method,stderr,limit\n";
    const std::string limit = r.predicted ? csv_real(*r.predicted) : "";
    for (const auto& p : r.points) {
        os << p.n << ',' << csv_real(p.speed) << ',' << csv_real(p.estimate.log_prob) << ','
           << (p.normalized ? csv_real(*p.normalized) : "") << ',' << p.estimate.method << ','
           << (p.estimate.stderr_log ? csv_real(*p.estimate.stderr_log) : "") << ',' << limit << '\n';
    }
    return os.str();
}

json curve_report_to_json(const ExperimentConfig& c, const CurveResult& r) {
    json pts = json::array();
    for (const auto& p : r.points) {
        json q;
        q["n"] = p.n;
        q["speed"] = p.speed;
        q["logProb"] = opt_real(p.estimate.log_prob);
        q["zeroHits"] = p.estimate.zero_hits || p.estimate.log_prob == -INFINITY;
        q["normalized"] = p.normalized ? json(*p.normalized) : json(nullptr);
        q["method"] = p.estimate.method;
        q["stderr"] = p.estimate.stderr_log ? opt_real(*p.estimate.stderr_log) : json(nullptr);
        q["lowerBound"] = p.estimate.lower_bound;
        if (!p.blocks.empty()) q["blocks"] = p.blocks;
        pts.push_back(std::move(q));
    }
    return {{"formatVersion", kFormatVersion},
            {"version", kLibraryVersion},
            {"config", config_to_json(c)},
            {"predicted", {{"value", r.predicted ? json(*r.predicted) : json(nullptr)}, {"kind", r.predicted_kind}}},
            {"points", pts}};
}

}  // namespace sgldp::io
