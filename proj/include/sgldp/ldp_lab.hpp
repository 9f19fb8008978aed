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

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sgldp/graphon.hpp"
#include "sgldp/matrix.hpp"
#include "sgldp/samplers.hpp"

namespace sgldp {

/// Slack used when comparing an edge density with a threshold.
inline constexpr double kDensitySlack = 1e-12;

struct EventSpec {
    enum class Kind { DensityAtLeast, DensityAtMost, Ball };
    Kind kind = Kind::DensityAtLeast;
    double r = 0.0;
    StepGraphon target;
    double eta = 0.0;
    /// Restarts of the distance search deciding ball membership.
    unsigned restarts = 16;

    static EventSpec density_at_least(double r);
    static EventSpec density_at_most(double r);
    static EventSpec ball(StepGraphon target, double eta, unsigned restarts = 16);
    void validate() const;
};

/// Smallest edge count with density >= r (up to kDensitySlack) out of m pairs.
std::size_t density_min_edges(std::size_t m, double r);
/// Largest edge count with density <= r (up to kDensitySlack).
std::size_t density_max_edges(std::size_t m, double r);

/// Decides membership of graphs in an event. Ball membership is cached per
/// isomorphism class.
class EventOracle {
public:
    explicit EventOracle(EventSpec e);
    bool contains(const LabeledGraph& g);
    const EventSpec& event() const { return e_; }

private:
    EventSpec e_;
    std::map<std::vector<std::uint64_t>, bool> cache_;
};

/// Canonical adjacency bit string: equal exactly for isomorphic graphs.
std::vector<std::uint64_t> canonical_form(const LabeledGraph& g);

/// log P(Bin(m, p) >= k_min).
double binomial_tail_logprob(std::size_t m, double p, std::size_t k_min);
/// log P(Bin(m, p) <= k_max).
double binomial_head_logprob(std::size_t m, double p, std::size_t k_max);

struct LogProbEstimate {
    double log_prob = 0.0;  // -inf when the event was never hit
    std::optional<double> stderr_log;
    bool zero_hits = false;
    std::string method;
    /// Ball events decided by upper-bound distances: a lower bound.
    bool lower_bound = false;
};

struct ExactOptions {
    std::size_t max_enumerated = std::size_t{1} << 21;
    /// Cap on the work of edge-count convolutions.
    double max_convolution_work = 3e8;
};

/// Exact log-probability of the event under G(a, p): edge-count convolution
/// for density events, enumeration of all graphs for ball events.
LogProbEstimate exact_event_logprob(const BlockSpec& spec, const EventSpec& event, const ExactOptions& opts = {});

/// Exact log-probability under G(n, W) by conditioning on the block counts.
LogProbEstimate wrandom_exact_event_logprob(std::size_t n, const StepGraphon& w, const EventSpec& event,
                                            const ExactOptions& opts = {});

/// Plain Monte Carlo; sample i uses derive_seed(seed, i).
LogProbEstimate mc_event_logprob(const BlockSpec& spec, const EventSpec& event, std::size_t samples,
                                 std::uint64_t seed, unsigned jobs = 1);
LogProbEstimate mc_wrandom_event_logprob(std::size_t n, const StepGraphon& w, const EventSpec& event,
                                         std::size_t samples, std::uint64_t seed, unsigned jobs = 1);

/// Importance sampling for P(density >= r) in G(n, p) with edges drawn at
/// probability r (upper tail, r >= p), or P(density <= r) when upper is false
/// (r <= p).
LogProbEstimate tilted_density_logprob(std::size_t n, double p, double r, std::size_t samples, std::uint64_t seed,
                                       bool upper = true, unsigned jobs = 1);

struct ExperimentConfig {
    enum class Model { Block, WRandom };
    Model model = Model::Block;
    /// Block families: alpha and p. G(n, p) is alpha = (1).
    std::vector<double> alpha{1.0};
    Matrix p = Matrix(1, 1, 0.5);
    /// W-random graphs.
    StepGraphon w;
    EventSpec event;
    std::vector<std::size_t> n_grid;
    std::size_t samples = 10000;
    std::uint64_t seed = 0;
    unsigned jobs = 1;
    /// Methods in order of preference: exact, enumeration, tilted, mc.
    std::vector<std::string> methods{"exact", "enumeration", "tilted", "mc"};
    ExactOptions exact;
    void validate() const;
};

struct CurvePoint {
    std::size_t n = 0;
    double speed = 0.0;
    LogProbEstimate estimate;
    std::optional<double> normalized;
    std::vector<std::size_t> blocks;  // a_n for block families
};

struct CurveResult {
    std::vector<CurvePoint> points;
    /// Predicted limit of the normalized values, when one is computable.
    std::optional<double> predicted;
    std::string predicted_kind;  // "exact", "upper-bound" or "none"
};

/// Block sizes a with |a_i - n alpha_i| < 1 and sum n (largest remainders).
std::vector<std::size_t> block_sizes(std::size_t n, const std::vector<double>& alpha);

CurveResult ldp_curve(const ExperimentConfig& config);

}  // namespace sgldp
