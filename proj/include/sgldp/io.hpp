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

// JSON, edge-list and CSV forms of the library's values. Readers report the
// offending location as a JSON path, e.g. "$.values[1][0]: expected a number".

#include <string>
#include <vector>

#include <json.hpp>

#include "sgldp/coloured.hpp"
#include "sgldp/cut_metric.hpp"
#include "sgldp/graphon.hpp"
#include "sgldp/ldp_lab.hpp"
#include "sgldp/matrix.hpp"
#include "sgldp/rate.hpp"
#include "sgldp/samplers.hpp"

namespace sgldp::io {

using json = nlohmann::json;

/// Bumped whenever an output layout changes.
inline constexpr int kFormatVersion = 1;
inline constexpr const char* kLibraryVersion = "0.1.0";

/// Parses JSON text; syntax errors become InvalidArgument.
json parse(const std::string& text, const std::string& source = "input");

json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j, const std::string& path = "$");

std::vector<double> reals_from_json(const json& j, const std::string& path = "$");

/// {"weights":[...],"values":[[...]]}
json graphon_to_json(const StepGraphon& u);
StepGraphon graphon_from_json(const json& j, const std::string& path = "$");

/// Graphon fields plus "colours" (1-based) and "k".
json coloured_to_json(const ColouredStepGraphon& a);
ColouredStepGraphon coloured_from_json(const json& j, const std::string& path = "$");

/// "n\nu v\n..." with 0-based vertices, one edge per line.
std::string graph_to_edges(const LabeledGraph& g);
LabeledGraph graph_from_edges(const std::string& text);

json coupling_to_json(const OverlapCoupling& c);

/// {"upper":..,"witness":{..},"restartsUsed":..}
json distance_to_json(const DistanceEstimate& d);

/// "value" is a number or the string "inf".
json rate_report_to_json(const RateReport& r);

json block_spec_to_json(const BlockSpec& s);
BlockSpec block_spec_from_json(const json& j, const std::string& path = "$");

json coupled_pair_to_json(const CoupledPair& c);

json event_to_json(const EventSpec& e);
EventSpec event_from_json(const json& j, const std::string& path = "$");

json config_to_json(const ExperimentConfig& c);
ExperimentConfig config_from_json(const json& j, const std::string& path = "$");

/// n,s_n,logProb,normalized,method,stderr,limit
std::string curve_to_csv(const CurveResult& r);

/// Config, predicted limit, points and versions.
json curve_report_to_json(const ExperimentConfig& c, const CurveResult& r);

}  // namespace sgldp::io
