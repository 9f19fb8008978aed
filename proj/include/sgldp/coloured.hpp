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
#include <vector>

#include "sgldp/cut_metric.hpp"
#include "sgldp/graphon.hpp"
#include "sgldp/matrix.hpp"

namespace sgldp {

/// Refinements larger than this use the alternating heuristic in dk_norm.
inline constexpr std::size_t kExactDkMaxParts = 18;

/// A step graphon whose parts carry colours 0..k-1. Colour classes may be
/// empty.
class ColouredStepGraphon {
public:
    ColouredStepGraphon() = default;
    ColouredStepGraphon(StepGraphon graphon, std::vector<std::size_t> colours, std::size_t k);

    const StepGraphon& graphon() const { return graphon_; }
    const std::vector<std::size_t>& colours() const { return colours_; }
    std::size_t colour(std::size_t part) const { return colours_[part]; }
    std::size_t k() const { return k_; }

    /// Measure of each colour class.
    std::vector<double> class_measures() const;

    bool operator==(const ColouredStepGraphon&) const = default;

private:
    StepGraphon graphon_;
    std::vector<std::size_t> colours_;
    std::size_t k_ = 1;
};

/// Coloured cut discrepancy plus the colour-class symmetric differences,
/// evaluated on the common interval refinement.
double dk_norm(const ColouredStepGraphon& a, const ColouredStepGraphon& b);

/// dk_norm after rearranging b's parts onto a's through the coupling c.
double dk_coupled(const ColouredStepGraphon& a, const ColouredStepGraphon& b, const OverlapCoupling& c);

DistanceEstimate dk_distance_search(const ColouredStepGraphon& a, const ColouredStepGraphon& b,
                                    const SearchBudget& budget = {});

StepGraphon gamma_forget(const ColouredStepGraphon& a);

/// Keeps values on cells coloured {i,j} and sets every other cell to p(i,j).
StepGraphon gamma_block(const ColouredStepGraphon& a, std::size_t i, std::size_t j, const Matrix& p);

}  // namespace sgldp
