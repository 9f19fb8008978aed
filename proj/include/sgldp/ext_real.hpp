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

#include <cmath>
#include <cstdio>
#include <compare>
#include <limits>
#include <string>

#include "sgldp/error.hpp"

namespace sgldp {

/// A nonnegative extended real: a finite double >= 0 or +infinity.
class ExtReal {
public:
    constexpr ExtReal() = default;

    explicit ExtReal(double v) : v_(v) {
        if (std::isnan(v) || v < 0.0) {
            fail_invalid("ExtReal must be nonnegative, got " + std::to_string(v));
        }
    }

    static ExtReal infinity() {
        ExtReal r;
        r.v_ = std::numeric_limits<double>::infinity();
        return r;
    }

    bool is_finite() const { return std::isfinite(v_); }
    bool is_infinite() const { return !is_finite(); }

    /// The stored value; +inf for the infinite element.
    double value() const { return v_; }

    ExtReal operator+(ExtReal o) const { return ExtReal(v_ + o.v_); }
    ExtReal& operator+=(ExtReal o) {
        v_ += o.v_;
        return *this;
    }

    /// Scaling by a nonnegative weight. A zero weight annihilates +inf.
    ExtReal scaled(double w) const {
        if (w == 0.0) return ExtReal(0.0);
        return ExtReal(v_ * w);
    }

    auto operator<=>(const ExtReal& o) const = default;

private:
    double v_ = 0.0;
};

inline std::string to_string(ExtReal x) {
    if (x.is_infinite()) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x.value());
    return buf;
}

}  // namespace sgldp
