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

#include <stdexcept>
#include <string>

namespace sgldp {

enum class ErrorKind {
    InvalidArgument,  // bad shapes, out-of-range values, malformed input
    TooLarge,         // instance exceeds an enumeration budget
    Runtime,          // internal consistency failure
};

/// The single exception type thrown by the core library.
class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& what)
        : std::runtime_error(what), kind_(kind) {}

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

[[noreturn]] inline void fail_invalid(const std::string& what) {
    throw Error(ErrorKind::InvalidArgument, what);
}

[[noreturn]] inline void fail_too_large(const std::string& what) {
    throw Error(ErrorKind::TooLarge, what);
}

[[noreturn]] inline void fail_runtime(const std::string& what) {
    throw Error(ErrorKind::Runtime, what);
}

}  // namespace sgldp
