/*
 * Copyright 2025 bosonlines contributors
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

namespace bosonlines {

// Error families map 1:1 onto CLI exit codes:
//   parse_error -> 2, validation_error -> 3, guard_error -> 4, io_error -> 5.

/// Malformed input files or pattern strings.
struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

/// Inputs that parse but violate a contract (dimensions, ranges, patterns).
struct validation_error : std::runtime_error {
    explicit validation_error(const std::string& what) : std::runtime_error(what) {}
};

/// Hard size guards: the request is well formed but outside the supported scale.
struct guard_error : std::runtime_error {
    explicit guard_error(const std::string& what) : std::runtime_error(what) {}
};

/// Filesystem failures.
struct io_error : std::runtime_error {
    explicit io_error(const std::string& what) : std::runtime_error(what) {}
};

struct not_unitary : validation_error {
    double residual;
    explicit not_unitary(double r)
        : validation_error("matrix is not unitary: max-norm residual of U^dag U - I is " + std::to_string(r)),
          residual(r) {}
};

} // namespace bosonlines
