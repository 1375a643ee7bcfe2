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

#include <bit>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "bosonlines/complex_matrix.hpp"
#include "bosonlines/lines.hpp"

namespace bosonlines {

inline std::uint64_t fnv1a64(const void* data, std::size_t size, std::uint64_t h = 0xcbf29ce484222325ull) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < size; ++i) {
        h ^= p[i];
        h *= 0x100000001b3ull;
    }
    return h;
}

/// Stable digest of the run inputs (matrix values plus patterns); identical
/// inputs always produce identical report digests.
inline std::string input_digest(const ComplexMatrix& m, const std::vector<int>& ports,
                                const std::vector<int>& occupations) {
    std::uint64_t h = fnv1a64(&m.rows, sizeof m.rows);
    h = fnv1a64(&m.cols, sizeof m.cols, h);
    for (const cplx& v : m.a) {
        const std::uint64_t re = std::bit_cast<std::uint64_t>(v.real());
        const std::uint64_t im = std::bit_cast<std::uint64_t>(v.imag());
        h = fnv1a64(&re, sizeof re, h);
        h = fnv1a64(&im, sizeof im, h);
    }
    for (int p : ports) h = fnv1a64(&p, sizeof p, h);
    for (int o : occupations) h = fnv1a64(&o, sizeof o, h);
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return std::string(buf);
}

struct WallTimer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    std::uint64_t elapsed_ns() const {
        return static_cast<std::uint64_t>(
            std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now() - start)
                .count());
    }
};

/// Machine-readable result of one CLI run.
struct RunReport {
    std::string command;
    std::string algorithm;
    std::optional<cplx> amplitude;
    std::optional<double> probability;
    std::optional<double> std_error;
    MergeStats stats;
    std::optional<std::uint64_t> predicted_pairs;
    std::optional<std::uint64_t> predicted_cost;
    std::optional<std::uint64_t> predicted_cost_lossy;
    std::uint64_t wall_ns = 0;
    std::string digest;
    std::optional<std::uint64_t> seed;
};

inline nlohmann::json to_json(const RunReport& r) {
    nlohmann::json j{
        {"command", r.command},
        {"algorithm", r.algorithm},
        {"stats",
         {{"pair_combinations", r.stats.pair_combinations},
          {"scalar_multiplications", r.stats.scalar_multiplications}}},
        {"wall_ns", r.wall_ns},
        {"input_digest", r.digest},
    };
    if (r.amplitude) j["amplitude"] = {r.amplitude->real(), r.amplitude->imag()};
    if (r.probability) j["probability"] = *r.probability;
    if (r.std_error) j["std_error"] = *r.std_error;
    if (r.predicted_pairs) j["stats"]["predicted_pairs"] = *r.predicted_pairs;
    if (r.predicted_cost) j["stats"]["predicted_cost"] = *r.predicted_cost;
    if (r.predicted_cost_lossy) j["stats"]["predicted_cost_lossy"] = *r.predicted_cost_lossy;
    if (r.seed) j["seed"] = *r.seed;
    return j;
}

} // namespace bosonlines
