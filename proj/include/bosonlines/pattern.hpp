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

#include <map>
#include <numeric>
#include <vector>

#include "bosonlines/bits.hpp"
#include "bosonlines/complex_matrix.hpp"
#include "bosonlines/errors.hpp"
#include "bosonlines/unitary.hpp"

namespace bosonlines {

/// Input port list i-bar (1-based, repeats allowed) and output occupation
/// list n-bar over all modes. For lossless amplitudes sum(n-bar) equals the
/// photon number; in lossy mode the deficit is the number of lost photons.
struct OccupationPattern {
    std::vector<int> input_ports;
    std::vector<int> output_occupations;

    int photons() const { return static_cast<int>(input_ports.size()); }
    int detected() const {
        return std::accumulate(output_occupations.begin(), output_occupations.end(), 0);
    }
};

inline void validate_pattern(const OccupationPattern& p, int modes, bool allow_deficit = false) {
    for (int port : p.input_ports)
        if (port < 1 || port > modes)
            throw validation_error("pattern: input port " + std::to_string(port) +
                                   " outside [1, " + std::to_string(modes) + "]");
    if (static_cast<int>(p.output_occupations.size()) != modes)
        throw validation_error("pattern: occupation list must have one entry per mode");
    for (int n : p.output_occupations)
        if (n < 0) throw validation_error("pattern: negative occupation");
    const int det = p.detected();
    if (det > p.photons() || (!allow_deficit && det != p.photons()))
        throw validation_error("pattern: photon counts disagree (inputs " +
                               std::to_string(p.photons()) + ", detected " + std::to_string(det) + ")");
}

/// prod_i m_i! over the multiplicities of repeated input ports.
inline double input_multiplicity_factorial(const std::vector<int>& ports) {
    std::map<int, int> mult;
    for (int p : ports) ++mult[p];
    double f = 1.0;
    for (const auto& [port, m] : mult) f *= factorial(m);
    return f;
}

/// prod_k n_k! over the output occupations.
inline double occupation_factorial(const std::vector<int>& occ) {
    double f = 1.0;
    for (int n : occ) f *= factorial(n);
    return f;
}

/**
 * The n x n amplitude target matrix: columns indexed by i-bar (with
 * repetition), rows by output ports repeated n_k times, ports ascending.
 * Entry (row for output k, column for input i) = u^i_k.
 */
inline ComplexMatrix submatrix(const UnitaryMatrix& u, const OccupationPattern& p) {
    validate_pattern(p, u.dim());
    const int n = p.photons();
    ComplexMatrix out(n, n);
    int r = 0;
    for (int k = 0; k < u.dim(); ++k) {
        for (int rep = 0; rep < p.output_occupations[k]; ++rep, ++r) {
            for (int c = 0; c < n; ++c) out(r, c) = u.mat(p.input_ports[c] - 1, k);
        }
    }
    return out;
}

} // namespace bosonlines
