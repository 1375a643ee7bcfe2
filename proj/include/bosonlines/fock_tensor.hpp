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

#include <cmath>
#include <cstdint>
#include <vector>

#include "bosonlines/bits.hpp"
#include "bosonlines/complex_matrix.hpp"
#include "bosonlines/errors.hpp"
#include "bosonlines/operator_basis.hpp"
#include "bosonlines/pattern.hpp"
#include "bosonlines/unitary.hpp"

namespace bosonlines {

/// Truncated (a-dagger)^p in the d-dimensional Fock basis:
/// <m+p|(a-dag)^p|m> = sqrt((m+p)!/m!), rows past the cutoff absent.
inline ComplexMatrix ladder_power_matrix(int power, int cutoff) {
    if (cutoff < 1) throw validation_error("ladder_power_matrix: cutoff must be >= 1");
    if (power < 0) throw validation_error("ladder_power_matrix: negative power");
    ComplexMatrix out(cutoff, cutoff);
    for (int m = 0; m + power < cutoff; ++m)
        out(m + power, m) = std::sqrt(factorial(m + power) / factorial(m));
    return out;
}

/**
 * Standard Fock-basis MPO tensor of one mode: dense (2^n d) x (2^n d) block
 * matrix where every operator-tensor entry becomes coeff * (a-dag)^p in the
 * truncated basis. Raising past the cutoff is an explicit error, because
 * amplitude correctness depends on d >= n + 1.
 */
struct FockTensor {
    int mode = 1;
    int photons = 0;
    int cutoff = 1;
    std::vector<cplx> a; // row-major, dimension (2^photons * cutoff)^2

    int dim() const { return (1 << photons) * cutoff; }
    cplx& at(int r, int c) { return a[static_cast<std::size_t>(r) * dim() + c]; }
    const cplx& at(int r, int c) const { return a[static_cast<std::size_t>(r) * dim() + c]; }
};

inline FockTensor to_fock_tensor(const OperatorTensor& t, int cutoff) {
    if (cutoff < 1) throw validation_error("to_fock_tensor: cutoff must be >= 1");
    for (const OperatorTensorEntry& e : t.entries)
        if (e.ladder_power >= cutoff)
            throw validation_error("to_fock_tensor: ladder power " + std::to_string(e.ladder_power) +
                                   " does not fit below cutoff " + std::to_string(cutoff));
    FockTensor out{t.mode, t.photons, cutoff, {}};
    const std::size_t dim = static_cast<std::size_t>(out.dim());
    if (dim > (1u << 14)) throw guard_error("to_fock_tensor: block matrix too large");
    out.a.assign(dim * dim, 0.0);
    for (const OperatorTensorEntry& e : t.entries) {
        for (int m = 0; m + e.ladder_power < cutoff; ++m) {
            const double ladder = std::sqrt(factorial(m + e.ladder_power) / factorial(m));
            out.at(static_cast<int>(e.row) * cutoff + m + e.ladder_power,
                   static_cast<int>(e.col) * cutoff + m) += e.coeff * ladder;
        }
    }
    return out;
}

/**
 * Cross-check path: contracts the per-mode Fock tensors against vacuum and
 * the requested occupations. The chain boundaries of the interior-form tensor
 * are its full-mask row (first mode) and zero column (last mode). Must agree
 * with the lines engine for every pattern.
 */
inline cplx mpo_vacuum_amplitude(const UnitaryMatrix& u, const OccupationPattern& pattern,
                                 int cutoff) {
    validate_pattern(pattern, u.dim());
    const int n = pattern.photons();
    if (n < 1 || n > 8) throw guard_error("mpo_vacuum_amplitude: photons outside [1, 8]");
    const int modes = u.dim();
    const std::uint64_t bonds = 1ull << n;
    const std::uint64_t full = bonds - 1;

    // transfer matrix of mode m: <n_m| block(r, c) |0>
    const auto transfer = [&](int mode) {
        const int occ = pattern.output_occupations[mode - 1];
        const OperatorTensor t = assemble_operator_tensor(u.mat, pattern.input_ports, mode, occ);
        const FockTensor ft = to_fock_tensor(t, cutoff);
        std::vector<cplx> tm(bonds * bonds, 0.0);
        for (std::uint64_t r = 0; r < bonds; ++r)
            for (std::uint64_t c = 0; c < bonds; ++c)
                tm[r * bonds + c] = ft.at(static_cast<int>(r) * cutoff + occ,
                                          static_cast<int>(c) * cutoff + 0);
        return tm;
    };

    std::vector<cplx> v(bonds, 0.0);
    {
        const std::vector<cplx> t1 = transfer(1);
        for (std::uint64_t c = 0; c < bonds; ++c) v[c] = t1[full * bonds + c];
    }
    for (int mode = 2; mode <= modes; ++mode) {
        const std::vector<cplx> tm = transfer(mode);
        std::vector<cplx> next(bonds, 0.0);
        for (std::uint64_t r = 0; r < bonds; ++r) {
            if (v[r] == 0.0) continue;
            for (std::uint64_t c = 0; c < bonds; ++c) next[c] += v[r] * tm[r * bonds + c];
        }
        v = std::move(next);
    }
    return v[0] / std::sqrt(input_multiplicity_factorial(pattern.input_ports));
}

} // namespace bosonlines
