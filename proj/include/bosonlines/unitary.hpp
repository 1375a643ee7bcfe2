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

#include "bosonlines/complex_matrix.hpp"
#include "bosonlines/errors.hpp"
#include "bosonlines/rng.hpp"

namespace bosonlines {

inline constexpr double default_unitarity_tol = 1e-10;

/// max-norm of U^dag U - I.
inline double unitarity_residual(const ComplexMatrix& m) {
    if (!m.square()) throw validation_error("unitarity check: matrix must be square");
    return max_abs_diff(m.adjoint() * m, ComplexMatrix::identity(m.rows));
}

/// A square matrix together with its verified unitarity residual.
struct UnitaryMatrix {
    ComplexMatrix mat;
    double unitarity_residual = 0.0;

    int dim() const { return mat.rows; }
    UnitaryMatrix inverse() const { return {mat.adjoint(), unitarity_residual}; }
};

inline UnitaryMatrix validate_unitary(const ComplexMatrix& m, double tol = default_unitarity_tol) {
    if (!m.square()) throw validation_error("validate_unitary: matrix must be square");
    if (!m.finite()) throw validation_error("validate_unitary: matrix has non-finite entries");
    const double r = unitarity_residual(m);
    if (r > tol) throw not_unitary(r);
    return {m, r};
}

/**
 * Haar-distributed random unitary: complex Ginibre matrix orthonormalized by
 * modified Gram-Schmidt. MGS is the unique QR with positive real diagonal of
 * R, which makes Q Haar-distributed directly (the usual phase fix is implied).
 * Deterministic for a fixed seed, identical across platforms.
 */
inline UnitaryMatrix haar_random_unitary(int m, std::uint64_t seed) {
    if (m < 1) throw validation_error("haar_random_unitary: dimension must be >= 1");
    Prng rng(seed ^ 0x51a7b0d5ull);
    ComplexMatrix g(m, m);
    for (int r = 0; r < m; ++r)
        for (int c = 0; c < m; ++c) g(r, c) = cplx(rng.gaussian(), rng.gaussian());

    // orthonormalize columns; one re-orthogonalization pass keeps the
    // residual at machine precision also for larger m
    for (int c = 0; c < m; ++c) {
        for (int pass = 0; pass < 2; ++pass) {
            for (int p = 0; p < c; ++p) {
                cplx dot = 0.0;
                for (int r = 0; r < m; ++r) dot += std::conj(g(r, p)) * g(r, c);
                for (int r = 0; r < m; ++r) g(r, c) -= dot * g(r, p);
            }
        }
        double nrm = 0.0;
        for (int r = 0; r < m; ++r) nrm += std::norm(g(r, c));
        nrm = std::sqrt(nrm);
        for (int r = 0; r < m; ++r) g(r, c) /= nrm;
    }
    return validate_unitary(g, default_unitarity_tol);
}

/// Input-output matrix of applying `u` first and `v` second: entry (i, k) is
/// sum_j u^i_j v^j_k, i.e. the plain product u.mat * v.mat.
inline UnitaryMatrix compose_channels(const UnitaryMatrix& u, const UnitaryMatrix& v) {
    if (u.dim() != v.dim()) throw validation_error("compose_channels: dimension mismatch");
    ComplexMatrix prod = u.mat * v.mat;
    const double r = unitarity_residual(prod);
    return {std::move(prod), r};
}

} // namespace bosonlines
