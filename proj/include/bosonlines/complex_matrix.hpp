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
#include <complex>
#include <vector>

#include "bosonlines/errors.hpp"

namespace bosonlines {

using cplx = std::complex<double>;

/// Dense row-major complex matrix. Throughout the library the row index is
/// the input port and the column index the output port: entry (i, k) = u^i_k.
struct ComplexMatrix {
    int rows = 0;
    int cols = 0;
    std::vector<cplx> a;

    ComplexMatrix() = default;
    ComplexMatrix(int r, int c) : rows(r), cols(c), a(static_cast<std::size_t>(r) * c) {
        if (r < 0 || c < 0) throw validation_error("matrix dimensions must be non-negative");
    }

    cplx& operator()(int r, int c) { return a[static_cast<std::size_t>(r) * cols + c]; }
    const cplx& operator()(int r, int c) const { return a[static_cast<std::size_t>(r) * cols + c]; }

    bool square() const { return rows == cols; }

    static ComplexMatrix identity(int m) {
        ComplexMatrix out(m, m);
        for (int i = 0; i < m; ++i) out(i, i) = 1.0;
        return out;
    }

    ComplexMatrix adjoint() const {
        ComplexMatrix out(cols, rows);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < cols; ++c) out(c, r) = std::conj((*this)(r, c));
        return out;
    }

    bool finite() const {
        for (const cplx& v : a)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) return false;
        return true;
    }
};

inline ComplexMatrix operator*(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.cols != y.rows) throw validation_error("matrix product: inner dimensions disagree");
    ComplexMatrix out(x.rows, y.cols);
    for (int r = 0; r < x.rows; ++r)
        for (int k = 0; k < x.cols; ++k) {
            const cplx v = x(r, k);
            if (v == 0.0) continue;
            for (int c = 0; c < y.cols; ++c) out(r, c) += v * y(k, c);
        }
    return out;
}

/// max_{r,c} |x - y| entrywise; matrices must have equal shape.
inline double max_abs_diff(const ComplexMatrix& x, const ComplexMatrix& y) {
    if (x.rows != y.rows || x.cols != y.cols)
        throw validation_error("max_abs_diff: shape mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < x.a.size(); ++i) m = std::max(m, std::abs(x.a[i] - y.a[i]));
    return m;
}

/// Determinant by LU with partial pivoting. Intended for small matrices.
inline cplx determinant(const ComplexMatrix& m) {
    if (!m.square()) throw validation_error("determinant: matrix must be square");
    const int n = m.rows;
    ComplexMatrix lu = m;
    cplx det = 1.0;
    for (int k = 0; k < n; ++k) {
        int piv = k;
        double best = std::abs(lu(k, k));
        for (int r = k + 1; r < n; ++r)
            if (std::abs(lu(r, k)) > best) { best = std::abs(lu(r, k)); piv = r; }
        if (best == 0.0) return 0.0;
        if (piv != k) {
            for (int c = 0; c < n; ++c) std::swap(lu(k, c), lu(piv, c));
            det = -det;
        }
        det *= lu(k, k);
        for (int r = k + 1; r < n; ++r) {
            const cplx f = lu(r, k) / lu(k, k);
            for (int c = k; c < n; ++c) lu(r, c) -= f * lu(k, c);
        }
    }
    return det;
}

} // namespace bosonlines
