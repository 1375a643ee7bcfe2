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

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "bosonlines/bits.hpp"
#include "bosonlines/complex_matrix.hpp"
#include "bosonlines/errors.hpp"

namespace bosonlines {

/**
 * Single-photon operator-basis tensor for one mode. Shapes: 1x2 row vector at
 * the first mode, 2x2 in the interior, 2x1 column at the last mode (1x1 when
 * there is a single mode). The sigma = 1 interior matrix has its only nonzero
 * entry u^i_m at position (2, 1) and squares to zero.
 */
struct AMatrix {
    int mode = 1;        // m, 1-based
    int modes = 1;       // M
    int port = 1;        // input port i, 1-based
    int sigma = 0;       // ladder power on this mode, 0 or 1
    ComplexMatrix mat;
};

inline AMatrix a_matrix(int mode, int modes, int port, int sigma, const ComplexMatrix& u) {
    if (mode < 1 || mode > modes) throw validation_error("a_matrix: mode out of range");
    if (port < 1 || port > u.rows) throw validation_error("a_matrix: port out of range");
    if (modes > u.cols) throw validation_error("a_matrix: mode count exceeds matrix columns");
    if (sigma != 0 && sigma != 1) throw validation_error("a_matrix: sigma must be 0 or 1");

    const cplx uim = u(port - 1, mode - 1);
    AMatrix out{mode, modes, port, sigma, {}};
    if (modes == 1) { // degenerate single-mode chain
        out.mat = ComplexMatrix(1, 1);
        out.mat(0, 0) = sigma ? uim : cplx(1.0);
        return out;
    }
    if (mode == 1) {
        out.mat = ComplexMatrix(1, 2);
        if (sigma == 0) out.mat(0, 1) = 1.0;
        else out.mat(0, 0) = uim;
    } else if (mode == modes) {
        out.mat = ComplexMatrix(2, 1);
        if (sigma == 0) out.mat(0, 0) = 1.0;
        else out.mat(1, 0) = uim;
    } else {
        out.mat = ComplexMatrix(2, 2);
        if (sigma == 0) { out.mat(0, 0) = 1.0; out.mat(1, 1) = 1.0; }
        else out.mat(1, 0) = uim;
    }
    return out;
}

/**
 * Operator basis for partially distinguishable photons: the bond space is
 * doubled into a parallel and an orthogonal sector,
 *   sigma = 0: A0 (+) A0,   sigma = 1: sqrt(eta) A1 (+) sqrt(1-eta) A1.
 * Boundary vectors concatenate, interior blocks are block-diagonal.
 */
struct BMatrix {
    int mode = 1;
    int modes = 1;
    int port = 1;
    int sigma = 0;
    double eta = 1.0;
    ComplexMatrix mat;
};

inline BMatrix b_matrix(int mode, int modes, int port, int sigma, const ComplexMatrix& u,
                        double eta) {
    if (eta < 0.0 || eta > 1.0) throw validation_error("b_matrix: eta outside [0, 1]");
    if (modes < 2) throw validation_error("b_matrix: a single-mode chain has no bond structure");
    const AMatrix a = a_matrix(mode, modes, port, sigma, u);
    const double wpar = sigma ? std::sqrt(eta) : 1.0;
    const double wperp = sigma ? std::sqrt(1.0 - eta) : 1.0;

    // direct sum on the bond index only: a 1xK boundary row becomes 1x2K, a
    // Kx1 boundary column 2Kx1, a KxK interior block 2Kx2K
    const int rows = a.mat.rows, cols = a.mat.cols;
    const int row_off = rows == 1 ? 0 : rows;
    const int col_off = cols == 1 ? 0 : cols;
    BMatrix out{mode, modes, port, sigma, eta,
                ComplexMatrix(rows == 1 ? 1 : 2 * rows, cols == 1 ? 1 : 2 * cols)};
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            out.mat(r, c) = wpar * a.mat(r, c);
            out.mat(r + row_off, c + col_off) = wperp * a.mat(r, c);
        }
    return out;
}

/**
 * Coefficient of a-dagger_k in the symbolic augmented-vector product of the
 * single-photon chain, for every k. Must reproduce row `port` of u exactly;
 * this is the identity the whole operator basis rests on.
 */
inline std::vector<cplx> single_photon_row(const ComplexMatrix& u, int port) {
    if (port < 1 || port > u.rows) throw validation_error("single_photon_row: port out of range");
    const int m = u.cols;
    if (m == 1) return {u(port - 1, 0)};

    // symbol = (scalar, coeff of a-dagger_1, ..., a-dagger_M); the chain only
    // ever multiplies a symbol by a pure scalar, so no quadratic terms arise
    using Symbol = std::vector<cplx>;
    const auto scalar = [&](cplx v) { Symbol s(m + 1, 0.0); s[0] = v; return s; };
    const auto ladder = [&](int k, cplx v) { Symbol s(m + 1, 0.0); s[k] = v; return s; };
    const auto mul = [&](const Symbol& x, const Symbol& y) {
        bool xs = true, ys = true;
        for (int k = 1; k <= m; ++k) { xs = xs && x[k] == 0.0; ys = ys && y[k] == 0.0; }
        if (!xs && !ys) throw validation_error("single_photon_row: quadratic ladder term");
        Symbol out(m + 1, 0.0);
        if (xs) for (int k = 0; k <= m; ++k) out[k] = x[0] * y[k];
        else    for (int k = 0; k <= m; ++k) out[k] = y[0] * x[k];
        return out;
    };
    const auto add = [&](const Symbol& x, const Symbol& y) {
        Symbol out(m + 1);
        for (int k = 0; k <= m; ++k) out[k] = x[k] + y[k];
        return out;
    };

    // row vector (u^i_1 a-dag_1, 1)
    Symbol left = ladder(1, u(port - 1, 0));
    Symbol right = scalar(1.0);
    for (int k = 2; k < m; ++k) {
        // times [[1, 0], [u^i_k a-dag_k, 1]]
        Symbol nl = add(left, mul(right, ladder(k, u(port - 1, k - 1))));
        left = std::move(nl);
    }
    // times column (1, u^i_M a-dag_M)
    Symbol total = add(left, mul(right, ladder(m, u(port - 1, m - 1))));

    std::vector<cplx> row(m);
    for (int k = 1; k <= m; ++k) row[k - 1] = total[k];
    return row;
}

/**
 * All (row, col) index pairs with col a submask of row, in row-major order:
 * the nonzero pattern of the n-fold Kronecker product of lower-triangular
 * 2x2 blocks (a Sierpinski gasket). Count is exactly 3^n.
 */
inline std::vector<std::pair<std::uint64_t, std::uint64_t>> sierpinski_structure(int n) {
    if (n < 1) throw validation_error("sierpinski_structure: n must be >= 1");
    if (n > 20) throw guard_error("sierpinski_structure: n > 20");
    std::vector<std::pair<std::uint64_t, std::uint64_t>> out;
    double count = 1.0;
    for (int i = 0; i < n; ++i) count *= 3.0;
    out.reserve(static_cast<std::size_t>(count));
    for (std::uint64_t row = 0; row < (1ull << n); ++row)
        for_each_submask(row, [&](std::uint64_t col) { out.emplace_back(row, col); });
    return out;
}

/// One nonzero block of a multi-photon operator tensor: coefficient times
/// (a-dagger)^ladder_power, with ladder_power = popcount(row \ col).
struct OperatorTensorEntry {
    std::uint64_t row = 0;
    std::uint64_t col = 0;
    cplx coeff = 1.0;
    int ladder_power = 0;
};

struct OperatorTensor {
    int mode = 1;
    int photons = 0;
    std::vector<OperatorTensorEntry> entries; // sorted by (row, col)
};

/**
 * The 2^n x 2^n operator tensor of mode `mode` for the photons of i-bar.
 * Entry (row, col) exists iff col is a submask of row; its coefficient is
 * prod_{b in row\col} u^{i(b)}_mode and its ladder power popcount(row\col).
 * Bit order: least-significant bit corresponds to the LAST element of i-bar.
 *
 * With `power_filter` set, only entries of that ladder power are generated;
 * per row these are the popcount-p submasks of the row, so the full 3^n set
 * is never materialized.
 */
inline OperatorTensor assemble_operator_tensor(const ComplexMatrix& u,
                                               const std::vector<int>& input_ports,
                                               int mode,
                                               std::optional<int> power_filter = std::nullopt) {
    const int n = static_cast<int>(input_ports.size());
    if (n < 1 || n > 20) throw guard_error("assemble_operator_tensor: photons outside [1, 20]");
    if (mode < 1 || mode > u.cols) throw validation_error("assemble_operator_tensor: mode out of range");
    for (int p : input_ports)
        if (p < 1 || p > u.rows) throw validation_error("assemble_operator_tensor: port out of range");
    if (power_filter && (*power_filter < 0 || *power_filter > n))
        throw validation_error("assemble_operator_tensor: filter outside [0, n]");

    std::vector<cplx> bit_coeff(n);
    for (int b = 0; b < n; ++b)
        bit_coeff[b] = u(input_ports[n - 1 - b] - 1, mode - 1);

    const auto coeff_of = [&](std::uint64_t diff) {
        cplx c = 1.0;
        while (diff) {
            const int b = std::countr_zero(diff);
            diff &= diff - 1;
            c *= bit_coeff[b];
        }
        return c;
    };

    OperatorTensor out{mode, n, {}};
    if (!power_filter) {
        out.entries.reserve(static_cast<std::size_t>(std::pow(3.0, n)));
        for (std::uint64_t row = 0; row < (1ull << n); ++row) {
            for_each_submask(row, [&](std::uint64_t col) {
                const std::uint64_t diff = row & ~col;
                out.entries.push_back({row, col, coeff_of(diff), popcount(diff)});
            });
        }
        return out;
    }

    const int p = *power_filter;
    for (std::uint64_t row = 0; row < (1ull << n); ++row) {
        const int w = popcount(row);
        if (w < p) continue;
        // choose the raised bits among the set bits of the row
        const std::vector<int> bits = set_bits(row);
        std::vector<int> pick(p);
        for (int i = 0; i < p; ++i) pick[i] = i;
        while (true) {
            std::uint64_t diff = 0;
            for (int i = 0; i < p; ++i) diff |= 1ull << bits[pick[i]];
            out.entries.push_back({row, row & ~diff, coeff_of(diff), p});
            // next combination in lexicographic order
            int i = p - 1;
            while (i >= 0 && pick[i] == w - p + i) --i;
            if (i < 0) break;
            ++pick[i];
            for (int j = i + 1; j < p; ++j) pick[j] = pick[j - 1] + 1;
        }
    }
    std::sort(out.entries.begin(), out.entries.end(),
              [](const OperatorTensorEntry& x, const OperatorTensorEntry& y) {
                  return x.row != y.row ? x.row < y.row : x.col < y.col;
              });
    return out;
}

} // namespace bosonlines
