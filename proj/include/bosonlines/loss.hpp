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
#include <utility>
#include <vector>

#include "bosonlines/bits.hpp"
#include "bosonlines/complex_matrix.hpp"
#include "bosonlines/errors.hpp"
#include "bosonlines/lines.hpp"
#include "bosonlines/pattern.hpp"
#include "bosonlines/unitary.hpp"

namespace bosonlines {

/**
 * Rectangular M x (M+1) transfer matrix of a lossy interferometer:
 * u^i_j -> lambda^i_j u^i_j on the physical columns, and a loss column whose
 * magnitudes are the row-norm deficits, |u~^i_{M+1}|^2 = 1 - sum_j |u~^i_j|^2.
 * The deficit only fixes a magnitude; the phase is set to 0 because lost photons
 * are traced out, so it is unobservable in conditioned probabilities.
 */
struct LossyMatrix {
    ComplexMatrix mat; // M rows, M+1 columns

    int modes() const { return mat.rows; }
    int loss_column() const { return mat.cols; } // 1-based mode index M+1
};

inline LossyMatrix extend_with_loss(const UnitaryMatrix& u, const ComplexMatrix& weights) {
    const int m = u.dim();
    if (weights.rows != m || weights.cols != m)
        throw validation_error("extend_with_loss: weights must be M x M");
    for (const cplx& w : weights.a)
        if (std::abs(w) > 1.0 + 1e-12)
            throw validation_error("extend_with_loss: |lambda| must be <= 1");

    LossyMatrix out{ComplexMatrix(m, m + 1)};
    for (int i = 0; i < m; ++i) {
        double deficit = 1.0;
        for (int j = 0; j < m; ++j) {
            const cplx v = weights(i, j) * u.mat(i, j);
            out.mat(i, j) = v;
            deficit -= std::norm(v);
        }
        if (deficit < -1e-12)
            throw validation_error("extend_with_loss: invalid weights, row " + std::to_string(i + 1) +
                                   " deficit " + std::to_string(deficit));
        out.mat(i, m) = std::sqrt(std::max(deficit, 0.0));
    }
    return out;
}

inline LossyMatrix extend_with_loss(const UnitaryMatrix& u, double lambda) {
    ComplexMatrix w(u.dim(), u.dim());
    for (cplx& v : w.a) v = lambda;
    return extend_with_loss(u, w);
}

/**
 * Amplitude with n_lost photons routed into the loss mode: merges the
 * detected-mode lines, then contracts with the weight-n_lost loss line.
 * Every surviving component fixes the complementary lost mask uniquely, so
 * the final step is a single lookup per component.
 *
 * Normalization: merged coefficient times sqrt(prod_k n_k!) / sqrt(prod m_i!),
 * with no factor for the lost photons, which are unresolved, not a bunched
 * Fock mode. Reduces to fock_amplitude at n_lost = 0.
 */
inline cplx lossy_amplitude(const LossyMatrix& lossy, const OccupationPattern& pattern,
                            int n_lost, MergeStats& stats) {
    const int m = lossy.modes();
    validate_pattern(pattern, m, /*allow_deficit=*/true);
    const int n = pattern.photons();
    if (n > max_line_photons) throw guard_error("lossy_amplitude: more than 24 photons");
    if (n_lost < 0 || pattern.detected() + n_lost != n)
        throw validation_error("lossy_amplitude: detected + lost must equal the photon count");
    if (n == 0) return 1.0;

    const std::uint64_t full = (1ull << n) - 1;
    cplx w = 0.0;
    if (pattern.detected() == 0) {
        const Line loss = make_line(lossy.mat, pattern.input_ports, lossy.loss_column(), n_lost);
        for (const Component& c : loss.comps)
            if (c.mask == full) w += c.coeff;
    } else {
        bool have = false;
        Line acc;
        for (int mode = 1; mode <= m; ++mode) {
            const int occ = pattern.output_occupations[mode - 1];
            if (occ == 0) continue;
            Line next = make_line(lossy.mat, pattern.input_ports, mode, occ);
            acc = have ? merge(acc, next, stats) : std::move(next);
            have = true;
        }
        if (n_lost == 0) {
            for (const Component& c : acc.comps)
                if (c.mask == full) w += c.coeff;
        } else {
            // rank-indexed loss coefficients; complement lookup per component
            const Line loss = make_line(lossy.mat, pattern.input_ports, lossy.loss_column(), n_lost);
            std::vector<cplx> by_rank(static_cast<std::size_t>(binom(n, n_lost)), 0.0);
            for (const Component& c : loss.comps) by_rank[comb_rank(c.mask)] = c.coeff;
            for (const Component& c : acc.comps) {
                w += c.coeff * by_rank[comb_rank(full & ~c.mask)];
                ++stats.pair_combinations;
                ++stats.scalar_multiplications;
            }
        }
    }
    return w * std::sqrt(occupation_factorial(pattern.output_occupations) /
                         input_multiplicity_factorial(pattern.input_ports));
}

/// Arithmetic-operation count for an amplitude conditioned on n_lost photons
/// lost: n^2 * sum_{i=1}^{n-n_lost} C(n-1, i). Always below n^2 2^n.
inline std::uint64_t lossy_cost(int n, int n_lost) {
    if (n < 1 || n > 53) throw guard_error("lossy_cost: n outside [1, 53]");
    if (n_lost < 0 || n_lost > n) throw validation_error("lossy_cost: n_lost outside [0, n]");
    std::uint64_t sum = 0;
    for (int i = 1; i <= n - n_lost; ++i) sum += binom(n - 1, i);
    return static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n) * sum;
}

/// Points (fraction_lost, c_L/c) for n_lost = 0..n; monotone nonincreasing,
/// with the steepest drop near 50% loss.
inline std::vector<std::pair<double, double>> loss_ratio_curve(int n) {
    if (n < 2) throw validation_error("loss_ratio_curve: n must be >= 2");
    const double c = static_cast<double>(predicted_cost(n));
    std::vector<std::pair<double, double>> out;
    out.reserve(static_cast<std::size_t>(n) + 1);
    for (int k = 0; k <= n; ++k)
        out.emplace_back(static_cast<double>(k) / n, static_cast<double>(lossy_cost(n, k)) / c);
    return out;
}

} // namespace bosonlines
