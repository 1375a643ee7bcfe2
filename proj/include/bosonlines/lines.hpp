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

#include <cstdint>
#include <utility>
#include <vector>

#include "bosonlines/bits.hpp"
#include "bosonlines/complex_matrix.hpp"
#include "bosonlines/errors.hpp"
#include "bosonlines/pattern.hpp"

namespace bosonlines {

/// Hard engine bound: the merge scratch is C(n, n/2) complex values.
inline constexpr int max_line_photons = 24;

/// Operation counters for one amplitude evaluation. pair_combinations counts
/// accumulated (mask-disjoint) component pairs; overlapping pairs annihilate
/// and are not counted.
struct MergeStats {
    std::uint64_t pair_combinations = 0;
    std::uint64_t scalar_multiplications = 0;
};

/// One arrangement of contributing photons: bit b set means photon
/// index (n-1-b) of i-bar contributes to this output mode.
struct Component {
    std::uint64_t mask = 0;
    cplx coeff = 0.0;
};

/**
 * The weight-homogeneous component set of one output mode: every stored mask
 * has popcount exactly `weight`. Components are kept in ascending mask order,
 * including numerically zero coefficients. The component set is structural,
 * which keeps operation counts independent of the matrix values.
 */
struct Line {
    int photons = 0;
    int weight = 0;
    std::vector<Component> comps;
};

/// Weight-0 neutral element of merging.
inline Line unit_line(int photons) {
    return {photons, 0, {Component{0, 1.0}}};
}

inline int photon_for_bit(int photons, int bit) { return photons - 1 - bit; }

/**
 * Line for output mode `mode` (1-based column of u) absorbing `weight`
 * photons: one component per mask s with popcount(s) = weight, coefficient
 * prod_{b in s} u(port(b), mode). No factorial scaling; normalization is
 * applied once at the amplitude level.
 */
inline Line make_line(const ComplexMatrix& u, const std::vector<int>& input_ports,
                      int mode, int weight) {
    const int n = static_cast<int>(input_ports.size());
    if (n > max_line_photons) throw guard_error("lines engine: more than 24 photons");
    if (mode < 1 || mode > u.cols) throw validation_error("make_line: mode out of range");
    if (weight < 0 || weight > n) throw validation_error("make_line: weight outside [0, n]");
    for (int p : input_ports)
        if (p < 1 || p > u.rows) throw validation_error("make_line: input port out of range");

    Line line{n, weight, {}};
    if (weight == 0) {
        line.comps.push_back({0, 1.0});
        return line;
    }
    line.comps.reserve(static_cast<std::size_t>(binom(n, weight)));
    const std::uint64_t limit = 1ull << n;
    for (std::uint64_t s = first_mask(weight); s < limit; s = next_mask_same_weight(s)) {
        cplx coeff = 1.0;
        std::uint64_t rest = s;
        while (rest) {
            const int b = std::countr_zero(rest);
            rest &= rest - 1;
            coeff *= u(input_ports[photon_for_bit(n, b)] - 1, mode - 1);
        }
        line.comps.push_back({s, coeff});
        if (s == limit - 1 || weight == n) break;
    }
    return line;
}

/**
 * Contraction of two lines. Weights add; coefficients of mask-disjoint pairs
 * multiply and accumulate at the OR of the masks; overlapping pairs vanish
 * by nilpotence. Accumulation goes through a dense rank-of-combination
 * scratch so each pair costs one multiply-add plus an O(n) rank.
 */
inline Line merge(const Line& a, const Line& b, MergeStats& stats) {
    if (a.photons != b.photons) throw validation_error("merge: photon counts disagree");
    const int n = a.photons;
    const int w = a.weight + b.weight;
    if (w > n) throw validation_error("merge: combined weight exceeds photon count");

    const std::size_t slots = static_cast<std::size_t>(binom(n, w));
    std::vector<cplx> acc(slots, 0.0);
    std::vector<unsigned char> hit(slots, 0);

    for (const Component& ca : a.comps) {
        for (const Component& cb : b.comps) {
            if (ca.mask & cb.mask) continue;
            const std::uint64_t target = ca.mask | cb.mask;
            const std::uint64_t r = comb_rank(target);
            acc[r] += ca.coeff * cb.coeff;
            hit[r] = 1;
            ++stats.pair_combinations;
            ++stats.scalar_multiplications;
        }
    }

    Line out{n, w, {}};
    std::size_t hits = 0;
    for (std::size_t i = 0; i < slots; ++i) hits += hit[i];
    out.comps.reserve(hits);
    if (w == 0) {
        if (hit[0]) out.comps.push_back({0, acc[0]});
        return out;
    }
    const std::uint64_t limit = 1ull << n;
    std::uint64_t r = 0;
    for (std::uint64_t s = first_mask(w); s < limit; s = next_mask_same_weight(s), ++r) {
        if (hit[r]) out.comps.push_back({s, acc[r]});
        if (s == limit - 1 || w == n) break;
    }
    return out;
}

/// n(2^{n-1} - 1): exact number of accumulated pairs when folding the n
/// weight-1 lines of an n x n permanent in sequence.
inline std::uint64_t predicted_pairs(int n) {
    if (n < 1 || n > 53) throw guard_error("predicted_pairs: n outside [1, 53]");
    return static_cast<std::uint64_t>(n) * ((1ull << (n - 1)) - 1);
}

/// n^2(2^{n-1} - 1): arithmetic-operation cost, n operations per pair.
inline std::uint64_t predicted_cost(int n) {
    if (n < 1 || n > 53) throw guard_error("predicted_cost: n outside [1, 53]");
    return static_cast<std::uint64_t>(n) * predicted_pairs(n);
}

/**
 * Permanent by sequential left-fold over columns-as-lines: each column of the
 * matrix is a fresh weight-1 line over the rows. The accumulated pair count
 * is exactly predicted_pairs(n) for every square matrix.
 */
inline cplx permanent_via_lines(const ComplexMatrix& m, MergeStats& stats) {
    if (!m.square()) throw validation_error("permanent_via_lines: matrix must be square");
    const int n = m.rows;
    if (n > max_line_photons) throw guard_error("permanent_via_lines: n > 24");
    if (n == 0) return 1.0;

    std::vector<int> rows_as_ports(n);
    for (int r = 0; r < n; ++r) rows_as_ports[r] = r + 1;

    Line acc = make_line(m, rows_as_ports, 1, 1);
    for (int j = 2; j <= n; ++j)
        acc = merge(acc, make_line(m, rows_as_ports, j, 1), stats);

    cplx value = 0.0;
    for (const Component& c : acc.comps) value += c.coeff; // single full-mask component
    return value;
}

namespace detail {

/// Merged full-mask coefficient of the per-mode lines, no normalization.
/// Works for any transfer matrix (rows = input ports, cols = modes).
inline cplx merged_monomial_coefficient(const ComplexMatrix& transfer,
                                        const std::vector<int>& input_ports,
                                        const std::vector<int>& occupations,
                                        MergeStats& stats) {
    const int n = static_cast<int>(input_ports.size());
    bool have = false;
    Line acc;
    for (int mode = 1; mode <= static_cast<int>(occupations.size()); ++mode) {
        const int w = occupations[mode - 1];
        if (w == 0) continue; // weight-0 lines are the neutral element
        Line next = make_line(transfer, input_ports, mode, w);
        acc = have ? merge(acc, next, stats) : std::move(next);
        have = true;
    }
    if (!have) return 1.0; // vacuum -> vacuum
    cplx value = 0.0;
    for (const Component& c : acc.comps)
        if (c.mask == (n >= 64 ? ~0ull : (1ull << n) - 1)) value += c.coeff;
    return value;
}

} // namespace detail

/**
 * Amplitude <n-bar|U|i-bar> between NORMALIZED Fock states. Equals
 * per(submatrix(u, pattern)) / sqrt(prod_k n_k! prod_i m_i!); computed here
 * as the merged line coefficient times sqrt(prod_k n_k!) / sqrt(prod_i m_i!).
 */
inline cplx fock_amplitude(const ComplexMatrix& transfer, const OccupationPattern& pattern,
                           MergeStats& stats) {
    validate_pattern(pattern, transfer.cols);
    const int n = pattern.photons();
    if (n > max_line_photons) throw guard_error("fock_amplitude: more than 24 photons");
    if (n == 0) return 1.0;
    const cplx w = detail::merged_monomial_coefficient(transfer, pattern.input_ports,
                                                       pattern.output_occupations, stats);
    return w * std::sqrt(occupation_factorial(pattern.output_occupations) /
                         input_multiplicity_factorial(pattern.input_ports));
}

inline cplx fock_amplitude(const UnitaryMatrix& u, const OccupationPattern& pattern,
                           MergeStats& stats) {
    return fock_amplitude(u.mat, pattern, stats);
}

} // namespace bosonlines
