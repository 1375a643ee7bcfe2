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
#include <bit>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

#include "bosonlines/bits.hpp"
#include "bosonlines/complex_matrix.hpp"
#include "bosonlines/errors.hpp"
#include "bosonlines/pattern.hpp"

namespace bosonlines {

// Reference implementations kept deliberately simple; they exist to validate
// the lines engine at desk scale and are guarded accordingly.

/// Permutation-sum permanent, O(n * n!). Guard: n <= 10.
inline cplx naive_permanent(const ComplexMatrix& m) {
    if (!m.square()) throw validation_error("naive_permanent: matrix must be square");
    const int n = m.rows;
    if (n > 10) throw guard_error("naive_permanent: n > 10");
    if (n == 0) return 1.0;
    std::vector<int> sigma(n);
    std::iota(sigma.begin(), sigma.end(), 0);
    cplx sum = 0.0;
    do {
        cplx prod = 1.0;
        for (int i = 0; i < n; ++i) prod *= m(i, sigma[i]);
        sum += prod;
    } while (std::next_permutation(sigma.begin(), sigma.end()));
    return sum;
}

/**
 * Ryser's inclusion-exclusion permanent with Gray-code column updates,
 * O(n 2^n). Guard: n <= 30.
 */
inline cplx ryser_permanent(const ComplexMatrix& m) {
    if (!m.square()) throw validation_error("ryser_permanent: matrix must be square");
    const int n = m.rows;
    if (n > 30) throw guard_error("ryser_permanent: n > 30");
    if (n == 0) return 1.0;

    std::vector<cplx> rowsum(n, 0.0);
    cplx total = 0.0;
    std::uint64_t gray = 0;
    for (std::uint64_t k = 1; k < (1ull << n); ++k) {
        const int j = std::countr_zero(k);
        const std::uint64_t next = k ^ (k >> 1);
        const bool added = next & (1ull << j);
        for (int i = 0; i < n; ++i)
            rowsum[i] += added ? m(i, j) : -m(i, j);
        gray = next;
        cplx prod = 1.0;
        for (int i = 0; i < n; ++i) prod *= rowsum[i];
        total += (popcount(gray) % 2 == 0 ? 1.0 : -1.0) * prod;
    }
    const double sign = (n % 2 == 0) ? 1.0 : -1.0;
    return sign * total;
}

/// Dense state over `modes` truncated bosonic modes, little-endian mixed
/// radix: index = sum_k n_k * cutoff^k, each n_k in [0, cutoff).
struct FockStateVector {
    int modes = 0;
    int cutoff = 1;
    int photons = 0;
    std::vector<cplx> amp;

    std::size_t index_of(const std::vector<int>& occ) const {
        std::size_t idx = 0, stride = 1;
        for (int k = 0; k < modes; ++k) {
            idx += static_cast<std::size_t>(occ[k]) * stride;
            stride *= static_cast<std::size_t>(cutoff);
        }
        return idx;
    }

    cplx amplitude(const std::vector<int>& occ) const { return amp[index_of(occ)]; }

    double norm() const {
        double s = 0.0;
        for (const cplx& v : amp) s += std::norm(v);
        return std::sqrt(s);
    }
};

namespace detail {

/// Applies sum_k c_k a^dag_k to a dense state. Raising past the cutoff on a
/// nonzero amplitude is an error, never a silent truncation.
inline void apply_creation(FockStateVector& st, const std::vector<cplx>& coeffs) {
    std::vector<cplx> out(st.amp.size(), 0.0);
    std::size_t stride = 1;
    for (int k = 0; k < st.modes; ++k) {
        const cplx c = coeffs[k];
        if (c != 0.0) {
            for (std::size_t idx = 0; idx < st.amp.size(); ++idx) {
                const cplx v = st.amp[idx];
                if (v == 0.0) continue;
                const int nk = static_cast<int>((idx / stride) % st.cutoff);
                if (nk + 1 >= st.cutoff)
                    throw validation_error("dense evolution: cutoff too small for the photon number");
                out[idx + stride] += c * std::sqrt(static_cast<double>(nk + 1)) * v;
            }
        }
        stride *= static_cast<std::size_t>(st.cutoff);
    }
    st.amp = std::move(out);
    ++st.photons;
}

/// Evolves prod_j (sum_k coeffs[j][k] a^dag_k) applied to vacuum.
inline FockStateVector evolve_from_vacuum(int modes, int cutoff,
                                          const std::vector<std::vector<cplx>>& coeffs) {
    double size = 1.0;
    for (int k = 0; k < modes; ++k) size *= cutoff;
    if (size > double(1 << 22)) throw guard_error("dense evolution: state space too large");
    FockStateVector st;
    st.modes = modes;
    st.cutoff = cutoff;
    st.amp.assign(static_cast<std::size_t>(size), 0.0);
    st.amp[0] = 1.0;
    for (const auto& c : coeffs) apply_creation(st, c);
    return st;
}

} // namespace detail

/**
 * Exact evolution of the (normalized) input Fock state built from i-bar
 * through the linear transfer matrix, constructed by applying the evolved
 * creation operators to vacuum one photon at a time. The transfer matrix
 * may be rectangular (rows = input ports, columns = output modes); a unitary
 * matrix preserves the norm, a lossy rectangular extension does not have to.
 *
 * The returned amplitudes are taken against normalized output Fock states.
 * Guards: n <= 4 photons, <= 5 modes, cutoff >= n + 1.
 */
inline FockStateVector dense_fock_evolution(const ComplexMatrix& transfer,
                                            const std::vector<int>& input_ports,
                                            int cutoff) {
    const int n = static_cast<int>(input_ports.size());
    const int modes = transfer.cols;
    if (n > 4) throw guard_error("dense_fock_evolution: more than 4 photons");
    if (modes > 5) throw guard_error("dense_fock_evolution: more than 5 modes");
    if (cutoff < n + 1) throw validation_error("dense_fock_evolution: cutoff must be >= n + 1");
    for (int p : input_ports)
        if (p < 1 || p > transfer.rows)
            throw validation_error("dense_fock_evolution: input port out of range");

    std::vector<std::vector<cplx>> coeffs;
    coeffs.reserve(input_ports.size());
    for (int p : input_ports) {
        std::vector<cplx> row(modes);
        for (int k = 0; k < modes; ++k) row[k] = transfer(p - 1, k);
        coeffs.push_back(std::move(row));
    }
    FockStateVector st = detail::evolve_from_vacuum(modes, cutoff, coeffs);
    const double norm_in = std::sqrt(input_multiplicity_factorial(input_ports));
    for (cplx& v : st.amp) v /= norm_in;
    return st;
}

/**
 * Two-species oracle for partial distinguishability: each photon j enters
 * port i_j in the internal state sqrt(eta_j)|par> + sqrt(1-eta_j)|perp>, the
 * interferometer acts identically on both species (2M-mode evolution), and
 * detection counts photons per mode without resolving the species. Returns
 * P(n-bar) for every output occupation. Guards: n <= 3, M <= 4.
 */
inline std::map<std::vector<int>, double> two_species_fock_evolution(
    const ComplexMatrix& u, const std::vector<int>& input_ports,
    const std::vector<double>& eta, int cutoff) {
    const int n = static_cast<int>(input_ports.size());
    const int m = u.cols;
    if (n > 3) throw guard_error("two_species_fock_evolution: more than 3 photons");
    if (m > 4) throw guard_error("two_species_fock_evolution: more than 4 modes");
    if (static_cast<int>(eta.size()) != n)
        throw validation_error("two_species_fock_evolution: one eta per photon required");
    if (cutoff < n + 1) throw validation_error("two_species_fock_evolution: cutoff must be >= n + 1");
    for (double e : eta)
        if (e < 0.0 || e > 1.0) throw validation_error("two_species_fock_evolution: eta outside [0, 1]");
    for (int p : input_ports)
        if (p < 1 || p > u.rows) throw validation_error("two_species_fock_evolution: port out of range");

    // modes [0, m) carry the parallel species, [m, 2m) the orthogonal one
    std::vector<std::vector<cplx>> coeffs;
    coeffs.reserve(input_ports.size());
    for (int j = 0; j < n; ++j) {
        std::vector<cplx> row(2 * m, 0.0);
        const double se = std::sqrt(eta[j]);
        const double so = std::sqrt(1.0 - eta[j]);
        for (int k = 0; k < m; ++k) {
            row[k] = se * u(input_ports[j] - 1, k);
            row[m + k] = so * u(input_ports[j] - 1, k);
        }
        coeffs.push_back(std::move(row));
    }
    FockStateVector st = detail::evolve_from_vacuum(2 * m, cutoff, coeffs);

    // normalize by the input-state norm; evolution is unitary on 2M modes,
    // so the evolved norm equals it
    const double nrm = st.norm();
    if (nrm == 0.0) throw validation_error("two_species_fock_evolution: vanishing state norm");

    // seed every occupation with sum n so that exact zeros are reported too
    std::map<std::vector<int>, double> prob;
    {
        std::vector<int> occ(m, 0);
        const auto seed_rec = [&](auto&& self, int k, int rest) -> void {
            if (k == m - 1) {
                occ[k] = rest;
                prob[occ] = 0.0;
                return;
            }
            for (int v = 0; v <= rest; ++v) {
                occ[k] = v;
                self(self, k + 1, rest - v);
            }
        };
        seed_rec(seed_rec, 0, n);
    }

    std::vector<int> occ(2 * m);
    for (std::size_t idx = 0; idx < st.amp.size(); ++idx) {
        const double p2 = std::norm(st.amp[idx] / nrm);
        if (p2 == 0.0) continue;
        std::size_t rem = idx;
        for (int k = 0; k < 2 * m; ++k) {
            occ[k] = static_cast<int>(rem % st.cutoff);
            rem /= st.cutoff;
        }
        std::vector<int> detected(m);
        for (int k = 0; k < m; ++k) detected[k] = occ[k] + occ[m + k];
        prob[detected] += p2;
    }
    return prob;
}

} // namespace bosonlines
