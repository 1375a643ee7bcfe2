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
#include <map>
#include <vector>

#include "bosonlines/errors.hpp"
#include "bosonlines/lines.hpp"
#include "bosonlines/oracles.hpp"
#include "bosonlines/pattern.hpp"
#include "bosonlines/unitary.hpp"

namespace bosonlines {

/// One eta in [0, 1] per input photon; eta = 1 is perfect indistinguishability
/// from the shared reference internal state, eta = 0 the shared orthogonal one.
struct DistinguishabilitySpec {
    std::vector<double> eta;
};

/// Bit j set <=> photon j (index into i-bar) occupies the orthogonal sector.
struct SectorAssignment {
    std::uint64_t mask = 0;
};

namespace detail {

/// Splits of `total` photons into per-mode counts bounded by `bound`.
inline void enumerate_bounded_splits(const std::vector<int>& bound, int total,
                                     std::vector<int>& current, std::size_t k,
                                     std::vector<std::vector<int>>& out) {
    if (k == bound.size()) {
        if (total == 0) out.push_back(current);
        return;
    }
    const int hi = std::min(bound[k], total);
    for (int v = 0; v <= hi; ++v) {
        current[k] = v;
        enumerate_bounded_splits(bound, total - v, current, k + 1, out);
    }
    current[k] = 0;
}

} // namespace detail

/**
 * Detection probability for partially distinguishable photons in the
 * dichotomic internal-state model: photon j carries
 * sqrt(eta_j)|par> + sqrt(1-eta_j)|perp>, both species evolve through the
 * same interferometer, and detectors count photons per mode without
 * resolving the species.
 *
 * Sector masks of equal weight land in the same doubled-Fock output states
 * and therefore interfere: amplitudes are summed coherently per
 * species-resolved output split and incoherently across splits. The input
 * norm is the permanent of the internal-state Gram matrix (1 for distinct
 * ports, prod m_i! in the all-equal-eta limits).
 */
inline double distinguishable_probability(const UnitaryMatrix& u, const OccupationPattern& pattern,
                                          const DistinguishabilitySpec& spec, MergeStats& stats) {
    validate_pattern(pattern, u.dim());
    const int n = pattern.photons();
    if (n > 20) throw guard_error("distinguishable_probability: more than 20 photons");
    if (static_cast<int>(spec.eta.size()) != n)
        throw validation_error("distinguishable_probability: one eta per photon required");
    for (double e : spec.eta)
        if (e < 0.0 || e > 1.0) throw validation_error("distinguishable_probability: eta outside [0, 1]");
    if (n == 0) return 1.0;

    // input-state norm^2 = per(Gram) of the single-photon overlaps
    ComplexMatrix gram(n, n);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            if (pattern.input_ports[j] != pattern.input_ports[k]) continue;
            gram(j, k) = std::sqrt(spec.eta[j] * spec.eta[k]) +
                         std::sqrt((1.0 - spec.eta[j]) * (1.0 - spec.eta[k]));
        }
    const double norm2 = ryser_permanent(gram).real();

    // coherent accumulation per species-resolved split, keyed by the
    // parallel-sector occupations (mask weight fixes the split photon count,
    // so keys never collide across weights)
    std::map<std::vector<int>, cplx> amp;
    std::vector<std::vector<int>> splits;
    std::vector<int> scratch(u.dim(), 0);

    for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
        double c_mask = 1.0;
        for (int j = 0; j < n; ++j)
            c_mask *= (mask >> j) & 1 ? std::sqrt(1.0 - spec.eta[j]) : std::sqrt(spec.eta[j]);
        if (c_mask == 0.0) continue;

        std::vector<int> par_ports, perp_ports;
        for (int j = 0; j < n; ++j)
            ((mask >> j) & 1 ? perp_ports : par_ports).push_back(pattern.input_ports[j]);

        splits.clear();
        detail::enumerate_bounded_splits(pattern.output_occupations,
                                         static_cast<int>(par_ports.size()), scratch, 0, splits);
        for (const std::vector<int>& par_occ : splits) {
            std::vector<int> perp_occ(u.dim());
            for (int k = 0; k < u.dim(); ++k)
                perp_occ[k] = pattern.output_occupations[k] - par_occ[k];
            const cplx w_par = detail::merged_monomial_coefficient(u.mat, par_ports, par_occ, stats);
            const cplx w_perp = detail::merged_monomial_coefficient(u.mat, perp_ports, perp_occ, stats);
            amp[par_occ] += c_mask * w_par * w_perp;
        }
    }

    double prob = 0.0;
    for (const auto& [par_occ, a] : amp) {
        double fact = 1.0;
        for (int k = 0; k < u.dim(); ++k) {
            fact *= factorial(par_occ[k]);
            fact *= factorial(pattern.output_occupations[k] - par_occ[k]);
        }
        prob += std::norm(a) * fact;
    }
    return prob / norm2;
}

} // namespace bosonlines
