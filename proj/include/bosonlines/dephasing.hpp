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
#include <thread>
#include <vector>

#include "bosonlines/complex_matrix.hpp"
#include "bosonlines/errors.hpp"
#include "bosonlines/lines.hpp"
#include "bosonlines/pattern.hpp"
#include "bosonlines/rng.hpp"
#include "bosonlines/unitary.hpp"

namespace bosonlines {

/// Per-mode random phases: wrapped Gaussian of width sigma, or uniform on
/// [0, 2*pi) when the flag is set.
struct PhaseNoise {
    double sigma = 0.0;
    bool uniform = false;
};

/// Where the random phase layer sits relative to the circuit. "between"
/// requires a second channel and models U, then phases, then V.
enum class PhasePlacement { after, before, between };

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    std::uint64_t samples = 0;
};

namespace detail {

inline void scale_columns(ComplexMatrix& m, const std::vector<cplx>& d) {
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) m(r, c) *= d[c];
}

inline void scale_rows(ComplexMatrix& m, const std::vector<cplx>& d) {
    for (int r = 0; r < m.rows; ++r)
        for (int c = 0; c < m.cols; ++c) m(r, c) *= d[r];
}

inline ComplexMatrix dephased_matrix(const ComplexMatrix& u, const ComplexMatrix* second,
                                     PhasePlacement placement, const std::vector<cplx>& d) {
    switch (placement) {
    case PhasePlacement::after: { // output-side phases: column scaling
        ComplexMatrix out = u;
        scale_columns(out, d);
        return out;
    }
    case PhasePlacement::before: { // input-side phases: row scaling
        ComplexMatrix out = u;
        scale_rows(out, d);
        return out;
    }
    case PhasePlacement::between: {
        ComplexMatrix out = u;
        scale_columns(out, d);
        return out * *second;
    }
    }
    throw validation_error("dephased_matrix: unknown placement");
}

} // namespace detail

/**
 * Monte Carlo average of the detection probability over i.i.d. diagonal
 * phase layers. Deterministic for a fixed seed: sample s draws its phases
 * from an independent substream (seed, s), and the reduction order is fixed
 * regardless of the worker count. Zero noise short-circuits to the ideal
 * probability with zero error.
 */
inline MonteCarloEstimate dephase_probability(const UnitaryMatrix& u, const OccupationPattern& pattern,
                                              const PhaseNoise& noise, std::uint64_t samples,
                                              std::uint64_t seed, PhasePlacement placement,
                                              const UnitaryMatrix* second, unsigned threads,
                                              MergeStats& stats) {
    if (samples < 1) throw validation_error("dephase_probability: samples must be >= 1");
    if (placement == PhasePlacement::between && second == nullptr)
        throw validation_error("dephase_probability: between placement needs a second channel");
    if (second && second->dim() != u.dim())
        throw validation_error("dephase_probability: channel dimensions disagree");
    const int m = u.dim();
    validate_pattern(pattern, m);

    if (!noise.uniform && noise.sigma == 0.0) {
        ComplexMatrix eff = placement == PhasePlacement::between ? u.mat * second->mat : u.mat;
        const double p = std::norm(fock_amplitude(eff, pattern, stats));
        return {p, 0.0, samples};
    }

    std::vector<double> vals(samples);
    const auto worker = [&](std::uint64_t lo, std::uint64_t hi) {
        MergeStats local;
        std::vector<cplx> d(m);
        for (std::uint64_t s = lo; s < hi; ++s) {
            Prng rng = Prng::stream(seed, s);
            for (int k = 0; k < m; ++k) {
                const double phi = noise.uniform ? rng.phase() : noise.sigma * rng.gaussian();
                d[k] = std::polar(1.0, phi);
            }
            const ComplexMatrix eff =
                detail::dephased_matrix(u.mat, second ? &second->mat : nullptr, placement, d);
            vals[s] = std::norm(fock_amplitude(eff, pattern, local));
        }
        return local;
    };

    if (threads <= 1 || samples < 64) {
        const MergeStats local = worker(0, samples);
        stats.pair_combinations += local.pair_combinations;
        stats.scalar_multiplications += local.scalar_multiplications;
    } else {
        const unsigned nw = std::min<std::uint64_t>(threads, samples);
        std::vector<std::thread> pool;
        std::vector<MergeStats> locals(nw);
        const std::uint64_t chunk = (samples + nw - 1) / nw;
        for (unsigned t = 0; t < nw; ++t) {
            const std::uint64_t lo = t * chunk;
            const std::uint64_t hi = std::min<std::uint64_t>(samples, lo + chunk);
            pool.emplace_back([&, t, lo, hi] { locals[t] = worker(lo, hi); });
        }
        for (std::thread& th : pool) th.join();
        for (const MergeStats& l : locals) {
            stats.pair_combinations += l.pair_combinations;
            stats.scalar_multiplications += l.scalar_multiplications;
        }
    }

    double mean = 0.0;
    for (double v : vals) mean += v;
    mean /= static_cast<double>(samples);
    double var = 0.0;
    for (double v : vals) var += (v - mean) * (v - mean);
    const double std_error =
        samples > 1 ? std::sqrt(var / (static_cast<double>(samples) * (samples - 1.0))) : 0.0;
    return {mean, std_error, samples};
}

} // namespace bosonlines
