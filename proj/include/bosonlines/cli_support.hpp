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

#include <cctype>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "bosonlines/dephasing.hpp"
#include "bosonlines/distinguishability.hpp"
#include "bosonlines/fock_tensor.hpp"
#include "bosonlines/lines.hpp"
#include "bosonlines/loss.hpp"
#include "bosonlines/matrix_io.hpp"
#include "bosonlines/oracles.hpp"
#include "bosonlines/pattern.hpp"
#include "bosonlines/report.hpp"
#include "bosonlines/rng.hpp"
#include "bosonlines/unitary.hpp"

// Command implementations shared by the CLI front end and the test suites.
// The CLI surface speaks 1-based ports (converted here at the boundary) and
// the pattern syntaxes "--in 1,2,3", "--out 1:1,3:1" and "--out-occ 1,0,1".

namespace bosonlines::cli {

inline std::vector<long long> parse_integers(const std::string& text, const char* what) {
    std::vector<long long> out;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stoll(token, &used));
            while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) ++used;
            if (used != token.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw parse_error(std::string(what) + ": cannot parse integer '" + token + "'");
        }
    }
    if (out.empty()) throw parse_error(std::string(what) + ": empty list");
    return out;
}

inline std::vector<int> parse_port_list(const std::string& text) {
    std::vector<int> out;
    for (long long v : parse_integers(text, "port list")) out.push_back(static_cast<int>(v));
    return out;
}

inline std::vector<double> parse_double_list(const std::string& text, const char* what) {
    std::vector<double> out;
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(token, &used));
            while (used < token.size() && std::isspace(static_cast<unsigned char>(token[used]))) ++used;
            if (used != token.size()) throw std::invalid_argument("trailing characters");
        } catch (const std::exception&) {
            throw parse_error(std::string(what) + ": cannot parse number '" + token + "'");
        }
    }
    if (out.empty()) throw parse_error(std::string(what) + ": empty list");
    return out;
}

/// "1:1,3:2" -> occupation vector over M modes.
inline std::vector<int> parse_out_pairs(const std::string& text, int modes) {
    std::vector<int> occ(modes, 0);
    std::string token;
    std::istringstream in(text);
    while (std::getline(in, token, ',')) {
        const std::size_t colon = token.find(':');
        if (colon == std::string::npos)
            throw parse_error("output pattern: expected port:count, got '" + token + "'");
        int port = 0, count = 0;
        try {
            port = std::stoi(token.substr(0, colon));
            count = std::stoi(token.substr(colon + 1));
        } catch (const std::exception&) {
            throw parse_error("output pattern: cannot parse '" + token + "'");
        }
        if (port < 1 || port > modes)
            throw validation_error("output pattern: port " + std::to_string(port) + " outside [1, " +
                                   std::to_string(modes) + "]");
        if (count < 0) throw validation_error("output pattern: negative count");
        occ[port - 1] += count;
    }
    return occ;
}

inline OccupationPattern make_pattern(const std::string& in, const std::string& out_pairs,
                                      const std::string& out_occ, int modes) {
    OccupationPattern p;
    p.input_ports = parse_port_list(in);
    if (!out_pairs.empty() && !out_occ.empty())
        throw validation_error("give either --out or --out-occ, not both");
    if (!out_pairs.empty()) {
        p.output_occupations = parse_out_pairs(out_pairs, modes);
    } else if (!out_occ.empty()) {
        std::vector<int> occ;
        for (long long v : parse_integers(out_occ, "occupation list")) occ.push_back(static_cast<int>(v));
        if (static_cast<int>(occ.size()) != modes)
            throw validation_error("occupation list must have exactly M entries");
        p.output_occupations = std::move(occ);
    } else {
        throw validation_error("an output pattern is required (--out or --out-occ)");
    }
    return p;
}

/// n x n complex Gaussian test matrix, the standard benchmark input.
inline ComplexMatrix gaussian_matrix(int n, std::uint64_t seed) {
    Prng rng(seed);
    ComplexMatrix out(n, n);
    for (cplx& v : out.a) v = cplx(rng.gaussian(), rng.gaussian());
    return out;
}

inline RunReport run_amplitude(const UnitaryMatrix& u, const OccupationPattern& pattern,
                               bool probability_only, bool with_oracle) {
    WallTimer timer;
    RunReport r;
    r.command = probability_only ? "probability" : "amplitude";
    r.algorithm = "lines";
    const cplx amp = fock_amplitude(u, pattern, r.stats);
    if (probability_only)
        r.probability = std::norm(amp);
    else
        r.amplitude = amp;
    const int n = pattern.photons();
    if (n >= 1) {
        r.predicted_pairs = predicted_pairs(n);
        r.predicted_cost = predicted_cost(n);
    }
    r.digest = input_digest(u.mat, pattern.input_ports, pattern.output_occupations);
    if (with_oracle) {
        const FockStateVector st = dense_fock_evolution(u.mat, pattern.input_ports, n + 1);
        const cplx ref = st.amplitude(pattern.output_occupations);
        if (std::abs(ref - amp) > 1e-9)
            throw validation_error("oracle cross-check failed: lines " + std::to_string(std::abs(amp)) +
                                   " vs dense " + std::to_string(std::abs(ref)));
    }
    r.wall_ns = timer.elapsed_ns();
    return r;
}

inline RunReport run_permanent(const ComplexMatrix& m, const std::string& algo) {
    WallTimer timer;
    RunReport r;
    r.command = "permanent";
    r.algorithm = algo;
    cplx value;
    if (algo == "naive")
        value = naive_permanent(m);
    else if (algo == "ryser")
        value = ryser_permanent(m);
    else if (algo == "lines")
        value = permanent_via_lines(m, r.stats);
    else
        throw validation_error("unknown permanent algorithm '" + algo + "'");
    r.amplitude = value;
    if (algo == "lines" && m.rows >= 1) {
        r.predicted_pairs = predicted_pairs(m.rows);
        r.predicted_cost = predicted_cost(m.rows);
    }
    r.digest = input_digest(m, {}, {});
    r.wall_ns = timer.elapsed_ns();
    return r;
}

inline RunReport run_lossy(const LossyMatrix& lossy, const OccupationPattern& pattern, int n_lost) {
    WallTimer timer;
    RunReport r;
    r.command = "lossy";
    r.algorithm = "lines";
    const cplx amp = lossy_amplitude(lossy, pattern, n_lost, r.stats);
    r.amplitude = amp;
    r.probability = std::norm(amp);
    const int n = pattern.photons();
    if (n >= 1) {
        r.predicted_pairs = predicted_pairs(n);
        r.predicted_cost = predicted_cost(n);
        r.predicted_cost_lossy = lossy_cost(n, n_lost);
    }
    r.digest = input_digest(lossy.mat, pattern.input_ports, pattern.output_occupations);
    r.wall_ns = timer.elapsed_ns();
    return r;
}

inline RunReport run_distinguish(const UnitaryMatrix& u, const OccupationPattern& pattern,
                                 const DistinguishabilitySpec& spec) {
    WallTimer timer;
    RunReport r;
    r.command = "distinguish";
    r.algorithm = "lines";
    r.probability = distinguishable_probability(u, pattern, spec, r.stats);
    r.digest = input_digest(u.mat, pattern.input_ports, pattern.output_occupations);
    r.wall_ns = timer.elapsed_ns();
    return r;
}

inline RunReport run_dephase(const UnitaryMatrix& u, const OccupationPattern& pattern,
                             const PhaseNoise& noise, std::uint64_t samples, std::uint64_t seed,
                             PhasePlacement placement, const UnitaryMatrix* second,
                             unsigned threads) {
    WallTimer timer;
    RunReport r;
    r.command = "dephase";
    r.algorithm = "monte-carlo";
    const MonteCarloEstimate est =
        dephase_probability(u, pattern, noise, samples, seed, placement, second, threads, r.stats);
    r.probability = est.mean;
    r.std_error = est.std_error;
    r.seed = seed;
    r.digest = input_digest(u.mat, pattern.input_ports, pattern.output_occupations);
    r.wall_ns = timer.elapsed_ns();
    return r;
}

/// CSV columns: n, measured_pairs, predicted_pairs (= n(2^{n-1}-1)),
/// predicted_cost (= n^2(2^{n-1}-1)), wall_ns.
inline std::string bench_csv(int n_min, int n_max, std::uint64_t seed) {
    if (n_min < 1 || n_max < n_min) throw validation_error("bench: need 1 <= n_min <= n_max");
    if (n_max > max_line_photons) throw guard_error("bench: n_max > 24");
    std::ostringstream out;
    out << "n,measured_pairs,predicted_pairs,predicted_cost,wall_ns\n";
    for (int n = n_min; n <= n_max; ++n) {
        const ComplexMatrix m = gaussian_matrix(n, seed + static_cast<std::uint64_t>(n));
        MergeStats stats;
        WallTimer timer;
        (void)permanent_via_lines(m, stats);
        const std::uint64_t wall = timer.elapsed_ns();
        out << n << ',' << stats.pair_combinations << ',' << predicted_pairs(n) << ','
            << predicted_cost(n) << ',' << wall << '\n';
    }
    return out.str();
}

/// CSV columns: fraction_lost, ratio (= c_L / c).
inline std::string loss_curve_csv(int n) {
    std::ostringstream out;
    out << "fraction_lost,ratio\n";
    out.precision(12);
    for (const auto& [fraction, ratio] : loss_ratio_curve(n))
        out << fraction << ',' << ratio << '\n';
    return out.str();
}

/// FockTensor blocks of one mode as JSON, the export-mpo payload.
inline nlohmann::json export_mpo_json(const UnitaryMatrix& u, const std::vector<int>& input_ports,
                                      int mode, int cutoff, std::optional<int> power_filter) {
    const OperatorTensor t = assemble_operator_tensor(u.mat, input_ports, mode, power_filter);
    for (const OperatorTensorEntry& e : t.entries)
        if (e.ladder_power >= cutoff)
            throw validation_error("export-mpo: cutoff too small for ladder power " +
                                   std::to_string(e.ladder_power));
    nlohmann::json blocks = nlohmann::json::array();
    for (const OperatorTensorEntry& e : t.entries)
        blocks.push_back({{"row", e.row},
                          {"col", e.col},
                          {"power", e.ladder_power},
                          {"coeff", {e.coeff.real(), e.coeff.imag()}}});
    return nlohmann::json{{"mode", mode}, {"cutoff", cutoff}, {"blocks", std::move(blocks)}};
}

} // namespace bosonlines::cli
