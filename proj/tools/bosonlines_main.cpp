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

#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "bosonlines/cli_support.hpp"
#include "bosonlines/matrix_io.hpp"

namespace {

using namespace bosonlines;

void emit(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw io_error("cannot write " + out_path);
    out << text;
    if (!out) throw io_error("write failed for " + out_path);
}

void emit_report(const RunReport& report, const std::string& out_path) {
    emit(to_json(report).dump(2) + "\n", out_path);
}

UnitaryMatrix load_unitary(const std::string& path, double tol) {
    return validate_unitary(read_matrix_file(path), tol);
}

struct CommonArgs {
    std::string matrix_path;
    std::string in_ports;
    std::string out_pairs;
    std::string out_occ;
    std::string out_path;
    double tol = default_unitarity_tol;
};

void add_pattern_options(CLI::App* cmd, CommonArgs& args, bool need_matrix = true) {
    if (need_matrix)
        cmd->add_option("--matrix", args.matrix_path, "matrix file (JSON or text)")->required();
    cmd->add_option("--in", args.in_ports, "input ports, e.g. 1,2,3,4")->required();
    cmd->add_option("--out", args.out_pairs, "output pattern as port:count pairs, e.g. 1:1,3:1");
    cmd->add_option("--out-occ", args.out_occ, "output occupations, one per mode, e.g. 1,0,1,0");
    cmd->add_option("--output", args.out_path, "write the report to a file instead of stdout");
    cmd->add_option("--tol", args.tol, "unitarity tolerance")->capture_default_str();
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"operator-basis line-merging amplitudes for linear-optical circuits"};
    app.require_subcommand(1);
    unsigned threads = std::thread::hardware_concurrency();
    app.add_option("--threads", threads, "worker threads for parallel kernels");

    // amplitude / probability
    CommonArgs amp_args;
    bool amp_oracle = false;
    CLI::App* amp = app.add_subcommand("amplitude", "multiphoton detection amplitude <n|U|i>");
    add_pattern_options(amp, amp_args);
    amp->add_flag("--oracle", amp_oracle, "cross-check against the dense Fock oracle")->group("");

    CommonArgs prob_args;
    bool prob_oracle = false;
    CLI::App* prob = app.add_subcommand("probability", "detection probability |<n|U|i>|^2");
    add_pattern_options(prob, prob_args);
    prob->add_flag("--oracle", prob_oracle, "cross-check against the dense Fock oracle")->group("");

    // permanent
    std::string perm_matrix, perm_algo = "lines", perm_out;
    CLI::App* perm = app.add_subcommand("permanent", "permanent of a square complex matrix");
    perm->add_option("--matrix", perm_matrix, "matrix file (JSON or text)")->required();
    perm->add_option("--algo", perm_algo, "naive | ryser | lines")->capture_default_str();
    perm->add_option("--output", perm_out, "write the report to a file instead of stdout");

    // lossy
    CommonArgs lossy_args;
    std::string lambda_arg = "1";
    int n_lost = 0;
    CLI::App* lossy = app.add_subcommand("lossy", "amplitude with photons lost to the loss mode");
    add_pattern_options(lossy, lossy_args);
    lossy->add_option("--lambda", lambda_arg, "loss weight: scalar or M x M matrix file")
        ->capture_default_str();
    lossy->add_option("--lost", n_lost, "number of lost photons")->capture_default_str();

    // distinguish
    CommonArgs dist_args;
    std::string eta_arg;
    CLI::App* dist = app.add_subcommand("distinguish", "probability with partial distinguishability");
    add_pattern_options(dist, dist_args);
    dist->add_option("--eta", eta_arg, "per-photon eta list, e.g. 1,0.5,0.5")->required();

    // dephase
    CommonArgs deph_args;
    std::string placement_arg = "after", matrix2_path;
    double sigma = 0.0;
    bool uniform = false;
    std::uint64_t samples = 1000, deph_seed = 1;
    CLI::App* deph = app.add_subcommand("dephase", "Monte Carlo dephasing average");
    add_pattern_options(deph, deph_args);
    deph->add_option("--sigma", sigma, "phase standard deviation (radians)")->capture_default_str();
    deph->add_flag("--uniform", uniform, "uniform phases on [0, 2pi) instead of Gaussian");
    deph->add_option("--samples", samples, "Monte Carlo samples")->capture_default_str();
    deph->add_option("--seed", deph_seed, "RNG seed")->capture_default_str();
    deph->add_option("--placement", placement_arg, "after | before | between")->capture_default_str();
    deph->add_option("--matrix2", matrix2_path, "second channel (between placement)");

    // gen-unitary
    int gen_m = 0;
    std::uint64_t gen_seed = 1;
    std::string gen_out;
    CLI::App* gen = app.add_subcommand("gen-unitary", "write a Haar-random unitary matrix file");
    gen->add_option("--m", gen_m, "dimension M")->required();
    gen->add_option("--seed", gen_seed, "RNG seed")->capture_default_str();
    gen->add_option("--out", gen_out, "output path")->required();

    // bench
    int bench_min = 2, bench_max = 12;
    std::uint64_t bench_seed = 1;
    std::string bench_out;
    CLI::App* bench = app.add_subcommand("bench", "merge-count benchmark CSV over a range of n");
    bench->add_option("--n-min", bench_min, "smallest n")->capture_default_str();
    bench->add_option("--n-max", bench_max, "largest n (<= 24)")->capture_default_str();
    bench->add_option("--seed", bench_seed, "RNG seed")->capture_default_str();
    bench->add_option("--output", bench_out, "write CSV to a file instead of stdout");

    // loss-curve
    int curve_n = 30;
    std::string curve_out;
    CLI::App* curve = app.add_subcommand("loss-curve", "c_L/c ratio CSV against fraction of photons lost");
    curve->add_option("--n", curve_n, "photon number")->capture_default_str();
    curve->add_option("--output", curve_out, "write CSV to a file instead of stdout");

    // export-mpo
    std::string mpo_matrix, mpo_in, mpo_out;
    int mpo_mode = 1, mpo_cutoff = 2;
    int mpo_filter = -1;
    CLI::App* mpo = app.add_subcommand("export-mpo", "Fock-basis MPO blocks of one mode as JSON");
    mpo->add_option("--matrix", mpo_matrix, "matrix file (JSON or text)")->required();
    mpo->add_option("--in", mpo_in, "input ports, e.g. 1,2,3")->required();
    mpo->add_option("--mode", mpo_mode, "mode m")->capture_default_str();
    mpo->add_option("--cutoff", mpo_cutoff, "local dimension cutoff d")->capture_default_str();
    mpo->add_option("--power", mpo_filter, "keep only blocks of this ladder power");
    mpo->add_option("--output", mpo_out, "write JSON to a file instead of stdout");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*amp || *prob) {
            const bool is_prob = static_cast<bool>(*prob);
            CommonArgs& a = is_prob ? prob_args : amp_args;
            const UnitaryMatrix u = load_unitary(a.matrix_path, a.tol);
            const OccupationPattern p = cli::make_pattern(a.in_ports, a.out_pairs, a.out_occ, u.dim());
            emit_report(cli::run_amplitude(u, p, is_prob, is_prob ? prob_oracle : amp_oracle), a.out_path);
        } else if (*perm) {
            emit_report(cli::run_permanent(read_matrix_file(perm_matrix), perm_algo), perm_out);
        } else if (*lossy) {
            const UnitaryMatrix u = load_unitary(lossy_args.matrix_path, lossy_args.tol);
            LossyMatrix lm;
            try {
                std::size_t used = 0;
                const double scalar = std::stod(lambda_arg, &used);
                if (used != lambda_arg.size()) throw std::invalid_argument("not a scalar");
                lm = extend_with_loss(u, scalar);
            } catch (const std::invalid_argument&) {
                lm = extend_with_loss(u, read_matrix_file(lambda_arg));
            }
            const OccupationPattern p =
                cli::make_pattern(lossy_args.in_ports, lossy_args.out_pairs, lossy_args.out_occ, u.dim());
            emit_report(cli::run_lossy(lm, p, n_lost), lossy_args.out_path);
        } else if (*dist) {
            const UnitaryMatrix u = load_unitary(dist_args.matrix_path, dist_args.tol);
            const OccupationPattern p =
                cli::make_pattern(dist_args.in_ports, dist_args.out_pairs, dist_args.out_occ, u.dim());
            DistinguishabilitySpec spec{cli::parse_double_list(eta_arg, "eta list")};
            if (spec.eta.size() == 1) spec.eta.assign(p.input_ports.size(), spec.eta.front());
            emit_report(cli::run_distinguish(u, p, spec), dist_args.out_path);
        } else if (*deph) {
            const UnitaryMatrix u = load_unitary(deph_args.matrix_path, deph_args.tol);
            const OccupationPattern p =
                cli::make_pattern(deph_args.in_ports, deph_args.out_pairs, deph_args.out_occ, u.dim());
            PhasePlacement placement;
            if (placement_arg == "after") placement = PhasePlacement::after;
            else if (placement_arg == "before") placement = PhasePlacement::before;
            else if (placement_arg == "between") placement = PhasePlacement::between;
            else throw validation_error("dephase: placement must be after, before or between");
            std::optional<UnitaryMatrix> second;
            if (!matrix2_path.empty()) second = load_unitary(matrix2_path, deph_args.tol);
            if (placement == PhasePlacement::between && !second)
                throw validation_error("dephase: between placement requires --matrix2");
            emit_report(cli::run_dephase(u, p, PhaseNoise{sigma, uniform}, samples, deph_seed,
                                         placement, second ? &*second : nullptr, threads),
                        deph_args.out_path);
        } else if (*gen) {
            if (gen_m < 1) throw validation_error("gen-unitary: M must be >= 1");
            const UnitaryMatrix u = haar_random_unitary(gen_m, gen_seed);
            validate_unitary(u.mat); // self-check before writing
            write_matrix_file(gen_out, u.mat);
        } else if (*bench) {
            emit(cli::bench_csv(bench_min, bench_max, bench_seed), bench_out);
        } else if (*curve) {
            emit(cli::loss_curve_csv(curve_n), curve_out);
        } else if (*mpo) {
            const UnitaryMatrix u = load_unitary(mpo_matrix, default_unitarity_tol);
            const std::vector<int> ports = cli::parse_port_list(mpo_in);
            std::optional<int> filter;
            if (mpo->count("--power")) filter = mpo_filter;
            emit(cli::export_mpo_json(u, ports, mpo_mode, mpo_cutoff, filter).dump(2) + "\n", mpo_out);
        }
    } catch (const parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const validation_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const guard_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const io_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 5;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
