#include <catch2/catch.hpp>

#include <cmath>
#include <complex>
#include <vector>

#include "bosonlines/dephasing.hpp"
#include "bosonlines/distinguishability.hpp"
#include "bosonlines/lines.hpp"
#include "bosonlines/loss.hpp"
#include "bosonlines/oracles.hpp"
#include "bosonlines/unitary.hpp"

#include "test_helpers.hpp"

using namespace bosonlines;

namespace {

ComplexMatrix beam_splitter_50_50() {
    ComplexMatrix h(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    h(0, 0) = s; h(0, 1) = s;
    h(1, 0) = s; h(1, 1) = -s;
    return h;
}

std::vector<int> iota_ports(int n) {
    std::vector<int> p(n);
    for (int i = 0; i < n; ++i) p[i] = i + 1;
    return p;
}

} // namespace

TEST_CASE("extend_with_loss: lambda = 1 leaves an empty loss column") {
    const UnitaryMatrix u = haar_random_unitary(3, 5);
    const LossyMatrix lm = extend_with_loss(u, 1.0);
    REQUIRE(lm.mat.cols == 4);
    for (int i = 0; i < 3; ++i) CHECK(std::abs(lm.mat(i, 3)) <= 1e-6);
}

TEST_CASE("extend_with_loss: the 1x1 case is (0.8, 0.6)") {
    const UnitaryMatrix u = validate_unitary(ComplexMatrix::identity(1));
    const LossyMatrix lm = extend_with_loss(u, 0.8);
    CHECK(lm.mat(0, 0) == cplx(0.8));
    CHECK(std::abs(lm.mat(0, 1) - 0.6) <= 1e-15);
}

TEST_CASE("extend_with_loss restores unit row norms") {
    const UnitaryMatrix u = haar_random_unitary(4, 9);
    const LossyMatrix lm = extend_with_loss(u, 0.7);
    for (int i = 0; i < 4; ++i) {
        double nrm = 0.0;
        for (int j = 0; j < 5; ++j) nrm += std::norm(lm.mat(i, j));
        CHECK(std::abs(nrm - 1.0) <= 1e-12);
    }
}

TEST_CASE("extend_with_loss rejects weights above one and negative deficits") {
    const UnitaryMatrix u = haar_random_unitary(3, 13);
    ComplexMatrix w(3, 3);
    for (cplx& v : w.a) v = 1.0;
    w(1, 1) = 1.5;
    CHECK_THROWS_AS(extend_with_loss(u, w), validation_error);

    // a matrix that passes the unitarity tolerance but has row norms just
    // above one still triggers the deficit check
    ComplexMatrix scaled = u.mat;
    for (cplx& v : scaled.a) v *= (1.0 + 2e-11);
    const UnitaryMatrix almost = validate_unitary(scaled, 1e-9);
    CHECK_THROWS_AS(extend_with_loss(almost, 1.0), validation_error);
}

TEST_CASE("lossy_amplitude: identity circuit with nothing lost gives lambda^n") {
    const double lambda = 0.85;
    for (int n = 1; n <= 5; ++n) {
        const UnitaryMatrix id = validate_unitary(ComplexMatrix::identity(n));
        const LossyMatrix lm = extend_with_loss(id, lambda);
        OccupationPattern p{iota_ports(n), std::vector<int>(n, 1)};
        MergeStats stats;
        const cplx amp = lossy_amplitude(lm, p, 0, stats);
        CHECK(std::abs(amp - std::pow(lambda, n)) <= 1e-12);
        CHECK(std::abs(std::norm(amp) - std::pow(lambda, 2 * n)) <= 1e-12);
    }
}

TEST_CASE("lossy_amplitude: losing every photon collapses to the deficit product") {
    const double lambda = 0.6;
    for (int n = 2; n <= 4; ++n) {
        const UnitaryMatrix id = validate_unitary(ComplexMatrix::identity(n));
        const LossyMatrix lm = extend_with_loss(id, lambda);
        OccupationPattern p{iota_ports(n), std::vector<int>(n, 0)};
        MergeStats stats;
        const cplx amp = lossy_amplitude(lm, p, n, stats);
        CHECK(std::abs(amp - std::pow(std::sqrt(1.0 - lambda * lambda), n)) <= 1e-12);
    }
    // general circuit: the weight-n loss line is the product of row deficits
    const UnitaryMatrix u = haar_random_unitary(3, 77);
    const LossyMatrix lm = extend_with_loss(u, 0.8);
    OccupationPattern p{{1, 2, 3}, {0, 0, 0}};
    MergeStats stats;
    cplx expect = 1.0;
    for (int i = 0; i < 3; ++i) expect *= lm.mat(i, 3);
    CHECK(std::abs(lossy_amplitude(lm, p, 3, stats) - expect) <= 1e-14);
}

TEST_CASE("lossy_amplitude: one lost photon equals the sum over which-photon-lost") {
    const UnitaryMatrix u = haar_random_unitary(4, 9);
    const LossyMatrix lm = extend_with_loss(u, 0.75);
    const std::vector<int> ports = {1, 2, 3};
    std::vector<int> occ = {1, 0, 1, 0}; // detect at modes 1 and 3
    MergeStats stats;
    const cplx amp = lossy_amplitude(lm, {ports, occ}, 1, stats);

    // brute force: drop each photon into the loss mode, bare sub-permanent
    // of the remaining two against the detected modes
    cplx expect = 0.0;
    for (int lost = 0; lost < 3; ++lost) {
        std::vector<int> kept;
        for (int j = 0; j < 3; ++j)
            if (j != lost) kept.push_back(ports[j]);
        ComplexMatrix sub(2, 2);
        const int detected_modes[2] = {1, 3};
        for (int r = 0; r < 2; ++r)
            for (int c = 0; c < 2; ++c) sub(r, c) = lm.mat(kept[c] - 1, detected_modes[r] - 1);
        expect += naive_permanent(sub) * lm.mat(ports[lost] - 1, 4 - 1 + 1);
    }
    CHECK(std::abs(amp - expect) <= 1e-12);
}

TEST_CASE("lossy_amplitude matches the dense rectangular-evolution oracle") {
    const UnitaryMatrix u = haar_random_unitary(3, 21);
    const LossyMatrix lm = extend_with_loss(u, 0.7);
    for (const std::vector<int>& ports : {std::vector<int>{1, 2}, std::vector<int>{2, 2}}) {
        const FockStateVector st = dense_fock_evolution(lm.mat, ports, 3);
        for (int n_lost = 0; n_lost <= 2; ++n_lost) {
            for (const auto& occ : testutil::occupations_with_sum(3, 2 - n_lost)) {
                MergeStats stats;
                const cplx amp = lossy_amplitude(lm, {ports, occ}, n_lost, stats);
                std::vector<int> occ_ext = occ;
                occ_ext.push_back(n_lost);
                const cplx dense = st.amplitude(occ_ext);
                CHECK(std::abs(amp * std::sqrt(factorial(n_lost)) - dense) <= 1e-10);
            }
        }
    }
}

TEST_CASE("lossy probabilities over all outcomes sum to one (distinct ports)") {
    struct Case { int n, m; };
    for (const Case c : {Case{2, 2}, Case{2, 3}, Case{3, 3}}) {
        for (double lambda : {0.6, 0.85}) {
            const UnitaryMatrix u = haar_random_unitary(c.m, 17 + c.n + c.m);
            const LossyMatrix lm = extend_with_loss(u, lambda);
            double total = 0.0;
            for (int n_lost = 0; n_lost <= c.n; ++n_lost) {
                for (const auto& occ : testutil::occupations_with_sum(c.m, c.n - n_lost)) {
                    MergeStats stats;
                    total += std::norm(lossy_amplitude(lm, {iota_ports(c.n), occ}, n_lost, stats));
                }
            }
            CHECK(std::abs(total - 1.0) <= 1e-8);
        }
    }
}

TEST_CASE("lossy_cost evaluates the closed form") {
    CHECK(lossy_cost(4, 0) == 112);
    CHECK(lossy_cost(4, 2) == 96);
    CHECK(lossy_cost(4, 4) == 0);
    CHECK(lossy_cost(5, 5) == 0);
    // no losses reproduces the lossless cost
    for (int n = 2; n <= 12; ++n) CHECK(lossy_cost(n, 0) == predicted_cost(n));
    // always below n^2 2^n
    for (int n = 2; n <= 20; ++n)
        for (int k = 0; k <= n; ++k)
            CHECK(lossy_cost(n, k) <
                  static_cast<std::uint64_t>(n) * static_cast<std::uint64_t>(n) * (1ull << n));
}

TEST_CASE("loss_ratio_curve is monotone and drops fastest near half loss") {
    const auto curve = loss_ratio_curve(30);
    REQUIRE(curve.size() == 31);
    CHECK(curve.front().second == 1.0);
    CHECK(curve.back().second == 0.0);
    for (std::size_t i = 1; i < curve.size(); ++i) CHECK(curve[i].second <= curve[i - 1].second);

    double biggest = 0.0;
    for (std::size_t i = 1; i < curve.size(); ++i)
        biggest = std::max(biggest, curve[i - 1].second - curve[i].second);
    for (std::size_t i = 1; i < curve.size(); ++i)
        if (curve[i - 1].second - curve[i].second == biggest) {
            CHECK(curve[i - 1].first >= 0.4);
            CHECK(curve[i].first <= 0.6);
        }
}

TEST_CASE("merging with the loss line skips detected-mode work") {
    // the lost-mask lookup step costs one pair per surviving component
    const UnitaryMatrix u = haar_random_unitary(4, 31);
    const LossyMatrix lm = extend_with_loss(u, 0.9);
    MergeStats stats;
    (void)lossy_amplitude(lm, {{1, 2, 3, 4}, {1, 1, 0, 0}}, 2, stats);
    MergeStats lossless;
    (void)fock_amplitude(u, {{1, 2, 3, 4}, {1, 1, 1, 1}}, lossless);
    CHECK(stats.pair_combinations < lossless.pair_combinations);
}

TEST_CASE("distinguishable_probability: eta = 1 is the ideal probability") {
    const UnitaryMatrix u = haar_random_unitary(4, 15);
    OccupationPattern p{{1, 2, 4}, {1, 1, 0, 1}};
    MergeStats stats;
    const double prob = distinguishable_probability(u, p, {{1.0, 1.0, 1.0}}, stats);
    MergeStats ref_stats;
    const double ideal = std::norm(fock_amplitude(u, p, ref_stats));
    CHECK(std::abs(prob - ideal) <= 1e-12);
    // single surviving sector: identical merge work as the ideal amplitude
    CHECK(stats.pair_combinations == ref_stats.pair_combinations);
}

TEST_CASE("distinguishable_probability: beam-splitter coincidence is (1 - eta) / 2") {
    const UnitaryMatrix bs = validate_unitary(beam_splitter_50_50());
    for (double eta : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        MergeStats stats;
        const double prob =
            distinguishable_probability(bs, {{1, 2}, {1, 1}}, {{1.0, eta}}, stats);
        CHECK(std::abs(prob - (1.0 - eta) / 2.0) <= 1e-10);
    }
}

TEST_CASE("distinguishable_probability matches the two-species oracle") {
    const UnitaryMatrix u = haar_random_unitary(3, 13);
    const std::vector<double> eta = {0.83, 0.37};
    const auto oracle = two_species_fock_evolution(u.mat, {1, 3}, eta, 3);
    for (const auto& [occ, p_ref] : oracle) {
        MergeStats stats;
        const double p = distinguishable_probability(u, {{1, 3}, occ}, {eta}, stats);
        CHECK(std::abs(p - p_ref) <= 1e-9);
    }
}

TEST_CASE("distinguishable_probability matches the oracle with repeated ports") {
    const UnitaryMatrix u = haar_random_unitary(4, 26);
    const std::vector<double> eta = {0.9, 0.35, 0.6};
    const std::vector<int> ports = {2, 2, 4};
    const auto oracle = two_species_fock_evolution(u.mat, ports, eta, 4);
    double total = 0.0;
    for (const auto& [occ, p_ref] : oracle) {
        MergeStats stats;
        const double p = distinguishable_probability(u, {ports, occ}, {eta}, stats);
        CHECK(std::abs(p - p_ref) <= 1e-9);
        total += p;
    }
    CHECK(std::abs(total - 1.0) <= 1e-9);
}

TEST_CASE("distinguishable_probability is invariant under photon permutations") {
    const UnitaryMatrix u = haar_random_unitary(4, 41);
    const std::vector<int> occ = {1, 0, 1, 1};
    MergeStats stats;
    const double a =
        distinguishable_probability(u, {{1, 2, 3}, occ}, {{0.2, 0.5, 0.9}}, stats);
    const double b =
        distinguishable_probability(u, {{3, 1, 2}, occ}, {{0.9, 0.2, 0.5}}, stats);
    CHECK(std::abs(a - b) <= 1e-12);
}

TEST_CASE("all-parallel and all-orthogonal photons are indistinguishable alike") {
    const UnitaryMatrix u = haar_random_unitary(4, 47);
    OccupationPattern p{{1, 2, 2}, {1, 1, 1, 0}};
    MergeStats stats;
    const double p1 = distinguishable_probability(u, p, {{1.0, 1.0, 1.0}}, stats);
    const double p0 = distinguishable_probability(u, p, {{0.0, 0.0, 0.0}}, stats);
    CHECK(std::abs(p1 - p0) <= 1e-12);
}

TEST_CASE("proper sectors decompose into strictly smaller merge problems") {
    const UnitaryMatrix u = haar_random_unitary(4, 61);
    // a half/half sector costs two 2-photon folds instead of one 4-photon fold
    MergeStats half;
    (void)detail::merged_monomial_coefficient(u.mat, {1, 2}, {1, 1, 0, 0}, half);
    (void)detail::merged_monomial_coefficient(u.mat, {3, 4}, {0, 0, 1, 1}, half);
    CHECK(half.pair_combinations == 2 * predicted_pairs(2));
    CHECK(half.pair_combinations < predicted_pairs(4));
}

TEST_CASE("distinguishable_probability validates eta") {
    const UnitaryMatrix u = haar_random_unitary(2, 3);
    MergeStats stats;
    CHECK_THROWS_AS(distinguishable_probability(u, {{1, 2}, {1, 1}}, {{1.0}}, stats),
                    validation_error);
    CHECK_THROWS_AS(distinguishable_probability(u, {{1, 2}, {1, 1}}, {{1.0, -0.2}}, stats),
                    validation_error);
}

TEST_CASE("dephase_probability: zero noise equals the ideal exactly") {
    const UnitaryMatrix u = haar_random_unitary(3, 29);
    OccupationPattern p{{1, 2}, {1, 1, 0}};
    MergeStats stats;
    const MonteCarloEstimate est = dephase_probability(u, p, PhaseNoise{0.0, false}, 500, 7,
                                                       PhasePlacement::after, nullptr, 1, stats);
    MergeStats ref;
    const double ideal = std::norm(fock_amplitude(u, p, ref));
    CHECK(est.mean == ideal);
    CHECK(est.std_error == 0.0);
}

TEST_CASE("dephase_probability: output phases never lift the HOM dip") {
    const UnitaryMatrix bs = validate_unitary(beam_splitter_50_50());
    MergeStats stats;
    const MonteCarloEstimate est =
        dephase_probability(bs, {{1, 2}, {1, 1}}, PhaseNoise{0.0, true}, 400, 11,
                            PhasePlacement::after, nullptr, 1, stats);
    CHECK(est.mean <= 1e-30); // per-output-mode phases scale |per| by 1
}

TEST_CASE("dephase_probability between channels matches the phase-grid average") {
    const UnitaryMatrix u = haar_random_unitary(2, 101);
    const UnitaryMatrix v = haar_random_unitary(2, 102);
    OccupationPattern p{{1, 2}, {1, 1}};

    // 64 x 64 uniform grid: exact for the low-degree trig polynomial |amp|^2
    double grid = 0.0;
    for (int a = 0; a < 64; ++a)
        for (int b = 0; b < 64; ++b) {
            ComplexMatrix eff = u.mat;
            const double pa = 2.0 * std::numbers::pi * a / 64.0;
            const double pb = 2.0 * std::numbers::pi * b / 64.0;
            for (int r = 0; r < 2; ++r) {
                eff(r, 0) *= std::polar(1.0, pa);
                eff(r, 1) *= std::polar(1.0, pb);
            }
            eff = eff * v.mat;
            MergeStats stats;
            grid += std::norm(fock_amplitude(eff, p, stats));
        }
    grid /= 64.0 * 64.0;

    MergeStats stats;
    const MonteCarloEstimate est = dephase_probability(u, p, PhaseNoise{0.0, true}, 4000, 5,
                                                       PhasePlacement::between, &v, 1, stats);
    CHECK(std::abs(est.mean - grid) <= 3.0 * est.std_error + 1e-12);
}

TEST_CASE("single-circuit phase layers leave Fock probabilities unchanged") {
    // diagonal phases before or after one circuit only rescale the target
    // submatrix by unimodular factors, so |amplitude|^2 is noise-independent;
    // only the between-channel placement produces a nontrivial average
    const UnitaryMatrix u = haar_random_unitary(3, 67);
    OccupationPattern p{{1, 2}, {0, 1, 1}};
    MergeStats ref;
    const double ideal = std::norm(fock_amplitude(u, p, ref));
    for (const PhasePlacement placement : {PhasePlacement::after, PhasePlacement::before}) {
        MergeStats stats;
        const MonteCarloEstimate est = dephase_probability(u, p, PhaseNoise{0.0, true}, 300, 23,
                                                           placement, nullptr, 1, stats);
        CHECK(std::abs(est.mean - ideal) <= 1e-13);
        CHECK(est.std_error <= 1e-13);
    }
}

TEST_CASE("dephase_probability is deterministic across worker counts") {
    const UnitaryMatrix u = haar_random_unitary(3, 55);
    OccupationPattern p{{1, 3}, {0, 1, 1}};
    MergeStats s1, s4;
    const MonteCarloEstimate a = dephase_probability(u, p, PhaseNoise{0.4, false}, 2000, 13,
                                                     PhasePlacement::after, nullptr, 1, s1);
    const MonteCarloEstimate b = dephase_probability(u, p, PhaseNoise{0.4, false}, 2000, 13,
                                                     PhasePlacement::after, nullptr, 4, s4);
    CHECK(a.mean == b.mean);
    CHECK(a.std_error == b.std_error);
    CHECK(s1.pair_combinations == s4.pair_combinations);
}

TEST_CASE("dephase_probability validates placement and sample count") {
    const UnitaryMatrix u = haar_random_unitary(2, 1);
    OccupationPattern p{{1, 2}, {1, 1}};
    MergeStats stats;
    CHECK_THROWS_AS(dephase_probability(u, p, PhaseNoise{0.1, false}, 0, 1,
                                        PhasePlacement::after, nullptr, 1, stats),
                    validation_error);
    CHECK_THROWS_AS(dephase_probability(u, p, PhaseNoise{0.1, false}, 10, 1,
                                        PhasePlacement::between, nullptr, 1, stats),
                    validation_error);
}
