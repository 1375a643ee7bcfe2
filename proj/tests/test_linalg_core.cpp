#include <catch2/catch.hpp>

#include <cmath>

#include "bosonlines/complex_matrix.hpp"
#include "bosonlines/pattern.hpp"
#include "bosonlines/unitary.hpp"

#include "test_helpers.hpp"

using namespace bosonlines;

namespace {

ComplexMatrix real_hadamard() {
    ComplexMatrix h(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    h(0, 0) = s; h(0, 1) = s;
    h(1, 0) = s; h(1, 1) = -s;
    return h;
}

} // namespace

TEST_CASE("validate_unitary accepts the identity with zero residual") {
    const UnitaryMatrix u = validate_unitary(ComplexMatrix::identity(2), 1e-12);
    CHECK(u.unitarity_residual == 0.0);
    CHECK(u.dim() == 2);
}

TEST_CASE("validate_unitary accepts the real Hadamard") {
    const UnitaryMatrix u = validate_unitary(real_hadamard(), 1e-12);
    CHECK(u.unitarity_residual <= 1e-15);
}

TEST_CASE("validate_unitary rejects a rank-1 matrix") {
    ComplexMatrix bad(2, 2);
    const double s = 1.0 / std::sqrt(2.0);
    bad(0, 0) = s; bad(0, 1) = s;
    bad(1, 0) = s; bad(1, 1) = s;
    CHECK_THROWS_AS(validate_unitary(bad, 1e-12), not_unitary);
    try {
        validate_unitary(bad, 1e-12);
    } catch (const not_unitary& e) {
        CHECK(e.residual > 0.1);
    }
}

TEST_CASE("validate_unitary rejects non-square input") {
    CHECK_THROWS_AS(validate_unitary(ComplexMatrix(2, 3)), validation_error);
}

TEST_CASE("haar_random_unitary: M=1 gives a unimodular scalar") {
    for (std::uint64_t seed : {1ull, 7ull, 99ull}) {
        const UnitaryMatrix u = haar_random_unitary(1, seed);
        CHECK(std::abs(std::abs(u.mat(0, 0)) - 1.0) <= 1e-14);
    }
}

TEST_CASE("haar_random_unitary is deterministic for a fixed seed") {
    const UnitaryMatrix a = haar_random_unitary(8, 42);
    const UnitaryMatrix b = haar_random_unitary(8, 42);
    REQUIRE(a.mat.a.size() == b.mat.a.size());
    for (std::size_t i = 0; i < a.mat.a.size(); ++i) CHECK(a.mat.a[i] == b.mat.a[i]);
    const UnitaryMatrix c = haar_random_unitary(8, 43);
    CHECK(max_abs_diff(a.mat, c.mat) > 1e-3);
}

TEST_CASE("haar_random_unitary: residual stays below 1e-10 over a seed sweep") {
    for (std::uint64_t seed = 1; seed <= 100; ++seed) {
        const UnitaryMatrix u = haar_random_unitary(6, seed);
        CHECK(u.unitarity_residual <= 1e-10);
    }
}

TEST_CASE("haar_random_unitary: first moment of |u_00|^2 is 1/M") {
    const int m = 4;
    double mean = 0.0;
    const int samples = 1000;
    for (int s = 0; s < samples; ++s)
        mean += std::norm(haar_random_unitary(m, 5000 + s).mat(0, 0));
    mean /= samples;
    CHECK(std::abs(mean - 1.0 / m) <= 0.02);
}

TEST_CASE("haar_random_unitary: |det| = 1") {
    for (std::uint64_t seed : {3ull, 17ull, 23ull}) {
        const UnitaryMatrix u = haar_random_unitary(7, seed);
        CHECK(std::abs(std::abs(determinant(u.mat)) - 1.0) <= 1e-8);
    }
}

TEST_CASE("compose_channels equals the plain matrix product entrywise") {
    const UnitaryMatrix u = haar_random_unitary(5, 11);
    const UnitaryMatrix v = haar_random_unitary(5, 12);
    const UnitaryMatrix w = compose_channels(u, v);
    CHECK(max_abs_diff(w.mat, u.mat * v.mat) == 0.0);
}

TEST_CASE("compose_channels with the inverse collapses to the identity") {
    const UnitaryMatrix u = haar_random_unitary(6, 21);
    const UnitaryMatrix w = compose_channels(u, u.inverse());
    for (int i = 0; i < 6; ++i)
        for (int k = 0; k < 6; ++k) {
            const double expect = i == k ? 1.0 : 0.0;
            CHECK(std::abs(w.mat(i, k) - expect) <= 1e-10);
        }
}

TEST_CASE("compose_channels: identity is the neutral element") {
    const UnitaryMatrix v = haar_random_unitary(4, 5);
    const UnitaryMatrix id = validate_unitary(ComplexMatrix::identity(4));
    const UnitaryMatrix w = compose_channels(id, v);
    CHECK(max_abs_diff(w.mat, v.mat) == 0.0);
}

TEST_CASE("compose_channels chains associatively (three channels)") {
    const UnitaryMatrix a = haar_random_unitary(5, 31);
    const UnitaryMatrix b = haar_random_unitary(5, 32);
    const UnitaryMatrix c = haar_random_unitary(5, 33);
    const ComplexMatrix left = compose_channels(compose_channels(a, b), c).mat;
    const ComplexMatrix right = compose_channels(a, compose_channels(b, c)).mat;
    CHECK(max_abs_diff(left, right) <= 1e-12);
    CHECK(max_abs_diff(left, a.mat * b.mat * c.mat) <= 1e-12);
}

TEST_CASE("compose_channels rejects mismatched dimensions") {
    CHECK_THROWS_AS(compose_channels(haar_random_unitary(3, 1), haar_random_unitary(4, 1)),
                    validation_error);
}

TEST_CASE("submatrix lays rows by output port and columns by input port") {
    const UnitaryMatrix u = haar_random_unitary(8, 42);
    OccupationPattern p;
    p.input_ports = {1, 2, 3, 4};
    p.output_occupations = {1, 0, 1, 0, 0, 0, 1, 1};
    const ComplexMatrix s = submatrix(u, p);
    REQUIRE(s.rows == 4);
    REQUIRE(s.cols == 4);
    const int outputs[4] = {1, 3, 7, 8};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            CHECK(s(r, c) == u.mat(p.input_ports[c] - 1, outputs[r] - 1));
}

TEST_CASE("submatrix of the identity is the identity") {
    const UnitaryMatrix u = validate_unitary(ComplexMatrix::identity(2));
    OccupationPattern p{{1, 2}, {1, 1}};
    CHECK(max_abs_diff(submatrix(u, p), ComplexMatrix::identity(2)) == 0.0);
}

TEST_CASE("submatrix repeats columns for repeated input ports") {
    const UnitaryMatrix u = haar_random_unitary(3, 9);
    OccupationPattern p{{1, 1}, {2, 0, 0}};
    const ComplexMatrix s = submatrix(u, p);
    for (int r = 0; r < 2; ++r)
        for (int c = 0; c < 2; ++c) CHECK(s(r, c) == u.mat(0, 0));
}

TEST_CASE("submatrix is invariant under permuting i-bar together with its columns") {
    const UnitaryMatrix u = haar_random_unitary(5, 55);
    OccupationPattern p{{2, 4, 5}, {1, 0, 1, 1, 0}};
    OccupationPattern q{{5, 2, 4}, {1, 0, 1, 1, 0}};
    const ComplexMatrix sp = submatrix(u, p);
    const ComplexMatrix sq = submatrix(u, q);
    // column c of q corresponds to column perm[c] of p
    const int perm[3] = {2, 0, 1};
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) CHECK(sq(r, c) == sp(r, perm[c]));
}

TEST_CASE("pattern validation rejects photon-count mismatches and bad ports") {
    const UnitaryMatrix u = haar_random_unitary(3, 2);
    CHECK_THROWS_AS(submatrix(u, OccupationPattern{{1, 2}, {1, 1, 1}}), validation_error);
    CHECK_THROWS_AS(submatrix(u, OccupationPattern{{0, 2}, {1, 1, 0}}), validation_error);
    CHECK_THROWS_AS(submatrix(u, OccupationPattern{{1, 4}, {1, 1, 0}}), validation_error);
    CHECK_THROWS_AS(submatrix(u, OccupationPattern{{1, 2}, {1, 1}}), validation_error);
}

TEST_CASE("input multiplicity and occupation factorial helpers") {
    CHECK(input_multiplicity_factorial({1, 2, 3}) == 1.0);
    CHECK(input_multiplicity_factorial({1, 1, 1}) == 6.0);
    CHECK(input_multiplicity_factorial({2, 1, 2}) == 2.0);
    CHECK(occupation_factorial({3, 0, 1}) == 6.0);
}
