#include <doctest.h>

#include <cmath>
#include <complex>
#include <limits>
#include <vector>

#include "ptlab/algebra.hpp"
#include "ptlab/quantum.hpp"
#include "ptlab/rng.hpp"

using namespace ptlab;

namespace {

StateVector random_state(SplitMix64& rng, std::size_t dim) {
    std::vector<Complex> amp(dim);
    double norm2 = 0.0;
    for (Complex& a : amp) {
        a = Complex(rng.next_double() - 0.5, rng.next_double() - 0.5);
        norm2 += std::norm(a);
    }
    for (Complex& a : amp) {
        a /= std::sqrt(norm2);
    }
    return StateVector(std::move(amp));
}

Matrix random_int_matrix(SplitMix64& rng, std::size_t rows, std::size_t cols) {
    Matrix m(rows, cols);
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < cols; ++c) {
            m.at(r, c) = Complex(static_cast<double>(rng.next_below(5)) - 2.0, 0.0);
        }
    }
    return m;
}

} // namespace

TEST_CASE("tensor of identities is the identity") {
    CHECK(tensor(Matrix::identity(2), Matrix::identity(2))
              .max_abs_diff(Matrix::identity(4)) == 0.0);
}

TEST_CASE("tensor places the first factor block-major") {
    // Z (x) I over (polarization, path): |Hu> keeps sign, |Vd> flips.
    const Matrix z_pol = tensor(pauli_z(), Matrix::identity(2));
    std::vector<Complex> hu = {1, 0, 0, 0};
    std::vector<Complex> vd = {0, 0, 0, 1};
    CHECK(ptlab::apply(z_pol, hu)[0] == Complex(1, 0));
    CHECK(ptlab::apply(z_pol, vd)[3] == Complex(-1, 0));

    // X (x) X expanded by hand: antidiagonal blocks of X.
    const Matrix xx = tensor(pauli_x(), pauli_x());
    CHECK(xx.at(0, 3) == Complex(1, 0));
    CHECK(xx.at(0, 0) == Complex(0, 0));
    CHECK(xx.at(1, 2) == Complex(1, 0));
}

TEST_CASE("tensor is associative on integer matrices") {
    SplitMix64 rng(41);
    for (int trial = 0; trial < 20; ++trial) {
        const Matrix a = random_int_matrix(rng, 2, 2);
        const Matrix b = random_int_matrix(rng, 2, 3);
        const Matrix c = random_int_matrix(rng, 3, 2);
        CHECK(tensor(tensor(a, b), c).max_abs_diff(tensor(a, tensor(b, c))) == 0.0);
    }
}

TEST_CASE("apply is the matrix-vector product") {
    SplitMix64 rng(7);
    const StateVector v = random_state(rng, 16);
    const std::vector<Complex> same = ptlab::apply(Matrix::identity(16), v);
    for (std::size_t i = 0; i < 16; ++i) {
        CHECK(std::abs(same[i] - v.amplitude(i)) == 0.0);
    }
    CHECK_THROWS_AS(ptlab::apply(Matrix::identity(4), v), std::invalid_argument);
}

TEST_CASE("projector of pauli observables") {
    const Matrix ketH = projector(pauli_z(), +1);
    CHECK(ketH.at(0, 0) == Complex(1, 0));
    CHECK(ketH.at(1, 1) == Complex(0, 0));
    CHECK(ketH.at(0, 1) == Complex(0, 0));

    // (I+X)/2 expanded by hand: every entry 1/2.
    const Matrix plus = projector(pauli_x(), +1);
    for (std::size_t r = 0; r < 2; ++r) {
        for (std::size_t c = 0; c < 2; ++c) {
            CHECK(plus.at(r, c) == Complex(0.5, 0));
        }
    }
}

TEST_CASE("projector completeness and idempotence") {
    for (const Matrix& obs : {pauli_x(), pauli_y(), pauli_z()}) {
        const Matrix p = projector(obs, +1);
        const Matrix m = projector(obs, -1);
        CHECK((p + m).max_abs_diff(Matrix::identity(2)) <= kTol);
        CHECK((p * p).max_abs_diff(p) <= kTol);
        CHECK(p.is_hermitian());
    }
}

TEST_CASE("projector rejects bad observables") {
    Matrix not_hermitian(2, 2, {Complex(0, 0), Complex(1, 0), Complex(0, 0), Complex(0, 0)});
    CHECK_THROWS_AS(projector(not_hermitian, +1), std::invalid_argument);
    Matrix not_involutory(2, 2, {Complex(2, 0), Complex(0, 0), Complex(0, 0), Complex(1, 0)});
    CHECK_THROWS_AS(projector(not_involutory, +1), std::invalid_argument);
    CHECK_THROWS_AS(projector(pauli_z(), 0), std::invalid_argument);
}

TEST_CASE("expectations against the shared state") {
    const StateVector psi = bell_like_state();
    CHECK(std::abs(expectation(psi, Matrix::identity(16)) - Complex(1, 0)) <= kTol);

    // Direct 16-dim computation: the four amplitudes contribute +,+,-,-
    // quarters, cancelling exactly.
    const Matrix z1 = lift_operator(tensor(pauli_z(), Matrix::identity(2)), Party::alice);
    CHECK(std::abs(expectation(psi, z1)) <= kTol);

    const Matrix z2 = lift_operator(tensor(pauli_z(), Matrix::identity(2)), Party::bob);
    CHECK(std::abs(expectation(psi, z1 * z2) - Complex(1, 0)) <= kTol);
}

TEST_CASE("expectation of projector pairs sums to 1 on random states") {
    SplitMix64 rng(20250809);
    const QuantumSetup setup = builtin_setup();
    const char* labels[] = {"X", "Y", "Z", "x", "y", "z"};
    for (int trial = 0; trial < 25; ++trial) {
        const StateVector v = random_state(rng, 16);
        const Matrix obs = lift_operator(
            setup.op(trial % 2 == 0 ? Party::alice : Party::bob, labels[trial % 6]),
            trial % 2 == 0 ? Party::alice : Party::bob);
        const Complex total = expectation(v, projector(obs, +1)) +
                              expectation(v, projector(obs, -1));
        CHECK(std::abs(total - Complex(1, 0)) <= kTol);
    }
}

TEST_CASE("constructors reject malformed values") {
    CHECK_THROWS_AS(Matrix(2, 2, {Complex(0, 0), Complex(1, 0)}), std::invalid_argument);
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_THROWS_AS(Matrix(1, 1, {Complex(nan, 0)}), std::invalid_argument);
    CHECK_THROWS_AS(StateVector({Complex(1, 0), Complex(1, 0)}), std::invalid_argument);
    CHECK_THROWS_AS(StateVector({Complex(0.5, 0)}), std::invalid_argument);
}

TEST_CASE("hermitian and involution checks") {
    CHECK(pauli_y().is_hermitian());
    CHECK(pauli_y().is_involutory());
    Matrix skew(2, 2, {Complex(0, 0), Complex(0, 1), Complex(0, 1), Complex(0, 0)});
    CHECK(!skew.is_hermitian());
    CHECK(!Matrix(2, 3).is_hermitian());
}
