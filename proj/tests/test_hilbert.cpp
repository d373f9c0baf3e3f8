// Copyright 2026 The qcorr Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <doctest.h>

#include "qcorr/hilbert.hpp"
#include "qcorr/states.hpp"
#include "testutil.hpp"

using namespace qcorr;

TEST_CASE("flatten/unflatten round-trips exhaustively") {
    for (const SpaceSpec space : {SpaceSpec{1, 7}, SpaceSpec{2, 9}, SpaceSpec{3, 4},
                                  SpaceSpec{4, 3}, SpaceSpec{8, 2}}) {
        const std::size_t dim = space.total_dimension();
        REQUIRE(dim <= 10000);
        for (std::size_t flat = 0; flat < dim; ++flat) {
            const Levels levels = unflatten(space, flat);
            CHECK(flatten(space, levels) == flat);
        }
    }
}

TEST_CASE("flattening is row-major with subsystem 1 slowest") {
    const SpaceSpec space{3, 5};
    CHECK(flatten(space, std::vector<int>{1, 0, 0}) == 25);
    CHECK(flatten(space, std::vector<int>{0, 1, 0}) == 5);
    CHECK(flatten(space, std::vector<int>{0, 0, 1}) == 1);
    CHECK_THROWS_AS(flatten(space, std::vector<int>{0, 0, 5}), InvalidValue);
    CHECK_THROWS_AS(flatten(space, std::vector<int>{0, 0}), DimensionMismatch);
}

TEST_CASE("occupations count level multiplicities") {
    const SpaceSpec space{4, 3};
    const auto counts = occupations(space, std::vector<int>{2, 0, 2, 2});
    CHECK(counts == std::vector<int>{1, 0, 3});
}

TEST_CASE("permutation parity matches inversion count and multiplies") {
    auto swap01 = Permutation::from_one_line({1, 0, 2});
    CHECK(swap01.parity() == -1);
    auto cycle = Permutation::from_one_line({1, 2, 0});
    CHECK(cycle.parity() == +1);

    auto gen = test::rng(7);
    const auto perms = Permutation::all(4);
    std::uniform_int_distribution<std::size_t> pick(0, perms.size() - 1);
    for (int trial = 0; trial < 50; ++trial) {
        const auto& a = perms[pick(gen)];
        const auto& b = perms[pick(gen)];
        CHECK(a.compose(b).parity() == a.parity() * b.parity());
    }
    CHECK_THROWS_AS(Permutation::from_one_line({0, 0, 1}), InvalidValue);
}

TEST_CASE("tensor product on basis kets and norms") {
    const StateVector p01 = tensor_product(StateVector::basis_ket(0, 2),
                                           StateVector::basis_ket(1, 2));
    CHECK(p01.amplitude(std::size_t{1}) == Complex(1.0, 0.0));
    CHECK(p01.space().n_particles == 2);

    // |s_{0,1}> (x) |s_{2,3}> has four amplitudes 1/2
    const StateVector psi2 =
        tensor_product(superposition_s(0, 1, 4), superposition_s(2, 3, 4));
    int nonzero = 0;
    for (Eigen::Index i = 0; i < psi2.amplitudes().size(); ++i) {
        if (std::abs(psi2.amplitudes()[i]) > 0) {
            ++nonzero;
            CHECK(std::abs(psi2.amplitudes()[i] - Complex(0.5, 0.0)) < 1e-15);
        }
    }
    CHECK(nonzero == 4);

    auto gen = test::rng(11);
    for (int trial = 0; trial < 20; ++trial) {
        const StateVector a = test::random_state(gen, SpaceSpec{1, 5});
        const StateVector b = test::random_state(gen, SpaceSpec{2, 5});
        CHECK(tensor_product(a, b).norm() == doctest::Approx(1.0).epsilon(1e-12));
    }

    CHECK_THROWS_AS(tensor_product(StateVector::basis_ket(0, 2),
                                   StateVector::basis_ket(0, 3)),
                    DimensionMismatch);
}

TEST_CASE("apply_permutation moves subsystems and preserves norm") {
    const auto swapped = apply_permutation(
        Permutation::from_one_line({1, 0}),
        tensor_product(StateVector::basis_ket(0, 2), StateVector::basis_ket(1, 2)));
    CHECK(swapped.amplitude(std::vector<int>{1, 0}) == Complex(1.0, 0.0));

    auto gen = test::rng(3);
    const StateVector psi = test::random_state(gen, SpaceSpec{3, 3});
    const auto id = apply_permutation(Permutation::identity(3), psi);
    CHECK((id.amplitudes() - psi.amplitudes()).norm() == doctest::Approx(0.0));

    // a 3-cycle has order three
    const auto cycle = Permutation::from_one_line({1, 2, 0});
    StateVector rotated = psi;
    for (int i = 0; i < 3; ++i) rotated = apply_permutation(cycle, rotated);
    CHECK((rotated.amplitudes() - psi.amplitudes()).norm() < 1e-12);

    CHECK_THROWS_AS(apply_permutation(Permutation::identity(2), psi),
                    DimensionMismatch);
}

TEST_CASE("permutation operators are unitary") {
    auto gen = test::rng(5);
    const SpaceSpec space{3, 3};
    for (const auto& sigma : Permutation::all(3)) {
        const StateVector psi = test::random_state(gen, space);
        CHECK(apply_permutation(sigma, psi).norm() ==
              doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("symmetrizer traces, idempotence, completeness") {
    const auto plus = symmetrizer(SpaceSpec{2, 2}, +1);
    const auto minus = symmetrizer(SpaceSpec{2, 2}, -1);
    CHECK(plus.matrix().trace().real() == doctest::Approx(3.0).epsilon(1e-13));
    CHECK(minus.matrix().trace().real() == doctest::Approx(1.0).epsilon(1e-13));

    // two-particle parity split: Pi_+ + Pi_- = I
    const Matrix sum = plus.matrix() + minus.matrix();
    CHECK((sum - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);

    // d < N: the antisymmetric sector is empty
    const auto none = symmetrizer(SpaceSpec{3, 2}, -1);
    CHECK(none.matrix().cwiseAbs().maxCoeff() < 1e-12);

    for (const SpaceSpec space : {SpaceSpec{2, 3}, SpaceSpec{3, 2}, SpaceSpec{3, 4}}) {
        for (int sign : {+1, -1}) {
            const Matrix pi = symmetrizer(space, sign).matrix();
            CHECK((pi * pi - pi).cwiseAbs().maxCoeff() < 1e-12);
            CHECK((pi - pi.adjoint()).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("symmetrizer trace equals subspace dimension (N <= 4, d <= 6)") {
    for (int n = 2; n <= 4; ++n) {
        for (int d = 1; d <= 6; ++d) {
            const SpaceSpec space{n, d};
            const double tr_plus = symmetrizer(space, +1).matrix().trace().real();
            const double tr_minus = symmetrizer(space, -1).matrix().trace().real();
            CHECK(tr_plus == doctest::Approx(static_cast<double>(
                                 subspace_dimension(space, SymmetryClass::Bosonic)))
                                 .epsilon(1e-12));
            CHECK(tr_minus == doctest::Approx(static_cast<double>(
                                  subspace_dimension(space, SymmetryClass::Fermionic)))
                                  .epsilon(1e-12));
        }
    }
}

TEST_CASE("project_symmetrize basics") {
    const StateVector p01 = tensor_product(StateVector::basis_ket(0, 2),
                                           StateVector::basis_ket(1, 2));
    const StateVector singlet = project_symmetrize(p01, -1);
    const double w = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(singlet.amplitude(std::vector<int>{0, 1}) - Complex(w, 0)) < 1e-14);
    CHECK(std::abs(singlet.amplitude(std::vector<int>{1, 0}) - Complex(-w, 0)) < 1e-14);

    const StateVector p00 = tensor_product(StateVector::basis_ket(0, 2),
                                           StateVector::basis_ket(0, 2));
    CHECK_THROWS_AS(project_symmetrize(p00, -1), NullProjection);

    const StateVector p001 = tensor_product(
        tensor_product(StateVector::basis_ket(0, 2), StateVector::basis_ket(0, 2)),
        StateVector::basis_ket(1, 2));
    const StateVector w3 = project_symmetrize(p001, +1);
    const double v = 1.0 / std::sqrt(3.0);
    CHECK(std::abs(w3.amplitude(std::vector<int>{0, 0, 1}) - Complex(v, 0)) < 1e-14);
    CHECK(std::abs(w3.amplitude(std::vector<int>{0, 1, 0}) - Complex(v, 0)) < 1e-14);
    CHECK(std::abs(w3.amplitude(std::vector<int>{1, 0, 0}) - Complex(v, 0)) < 1e-14);
}

TEST_CASE("expectation values") {
    const StateVector s = superposition_s(0, 1, 3);
    CHECK(expectation(HermitianOperator::projector(s), s) ==
          doctest::Approx(1.0).epsilon(1e-13));
    CHECK(expectation(HermitianOperator::projector(StateVector::basis_ket(0, 3)), s) ==
          doctest::Approx(0.5).epsilon(1e-13));

    auto gen = test::rng(13);
    const SpaceSpec space{2, 3};
    for (int trial = 0; trial < 100; ++trial) {
        const auto L = test::random_hermitian(gen, space);
        const auto psi = test::random_state(gen, space);
        CHECK_NOTHROW(expectation(L, psi));  // asserts the imaginary residue
    }

    CHECK_THROWS_AS(expectation(HermitianOperator::identity(SpaceSpec{1, 2}),
                                StateVector::basis_ket(0, 3)),
                    DimensionMismatch);
    CHECK_THROWS_AS(
        expectation(HermitianOperator::identity(SpaceSpec{1, 2}),
                    StateVector::raw(SpaceSpec{1, 2}, Vector::Ones(2))),
        InvalidValue);
}

TEST_CASE("enumeration caps at eight particles") {
    CHECK_THROWS_AS(Permutation::all(9), InvalidValue);
    CHECK_THROWS_AS(symmetrizer(SpaceSpec{9, 2}, +1), InvalidValue);
}

TEST_CASE("subspace dimensions") {
    CHECK(subspace_dimension(SpaceSpec{2, 4}, SymmetryClass::Distinguishable) == 16);
    CHECK(subspace_dimension(SpaceSpec{2, 4}, SymmetryClass::Bosonic) == 10);
    CHECK(subspace_dimension(SpaceSpec{3, 2}, SymmetryClass::Fermionic) == 0);
    CHECK(subspace_dimension(SpaceSpec{3, 6}, SymmetryClass::Fermionic) == 20);
}

TEST_CASE("state construction validates") {
    CHECK_THROWS_AS(StateVector::normalized(SpaceSpec{1, 2}, Vector::Ones(2)),
                    InvalidValue);
    CHECK_THROWS_AS(StateVector::normalized(SpaceSpec{1, 3}, Vector::Ones(2)),
                    DimensionMismatch);
    Matrix bad(2, 2);
    bad << Complex(0, 0), Complex(1, 0), Complex(2, 0), Complex(0, 0);
    CHECK_THROWS_AS(HermitianOperator::from_matrix(SpaceSpec{1, 2}, bad),
                    InvalidValue);
}
