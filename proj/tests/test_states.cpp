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

#include "qcorr/states.hpp"
#include "testutil.hpp"

using namespace qcorr;

TEST_CASE("superposition_s amplitudes and errors") {
    const StateVector s = superposition_s(1, 2, 3);
    const double w = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(s.amplitude(std::size_t{0})) == 0.0);
    CHECK(std::abs(s.amplitude(std::size_t{1}) - Complex(w, 0)) < 1e-15);
    CHECK(std::abs(s.amplitude(std::size_t{2}) - Complex(w, 0)) < 1e-15);
    CHECK(s.norm() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(superposition_s(1, 1, 3), InvalidValue);
    CHECK_THROWS_AS(superposition_s(0, 3, 3), InvalidValue);
}

TEST_CASE("example states match their closed forms") {
    const StateVector psi3 = example_state(3, SymmetryClass::Distinguishable);
    const double w = 1.0 / std::sqrt(2.0);
    CHECK(std::abs(psi3.amplitude(std::vector<int>{0, 1}) - Complex(w, 0)) < 1e-14);
    CHECK(std::abs(psi3.amplitude(std::vector<int>{2, 3}) - Complex(w, 0)) < 1e-14);

    const StateVector psi3p = example_state(3, SymmetryClass::Bosonic);
    for (const auto& idx : {std::vector<int>{0, 1}, std::vector<int>{1, 0},
                            std::vector<int>{2, 3}, std::vector<int>{3, 2}}) {
        CHECK(std::abs(psi3p.amplitude(idx) - Complex(0.5, 0)) < 1e-14);
    }

    const StateVector psi3m = example_state(3, SymmetryClass::Fermionic);
    CHECK(std::abs(psi3m.amplitude(std::vector<int>{0, 1}) - Complex(0.5, 0)) < 1e-14);
    CHECK(std::abs(psi3m.amplitude(std::vector<int>{1, 0}) - Complex(-0.5, 0)) < 1e-14);

    // the symmetrized tripartite state has 12 amplitudes of magnitude 1/sqrt(12)
    const StateVector psi4p = example_state(4, SymmetryClass::Bosonic);
    int nonzero = 0;
    const double a = 1.0 / std::sqrt(12.0);
    for (Eigen::Index i = 0; i < psi4p.amplitudes().size(); ++i) {
        const double mag = std::abs(psi4p.amplitudes()[i]);
        if (mag > 1e-14) {
            ++nonzero;
            CHECK(mag == doctest::Approx(a).epsilon(1e-12));
        }
    }
    CHECK(nonzero == 12);
}

TEST_CASE("projected examples are normalized fixed points of Pi_pm") {
    for (int n = 1; n <= 5; ++n) {
        for (const auto sym : {SymmetryClass::Bosonic, SymmetryClass::Fermionic}) {
            const StateVector psi = example_state(n, sym);
            CHECK(psi.norm() == doctest::Approx(1.0).epsilon(1e-13));
            const StateVector projected = symmetrize_raw(psi, exchange_sign(sym));
            CHECK((projected.amplitudes() - psi.amplitudes()).cwiseAbs().maxCoeff() <
                  1e-12);
        }
        CHECK(example_state(n, SymmetryClass::Distinguishable).norm() ==
              doctest::Approx(1.0).epsilon(1e-13));
    }
}

TEST_CASE("example state lookup by name") {
    CHECK(example_state("psi2_plus").space().local_dim == 4);
    CHECK(example_state("psi5_minus").space().local_dim == 6);
    CHECK(example_state("chi_kappa").space().n_particles == 2);
    CHECK_THROWS_AS(example_state("psi6_0"), InvalidValue);
    CHECK_THROWS_AS(example_state("nonsense"), InvalidValue);
}

TEST_CASE("tmsv truncation and symmetry") {
    TMSVParams vacuum;
    vacuum.kappa = 0.0;
    vacuum.n_max = 4;
    const StateVector zero = tmsv(vacuum);
    CHECK(std::abs(zero.amplitude(std::vector<int>{0, 0}) - Complex(1, 0)) < 1e-14);

    TMSVParams params;
    params.kappa = 0.5;
    params.n_max = 64;
    // geometric tail: kappa^(2(n_max+1)) = 2^-130
    CHECK(tmsv_truncated_weight(params) ==
          doctest::Approx(std::pow(2.0, -130)).epsilon(1e-12));
    CHECK(tmsv_truncated_weight(params) <= 1e-39);
    const StateVector chi_k = tmsv(params);
    // amplitudes proportional to kappa^k on the diagonal pairs
    const Complex a0 = chi_k.amplitude(std::vector<int>{0, 0});
    const Complex a3 = chi_k.amplitude(std::vector<int>{3, 3});
    CHECK(std::abs(a3 / a0 - Complex(0.125, 0)) < 1e-13);
    CHECK(std::abs(chi_k.amplitude(std::vector<int>{0, 1})) == 0.0);

    TMSVParams small = params;
    small.n_max = 6;
    const StateVector chi_s = tmsv(small);
    const StateVector projected = project_symmetrize(chi_s, +1);
    CHECK((projected.amplitudes() - chi_s.amplitudes()).cwiseAbs().maxCoeff() < 1e-13);
}

TEST_CASE("chi vector counting and overlap with the squeezed state") {
    const StateVector chi1 = chi_vector(1);
    CHECK(std::abs(chi1.amplitude(std::vector<int>{0, 0}) - Complex(1, 0)) < 1e-15);
    CHECK(std::abs(chi1.amplitude(std::vector<int>{1, 1}) - Complex(1, 0)) < 1e-15);
    CHECK(!chi1.is_normalized());

    for (int n_max : {1, 5, 32}) {
        const StateVector chi = chi_vector(n_max);
        CHECK(chi.amplitudes().squaredNorm() ==
              doctest::Approx(n_max + 1.0).epsilon(1e-13));
    }

    // geometric sum: <chi|chi_kappa> = sqrt(1-k^2) (1-k^(n+1))/(1-k)
    TMSVParams params;
    params.kappa = 0.5;
    params.n_max = 64;
    const StateVector chi = chi_vector(params.n_max);
    const Complex overlap = chi.amplitudes().dot(tmsv(params).amplitudes());
    const double expected = std::sqrt(1.0 - 0.25) *
                            (1.0 - std::pow(0.5, params.n_max + 1)) / 0.5;
    CHECK(std::abs(overlap - Complex(expected, 0)) < 1e-12);
}

TEST_CASE("dephased state: limits, trace, positivity") {
    TMSVParams params;
    params.kappa = 0.5;
    params.n_max = 20;

    SUBCASE("no dephasing reproduces the pure squeezed state") {
        params.delta_phi = 0.0;
        const DensityMatrix rho = dephased_tmsv(params);
        const StateVector chi_k = tmsv(params);
        const Matrix outer = chi_k.amplitudes() * chi_k.amplitudes().adjoint();
        CHECK((rho.matrix() - outer).cwiseAbs().maxCoeff() < 1e-12);
    }

    SUBCASE("full dephasing kills every off-diagonal pair") {
        params.delta_phi = M_PI;
        const Matrix block = dephased_pair_block(params);
        for (int k = 0; k <= params.n_max; ++k) {
            for (int l = 0; l <= params.n_max; ++l) {
                if (k != l) {
                    CHECK(std::abs(block(k, l)) < 1e-14);
                }
            }
        }
        const DensityMatrix rho = dephased_tmsv(params);
        // <chi|rho_pi|chi> = 1 up to the truncated weight
        const double val = expectation_rank_one(chi_vector(params.n_max), rho);
        CHECK(val == doctest::Approx(1.0 - tmsv_truncated_weight(params))
                         .epsilon(1e-13));
        CHECK(val == doctest::Approx(1.0).epsilon(1e-6));
    }

    SUBCASE("trace equals one minus the truncated weight") {
        for (double kappa : {0.5, 0.9}) {
            for (double dphi : {0.0, 1.3, M_PI}) {
                TMSVParams p;
                p.kappa = kappa;
                p.delta_phi = dphi;
                p.n_max = 64;
                const Matrix block = dephased_pair_block(p);
                CHECK(block.trace().real() ==
                      doctest::Approx(1.0 - tmsv_truncated_weight(p)).epsilon(1e-12));
            }
        }
    }

    SUBCASE("density invariants at moderate truncation") {
        params.n_max = 12;
        for (double dphi : {0.0, 0.4, 1.7, M_PI}) {
            params.delta_phi = dphi;
            const DensityMatrix rho = dephased_tmsv(params);
            CHECK((rho.matrix() - rho.matrix().adjoint()).cwiseAbs().maxCoeff() <
                  1e-12);
            // re-validate through the checking constructor (PSD, trace)
            CHECK_NOTHROW(DensityMatrix::from_matrix(
                rho.space(), rho.matrix(), rho.trace_deficit() + 1e-10));
        }
    }

    SUBCASE("off-diagonal magnitudes decrease with the dephasing width") {
        params.n_max = 8;
        const std::vector<double> widths{0.2, 0.5, 1.0, 1.8, 2.6, M_PI};
        std::vector<Matrix> blocks;
        for (double dphi : widths) {
            params.delta_phi = dphi;
            blocks.push_back(dephased_pair_block(params));
        }
        for (std::size_t i = 0; i + 1 < widths.size(); ++i) {
            for (int k = 0; k <= params.n_max; ++k) {
                for (int l = 0; l <= params.n_max; ++l) {
                    const double m = std::abs(k - l) * 1.0;
                    if (m * widths[i + 1] <= M_PI && m * widths[i] <= M_PI) {
                        CHECK(std::abs(blocks[i + 1](k, l)) <=
                              std::abs(blocks[i](k, l)) + 1e-12);
                    }
                }
            }
        }
    }
}

TEST_CASE("analytic dephased expectation: limits and quadrature oracle") {
    CHECK(chi_expectation_analytic(0.5, 0.0) == doctest::Approx(3.0).epsilon(1e-14));
    CHECK(chi_expectation_analytic(0.5, M_PI) == doctest::Approx(1.0).epsilon(1e-14));
    CHECK_THROWS_AS(chi_expectation_analytic(1.0, 0.5), InvalidValue);

    for (double kappa = 0.1; kappa < 0.95; kappa += 0.1) {
        for (double dphi = 0.1; dphi < 3.15; dphi += 0.1) {
            const double closed = chi_expectation_analytic(kappa, dphi);
            const double quad = test::quadrature_chi_expectation(kappa, dphi);
            CHECK(closed == doctest::Approx(quad).epsilon(1e-9));
        }
    }
}

TEST_CASE("analytic expectation matches the truncated matrix") {
    TMSVParams params;
    params.kappa = 0.5;
    params.n_max = 64;
    for (double dphi : {0.0, 0.3, 1.0471975512, 2.2, M_PI}) {
        params.delta_phi = dphi;
        const double numeric = chi_expectation_numeric(params);
        const double analytic = chi_expectation_analytic(params.kappa, dphi);
        CHECK(numeric == doctest::Approx(analytic).epsilon(1e-8));
    }

    // the pair-block shortcut agrees with the dense bipartite expectation
    params.n_max = 12;
    params.delta_phi = 0.9;
    const double direct =
        expectation_rank_one(chi_vector(params.n_max), dephased_tmsv(params));
    CHECK(chi_expectation_numeric(params) == doctest::Approx(direct).epsilon(1e-13));
}

TEST_CASE("density matrix validation") {
    Matrix not_unit = 0.6 * Matrix::Identity(2, 2);
    CHECK_THROWS_AS(DensityMatrix::from_matrix(SpaceSpec{1, 2}, not_unit),
                    InvalidValue);
    Matrix negative(2, 2);
    negative << Complex(1.5, 0), Complex(0, 0), Complex(0, 0), Complex(-0.5, 0);
    CHECK_THROWS_AS(DensityMatrix::from_matrix(SpaceSpec{1, 2}, negative),
                    InvalidValue);
    const DensityMatrix pure = DensityMatrix::pure(superposition_s(0, 1, 2));
    CHECK(expectation(HermitianOperator::projector(superposition_s(0, 1, 2)), pure) ==
          doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("tmsv parameter validation") {
    TMSVParams bad;
    bad.kappa = 1.0;
    CHECK_THROWS_AS(tmsv(bad), InvalidValue);
    bad.kappa = 0.5;
    bad.delta_phi = 4.0;
    CHECK_THROWS_AS(dephased_tmsv(bad), InvalidValue);
    bad.delta_phi = 0.0;
    bad.n_max = 0;
    CHECK_THROWS_AS(tmsv(bad), InvalidValue);
}
