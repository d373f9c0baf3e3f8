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

#ifndef QCORR_TESTS_TESTUTIL_HPP
#define QCORR_TESTS_TESTUTIL_HPP

// Shared helpers for the test suites. The oracle routines here deliberately
// avoid the library's bound-evaluation code paths: classical states are
// materialized through the tensor/projection primitives and expectation
// values are taken over the amplitude support, so enumeration-based results
// can be cross-checked against an independent route.

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "qcorr/coherence.hpp"
#include "qcorr/hilbert.hpp"

namespace qcorr::test {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Vector random_complex_vector(std::mt19937_64& gen, Eigen::Index dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v[i] = Complex(gauss(gen), gauss(gen));
    }
    return v;
}

inline StateVector random_state(std::mt19937_64& gen, const SpaceSpec& space) {
    return StateVector::normalize(
        space, random_complex_vector(gen, static_cast<Eigen::Index>(space.total_dimension())));
}

inline HermitianOperator random_hermitian(std::mt19937_64& gen, const SpaceSpec& space) {
    const auto dim = static_cast<Eigen::Index>(space.total_dimension());
    Matrix a(dim, dim);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < dim; ++c) {
            a(r, c) = Complex(gauss(gen), gauss(gen));
        }
    }
    Matrix h = 0.5 * (a + a.adjoint());
    return HermitianOperator::from_matrix(space, std::move(h));
}

/// <c|L|c> evaluated over the nonzero amplitudes of c only; independent of
/// the library's tuple/orbit machinery.
inline double support_expectation(const Matrix& l, const Vector& c,
                                  double cutoff = 1e-14) {
    std::vector<Eigen::Index> support;
    for (Eigen::Index i = 0; i < c.size(); ++i) {
        if (std::abs(c[i]) > cutoff) support.push_back(i);
    }
    Complex acc = 0.0;
    for (Eigen::Index r : support) {
        for (Eigen::Index col : support) {
            acc += std::conj(c[r]) * l(r, col) * c[col];
        }
    }
    return acc.real();
}

/// Brute-force incoherent bound: materialize every classical state of the
/// family with basis products and Pi_± projections, then maximize the
/// support-restricted expectation.
inline double brute_force_bound(const HermitianOperator& L, SymmetryClass sym) {
    double best = -std::numeric_limits<double>::infinity();
    for_each_classical_tuple(L.space(), sym, [&](std::span<const int> tuple) {
        StateVector c = StateVector::basis_ket(L.space(), tuple);
        if (sym != SymmetryClass::Distinguishable) {
            c = project_symmetrize(c, exchange_sign(sym));
        }
        best = std::max(best, support_expectation(L.matrix(), c.amplitudes()));
    });
    return best;
}

/// Adaptive Simpson quadrature (test oracle for the dephasing integrals).
inline double simpson_recurse(const std::function<double(double)>& f, double a,
                              double b, double fa, double fm, double fb,
                              double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m);
    const double rm = 0.5 * (m + b);
    const double flm = f(lm);
    const double frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    if (depth <= 0 || std::abs(delta) < 15.0 * tol) {
        return left + right + delta / 15.0;
    }
    return simpson_recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson_recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a, double b,
                        double tol = 1e-12) {
    const double m = 0.5 * (a + b);
    const double fa = f(a);
    const double fm = f(m);
    const double fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson_recurse(f, a, b, fa, fm, fb, whole, tol, 40);
}

/// Phase-averaged expectation of the diagonal-pair operator by direct
/// quadrature of (1-k^2) / (1 + k^2 - 2k cos(2phi)) over the dephasing box.
inline double quadrature_chi_expectation(double kappa, double delta_phi) {
    const auto integrand = [kappa](double phi) {
        const double denominator =
            1.0 + kappa * kappa - 2.0 * kappa * std::cos(2.0 * phi);
        return (1.0 - kappa * kappa) / denominator;
    };
    return integrate(integrand, -0.5 * delta_phi, 0.5 * delta_phi) / delta_phi;
}

}  // namespace qcorr::test

#endif  // QCORR_TESTS_TESTUTIL_HPP
