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

#include "qcorr/states.hpp"

#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

namespace qcorr {

// ---------------------------------------------------------------------------
// DensityMatrix

DensityMatrix DensityMatrix::from_matrix(SpaceSpec space, Matrix entries,
                                         double trace_tol, double psd_tol) {
    const auto dim = static_cast<Eigen::Index>(space.total_dimension());
    if (entries.rows() != dim || entries.cols() != dim) {
        throw DimensionMismatch("density matrix shape does not match d^N x d^N");
    }
    const double herm_defect = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    if (herm_defect > kConstructionTol) {
        throw InvalidValue("density matrix is not Hermitian");
    }
    const double trace = entries.trace().real();
    if (std::abs(trace - 1.0) > trace_tol) {
        throw InvalidValue("density matrix trace differs from 1 by " +
                           std::to_string(trace - 1.0));
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(entries, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -psd_tol) {
        throw InvalidValue("density matrix has a negative eigenvalue");
    }
    return DensityMatrix(space, std::move(entries), 1.0 - trace);
}

DensityMatrix DensityMatrix::pure(const StateVector& psi) {
    if (!psi.is_normalized()) {
        throw InvalidValue("pure density matrix requires a normalized state");
    }
    Matrix m = psi.amplitudes() * psi.amplitudes().adjoint();
    return DensityMatrix(psi.space(), std::move(m), 0.0);
}

double expectation(const HermitianOperator& L, const DensityMatrix& rho) {
    if (!(L.space() == rho.space())) {
        throw DimensionMismatch("operator and state live on different spaces");
    }
    const Complex value =
        (rho.matrix().array() * L.matrix().transpose().array()).sum();
    if (std::abs(value.imag()) >= 1e-10) {
        throw NumericalError("tr[rho L] has a non-negligible imaginary part");
    }
    return value.real();
}

double expectation_rank_one(const StateVector& v, const DensityMatrix& rho) {
    if (!(v.space() == rho.space())) {
        throw DimensionMismatch("test vector and state live on different spaces");
    }
    const Complex value = v.amplitudes().dot(rho.matrix() * v.amplitudes());
    if (std::abs(value.imag()) >= 1e-10) {
        throw NumericalError("<v|rho|v> has a non-negligible imaginary part");
    }
    return value.real();
}

// ---------------------------------------------------------------------------
// Elementary states

StateVector superposition_s(int k, int l, int d) {
    if (k == l) {
        throw InvalidValue("s_{k,l} requires k != l");
    }
    if (k < 0 || l < 0 || k >= d || l >= d) {
        throw InvalidValue("s_{k,l} level out of range [0, d)");
    }
    Vector amps = Vector::Zero(d);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    amps[k] = inv_sqrt2;
    amps[l] = inv_sqrt2;
    return StateVector::normalized(SpaceSpec{1, d}, std::move(amps));
}

namespace {

StateVector example_base(int n) {
    switch (n) {
        case 1:
            // |0> (x) |s_{1,2}|, d = 4
            return tensor_product(StateVector::basis_ket(0, 4), superposition_s(1, 2, 4));
        case 2:
            // |s_{0,1}> (x) |s_{2,3}>, d = 4
            return tensor_product(superposition_s(0, 1, 4), superposition_s(2, 3, 4));
        case 3: {
            // (|0>|1> + |2>|3>)/sqrt(2), d = 4
            const SpaceSpec space{2, 4};
            Vector amps = Vector::Zero(16);
            const double w = 1.0 / std::sqrt(2.0);
            amps[static_cast<Eigen::Index>(flatten(space, std::vector<int>{0, 1}))] = w;
            amps[static_cast<Eigen::Index>(flatten(space, std::vector<int>{2, 3}))] = w;
            return StateVector::normalized(space, std::move(amps));
        }
        case 4: {
            // |0> (x) (|1>|2> + |3>|4>)/sqrt(2), d = 5
            const SpaceSpec pair{2, 5};
            Vector bell = Vector::Zero(25);
            const double w = 1.0 / std::sqrt(2.0);
            bell[static_cast<Eigen::Index>(flatten(pair, std::vector<int>{1, 2}))] = w;
            bell[static_cast<Eigen::Index>(flatten(pair, std::vector<int>{3, 4}))] = w;
            return tensor_product(StateVector::basis_ket(0, 5),
                                  StateVector::normalized(pair, std::move(bell)));
        }
        case 5: {
            // (|0>|1>|2> + |3>|4>|5>)/sqrt(2), d = 6
            const SpaceSpec space{3, 6};
            Vector amps = Vector::Zero(216);
            const double w = 1.0 / std::sqrt(2.0);
            amps[static_cast<Eigen::Index>(flatten(space, std::vector<int>{0, 1, 2}))] = w;
            amps[static_cast<Eigen::Index>(flatten(space, std::vector<int>{3, 4, 5}))] = w;
            return StateVector::normalized(space, std::move(amps));
        }
        default:
            throw InvalidValue("example state index must be 1..5");
    }
}

}  // namespace

StateVector example_state(int n, SymmetryClass sym) {
    StateVector base = example_base(n);
    switch (sym) {
        case SymmetryClass::Distinguishable: return base;
        case SymmetryClass::Bosonic: return project_symmetrize(base, +1);
        case SymmetryClass::Fermionic: return project_symmetrize(base, -1);
    }
    throw InvalidValue("unknown symmetry class");
}

StateVector example_state(std::string_view name) {
    if (name == "chi_kappa") {
        return tmsv(TMSVParams{});
    }
    if (name.size() >= 6 && name.substr(0, 3) == "psi") {
        const char digit = name[3];
        if (digit >= '1' && digit <= '5' && name[4] == '_') {
            const std::string_view variant = name.substr(5);
            const int n = digit - '0';
            if (variant == "0") return example_state(n, SymmetryClass::Distinguishable);
            if (variant == "plus") return example_state(n, SymmetryClass::Bosonic);
            if (variant == "minus") return example_state(n, SymmetryClass::Fermionic);
        }
    }
    throw InvalidValue("unknown example state name: " + std::string(name));
}

// ---------------------------------------------------------------------------
// Continuous-variable family

void TMSVParams::validate() const {
    if (!(kappa >= 0.0 && kappa < 1.0)) {
        throw InvalidValue("kappa must satisfy 0 <= kappa < 1");
    }
    if (!(delta_phi >= 0.0 && delta_phi <= M_PI + 1e-12)) {
        throw InvalidValue("delta_phi must lie in [0, pi]");
    }
    if (n_max < 1) {
        throw InvalidValue("n_max must be >= 1");
    }
}

StateVector tmsv(const TMSVParams& params) {
    params.validate();
    const int d = params.n_max + 1;
    const SpaceSpec space{2, d};
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(space.total_dimension()));
    for (int k = 0; k <= params.n_max; ++k) {
        const std::vector<int> kk{k, k};
        amps[static_cast<Eigen::Index>(flatten(space, kk))] =
            std::pow(params.kappa, k);
    }
    return StateVector::normalize(space, std::move(amps));
}

double tmsv_truncated_weight(const TMSVParams& params) {
    params.validate();
    return std::pow(params.kappa, 2 * (params.n_max + 1));
}

StateVector chi_vector(int n_max) {
    if (n_max < 1) {
        throw InvalidValue("n_max must be >= 1");
    }
    const int d = n_max + 1;
    const SpaceSpec space{2, d};
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(space.total_dimension()));
    for (int k = 0; k <= n_max; ++k) {
        const std::vector<int> kk{k, k};
        amps[static_cast<Eigen::Index>(flatten(space, kk))] = 1.0;
    }
    return StateVector::raw(space, std::move(amps));
}

double sinc(double x) {
    if (x == 0.0) return 1.0;
    return std::sin(x) / x;
}

Matrix dephased_pair_block(const TMSVParams& params) {
    params.validate();
    const int d = params.n_max + 1;
    const double scale = 1.0 - params.kappa * params.kappa;
    Matrix block(d, d);
    for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
            block(k, l) = scale * std::pow(params.kappa, k + l) *
                          sinc(static_cast<double>(k - l) * params.delta_phi);
        }
    }
    return block;
}

DensityMatrix dephased_tmsv(const TMSVParams& params) {
    const Matrix block = dephased_pair_block(params);
    const int d = params.n_max + 1;
    const SpaceSpec space{2, d};

    // positivity and Hermiticity hold iff they hold on the pair block
    Eigen::SelfAdjointEigenSolver<Matrix> es(block, Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -1e-10) {
        throw NumericalError("dephased pair block has a negative eigenvalue");
    }

    const auto dim = static_cast<Eigen::Index>(space.total_dimension());
    Matrix rho = Matrix::Zero(dim, dim);
    for (int k = 0; k < d; ++k) {
        const auto row = static_cast<Eigen::Index>(
            flatten(space, std::vector<int>{k, k}));
        for (int l = 0; l < d; ++l) {
            const auto col = static_cast<Eigen::Index>(
                flatten(space, std::vector<int>{l, l}));
            rho(row, col) = block(k, l);
        }
    }
    const double deficit = tmsv_truncated_weight(params);
    return DensityMatrix(space, std::move(rho), deficit);
}

double chi_expectation_numeric(const TMSVParams& params) {
    const Matrix block = dephased_pair_block(params);
    const Complex total = block.sum();
    return total.real();
}

double chi_expectation_analytic(double kappa, double delta_phi) {
    if (!(kappa >= 0.0 && kappa < 1.0)) {
        throw InvalidValue("kappa must satisfy 0 <= kappa < 1");
    }
    if (!(delta_phi >= 0.0 && delta_phi <= M_PI + 1e-12)) {
        throw InvalidValue("delta_phi must lie in [0, pi]");
    }
    if (delta_phi == 0.0) {
        return (1.0 + kappa) / (1.0 - kappa);  // limit of the closed form
    }
    if (delta_phi >= M_PI - 1e-12) {
        return 1.0;  // arctan(+inf) limit
    }
    const double ratio = (1.0 + kappa) / (1.0 - kappa);
    return (2.0 / delta_phi) * std::atan(ratio * std::tan(0.5 * delta_phi));
}

}  // namespace qcorr
