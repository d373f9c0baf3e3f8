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

#include "qcorr/hilbert.hpp"

#include <algorithm>
#include <limits>
#include <numeric>

namespace qcorr {

namespace {

void check_space(const SpaceSpec& space) {
    if (space.n_particles < 1 || space.local_dim < 1) {
        throw InvalidValue("SpaceSpec requires N >= 1 and d >= 1");
    }
}

std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::uint64_t result = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
        // overflow guard: result * (n-k+i) must fit
        std::uint64_t num = n - k + i;
        if (result > std::numeric_limits<std::uint64_t>::max() / num) {
            throw InvalidValue("binomial coefficient overflows 64 bits");
        }
        result = result * num / i;
    }
    return result;
}

}  // namespace

int exchange_sign(SymmetryClass sym) {
    switch (sym) {
        case SymmetryClass::Bosonic: return +1;
        case SymmetryClass::Fermionic: return -1;
        case SymmetryClass::Distinguishable: return 0;
    }
    return 0;
}

const char* to_string(SymmetryClass sym) {
    switch (sym) {
        case SymmetryClass::Distinguishable: return "distinguishable";
        case SymmetryClass::Bosonic: return "bosonic";
        case SymmetryClass::Fermionic: return "fermionic";
    }
    return "?";
}

std::size_t SpaceSpec::total_dimension() const {
    check_space(*this);
    std::size_t dim = 1;
    const auto d = static_cast<std::size_t>(local_dim);
    for (int j = 0; j < n_particles; ++j) {
        if (d != 0 && dim > std::numeric_limits<std::size_t>::max() / d) {
            throw InvalidValue("total dimension d^N overflows the index range");
        }
        dim *= d;
    }
    return dim;
}

std::size_t flatten(const SpaceSpec& space, std::span<const int> levels) {
    if (static_cast<int>(levels.size()) != space.n_particles) {
        throw DimensionMismatch("multi-index length does not match particle number");
    }
    std::size_t flat = 0;
    for (int k : levels) {
        if (k < 0 || k >= space.local_dim) {
            throw InvalidValue("level index out of range [0, d)");
        }
        flat = flat * static_cast<std::size_t>(space.local_dim) + static_cast<std::size_t>(k);
    }
    return flat;
}

Levels unflatten(const SpaceSpec& space, std::size_t flat) {
    if (flat >= space.total_dimension()) {
        throw InvalidValue("flat index out of range");
    }
    Levels levels(static_cast<std::size_t>(space.n_particles));
    const auto d = static_cast<std::size_t>(space.local_dim);
    for (int j = space.n_particles - 1; j >= 0; --j) {
        levels[static_cast<std::size_t>(j)] = static_cast<int>(flat % d);
        flat /= d;
    }
    return levels;
}

std::vector<int> occupations(const SpaceSpec& space, std::span<const int> levels) {
    std::vector<int> counts(static_cast<std::size_t>(space.local_dim), 0);
    for (int k : levels) {
        if (k < 0 || k >= space.local_dim) {
            throw InvalidValue("level index out of range [0, d)");
        }
        ++counts[static_cast<std::size_t>(k)];
    }
    return counts;
}

// ---------------------------------------------------------------------------
// Permutation

namespace {

int inversion_parity(const std::vector<int>& image) {
    int inversions = 0;
    for (std::size_t i = 0; i < image.size(); ++i) {
        for (std::size_t j = i + 1; j < image.size(); ++j) {
            if (image[i] > image[j]) ++inversions;
        }
    }
    return (inversions % 2 == 0) ? 1 : -1;
}

}  // namespace

Permutation Permutation::identity(int n) {
    std::vector<int> image(static_cast<std::size_t>(n));
    std::iota(image.begin(), image.end(), 0);
    return Permutation(std::move(image), 1);
}

Permutation Permutation::from_one_line(std::vector<int> image) {
    const int n = static_cast<int>(image.size());
    std::vector<bool> seen(static_cast<std::size_t>(n), false);
    for (int v : image) {
        if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)]) {
            throw InvalidValue("permutation image is not a bijection on {0,...,N-1}");
        }
        seen[static_cast<std::size_t>(v)] = true;
    }
    const int parity = inversion_parity(image);
    return Permutation(std::move(image), parity);
}

std::vector<Permutation> Permutation::all(int n) {
    if (n < 1 || n > kMaxParticles) {
        throw InvalidValue("permutation enumeration supports 1 <= N <= 8");
    }
    std::vector<int> image(static_cast<std::size_t>(n));
    std::iota(image.begin(), image.end(), 0);
    std::vector<Permutation> result;
    do {
        result.push_back(from_one_line(image));
    } while (std::next_permutation(image.begin(), image.end()));
    return result;
}

Permutation Permutation::compose(const Permutation& inner) const {
    if (size() != inner.size()) {
        throw DimensionMismatch("permutation sizes differ");
    }
    std::vector<int> image(image_.size());
    for (std::size_t j = 0; j < image_.size(); ++j) {
        image[j] = image_[static_cast<std::size_t>(inner.image_[j])];
    }
    return Permutation(std::move(image), parity_ * inner.parity_);
}

Permutation Permutation::inverse() const {
    std::vector<int> image(image_.size());
    for (std::size_t j = 0; j < image_.size(); ++j) {
        image[static_cast<std::size_t>(image_[j])] = static_cast<int>(j);
    }
    return Permutation(std::move(image), parity_);
}

// ---------------------------------------------------------------------------
// StateVector

StateVector StateVector::normalized(SpaceSpec space, Vector amps) {
    if (static_cast<std::size_t>(amps.size()) != space.total_dimension()) {
        throw DimensionMismatch("amplitude vector length does not match d^N");
    }
    const double n = amps.norm();
    if (std::abs(n - 1.0) > kConstructionTol) {
        throw InvalidValue("state vector is not normalized (||psi|| = " +
                           std::to_string(n) + ")");
    }
    return StateVector(space, std::move(amps), true);
}

StateVector StateVector::normalize(SpaceSpec space, Vector amps) {
    if (static_cast<std::size_t>(amps.size()) != space.total_dimension()) {
        throw DimensionMismatch("amplitude vector length does not match d^N");
    }
    const double n = amps.norm();
    if (n <= kNullTol) {
        throw InvalidValue("cannot normalize a (near-)zero vector");
    }
    amps /= n;
    return StateVector(space, std::move(amps), true);
}

StateVector StateVector::raw(SpaceSpec space, Vector amps) {
    if (static_cast<std::size_t>(amps.size()) != space.total_dimension()) {
        throw DimensionMismatch("amplitude vector length does not match d^N");
    }
    return StateVector(space, std::move(amps), false);
}

StateVector StateVector::basis_ket(const SpaceSpec& space, std::span<const int> levels) {
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(space.total_dimension()));
    amps[static_cast<Eigen::Index>(flatten(space, levels))] = Complex(1.0, 0.0);
    return StateVector(space, std::move(amps), true);
}

StateVector StateVector::basis_ket(int k, int d) {
    const int levels[1] = {k};
    return basis_ket(SpaceSpec{1, d}, levels);
}

Complex StateVector::amplitude(std::span<const int> levels) const {
    return amps_[static_cast<Eigen::Index>(flatten(space_, levels))];
}

// ---------------------------------------------------------------------------
// HermitianOperator

HermitianOperator HermitianOperator::from_matrix(SpaceSpec space, Matrix entries,
                                                 double tol) {
    const auto dim = static_cast<Eigen::Index>(space.total_dimension());
    if (entries.rows() != dim || entries.cols() != dim) {
        throw DimensionMismatch("operator matrix shape does not match d^N x d^N");
    }
    const double defect = (entries - entries.adjoint()).cwiseAbs().maxCoeff();
    if (defect > tol) {
        throw InvalidValue("matrix is not Hermitian (max |A - A^dag| = " +
                           std::to_string(defect) + ")");
    }
    return HermitianOperator(space, std::move(entries));
}

HermitianOperator HermitianOperator::projector(const StateVector& v) {
    Matrix m = v.amplitudes() * v.amplitudes().adjoint();
    return HermitianOperator(v.space(), std::move(m));
}

HermitianOperator HermitianOperator::identity(SpaceSpec space) {
    const auto dim = static_cast<Eigen::Index>(space.total_dimension());
    return HermitianOperator(space, Matrix::Identity(dim, dim));
}

Complex HermitianOperator::entry(std::span<const int> bra, std::span<const int> ket) const {
    return entries_(static_cast<Eigen::Index>(flatten(space_, bra)),
                    static_cast<Eigen::Index>(flatten(space_, ket)));
}

// ---------------------------------------------------------------------------
// Operations

StateVector tensor_product(const StateVector& a, const StateVector& b) {
    if (a.space().local_dim != b.space().local_dim) {
        throw DimensionMismatch("tensor product requires equal local dimensions");
    }
    const SpaceSpec joint{a.space().n_particles + b.space().n_particles,
                          a.space().local_dim};
    const auto na = static_cast<Eigen::Index>(a.dimension());
    const auto nb = static_cast<Eigen::Index>(b.dimension());
    Vector amps(na * nb);
    for (Eigen::Index i = 0; i < na; ++i) {
        amps.segment(i * nb, nb) = a.amplitudes()[i] * b.amplitudes();
    }
    if (a.is_normalized() && b.is_normalized()) {
        return StateVector::normalized(joint, std::move(amps));
    }
    return StateVector::raw(joint, std::move(amps));
}

Vector permute_amplitudes(const Permutation& sigma, const SpaceSpec& space,
                          const Vector& amps) {
    if (sigma.size() != space.n_particles) {
        throw DimensionMismatch("permutation arity does not match particle number");
    }
    const std::size_t dim = space.total_dimension();
    const int n = space.n_particles;
    Vector out = Vector::Zero(static_cast<Eigen::Index>(dim));
    Levels in_levels(static_cast<std::size_t>(n));
    Levels out_levels(static_cast<std::size_t>(n));
    for (std::size_t flat = 0; flat < dim; ++flat) {
        // decode source index, place level j at output slot where
        // out[j] = in[sigma[j]]
        std::size_t rest = flat;
        const auto d = static_cast<std::size_t>(space.local_dim);
        for (int j = n - 1; j >= 0; --j) {
            in_levels[static_cast<std::size_t>(j)] = static_cast<int>(rest % d);
            rest /= d;
        }
        for (int j = 0; j < n; ++j) {
            out_levels[static_cast<std::size_t>(j)] =
                in_levels[static_cast<std::size_t>(sigma[j])];
        }
        out[static_cast<Eigen::Index>(flatten(space, out_levels))] +=
            amps[static_cast<Eigen::Index>(flat)];
    }
    return out;
}

StateVector apply_permutation(const Permutation& sigma, const StateVector& psi) {
    Vector out = permute_amplitudes(sigma, psi.space(), psi.amplitudes());
    if (psi.is_normalized()) {
        return StateVector::normalized(psi.space(), std::move(out));
    }
    return StateVector::raw(psi.space(), std::move(out));
}

HermitianOperator symmetrizer(const SpaceSpec& space, int sign) {
    if (sign != +1 && sign != -1) {
        throw InvalidValue("symmetrizer sign must be +1 or -1");
    }
    if (space.n_particles > kMaxParticles) {
        throw InvalidValue("symmetrizer supports N <= 8 (N! enumeration)");
    }
    const auto dim = static_cast<Eigen::Index>(space.total_dimension());
    const int n = space.n_particles;
    Matrix pi = Matrix::Zero(dim, dim);
    const auto perms = Permutation::all(n);
    const double inv_fact = 1.0 / static_cast<double>(perms.size());
    Levels out_levels(static_cast<std::size_t>(n));
    for (const auto& sigma : perms) {
        const double weight =
            inv_fact * (sign == -1 ? static_cast<double>(sigma.parity()) : 1.0);
        // P_sigma maps basis column x to row y with y_j = x_sigma[j]
        for (Eigen::Index col = 0; col < dim; ++col) {
            const Levels in_levels = unflatten(space, static_cast<std::size_t>(col));
            for (int j = 0; j < n; ++j) {
                out_levels[static_cast<std::size_t>(j)] =
                    in_levels[static_cast<std::size_t>(sigma[j])];
            }
            pi(static_cast<Eigen::Index>(flatten(space, out_levels)), col) += weight;
        }
    }
    return HermitianOperator::from_matrix(space, std::move(pi));
}

StateVector symmetrize_raw(const StateVector& psi, int sign) {
    if (sign != +1 && sign != -1) {
        throw InvalidValue("symmetrization sign must be +1 or -1");
    }
    const int n = psi.space().n_particles;
    if (n > kMaxParticles) {
        throw InvalidValue("symmetrization supports N <= 8 (N! enumeration)");
    }
    const auto perms = Permutation::all(n);
    Vector acc = Vector::Zero(static_cast<Eigen::Index>(psi.dimension()));
    for (const auto& sigma : perms) {
        const double w = (sign == -1) ? static_cast<double>(sigma.parity()) : 1.0;
        acc += w * permute_amplitudes(sigma, psi.space(), psi.amplitudes());
    }
    acc /= static_cast<double>(perms.size());
    return StateVector::raw(psi.space(), std::move(acc));
}

StateVector project_symmetrize(const StateVector& psi, int sign) {
    if (!psi.is_normalized()) {
        throw InvalidValue("project_symmetrize requires a normalized input");
    }
    StateVector projected = symmetrize_raw(psi, sign);
    const double n = projected.norm();
    if (n <= kNullTol) {
        throw NullProjection(
            std::string("state has no component in the ") +
            (sign > 0 ? "symmetric" : "antisymmetric") + " sector");
    }
    return StateVector::normalize(psi.space(), projected.amplitudes());
}

double expectation(const HermitianOperator& L, const StateVector& psi) {
    if (!(L.space() == psi.space())) {
        throw DimensionMismatch("operator and state live on different spaces");
    }
    if (!psi.is_normalized()) {
        throw InvalidValue("expectation requires a normalized state");
    }
    const Complex value = psi.amplitudes().dot(L.matrix() * psi.amplitudes());
    if (std::abs(value.imag()) >= 1e-10) {
        throw NumericalError("expectation has a non-negligible imaginary part");
    }
    return value.real();
}

std::uint64_t subspace_dimension(const SpaceSpec& space, SymmetryClass sym) {
    check_space(space);
    const auto n = static_cast<std::uint64_t>(space.n_particles);
    const auto d = static_cast<std::uint64_t>(space.local_dim);
    switch (sym) {
        case SymmetryClass::Distinguishable: {
            std::uint64_t dim = 1;
            for (std::uint64_t j = 0; j < n; ++j) {
                if (d != 0 && dim > std::numeric_limits<std::uint64_t>::max() / d) {
                    throw InvalidValue("d^N overflows 64 bits");
                }
                dim *= d;
            }
            return dim;
        }
        case SymmetryClass::Bosonic:
            return binomial(n + d - 1, n);
        case SymmetryClass::Fermionic:
            return binomial(d, n);  // zero when d < N
    }
    return 0;
}

}  // namespace qcorr
