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

#ifndef QCORR_HILBERT_HPP
#define QCORR_HILBERT_HPP

// Dense tensor algebra for N qudits of local dimension d: multi-index
// bookkeeping, tensor products, subsystem permutations, symmetric and
// antisymmetric projection, expectation values.
//
// Conventions, fixed once for the whole library and every serialized
// vector/matrix:
//   * Multi-index (k_1,...,k_N) flattens row-major with subsystem 1
//     slowest-varying: flat = sum_j k_j * d^(N-j).
//   * Vectors carrying the `normalized` flag satisfy ||psi|| = 1 within
//     1e-12; a projection whose norm falls below 1e-10 is treated as null.
//   * Projected states are returned normalized; unnormalized vectors exist
//     only as explicit "raw" values.
//
// All operations are pure functions of immutable inputs and are safe to
// call concurrently.

#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qcorr/errors.hpp"

namespace qcorr {

using Complex = std::complex<double>;
using Vector = Eigen::VectorXcd;
using Matrix = Eigen::MatrixXcd;

/// Tolerance for constructing normalized/Hermitian values.
inline constexpr double kConstructionTol = 1e-12;
/// Tolerance below which a projected vector counts as the null vector.
inline constexpr double kNullTol = 1e-10;
/// Largest particle number for which permutation sums are enumerated.
inline constexpr int kMaxParticles = 8;

// ---------------------------------------------------------------------------
// Spaces and multi-indices

enum class SymmetryClass { Distinguishable, Bosonic, Fermionic };

/// +1 for bosons, -1 for fermions, 0 for distinguishable particles.
int exchange_sign(SymmetryClass sym);
const char* to_string(SymmetryClass sym);

/// N qudits, each of local dimension d.
struct SpaceSpec {
    int n_particles = 1;
    int local_dim = 1;

    /// d^N; throws InvalidValue if the space is empty or the index range
    /// overflows.
    std::size_t total_dimension() const;

    bool operator==(const SpaceSpec&) const = default;
};

/// One level index per particle, values in [0, d).
using Levels = std::vector<int>;

/// Row-major flattening, subsystem 1 slowest-varying.
std::size_t flatten(const SpaceSpec& space, std::span<const int> levels);

/// Inverse of flatten.
Levels unflatten(const SpaceSpec& space, std::size_t flat);

/// Occupation counts N_k: how often each level k appears in the tuple.
std::vector<int> occupations(const SpaceSpec& space, std::span<const int> levels);

// ---------------------------------------------------------------------------
// Permutations of subsystems

/// A bijection sigma on {0,...,N-1} together with its parity (-1)^|sigma|.
class Permutation {
public:
    static Permutation identity(int n);
    /// One-line notation: position j maps to image[j]. Validates bijectivity.
    static Permutation from_one_line(std::vector<int> image);
    /// All permutations of n symbols in lexicographic order; n <= kMaxParticles.
    static std::vector<Permutation> all(int n);

    int size() const { return static_cast<int>(image_.size()); }
    int operator[](int j) const { return image_[static_cast<std::size_t>(j)]; }
    int parity() const { return parity_; }
    const std::vector<int>& image() const { return image_; }

    /// (*this) after `inner`: (a.compose(b))[j] = a[b[j]].
    Permutation compose(const Permutation& inner) const;
    Permutation inverse() const;

    bool operator==(const Permutation&) const = default;

private:
    Permutation(std::vector<int> image, int parity)
        : image_(std::move(image)), parity_(parity) {}

    std::vector<int> image_;
    int parity_ = 1;
};

// ---------------------------------------------------------------------------
// States and operators

/// Dense complex amplitude vector over a multi-qudit product space.
class StateVector {
public:
    /// A normalized vector; throws InvalidValue unless ||amps|| = 1 within
    /// kConstructionTol.
    static StateVector normalized(SpaceSpec space, Vector amps);
    /// Scales the input to unit norm; throws InvalidValue on (near-)zero input.
    static StateVector normalize(SpaceSpec space, Vector amps);
    /// An explicitly unnormalized vector (normalized flag unset).
    static StateVector raw(SpaceSpec space, Vector amps);
    /// Product basis ket |k_1,...,k_N>.
    static StateVector basis_ket(const SpaceSpec& space, std::span<const int> levels);
    /// Single-qudit basis ket |k> in dimension d.
    static StateVector basis_ket(int k, int d);

    const SpaceSpec& space() const { return space_; }
    const Vector& amplitudes() const { return amps_; }
    bool is_normalized() const { return normalized_; }
    double norm() const { return amps_.norm(); }
    std::size_t dimension() const { return static_cast<std::size_t>(amps_.size()); }

    Complex amplitude(std::span<const int> levels) const;
    Complex amplitude(std::size_t flat) const { return amps_[static_cast<Eigen::Index>(flat)]; }

private:
    StateVector(SpaceSpec space, Vector amps, bool normalized)
        : space_(space), amps_(std::move(amps)), normalized_(normalized) {}

    SpaceSpec space_;
    Vector amps_;
    bool normalized_ = false;
};

/// Dense Hermitian matrix on a multi-qudit space.
class HermitianOperator {
public:
    /// Validates Hermiticity entrywise within `tol`.
    static HermitianOperator from_matrix(SpaceSpec space, Matrix entries,
                                         double tol = kConstructionTol);
    /// Rank-one projector |v><v| (v may be unnormalized).
    static HermitianOperator projector(const StateVector& v);
    static HermitianOperator identity(SpaceSpec space);

    const SpaceSpec& space() const { return space_; }
    const Matrix& matrix() const { return entries_; }
    std::size_t dimension() const { return static_cast<std::size_t>(entries_.rows()); }

    Complex entry(std::span<const int> bra, std::span<const int> ket) const;

private:
    HermitianOperator(SpaceSpec space, Matrix entries)
        : space_(space), entries_(std::move(entries)) {}

    SpaceSpec space_;
    Matrix entries_;
};

// ---------------------------------------------------------------------------
// Operations

/// Kronecker product; both factors must share the local dimension.
StateVector tensor_product(const StateVector& a, const StateVector& b);

/// P_sigma |x_1,...,x_N> = |x_sigma[1],...,x_sigma[N]>. Unitary.
StateVector apply_permutation(const Permutation& sigma, const StateVector& psi);

/// Pi_sigma applied to raw amplitudes; used internally and by oracles.
Vector permute_amplitudes(const Permutation& sigma, const SpaceSpec& space,
                          const Vector& amps);

/// The projector Pi_± = (1/N!) sum_sigma (±1)^|sigma| P_sigma as a dense
/// matrix. sign must be +1 or -1; N <= kMaxParticles.
HermitianOperator symmetrizer(const SpaceSpec& space, int sign);

/// Pi_± psi without normalization (may be the null vector).
StateVector symmetrize_raw(const StateVector& psi, int sign);

/// Pi_± psi / ||Pi_± psi||; throws NullProjection when the norm falls
/// below kNullTol. Input must be normalized.
StateVector project_symmetrize(const StateVector& psi, int sign);

/// <psi|L|psi> for a normalized state; asserts the imaginary residue is
/// below 1e-10 and returns the real part.
double expectation(const HermitianOperator& L, const StateVector& psi);

/// dim of the distinguishable (d^N), symmetric (binom(N+d-1,N)) or
/// antisymmetric (binom(d,N), zero for d<N) sector.
std::uint64_t subspace_dimension(const SpaceSpec& space, SymmetryClass sym);

}  // namespace qcorr

#endif  // QCORR_HILBERT_HPP
