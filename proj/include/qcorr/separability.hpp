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

#ifndef QCORR_SEPARABILITY_HPP
#define QCORR_SEPARABILITY_HPP

// Entanglement bounds. For bipartite pure states the maximal separable
// expectation of L = |psi><psi| has closed forms in terms of the Schmidt
// (plain), Takagi (symmetric) or Slater (antisymmetric) spectrum of the
// coefficient matrix. For general operators and multipartite partitions an
// alternating solver for the separability eigenvalue equations produces a
// certified lower bound on the separable maximum.

#include <cstdint>
#include <vector>

#include "qcorr/hilbert.hpp"

namespace qcorr {

// ---------------------------------------------------------------------------
// Bipartite decompositions

enum class DecompositionVariant { Schmidt, Takagi, Slater };

/// Nonnegative coefficients lambda_k, sorted descending.
///
/// For a normalized input, Schmidt and Takagi spectra satisfy
/// sum lambda^2 = 1; Slater values carry a two-term antisymmetric pair each,
/// so 2 sum lambda^2 = 1.
struct SchmidtSpectrum {
    std::vector<double> values;
    DecompositionVariant variant = DecompositionVariant::Schmidt;
};

/// The maximal separable expectation of |psi><psi| for the family matching
/// the variant: max lambda^2 (Schmidt), max_{k>l}(lambda_k^2 + lambda_l^2)
/// with zero-padding (Takagi), max 2 lambda^2 (Slater).
double sep_bound(const SchmidtSpectrum& spectrum);

/// Coefficient matrix M with M(k,l) = psi_{(k,l)}; requires N = 2.
Matrix coefficient_matrix(const StateVector& psi);

/// Singular values of the coefficient matrix. N = 2.
SchmidtSpectrum schmidt(const StateVector& psi);

/// Takagi values of the symmetric coefficient matrix, computed through the
/// real embedding [[A,B],[B,-A]] of M = A + iB; throws InvalidValue if M is
/// not symmetric within kNullTol.
SchmidtSpectrum takagi(const StateVector& psi);

/// Slater values of the antisymmetric coefficient matrix: singular values
/// occur in equal pairs (s,s), one Slater value per pair, indexed
/// 0..floor(d/2)-1; an odd-dimension unpaired zero mode is dropped. Throws
/// InvalidValue if M is not antisymmetric within kNullTol.
SchmidtSpectrum slater(const StateVector& psi);

// ---------------------------------------------------------------------------
// Separability eigenvalue solver

/// A set partition of the subsystems {0,...,N-1} into K >= 1 blocks.
struct PartitionSpec {
    std::vector<std::vector<int>> blocks;

    static PartitionSpec full(int n_particles);  // N singleton blocks
    static PartitionSpec bipartition(int n_particles, std::vector<int> first_block);
    static std::vector<PartitionSpec> all_bipartitions(int n_particles);

    int n_blocks() const { return static_cast<int>(blocks.size()); }
    void validate(int n_particles) const;
};

struct SolverOptions {
    int restarts = 32;
    int max_iters = 500;
    double tol = 1e-10;          ///< convergence tolerance on the objective
    std::uint64_t seed = 42;

    void validate() const;
};

/// Alternating maximization of <x_1...x_K|L|x_1...x_K> / <...|P|...> where
/// P is the identity (Distinguishable), Pi_+ (Bosonic) or Pi_- (Fermionic).
/// Requires [L, P] = 0 within kNullTol. Each sweep replaces one block vector
/// by the top generalized eigenvector of the reduced pair (L, P), so the
/// objective is non-decreasing; the run converges when a sweep improves by
/// less than opts.tol. Returns the maximum over restarts: a certified lower
/// bound on the separable maximum, exact for bipartite rank-one operators
/// when the restarts suffice.
///
/// Restart 1 starts from the top eigenvector of L partially traced onto each
/// block; the remaining restarts use seeded random unit vectors. When
/// `objective_traces` is non-null, one vector of per-sweep objective values
/// is appended per restart (for monotonicity checks).
double separability_eigen_solve(
    const HermitianOperator& L, const PartitionSpec& partition,
    SymmetryClass projector, const SolverOptions& opts,
    std::vector<std::vector<double>>* objective_traces = nullptr);

struct PartialFullBounds {
    double g_partsep;  ///< max over all bipartitions' separable bounds
    double g_fullsep;  ///< bound over fully product states (N blocks)
};

/// Both multipartite bounds for N >= 3 with the identity projector.
PartialFullBounds partial_and_full_bounds(const HermitianOperator& L,
                                          const SolverOptions& opts = {});

}  // namespace qcorr

#endif  // QCORR_SEPARABILITY_HPP
