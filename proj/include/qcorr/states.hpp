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

#ifndef QCORR_STATES_HPP
#define QCORR_STATES_HPP

// Constructors for the states exercised throughout the library: two-level
// superpositions s_{k,l}, the bipartite/tripartite example families
// psi1..psi5 in all exchange-symmetry variants, the truncated two-mode
// squeezed vacuum, its phase-dephased mixture, and the diagonal-pair test
// vector chi. All constructors are pure and thread-safe.

#include <string_view>

#include "qcorr/hilbert.hpp"

namespace qcorr {

// ---------------------------------------------------------------------------
// Density matrices

/// Positive-semidefinite, unit-trace operator on a multi-qudit space.
class DensityMatrix {
public:
    /// Validates Hermiticity (1e-12), positivity (min eigenvalue >= -psd_tol)
    /// and unit trace within trace_tol. Truncated continuous-variable states
    /// pass their documented truncation deficit as trace_tol.
    static DensityMatrix from_matrix(SpaceSpec space, Matrix entries,
                                     double trace_tol = 1e-10,
                                     double psd_tol = 1e-10);
    /// |psi><psi| for a normalized state.
    static DensityMatrix pure(const StateVector& psi);

    const SpaceSpec& space() const { return space_; }
    const Matrix& matrix() const { return entries_; }
    double trace_deficit() const { return trace_deficit_; }

private:
    friend DensityMatrix dephased_tmsv(const struct TMSVParams&);
    DensityMatrix(SpaceSpec space, Matrix entries, double trace_deficit)
        : space_(space), entries_(std::move(entries)), trace_deficit_(trace_deficit) {}

    SpaceSpec space_;
    Matrix entries_;
    double trace_deficit_ = 0.0;
};

/// tr[rho L]; asserts the imaginary residue is below 1e-10.
double expectation(const HermitianOperator& L, const DensityMatrix& rho);

/// <v|rho|v> for a rank-one test operator L = |v><v| (v may be raw).
double expectation_rank_one(const StateVector& v, const DensityMatrix& rho);

// ---------------------------------------------------------------------------
// Elementary states

/// |s_{k,l}> = (|k> + |l>)/sqrt(2), k != l, in local dimension d.
StateVector superposition_s(int k, int l, int d);

/// The worked bipartite (n = 1..3, d = 4) and tripartite (n = 4: d = 5,
/// n = 5: d = 6) example states. The Bosonic/Fermionic variants are the
/// normalized Pi_± projections of the Distinguishable ones; NullProjection
/// propagates if a projection vanishes.
StateVector example_state(int n, SymmetryClass sym);

/// Name-based lookup: "psi1_0", "psi1_plus", "psi1_minus", ..., "psi5_minus",
/// plus "chi_kappa" (truncated two-mode squeezed vacuum, kappa = 1/2,
/// n_max = 64). Throws InvalidValue for unknown names.
StateVector example_state(std::string_view name);

// ---------------------------------------------------------------------------
// Continuous-variable family (two-mode squeezed vacuum under dephasing)

struct TMSVParams {
    double kappa = 0.5;      ///< squeezing parameter, 0 <= kappa < 1
    double delta_phi = 0.0;  ///< dephasing width in radians, in [0, pi]
    int n_max = 64;          ///< inclusive highest Fock index kept

    void validate() const;
};

/// Truncated, renormalized |chi_kappa> = sqrt(1-kappa^2) sum_k kappa^k |k,k>
/// on the bipartite space with d = n_max + 1.
StateVector tmsv(const TMSVParams& params);

/// Weight of the discarded tail, kappa^(2(n_max+1)).
double tmsv_truncated_weight(const TMSVParams& params);

/// Raw (unnormalized) |chi> = sum_{k<=n_max} |k,k>.
StateVector chi_vector(int n_max);

/// sin(x)/x with sinc(0) = 1.
double sinc(double x);

/// The (n_max+1) x (n_max+1) block of the dephased state on the diagonal
/// pairs |k,k><l,l|: C_{k,l} = (1-kappa^2) kappa^{k+l} sinc((k-l) dphi).
/// The dephased state is exactly supported on this block.
Matrix dephased_pair_block(const TMSVParams& params);

/// The dephased mixture as a full density matrix on the truncated bipartite
/// space. Trace deficit kappa^(2(n_max+1)) is recorded, not renormalized.
DensityMatrix dephased_tmsv(const TMSVParams& params);

/// <chi|rho_dphi|chi> evaluated on the truncated space (sum over the pair
/// block); identical to expectation_rank_one(chi_vector, dephased_tmsv).
double chi_expectation_numeric(const TMSVParams& params);

/// Closed form (2/dphi) arctan(((1+kappa)/(1-kappa)) tan(dphi/2)) with the
/// dphi -> 0 limit (1+kappa)/(1-kappa) and the dphi = pi limit 1 handled
/// explicitly.
double chi_expectation_analytic(double kappa, double delta_phi);

}  // namespace qcorr

#endif  // QCORR_STATES_HPP
