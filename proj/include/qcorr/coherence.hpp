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

#ifndef QCORR_COHERENCE_HPP
#define QCORR_COHERENCE_HPP

// Incoherent-state bounds for the three exchange-symmetry classes, witness
// construction, classical fidelity, the relative-strength parameter Gamma,
// and the combined origin-of-correlations classifier.
//
// The classical reference families over N qudits of dimension d are
//   distinguishable: product kets |k_1,...,k_N>, all tuples;
//   bosonic:  normalized Pi_+ projections, one per non-decreasing tuple;
//   fermionic: normalized Pi_- projections, one per strictly increasing
//              tuple (empty for d < N).
// Bounds are exact maxima over these finite families, each member evaluated
// through the permutation double sum over the operator's matrix elements.

#include <functional>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "qcorr/separability.hpp"
#include "qcorr/states.hpp"

namespace qcorr {

// ---------------------------------------------------------------------------
// Classical families

/// Visits the index tuples labelling the pure classical family: all tuples
/// (distinguishable), non-decreasing (bosonic) or strictly increasing
/// (fermionic), in lexicographic order.
void for_each_classical_tuple(const SpaceSpec& space, SymmetryClass sym,
                              const std::function<void(std::span<const int>)>& fn);

/// The normalized classical state labelled by `levels` for the family.
StateVector classical_ket(const SpaceSpec& space, SymmetryClass sym,
                          std::span<const int> levels);

/// A finite mixture of pure classical states of one family.
struct ClassicalMixture {
    SpaceSpec space;
    SymmetryClass symmetry = SymmetryClass::Distinguishable;
    std::vector<double> weights;
    std::vector<Levels> kets;

    /// Validates nonnegative weights summing to one (1e-12) and tuple labels
    /// admissible for the family (sorted per its convention).
    static ClassicalMixture make(SpaceSpec space, SymmetryClass sym,
                                 std::vector<double> weights,
                                 std::vector<Levels> kets);
    /// A random mixture with `n_terms` classical kets of the family.
    static ClassicalMixture sample(const SpaceSpec& space, SymmetryClass sym,
                                   int n_terms, std::mt19937_64& rng);

    double expectation(const HermitianOperator& L) const;
    DensityMatrix to_density_matrix() const;
};

// ---------------------------------------------------------------------------
// Bounds, fidelity, witnesses, Gamma

/// Exact maximum of <c|L|c> over the family. Throws EmptyClassicalSet for
/// fermions with d < N; requires N <= kMaxParticles.
double incoherent_bound(const HermitianOperator& L, SymmetryClass sym);

/// Same bound for the rank-one operator L = |v><v| (v may be unnormalized):
/// max_c |<c|v>|^2, evaluated without materializing the dense operator.
double incoherent_bound_rank_one(const StateVector& v, SymmetryClass sym);

/// F(psi) = max_c |<c|psi>| over the family; psi must be normalized.
/// Satisfies F^2 = incoherent_bound(|psi><psi|).
double classical_fidelity(const StateVector& psi, SymmetryClass sym);

/// W = g_max I - L. Negative expectation certifies a state outside the
/// family the bound was computed over.
struct Witness {
    HermitianOperator op;
    double bound;
    SymmetryClass family;
};

Witness make_witness(const HermitianOperator& L, double g_max, SymmetryClass family);

/// Gamma = max{(<L> - g_max)/g_max, 0}; requires g_max > 0 (throws
/// NonpositiveBound otherwise).
double gamma(double expectation, double g_max);

// ---------------------------------------------------------------------------
// Classifier

/// One evaluated bound: its value, whether the criterion <L> > value is
/// violated (with a 1e-10 guard), the relative strength when value > 0, and
/// whether the number is exact (closed form / exhaustive enumeration) or a
/// solver lower bound.
struct BoundEntry {
    double value = 0.0;
    bool exact = true;
    bool violated = false;
    std::optional<double> gamma;

    bool operator==(const BoundEntry&) const = default;
};

/// All applicable bounds for one test operator and state, Gamma per bound,
/// and the verdicts that follow from comparing them. A bound is absent
/// ("n.a.") when the operator has no support in the corresponding sector or
/// the family is empty.
struct BoundsReport {
    double expectation = 0.0;
    std::optional<BoundEntry> g0;
    std::optional<BoundEntry> gplus;
    std::optional<BoundEntry> gminus;
    std::optional<BoundEntry> gsep0;        // bipartite separable bound
    std::optional<BoundEntry> gsep_plus;
    std::optional<BoundEntry> gsep_minus;
    std::optional<BoundEntry> gsep_part0;   // N >= 3: max over bipartitions
    std::optional<BoundEntry> gsep_full0;   // N >= 3: fully product states
    std::vector<std::string> verdicts;

    bool operator==(const BoundsReport&) const = default;
};

struct ClassifyOptions {
    SolverOptions solver;
    /// Sector applicability threshold on ||Pi L Pi - L||_max.
    double na_tol = 1e-10;
};

/// Fills a BoundsReport for a pure state: incoherent bounds for all three
/// classes, separable bounds (N = 2: Schmidt/Takagi/Slater closed forms for
/// rank-one L, otherwise the solver; N = 3, 4: partial and full separability
/// via the solver), Gamma per bound, and verdict strings.
BoundsReport classify(const HermitianOperator& L, const StateVector& state,
                      const ClassifyOptions& opts = {});

/// Mixed-state variant: <L> = tr[rho L]; the classical bounds are unchanged
/// by convexity.
BoundsReport classify(const HermitianOperator& L, const DensityMatrix& state,
                      const ClassifyOptions& opts = {});

}  // namespace qcorr

#endif  // QCORR_COHERENCE_HPP
