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

#include "qcorr/coherence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Eigenvalues>

namespace qcorr {

namespace {

/// The criterion <L> > g is called violated only beyond a small guard, so a
/// state sitting exactly on its bound does not flip verdicts through
/// rounding.
constexpr double kViolationGuard = 1e-10;

void check_enumerable(const SpaceSpec& space, SymmetryClass sym) {
    if (space.n_particles > kMaxParticles) {
        throw InvalidValue("classical enumeration supports N <= 8");
    }
    if (sym == SymmetryClass::Fermionic && space.local_dim < space.n_particles) {
        throw EmptyClassicalSet("no antisymmetric classical states for d < N");
    }
}

void enumerate_tuples(Levels& tuple, int pos, int from, const SpaceSpec& space,
                      SymmetryClass sym,
                      const std::function<void(std::span<const int>)>& fn) {
    if (pos == space.n_particles) {
        fn(tuple);
        return;
    }
    for (int k = from; k < space.local_dim; ++k) {
        tuple[static_cast<std::size_t>(pos)] = k;
        int next_from = 0;
        if (sym == SymmetryClass::Bosonic) next_from = k;
        if (sym == SymmetryClass::Fermionic) next_from = k + 1;
        enumerate_tuples(tuple, pos + 1, next_from, space, sym, fn);
    }
}

/// The orbit of a tuple under S_N as (flat index, signed multiplicity)
/// pairs: weight(a) = sum over sigma mapping the tuple to a of
/// (±1)^|sigma| (bosonic: the stabilizer size; fermionic: the parity).
std::vector<std::pair<std::size_t, double>> signed_orbit(
    const SpaceSpec& space, std::span<const int> tuple,
    const std::vector<Permutation>& perms, int sign) {
    std::vector<std::pair<std::size_t, double>> entries;
    entries.reserve(perms.size());
    Levels permuted(tuple.size());
    for (const auto& sigma : perms) {
        for (std::size_t j = 0; j < tuple.size(); ++j) {
            permuted[j] = tuple[static_cast<std::size_t>(sigma[static_cast<int>(j)])];
        }
        const double w = (sign < 0) ? static_cast<double>(sigma.parity()) : 1.0;
        entries.emplace_back(flatten(space, permuted), w);
    }
    std::sort(entries.begin(), entries.end());
    std::vector<std::pair<std::size_t, double>> merged;
    for (const auto& [idx, w] : entries) {
        if (!merged.empty() && merged.back().first == idx) {
            merged.back().second += w;
        } else {
            merged.emplace_back(idx, w);
        }
    }
    return merged;
}

double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

/// 1 / (N! N_0! ... N_{d-1}!) for bosons, 1 / N! for fermions.
double tuple_prefactor(const SpaceSpec& space, std::span<const int> tuple, int sign) {
    double prefactor = 1.0 / factorial(space.n_particles);
    if (sign > 0) {
        for (int count : occupations(space, tuple)) {
            prefactor /= factorial(count);
        }
    }
    return prefactor;
}

}  // namespace

// ---------------------------------------------------------------------------
// Classical families

void for_each_classical_tuple(const SpaceSpec& space, SymmetryClass sym,
                              const std::function<void(std::span<const int>)>& fn) {
    check_enumerable(space, sym);
    Levels tuple(static_cast<std::size_t>(space.n_particles));
    enumerate_tuples(tuple, 0, 0, space, sym, fn);
}

StateVector classical_ket(const SpaceSpec& space, SymmetryClass sym,
                          std::span<const int> levels) {
    if (sym == SymmetryClass::Distinguishable) {
        return StateVector::basis_ket(space, levels);
    }
    check_enumerable(space, sym);
    const int sign = exchange_sign(sym);
    for (std::size_t j = 0; j + 1 < levels.size(); ++j) {
        if (sign > 0 ? levels[j] > levels[j + 1] : levels[j] >= levels[j + 1]) {
            throw InvalidValue("classical tuple violates the family's ordering");
        }
    }
    const auto perms = Permutation::all(space.n_particles);
    const auto orbit = signed_orbit(space, levels, perms, sign);
    // amplitude w_a / sqrt(N! prod N_k!) makes the projected ket normalized
    const double scale = std::sqrt(tuple_prefactor(space, levels, sign));
    Vector amps = Vector::Zero(static_cast<Eigen::Index>(space.total_dimension()));
    for (const auto& [idx, w] : orbit) {
        amps[static_cast<Eigen::Index>(idx)] = w * scale;
    }
    return StateVector::normalized(space, std::move(amps));
}

ClassicalMixture ClassicalMixture::make(SpaceSpec space, SymmetryClass sym,
                                        std::vector<double> weights,
                                        std::vector<Levels> kets) {
    if (weights.size() != kets.size() || weights.empty()) {
        throw InvalidValue("mixture needs matching, nonempty weights and kets");
    }
    double total = 0.0;
    for (double w : weights) {
        if (w < 0.0) throw InvalidValue("mixture weights must be nonnegative");
        total += w;
    }
    if (std::abs(total - 1.0) > kConstructionTol) {
        throw InvalidValue("mixture weights must sum to one");
    }
    for (const auto& ket : kets) {
        classical_ket(space, sym, ket);  // validates label and ordering
    }
    return ClassicalMixture{space, sym, std::move(weights), std::move(kets)};
}

ClassicalMixture ClassicalMixture::sample(const SpaceSpec& space, SymmetryClass sym,
                                          int n_terms, std::mt19937_64& rng) {
    check_enumerable(space, sym);
    std::vector<Levels> labels;
    for_each_classical_tuple(space, sym, [&](std::span<const int> tuple) {
        labels.emplace_back(tuple.begin(), tuple.end());
    });
    std::uniform_int_distribution<std::size_t> pick(0, labels.size() - 1);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::vector<double> weights(static_cast<std::size_t>(n_terms));
    std::vector<Levels> kets(static_cast<std::size_t>(n_terms));
    double total = 0.0;
    for (int t = 0; t < n_terms; ++t) {
        kets[static_cast<std::size_t>(t)] = labels[pick(rng)];
        const double w = unit(rng) + 1e-6;
        weights[static_cast<std::size_t>(t)] = w;
        total += w;
    }
    for (double& w : weights) w /= total;
    return ClassicalMixture{space, sym, std::move(weights), std::move(kets)};
}

double ClassicalMixture::expectation(const HermitianOperator& L) const {
    if (!(L.space() == space)) {
        throw DimensionMismatch("operator space does not match mixture space");
    }
    double value = 0.0;
    for (std::size_t t = 0; t < weights.size(); ++t) {
        value += weights[t] * qcorr::expectation(L, classical_ket(space, symmetry, kets[t]));
    }
    return value;
}

DensityMatrix ClassicalMixture::to_density_matrix() const {
    const auto dim = static_cast<Eigen::Index>(space.total_dimension());
    Matrix rho = Matrix::Zero(dim, dim);
    for (std::size_t t = 0; t < weights.size(); ++t) {
        const StateVector c = classical_ket(space, symmetry, kets[t]);
        rho += weights[t] * (c.amplitudes() * c.amplitudes().adjoint());
    }
    return DensityMatrix::from_matrix(space, std::move(rho));
}

// ---------------------------------------------------------------------------
// Bounds

double incoherent_bound(const HermitianOperator& L, SymmetryClass sym) {
    const SpaceSpec space = L.space();
    check_enumerable(space, sym);
    if (sym == SymmetryClass::Distinguishable) {
        return L.matrix().diagonal().real().maxCoeff();
    }
    const int sign = exchange_sign(sym);
    const auto perms = Permutation::all(space.n_particles);
    double best = -std::numeric_limits<double>::infinity();
    for_each_classical_tuple(space, sym, [&](std::span<const int> tuple) {
        const auto orbit = signed_orbit(space, tuple, perms, sign);
        // permutation double sum, with sigma grouped by its image tuple
        Complex acc = 0.0;
        for (const auto& [row, wr] : orbit) {
            for (const auto& [col, wc] : orbit) {
                acc += wr * wc *
                       L.matrix()(static_cast<Eigen::Index>(row),
                                  static_cast<Eigen::Index>(col));
            }
        }
        const double value = tuple_prefactor(space, tuple, sign) * acc.real();
        best = std::max(best, value);
    });
    return best;
}

double incoherent_bound_rank_one(const StateVector& v, SymmetryClass sym) {
    const SpaceSpec space = v.space();
    check_enumerable(space, sym);
    if (sym == SymmetryClass::Distinguishable) {
        return v.amplitudes().cwiseAbs2().maxCoeff();
    }
    const int sign = exchange_sign(sym);
    const auto perms = Permutation::all(space.n_particles);
    double best = -std::numeric_limits<double>::infinity();
    for_each_classical_tuple(space, sym, [&](std::span<const int> tuple) {
        const auto orbit = signed_orbit(space, tuple, perms, sign);
        const double scale = std::sqrt(tuple_prefactor(space, tuple, sign));
        Complex overlap = 0.0;  // <c|v> with classical amplitudes w_a * scale
        for (const auto& [idx, w] : orbit) {
            overlap += w * scale * v.amplitudes()[static_cast<Eigen::Index>(idx)];
        }
        best = std::max(best, std::norm(overlap));
    });
    return best;
}

double classical_fidelity(const StateVector& psi, SymmetryClass sym) {
    if (!psi.is_normalized()) {
        throw InvalidValue("classical fidelity requires a normalized state");
    }
    return std::sqrt(incoherent_bound_rank_one(psi, sym));
}

Witness make_witness(const HermitianOperator& L, double g_max, SymmetryClass family) {
    const auto dim = static_cast<Eigen::Index>(L.dimension());
    Matrix w = g_max * Matrix::Identity(dim, dim) - L.matrix();
    return Witness{HermitianOperator::from_matrix(L.space(), std::move(w)), g_max,
                   family};
}

double gamma(double expectation, double g_max) {
    if (g_max <= 0.0) {
        throw NonpositiveBound("Gamma requires a strictly positive bound");
    }
    return std::max((expectation - g_max) / g_max, 0.0);
}

// ---------------------------------------------------------------------------
// Classifier

namespace {

BoundEntry make_entry(double value, double expectation, bool exact) {
    BoundEntry entry;
    entry.value = value;
    entry.exact = exact;
    entry.violated = expectation > value + kViolationGuard;
    if (value > 0.0) {
        entry.gamma = gamma(expectation, value);
    }
    return entry;
}

bool sector_supported(const HermitianOperator& L, int sign, double tol) {
    const Matrix pi = symmetrizer(L.space(), sign).matrix();
    const Matrix projected = pi * L.matrix() * pi;
    return (projected - L.matrix()).cwiseAbs().maxCoeff() <= tol;
}

/// L = lambda |u><u| with lambda > 0 and all other eigenvalues negligible;
/// returns the normalized u and lambda.
std::optional<std::pair<StateVector, double>> rank_one_form(
    const HermitianOperator& L, double tol) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(L.matrix());
    const Eigen::VectorXd evals = es.eigenvalues();
    const Eigen::Index n = evals.size();
    const double top = evals[n - 1];
    if (top <= tol) return std::nullopt;
    double rest = std::abs(evals[0]);
    if (n > 1) rest = std::max(rest, std::abs(evals[n - 2]));
    if (rest > tol * std::max(1.0, top)) return std::nullopt;
    Vector u = es.eigenvectors().col(n - 1);
    return std::make_pair(StateVector::normalize(L.space(), std::move(u)), top);
}

void add_verdicts(BoundsReport& report) {
    auto violated = [](const std::optional<BoundEntry>& e) {
        return e.has_value() && e->violated;
    };
    auto held = [](const std::optional<BoundEntry>& e) {
        return e.has_value() && !e->violated;
    };
    std::vector<std::string>& out = report.verdicts;

    bool any = false;
    for (const auto* e : {&report.g0, &report.gplus, &report.gminus, &report.gsep0,
                          &report.gsep_plus, &report.gsep_minus, &report.gsep_part0,
                          &report.gsep_full0}) {
        any = any || violated(*e);
    }
    if (!any) {
        out.push_back("no quantum correlations detected by this observable");
        return;
    }

    if (violated(report.g0)) {
        out.push_back("quantum coherence detected (tensor-product classical "
                      "states excluded)");
    }
    if (violated(report.gplus)) {
        out.push_back("quantum coherence beyond the bosonic exchange symmetry");
    }
    if (violated(report.gminus)) {
        out.push_back("quantum coherence beyond the fermionic exchange symmetry");
    }
    if (violated(report.g0) && (held(report.gplus) || held(report.gminus))) {
        out.push_back("detected coherence originates from the exchange symmetry");
    }
    if (violated(report.gsep0)) {
        out.push_back("entanglement detected with respect to the tensor product");
    }
    if (violated(report.g0) && held(report.gsep0)) {
        out.push_back("local quantum superposition only");
    }
    if (violated(report.gsep_plus)) {
        out.push_back("bosonic entanglement detected");
    }
    if (violated(report.gsep_minus)) {
        out.push_back("fermionic entanglement detected");
    }
    if (violated(report.gsep0) &&
        (held(report.gsep_plus) || held(report.gsep_minus))) {
        out.push_back("inseparability depends on the tensor-product convention "
                      "(separable once the exchange symmetry is included)");
    }

    // coherence fully accounted for by entanglement: Gamma^(s) = Gamma^(sep,s)
    // for every applicable sector s
    const auto gamma_matches = [](const std::optional<BoundEntry>& a,
                                  const std::optional<BoundEntry>& b) {
        return a && b && a->violated && b->violated && a->gamma && b->gamma &&
               std::abs(*a->gamma - *b->gamma) <= 1e-9;
    };
    bool comparable = report.g0.has_value() && report.gsep0.has_value();
    bool all_match = comparable && gamma_matches(report.g0, report.gsep0);
    if (report.gplus || report.gsep_plus) {
        comparable = comparable && report.gplus.has_value() &&
                     report.gsep_plus.has_value();
        all_match = all_match && gamma_matches(report.gplus, report.gsep_plus);
    }
    if (report.gminus || report.gsep_minus) {
        comparable = comparable && report.gminus.has_value() &&
                     report.gsep_minus.has_value();
        all_match = all_match && gamma_matches(report.gminus, report.gsep_minus);
    }
    if (comparable && all_match) {
        out.push_back("only global quantum superpositions");
    }

    if (violated(report.gsep_full0) && held(report.gsep_part0)) {
        out.push_back("inseparability only with respect to full factorization "
                      "(a separating bipartition exists)");
    }
    if (violated(report.gsep_part0)) {
        out.push_back("genuine multipartite entanglement (no separating "
                      "bipartition)");
    }
}

BoundsReport classify_impl(const HermitianOperator& L, double expectation_value,
                           const ClassifyOptions& opts) {
    const SpaceSpec space = L.space();
    const int n = space.n_particles;
    BoundsReport report;
    report.expectation = expectation_value;

    report.g0 = make_entry(incoherent_bound(L, SymmetryClass::Distinguishable),
                           expectation_value, true);

    const bool plus_ok = n >= 2 && sector_supported(L, +1, opts.na_tol);
    const bool minus_ok = n >= 2 && space.local_dim >= n &&
                          sector_supported(L, -1, opts.na_tol);
    if (plus_ok) {
        report.gplus = make_entry(incoherent_bound(L, SymmetryClass::Bosonic),
                                  expectation_value, true);
    }
    if (minus_ok) {
        report.gminus = make_entry(incoherent_bound(L, SymmetryClass::Fermionic),
                                   expectation_value, true);
    }

    if (n == 2) {
        const auto rank_one = rank_one_form(L, opts.na_tol);
        if (rank_one) {
            const auto& [u, scale] = *rank_one;
            report.gsep0 = make_entry(scale * sep_bound(schmidt(u)),
                                      expectation_value, true);
            if (plus_ok) {
                report.gsep_plus = make_entry(scale * sep_bound(takagi(u)),
                                              expectation_value, true);
            }
            if (minus_ok) {
                report.gsep_minus = make_entry(scale * sep_bound(slater(u)),
                                               expectation_value, true);
            }
        } else {
            const PartitionSpec cut = PartitionSpec::bipartition(2, {0});
            report.gsep0 = make_entry(
                separability_eigen_solve(L, cut, SymmetryClass::Distinguishable,
                                         opts.solver),
                expectation_value, false);
            if (plus_ok) {
                report.gsep_plus = make_entry(
                    separability_eigen_solve(L, cut, SymmetryClass::Bosonic,
                                             opts.solver),
                    expectation_value, false);
            }
            if (minus_ok) {
                report.gsep_minus = make_entry(
                    separability_eigen_solve(L, cut, SymmetryClass::Fermionic,
                                             opts.solver),
                    expectation_value, false);
            }
        }
    } else if (n == 3 || n == 4) {
        const PartialFullBounds bounds = partial_and_full_bounds(L, opts.solver);
        report.gsep_part0 = make_entry(bounds.g_partsep, expectation_value, false);
        report.gsep_full0 = make_entry(bounds.g_fullsep, expectation_value, false);
    }

    add_verdicts(report);
    return report;
}

}  // namespace

BoundsReport classify(const HermitianOperator& L, const StateVector& state,
                      const ClassifyOptions& opts) {
    return classify_impl(L, expectation(L, state), opts);
}

BoundsReport classify(const HermitianOperator& L, const DensityMatrix& state,
                      const ClassifyOptions& opts) {
    return classify_impl(L, expectation(L, state), opts);
}

}  // namespace qcorr
