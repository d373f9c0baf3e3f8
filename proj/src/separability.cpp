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

#include "qcorr/separability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

namespace qcorr {

// ---------------------------------------------------------------------------
// Bipartite decompositions

double sep_bound(const SchmidtSpectrum& spectrum) {
    if (spectrum.values.empty()) {
        throw InvalidValue("empty spectrum");
    }
    const double top = spectrum.values.front();
    switch (spectrum.variant) {
        case DecompositionVariant::Schmidt:
            return top * top;
        case DecompositionVariant::Takagi: {
            // max over pairs k > l; a single nonzero value pairs with zero
            const double second =
                spectrum.values.size() > 1 ? spectrum.values[1] : 0.0;
            return top * top + second * second;
        }
        case DecompositionVariant::Slater:
            return 2.0 * top * top;
    }
    throw InvalidValue("unknown decomposition variant");
}

Matrix coefficient_matrix(const StateVector& psi) {
    if (psi.space().n_particles != 2) {
        throw DimensionMismatch("coefficient matrix requires a bipartite state");
    }
    const int d = psi.space().local_dim;
    Matrix m(d, d);
    for (int k = 0; k < d; ++k) {
        for (int l = 0; l < d; ++l) {
            m(k, l) = psi.amplitude(static_cast<std::size_t>(k) *
                                        static_cast<std::size_t>(d) +
                                    static_cast<std::size_t>(l));
        }
    }
    return m;
}

namespace {

std::vector<double> descending(Eigen::VectorXd values) {
    std::vector<double> out(values.data(), values.data() + values.size());
    std::sort(out.begin(), out.end(), std::greater<double>());
    return out;
}

}  // namespace

SchmidtSpectrum schmidt(const StateVector& psi) {
    const Matrix m = coefficient_matrix(psi);
    Eigen::JacobiSVD<Matrix> svd(m);
    return SchmidtSpectrum{descending(svd.singularValues()),
                           DecompositionVariant::Schmidt};
}

SchmidtSpectrum takagi(const StateVector& psi) {
    const Matrix m = coefficient_matrix(psi);
    const double defect = (m - m.transpose()).cwiseAbs().maxCoeff();
    if (defect > kNullTol) {
        throw InvalidValue("coefficient matrix is not symmetric (bosonic sector)");
    }
    // Takagi values from the real embedding K = [[A,B],[B,-A]], M = A + iB:
    // the spectrum of K is {+sigma_i} u {-sigma_i}, so the top d eigenvalues
    // are the Takagi values.
    const auto d = m.rows();
    Eigen::MatrixXd k(2 * d, 2 * d);
    k.topLeftCorner(d, d) = m.real();
    k.topRightCorner(d, d) = m.imag();
    k.bottomLeftCorner(d, d) = m.imag();
    k.bottomRightCorner(d, d) = -m.real();
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(k, Eigen::EigenvaluesOnly);
    std::vector<double> values;
    values.reserve(static_cast<std::size_t>(d));
    for (Eigen::Index i = 2 * d - 1; i >= d; --i) {  // ascending order: top half
        values.push_back(std::max(es.eigenvalues()[i], 0.0));
    }
    return SchmidtSpectrum{std::move(values), DecompositionVariant::Takagi};
}

SchmidtSpectrum slater(const StateVector& psi) {
    const Matrix m = coefficient_matrix(psi);
    if (m.rows() < 2) {
        throw DimensionMismatch("Slater decomposition requires d >= 2");
    }
    const double defect = (m + m.transpose()).cwiseAbs().maxCoeff();
    if (defect > kNullTol) {
        throw InvalidValue(
            "coefficient matrix is not antisymmetric (fermionic sector)");
    }
    Eigen::JacobiSVD<Matrix> svd(m);
    const std::vector<double> sv = descending(svd.singularValues());
    const double scale = std::max(1.0, sv.front());
    const double pair_tol = 1e-9 * scale;
    std::vector<double> values;
    values.reserve(sv.size() / 2);
    std::size_t i = 0;
    while (i + 1 < sv.size()) {
        if (std::abs(sv[i] - sv[i + 1]) > pair_tol) {
            throw NumericalError("singular values of the antisymmetric matrix "
                                 "do not pair up");
        }
        values.push_back(0.5 * (sv[i] + sv[i + 1]));
        i += 2;
    }
    if (i < sv.size() && sv[i] > pair_tol) {
        // odd dimension always leaves one exact zero mode
        throw NumericalError("unpaired nonzero singular value in the "
                             "antisymmetric coefficient matrix");
    }
    return SchmidtSpectrum{std::move(values), DecompositionVariant::Slater};
}

// ---------------------------------------------------------------------------
// Partitions

PartitionSpec PartitionSpec::full(int n_particles) {
    PartitionSpec spec;
    for (int j = 0; j < n_particles; ++j) {
        spec.blocks.push_back({j});
    }
    return spec;
}

PartitionSpec PartitionSpec::bipartition(int n_particles, std::vector<int> first_block) {
    std::vector<bool> in_first(static_cast<std::size_t>(n_particles), false);
    for (int p : first_block) {
        if (p < 0 || p >= n_particles) {
            throw InvalidValue("bipartition block index out of range");
        }
        in_first[static_cast<std::size_t>(p)] = true;
    }
    std::vector<int> second;
    for (int p = 0; p < n_particles; ++p) {
        if (!in_first[static_cast<std::size_t>(p)]) second.push_back(p);
    }
    PartitionSpec spec;
    spec.blocks = {std::move(first_block), std::move(second)};
    spec.validate(n_particles);
    return spec;
}

std::vector<PartitionSpec> PartitionSpec::all_bipartitions(int n_particles) {
    if (n_particles < 2) {
        throw InvalidValue("bipartitions require N >= 2");
    }
    // enumerate subsets containing particle 0 to skip complements
    std::vector<PartitionSpec> result;
    const unsigned full_mask = (1u << n_particles) - 1u;
    for (unsigned mask = 1; mask < full_mask; mask += 2) {  // bit 0 always set
        std::vector<int> first;
        for (int p = 0; p < n_particles; ++p) {
            if (mask & (1u << p)) first.push_back(p);
        }
        if (static_cast<int>(first.size()) == n_particles) continue;
        result.push_back(bipartition(n_particles, std::move(first)));
    }
    return result;
}

void PartitionSpec::validate(int n_particles) const {
    std::vector<int> seen(static_cast<std::size_t>(n_particles), 0);
    for (const auto& block : blocks) {
        if (block.empty()) {
            throw InvalidValue("partition block is empty");
        }
        for (int p : block) {
            if (p < 0 || p >= n_particles) {
                throw InvalidValue("partition index out of range");
            }
            ++seen[static_cast<std::size_t>(p)];
        }
    }
    for (int count : seen) {
        if (count != 1) {
            throw InvalidValue("partition blocks must cover each subsystem once");
        }
    }
}

void SolverOptions::validate() const {
    if (restarts < 1 || max_iters < 1 || tol <= 0.0) {
        throw InvalidValue("solver options must be positive");
    }
}

// ---------------------------------------------------------------------------
// Separability eigenvalue solver

namespace {

constexpr double kTieTol = 1e-12;

// Smallest index among eigenvalues within kTieTol of the maximum
// (SelfAdjointEigenSolver returns ascending eigenvalues).
Eigen::Index pick_top(const Eigen::VectorXd& evals_ascending) {
    const double top = evals_ascending[evals_ascending.size() - 1];
    for (Eigen::Index i = 0; i < evals_ascending.size(); ++i) {
        if (evals_ascending[i] >= top - kTieTol) return i;
    }
    return evals_ascending.size() - 1;
}

// Rotate so the largest-magnitude entry (lowest index on ties) is real
// positive.
void fix_phase(Vector& v) {
    Eigen::Index arg = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double mag = std::abs(v[i]);
        if (mag > best) {
            best = mag;
            arg = i;
        }
    }
    if (best > 0.0) {
        v *= std::conj(v[arg]) / best;
    }
}

struct BlockGeometry {
    std::vector<Eigen::Index> dims;                 // d^{|block_j|}
    std::vector<std::vector<int>> component;        // component[j][m]
    std::vector<std::vector<std::size_t>> embed;    // embed[j][b]: stride sum
};

BlockGeometry block_geometry(const SpaceSpec& space, const PartitionSpec& partition) {
    const std::size_t dim = space.total_dimension();
    const int n = space.n_particles;
    const int k_blocks = partition.n_blocks();

    // stride of particle p in the full row-major flattening
    std::vector<std::size_t> stride(static_cast<std::size_t>(n), 1);
    for (int p = n - 2; p >= 0; --p) {
        stride[static_cast<std::size_t>(p)] =
            stride[static_cast<std::size_t>(p + 1)] *
            static_cast<std::size_t>(space.local_dim);
    }

    BlockGeometry geo;
    geo.dims.resize(static_cast<std::size_t>(k_blocks));
    geo.component.assign(static_cast<std::size_t>(k_blocks),
                         std::vector<int>(dim, 0));
    geo.embed.resize(static_cast<std::size_t>(k_blocks));

    for (int j = 0; j < k_blocks; ++j) {
        const auto& block = partition.blocks[static_cast<std::size_t>(j)];
        Eigen::Index bdim = 1;
        for (std::size_t b = 0; b < block.size(); ++b) {
            bdim *= space.local_dim;
        }
        geo.dims[static_cast<std::size_t>(j)] = bdim;
        auto& embed = geo.embed[static_cast<std::size_t>(j)];
        embed.resize(static_cast<std::size_t>(bdim), 0);
        for (Eigen::Index b = 0; b < bdim; ++b) {
            std::size_t rest = static_cast<std::size_t>(b);
            std::size_t acc = 0;
            for (int idx = static_cast<int>(block.size()) - 1; idx >= 0; --idx) {
                const int level =
                    static_cast<int>(rest % static_cast<std::size_t>(space.local_dim));
                rest /= static_cast<std::size_t>(space.local_dim);
                acc += static_cast<std::size_t>(level) *
                       stride[static_cast<std::size_t>(block[static_cast<std::size_t>(idx)])];
            }
            embed[static_cast<std::size_t>(b)] = acc;
        }
    }

    Levels levels(static_cast<std::size_t>(n));
    for (std::size_t m = 0; m < dim; ++m) {
        std::size_t rest = m;
        for (int p = n - 1; p >= 0; --p) {
            levels[static_cast<std::size_t>(p)] =
                static_cast<int>(rest % static_cast<std::size_t>(space.local_dim));
            rest /= static_cast<std::size_t>(space.local_dim);
        }
        for (int j = 0; j < k_blocks; ++j) {
            const auto& block = partition.blocks[static_cast<std::size_t>(j)];
            int comp = 0;
            for (int p : block) {
                comp = comp * space.local_dim + levels[static_cast<std::size_t>(p)];
            }
            geo.component[static_cast<std::size_t>(j)][m] = comp;
        }
    }
    return geo;
}

// Product-state coefficients with block j left open: w(m) = prod_{i != j}
// x_i[component_i(m)]. Block j = -1 yields the full product vector.
Vector open_product(const BlockGeometry& geo, const std::vector<Vector>& x,
                    int open_block, std::size_t dim) {
    Vector w = Vector::Ones(static_cast<Eigen::Index>(dim));
    for (int i = 0; i < static_cast<int>(x.size()); ++i) {
        if (i == open_block) continue;
        const auto& comp = geo.component[static_cast<std::size_t>(i)];
        const auto& xi = x[static_cast<std::size_t>(i)];
        for (std::size_t m = 0; m < dim; ++m) {
            w[static_cast<Eigen::Index>(m)] *=
                xi[static_cast<Eigen::Index>(comp[m])];
        }
    }
    return w;
}

// E_j with E_j(m, b) = w(m) [component_j(m) = b].
Matrix open_embedding(const BlockGeometry& geo, const std::vector<Vector>& x,
                      int block, std::size_t dim) {
    const Vector w = open_product(geo, x, block, dim);
    Matrix e = Matrix::Zero(static_cast<Eigen::Index>(dim),
                            geo.dims[static_cast<std::size_t>(block)]);
    const auto& comp = geo.component[static_cast<std::size_t>(block)];
    for (std::size_t m = 0; m < dim; ++m) {
        e(static_cast<Eigen::Index>(m), comp[m]) = w[static_cast<Eigen::Index>(m)];
    }
    return e;
}

// Partial trace of L onto block j (other subsystems traced out).
Matrix partial_trace_to_block(const Matrix& l, const BlockGeometry& geo, int block,
                              std::size_t dim) {
    const Eigen::Index bdim = geo.dims[static_cast<std::size_t>(block)];
    const auto& comp = geo.component[static_cast<std::size_t>(block)];
    const auto& embed = geo.embed[static_cast<std::size_t>(block)];
    Matrix out = Matrix::Zero(bdim, bdim);
    for (std::size_t m = 0; m < dim; ++m) {
        const int a = comp[m];
        const std::size_t base = m - embed[static_cast<std::size_t>(a)];
        for (Eigen::Index b = 0; b < bdim; ++b) {
            out(a, b) += l(static_cast<Eigen::Index>(m),
                           static_cast<Eigen::Index>(base + embed[static_cast<std::size_t>(b)]));
        }
    }
    return out;
}

Vector random_unit(std::mt19937_64& rng, Eigen::Index dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const double re = gauss(rng);
        const double im = gauss(rng);
        v[i] = Complex(re, im);
    }
    const double n = v.norm();
    if (n == 0.0) {
        v.setZero();
        v[0] = 1.0;
        return v;
    }
    return v / n;
}

// Maximizer of <v|A|v>/<v|B|v> over range(B); returns false when B is
// numerically zero (infeasible direction).
bool top_generalized(const Matrix& a, const Matrix* b, Vector& out) {
    if (b == nullptr) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(a);
        const Eigen::Index idx = pick_top(es.eigenvalues());
        out = es.eigenvectors().col(idx);
        fix_phase(out);
        return true;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> esb(*b);
    const Eigen::VectorXd lam = esb.eigenvalues();
    const double lam_max = lam[lam.size() - 1];
    if (lam_max <= kNullTol) {
        return false;
    }
    std::vector<Eigen::Index> keep;
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        if (lam[i] > 1e-12 * lam_max) keep.push_back(i);
    }
    Matrix w(a.rows(), static_cast<Eigen::Index>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c) {
        w.col(static_cast<Eigen::Index>(c)) =
            esb.eigenvectors().col(keep[c]) / std::sqrt(lam[keep[c]]);
    }
    const Matrix reduced = w.adjoint() * a * w;
    Eigen::SelfAdjointEigenSolver<Matrix> esa(reduced);
    const Eigen::Index idx = pick_top(esa.eigenvalues());
    out = w * esa.eigenvectors().col(idx);
    out.normalize();
    fix_phase(out);
    return true;
}

}  // namespace

double separability_eigen_solve(const HermitianOperator& L,
                                const PartitionSpec& partition,
                                SymmetryClass projector,
                                const SolverOptions& opts,
                                std::vector<std::vector<double>>* objective_traces) {
    opts.validate();
    const SpaceSpec space = L.space();
    partition.validate(space.n_particles);
    if (partition.n_blocks() < 2) {
        throw InvalidValue("separability requires at least two blocks");
    }
    const std::size_t dim = space.total_dimension();
    const int k_blocks = partition.n_blocks();

    // P = identity, Pi_+ or Pi_-; require [L, P] = 0 and work with PLP so the
    // objective is the expectation on the normalized projected product state.
    Matrix projector_matrix;
    const Matrix* proj = nullptr;
    Matrix effective = L.matrix();
    if (projector != SymmetryClass::Distinguishable) {
        projector_matrix =
            symmetrizer(space, exchange_sign(projector)).matrix();
        const double comm = (L.matrix() * projector_matrix -
                             projector_matrix * L.matrix())
                                .cwiseAbs()
                                .maxCoeff();
        if (comm > kNullTol) {
            throw NumericalError("operator does not commute with the sector "
                                 "projector");
        }
        effective = projector_matrix * L.matrix() * projector_matrix;
        proj = &projector_matrix;
    }

    const BlockGeometry geo = block_geometry(space, partition);
    std::mt19937_64 rng(opts.seed);

    const auto objective = [&](const std::vector<Vector>& x, double& value) {
        const Vector full = open_product(geo, x, -1, dim);
        const Complex num = full.dot(effective * full);
        double den = 1.0;
        if (proj != nullptr) {
            const Complex d = full.dot(*proj * full);
            den = d.real();
            if (den <= kNullTol) return false;
        }
        value = num.real() / den;
        return true;
    };

    double best = -std::numeric_limits<double>::infinity();
    bool any_feasible = false;

    for (int restart = 0; restart < opts.restarts; ++restart) {
        std::vector<Vector> x(static_cast<std::size_t>(k_blocks));
        bool feasible = false;
        for (int attempt = 0; attempt < 50 && !feasible; ++attempt) {
            if (restart == 0 && attempt == 0) {
                // deterministic start: top eigenvector of L traced onto each
                // block
                for (int j = 0; j < k_blocks; ++j) {
                    const Matrix marginal =
                        partial_trace_to_block(effective, geo, j, dim);
                    Vector v;
                    top_generalized(marginal, nullptr, v);
                    x[static_cast<std::size_t>(j)] = v;
                }
            } else if (restart == 1 && attempt == 0) {
                // best classical basis product state; with monotone sweeps
                // this pins the result above the largest diagonal entry
                Eigen::Index arg = 0;
                effective.diagonal().real().maxCoeff(&arg);
                for (int j = 0; j < k_blocks; ++j) {
                    Vector v = Vector::Zero(geo.dims[static_cast<std::size_t>(j)]);
                    v[geo.component[static_cast<std::size_t>(j)]
                                   [static_cast<std::size_t>(arg)]] = 1.0;
                    x[static_cast<std::size_t>(j)] = v;
                }
            } else {
                for (int j = 0; j < k_blocks; ++j) {
                    x[static_cast<std::size_t>(j)] =
                        random_unit(rng, geo.dims[static_cast<std::size_t>(j)]);
                }
            }
            double ignored = 0.0;
            feasible = objective(x, ignored);
        }
        if (!feasible) continue;

        std::vector<double> trace;
        double current = -std::numeric_limits<double>::infinity();
        bool aborted = false;
        for (int iter = 0; iter < opts.max_iters && !aborted; ++iter) {
            for (int j = 0; j < k_blocks; ++j) {
                const Matrix e = open_embedding(geo, x, j, dim);
                const Matrix a = e.adjoint() * (effective * e);
                Vector v;
                bool ok;
                if (proj == nullptr) {
                    ok = top_generalized(a, nullptr, v);
                } else {
                    const Matrix b = e.adjoint() * (*proj * e);
                    ok = top_generalized(a, &b, v);
                }
                if (!ok) {
                    aborted = true;  // iterate left the projector's support
                    break;
                }
                x[static_cast<std::size_t>(j)] = v;
            }
            if (aborted) break;
            double value = 0.0;
            if (!objective(x, value)) {
                aborted = true;
                break;
            }
            trace.push_back(value);
            if (value <= current + opts.tol && iter > 0) {
                current = std::max(current, value);
                break;
            }
            current = value;
        }
        if (objective_traces != nullptr && !trace.empty()) {
            objective_traces->push_back(std::move(trace));
        }
        // even a run that later left the projector's support achieved its
        // last objective value on a valid product state
        if (std::isfinite(current)) {
            any_feasible = true;
            best = std::max(best, current);
        }
    }

    if (!any_feasible) {
        throw NumericalError("no restart produced a product state inside the "
                             "projector's support");
    }
    return best;
}

PartialFullBounds partial_and_full_bounds(const HermitianOperator& L,
                                          const SolverOptions& opts) {
    const int n = L.space().n_particles;
    if (n < 3) {
        throw InvalidValue("partial/full separability bounds require N >= 3");
    }
    double g_part = -std::numeric_limits<double>::infinity();
    for (const auto& cut : PartitionSpec::all_bipartitions(n)) {
        g_part = std::max(g_part,
                          separability_eigen_solve(
                              L, cut, SymmetryClass::Distinguishable, opts));
    }
    const double g_full = separability_eigen_solve(
        L, PartitionSpec::full(n), SymmetryClass::Distinguishable, opts);
    return PartialFullBounds{g_part, g_full};
}

}  // namespace qcorr
