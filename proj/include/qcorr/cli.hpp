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

#ifndef QCORR_CLI_HPP
#define QCORR_CLI_HPP

// Command layer behind the `qcorr` executable. Each subcommand is a plain
// function returning its rendered output so that golden-file tests can call
// it directly.
//
// Wire formats (stable contracts):
//   * State files: {"n_particles": N, "local_dim": d,
//                   "amplitudes": [[re, im], ...]} in the library's
//     row-major flattening; density matrices use "matrix" instead of
//     "amplitudes" with rows of [re, im] pairs.
//   * CSV: '.' decimal point, ',' separator, one header row, LF endings,
//     numbers rendered with %.12g.

#include <optional>
#include <string>

#include <json.hpp>

#include "qcorr/coherence.hpp"

namespace qcorr::cli {

/// %.12g rendering used for every number the CLI emits.
std::string fmt_g12(double value);

// ---------------------------------------------------------------------------
// State file I/O

nlohmann::json state_to_json(const StateVector& psi);
StateVector state_from_json(const nlohmann::json& j);
DensityMatrix density_from_json(const nlohmann::json& j);
/// Hermitian operator from {"n_particles", "local_dim", "matrix"}.
HermitianOperator operator_from_json(const nlohmann::json& j);

/// True if the JSON object carries a "matrix" key (density/operator layout).
bool is_matrix_layout(const nlohmann::json& j);

/// "line L, column C" for a byte offset into `text`.
std::string line_column(const std::string& text, std::size_t byte_offset);

// ---------------------------------------------------------------------------
// Reports

struct ClassifyInputs {
    std::string source;                // "builtin:<name>" or "file:<path>"
    std::optional<double> kappa;       // set for the chi_kappa builtin
    std::optional<int> n_max;          // set for the chi_kappa builtin
    std::uint64_t seed = 42;
    int restarts = 32;

    bool operator==(const ClassifyInputs&) const = default;
};

struct RunReport {
    ClassifyInputs inputs;
    BoundsReport report;
    std::string library_version;
    double solver_tol = 1e-10;
    double na_tol = 1e-10;
    double wall_time_seconds = 0.0;

    bool operator==(const RunReport&) const = default;
};

nlohmann::json to_json(const RunReport& report);
RunReport run_report_from_json(const nlohmann::json& j);

nlohmann::json bounds_report_to_json(const BoundsReport& report);
BoundsReport bounds_report_from_json(const nlohmann::json& j);

// ---------------------------------------------------------------------------
// Subcommands

/// The bipartite example table: six rows (psi1..psi3, plain and projected)
/// by four bound columns, "n.a." where a vector lies outside a sector. The
/// (+) and (-) variants are computed independently and must agree, otherwise
/// a NumericalError is thrown.
std::string render_table1();

/// CSV sweep of the dephasing parameter for the diagonal-pair test operator
/// on the dephased two-mode squeezed vacuum: analytic and truncated-matrix
/// expectation plus the four constant bounds. A leading comment line carries
/// the parameters and the bosonic-entanglement crossing delta_phi_star.
std::string render_fig2_csv(double kappa, int n_max, int grid);

/// Dephasing width where the analytic expectation crosses the bosonic
/// separable bound 2; NaN when there is no crossing (kappa <= 1/3).
double fig2_threshold(double kappa);

/// Relative-strength triples for the tripartite examples: partial/full
/// separability for the plain states, exchange-symmetry comparison for the
/// projected ones. The (+) and (-) variants must agree.
std::string render_tripartite(const SolverOptions& solver);

/// Classify a builtin state (psiN_{0,plus,minus} or chi_kappa) with
/// L = |state><state|.
RunReport run_classify_builtin(const std::string& name, double kappa, int n_max,
                               const ClassifyOptions& opts);

/// Classify a state file; pure states default to L = |psi><psi|, mixed ones
/// require an operator document.
RunReport run_classify_file(const std::string& state_path,
                            const std::optional<std::string>& operator_path,
                            const ClassifyOptions& opts);

}  // namespace qcorr::cli

#endif  // QCORR_CLI_HPP
