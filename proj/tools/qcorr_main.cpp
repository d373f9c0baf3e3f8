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

// qcorr — witness bounds and origin-of-correlations classification for
// multi-qudit states.
//
// Exit codes: 0 success, 2 input error, 3 numerical failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "qcorr/cli.hpp"
#include "qcorr/version.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 2;
constexpr int kExitNumerical = 3;

void write_output(const std::string& text, const std::optional<std::string>& path) {
    if (!path) {
        std::cout << text;
        return;
    }
    std::ofstream out(*path);
    if (!out) {
        throw qcorr::InvalidValue("cannot open output file: " + *path);
    }
    out << text;
}

double solver_tol_from_env() {
    const char* env = std::getenv("QCORR_TOL");
    if (env == nullptr || *env == '\0') {
        return 1e-10;
    }
    char* end = nullptr;
    const double tol = std::strtod(env, &end);
    if (end == env || !(tol > 0.0)) {
        throw qcorr::InvalidValue("QCORR_TOL must be a positive number");
    }
    return tol;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"witness bounds and origin-of-correlations classification "
                 "for multi-qudit states"};
    app.set_version_flag("--version", qcorr::kVersion);
    app.require_subcommand(1);

    auto* table1 = app.add_subcommand("table1", "bounds for the bipartite example states");
    std::optional<std::string> table1_out;
    table1->add_option("--out", table1_out, "write the table to a file");

    auto* fig2 = app.add_subcommand(
        "fig2", "dephasing sweep for the two-mode squeezed vacuum (CSV)");
    double fig2_kappa = 0.5;
    int fig2_nmax = 64;
    int fig2_grid = 200;
    std::optional<std::string> fig2_out;
    fig2->add_option("--kappa", fig2_kappa, "squeezing parameter in [0,1)");
    fig2->add_option("--nmax", fig2_nmax, "Fock truncation level");
    fig2->add_option("--grid", fig2_grid, "number of dephasing grid points");
    fig2->add_option("--out", fig2_out, "write the CSV to a file");

    auto* tripartite = app.add_subcommand(
        "tripartite", "relative strengths for the tripartite example states");
    std::uint64_t tri_seed = 42;
    int tri_restarts = 32;
    std::optional<std::string> tri_out;
    tripartite->add_option("--seed", tri_seed, "solver seed");
    tripartite->add_option("--restarts", tri_restarts, "solver restarts");
    tripartite->add_option("--out", tri_out, "write the report to a file");

    auto* classify = app.add_subcommand("classify",
                                        "classify a builtin or user-supplied state");
    std::string builtin_name;
    std::string state_path;
    std::string operator_path;
    double cls_kappa = 0.5;
    int cls_nmax = 16;
    std::uint64_t cls_seed = 42;
    int cls_restarts = 32;
    std::optional<std::string> cls_out;
    auto* builtin_opt = classify->add_option(
        "--builtin", builtin_name,
        "builtin state: psiN_{0,plus,minus} (N = 1..5) or chi_kappa");
    auto* state_opt =
        classify->add_option("--state", state_path, "JSON state file");
    builtin_opt->excludes(state_opt);
    state_opt->excludes(builtin_opt);
    classify->add_option("--operator", operator_path,
                         "JSON test-operator file (required for mixed states)");
    classify->add_option("--kappa", cls_kappa, "chi_kappa squeezing parameter");
    classify->add_option("--nmax", cls_nmax, "chi_kappa truncation level");
    classify->add_option("--seed", cls_seed, "solver seed");
    classify->add_option("--restarts", cls_restarts, "solver restarts");
    classify->add_option("--out", cls_out, "write the JSON report to a file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitInput;
    }

    try {
        const double solver_tol = solver_tol_from_env();

        if (table1->parsed()) {
            write_output(qcorr::cli::render_table1(), table1_out);
        } else if (fig2->parsed()) {
            write_output(qcorr::cli::render_fig2_csv(fig2_kappa, fig2_nmax, fig2_grid),
                         fig2_out);
        } else if (tripartite->parsed()) {
            qcorr::SolverOptions solver;
            solver.seed = tri_seed;
            solver.restarts = tri_restarts;
            solver.tol = solver_tol;
            write_output(qcorr::cli::render_tripartite(solver), tri_out);
        } else if (classify->parsed()) {
            if (builtin_name.empty() && state_path.empty()) {
                std::cerr << "classify needs --builtin or --state\n";
                return kExitInput;
            }
            qcorr::ClassifyOptions opts;
            opts.solver.seed = cls_seed;
            opts.solver.restarts = cls_restarts;
            opts.solver.tol = solver_tol;
            const qcorr::cli::RunReport report =
                builtin_name.empty()
                    ? qcorr::cli::run_classify_file(
                          state_path,
                          operator_path.empty()
                              ? std::nullopt
                              : std::optional<std::string>(operator_path),
                          opts)
                    : qcorr::cli::run_classify_builtin(builtin_name, cls_kappa,
                                                       cls_nmax, opts);
            write_output(qcorr::cli::to_json(report).dump(2) + "\n", cls_out);
        }
    } catch (const qcorr::InvalidValue& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const qcorr::DimensionMismatch& e) {
        std::cerr << "input error: " << e.what() << '\n';
        return kExitInput;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return kExitNumerical;
    }
    return kExitOk;
}
