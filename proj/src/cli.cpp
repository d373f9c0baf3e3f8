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

#include "qcorr/cli.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <sstream>

#include "qcorr/version.hpp"

namespace qcorr::cli {

using nlohmann::json;

std::string fmt_g12(double value) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", value);
    return buf;
}

// ---------------------------------------------------------------------------
// State file I/O

namespace {

SpaceSpec space_from_json(const json& j) {
    if (!j.is_object() || !j.contains("n_particles") || !j.contains("local_dim")) {
        throw InvalidValue("state document needs n_particles and local_dim");
    }
    const int n = j.at("n_particles").get<int>();
    const int d = j.at("local_dim").get<int>();
    const SpaceSpec space{n, d};
    space.total_dimension();  // validates
    return space;
}

Complex complex_from_json(const json& j) {
    if (!j.is_array() || j.size() != 2) {
        throw InvalidValue("complex entries must be [re, im] pairs");
    }
    return Complex(j[0].get<double>(), j[1].get<double>());
}

json complex_to_json(const Complex& z) {
    return json::array({z.real(), z.imag()});
}

}  // namespace

bool is_matrix_layout(const json& j) {
    return j.is_object() && j.contains("matrix");
}

json state_to_json(const StateVector& psi) {
    json amps = json::array();
    for (Eigen::Index i = 0; i < psi.amplitudes().size(); ++i) {
        amps.push_back(complex_to_json(psi.amplitudes()[i]));
    }
    return json{{"n_particles", psi.space().n_particles},
                {"local_dim", psi.space().local_dim},
                {"amplitudes", std::move(amps)}};
}

StateVector state_from_json(const json& j) {
    const SpaceSpec space = space_from_json(j);
    if (!j.contains("amplitudes")) {
        throw InvalidValue("pure state document needs an amplitudes array");
    }
    const json& amps = j.at("amplitudes");
    const auto dim = space.total_dimension();
    if (!amps.is_array() || amps.size() != dim) {
        throw InvalidValue("amplitudes length must equal d^N");
    }
    Vector v(static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < dim; ++i) {
        v[static_cast<Eigen::Index>(i)] = complex_from_json(amps[i]);
    }
    // accept small rounding drift from serialized representations
    const double norm = v.norm();
    if (std::abs(norm - 1.0) > 1e-9) {
        throw InvalidValue("state vector must be normalized (||psi|| = " +
                           fmt_g12(norm) + ")");
    }
    return StateVector::normalize(space, std::move(v));
}

namespace {

Matrix matrix_from_json(const json& j, const SpaceSpec& space) {
    const json& rows = j.at("matrix");
    const auto dim = space.total_dimension();
    if (!rows.is_array() || rows.size() != dim) {
        throw InvalidValue("matrix row count must equal d^N");
    }
    Matrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    for (std::size_t r = 0; r < dim; ++r) {
        const json& row = rows[r];
        if (!row.is_array() || row.size() != dim) {
            throw InvalidValue("matrix rows must have d^N entries");
        }
        for (std::size_t c = 0; c < dim; ++c) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) =
                complex_from_json(row[c]);
        }
    }
    return m;
}

}  // namespace

DensityMatrix density_from_json(const json& j) {
    const SpaceSpec space = space_from_json(j);
    if (!is_matrix_layout(j)) {
        throw InvalidValue("density document needs a matrix array");
    }
    return DensityMatrix::from_matrix(space, matrix_from_json(j, space), 1e-9);
}

HermitianOperator operator_from_json(const json& j) {
    const SpaceSpec space = space_from_json(j);
    if (!is_matrix_layout(j)) {
        throw InvalidValue("operator document needs a matrix array");
    }
    return HermitianOperator::from_matrix(space, matrix_from_json(j, space), 1e-9);
}

std::string line_column(const std::string& text, std::size_t byte_offset) {
    std::size_t line = 1;
    std::size_t column = 1;
    for (std::size_t i = 0; i < byte_offset && i < text.size(); ++i) {
        if (text[i] == '\n') {
            ++line;
            column = 1;
        } else {
            ++column;
        }
    }
    return "line " + std::to_string(line) + ", column " + std::to_string(column);
}

// ---------------------------------------------------------------------------
// Report serialization

namespace {

void entry_to_json(json& out, const char* key,
                   const std::optional<BoundEntry>& entry) {
    if (!entry) {
        out[key] = nullptr;
        return;
    }
    out[key] = entry->value;
    out["violated"][key] = entry->violated;
    out["exact"][key] = entry->exact;
    if (entry->gamma) {
        out["gamma"][key] = *entry->gamma;
    }
}

std::optional<BoundEntry> entry_from_json(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) {
        return std::nullopt;
    }
    BoundEntry entry;
    entry.value = j.at(key).get<double>();
    entry.violated = j.at("violated").at(key).get<bool>();
    entry.exact = j.at("exact").at(key).get<bool>();
    if (j.contains("gamma") && j.at("gamma").contains(key)) {
        entry.gamma = j.at("gamma").at(key).get<double>();
    }
    return entry;
}

constexpr const char* kBoundKeys[] = {"g0",        "gplus",      "gminus",
                                      "gsep0",     "gsep_plus",  "gsep_minus",
                                      "gsep_part0", "gsep_full0"};

std::optional<BoundEntry>* entry_slot(BoundsReport& r, const std::string& key) {
    if (key == "g0") return &r.g0;
    if (key == "gplus") return &r.gplus;
    if (key == "gminus") return &r.gminus;
    if (key == "gsep0") return &r.gsep0;
    if (key == "gsep_plus") return &r.gsep_plus;
    if (key == "gsep_minus") return &r.gsep_minus;
    if (key == "gsep_part0") return &r.gsep_part0;
    if (key == "gsep_full0") return &r.gsep_full0;
    return nullptr;
}

const std::optional<BoundEntry>* entry_slot(const BoundsReport& r,
                                            const std::string& key) {
    return entry_slot(const_cast<BoundsReport&>(r), key);
}

}  // namespace

json bounds_report_to_json(const BoundsReport& report) {
    json out;
    out["expectation"] = report.expectation;
    out["violated"] = json::object();
    out["exact"] = json::object();
    out["gamma"] = json::object();
    for (const char* key : kBoundKeys) {
        entry_to_json(out, key, *entry_slot(report, key));
    }
    out["verdicts"] = report.verdicts;
    return out;
}

BoundsReport bounds_report_from_json(const json& j) {
    BoundsReport report;
    report.expectation = j.at("expectation").get<double>();
    for (const char* key : kBoundKeys) {
        *entry_slot(report, key) = entry_from_json(j, key);
    }
    report.verdicts = j.at("verdicts").get<std::vector<std::string>>();
    return report;
}

json to_json(const RunReport& report) {
    json inputs;
    inputs["source"] = report.inputs.source;
    inputs["kappa"] = report.inputs.kappa ? json(*report.inputs.kappa) : json(nullptr);
    inputs["n_max"] = report.inputs.n_max ? json(*report.inputs.n_max) : json(nullptr);
    inputs["seed"] = report.inputs.seed;
    inputs["restarts"] = report.inputs.restarts;
    json provenance;
    provenance["library_version"] = report.library_version;
    provenance["solver_tol"] = report.solver_tol;
    provenance["na_tol"] = report.na_tol;
    return json{{"inputs", std::move(inputs)},
                {"report", bounds_report_to_json(report.report)},
                {"provenance", std::move(provenance)},
                {"wall_time_seconds", report.wall_time_seconds}};
}

RunReport run_report_from_json(const json& j) {
    RunReport report;
    const json& inputs = j.at("inputs");
    report.inputs.source = inputs.at("source").get<std::string>();
    if (!inputs.at("kappa").is_null()) {
        report.inputs.kappa = inputs.at("kappa").get<double>();
    }
    if (!inputs.at("n_max").is_null()) {
        report.inputs.n_max = inputs.at("n_max").get<int>();
    }
    report.inputs.seed = inputs.at("seed").get<std::uint64_t>();
    report.inputs.restarts = inputs.at("restarts").get<int>();
    report.report = bounds_report_from_json(j.at("report"));
    const json& provenance = j.at("provenance");
    report.library_version = provenance.at("library_version").get<std::string>();
    report.solver_tol = provenance.at("solver_tol").get<double>();
    report.na_tol = provenance.at("na_tol").get<double>();
    report.wall_time_seconds = j.at("wall_time_seconds").get<double>();
    return report;
}

// ---------------------------------------------------------------------------
// table1

namespace {

std::string cell(const std::optional<BoundEntry>& entry) {
    return entry ? fmt_g12(entry->value) : "n.a.";
}

void require_match(double a, double b, const char* what) {
    if (std::abs(a - b) > 1e-12) {
        throw NumericalError(std::string("bosonic/fermionic variants disagree for ") +
                             what);
    }
}

std::optional<BoundEntry> merged_projected(const std::optional<BoundEntry>& plus,
                                           const std::optional<BoundEntry>& minus,
                                           const char* what) {
    if (plus && minus) {
        require_match(plus->value, minus->value, what);
        return plus;
    }
    return plus ? plus : minus;
}

std::string pad(const std::string& s, std::size_t width) {
    std::string out = s;
    while (out.size() < width) out.push_back(' ');
    return out;
}

}  // namespace

std::string render_table1() {
    std::ostringstream out;
    out << pad("vector", 10) << pad("g0", 16) << pad("gpm", 16) << pad("gsep0", 16)
        << "gsep_pm" << '\n';
    for (int n = 1; n <= 3; ++n) {
        const StateVector base = example_state(n, SymmetryClass::Distinguishable);
        const BoundsReport plain =
            classify(HermitianOperator::projector(base), base);
        out << pad("psi" + std::to_string(n) + "_0", 10) << pad(cell(plain.g0), 16)
            << pad(cell(plain.gplus), 16) << pad(cell(plain.gsep0), 16)
            << cell(plain.gsep_plus) << '\n';

        const StateVector plus = example_state(n, SymmetryClass::Bosonic);
        const StateVector minus = example_state(n, SymmetryClass::Fermionic);
        const BoundsReport rp = classify(HermitianOperator::projector(plus), plus);
        const BoundsReport rm = classify(HermitianOperator::projector(minus), minus);
        // the two projected variants must give one shared row
        require_match(rp.g0->value, rm.g0->value, "g0");
        require_match(rp.gsep0->value, rm.gsep0->value, "gsep0");
        const auto gpm = merged_projected(rp.gplus, rm.gminus, "gpm");
        const auto gsep_pm = merged_projected(rp.gsep_plus, rm.gsep_minus, "gsep_pm");
        out << pad("psi" + std::to_string(n) + "_pm", 10) << pad(cell(rp.g0), 16)
            << pad(cell(gpm), 16) << pad(cell(rp.gsep0), 16) << cell(gsep_pm)
            << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// fig2

double fig2_threshold(double kappa) {
    // crossing of the analytic expectation with the bosonic separable bound 2;
    // the zero-dephasing limit (1+kappa)/(1-kappa) must exceed 2
    const double target = 2.0;
    double lo = 1e-12;
    double hi = M_PI;
    if (chi_expectation_analytic(kappa, lo) <= target) {
        return std::numeric_limits<double>::quiet_NaN();
    }
    while (hi - lo > 1e-10) {
        const double mid = 0.5 * (lo + hi);
        if (chi_expectation_analytic(kappa, mid) > target) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

std::string render_fig2_csv(double kappa, int n_max, int grid) {
    if (grid < 2) {
        throw InvalidValue("fig2 grid needs at least two points");
    }
    TMSVParams params;
    params.kappa = kappa;
    params.n_max = n_max;
    params.validate();

    const StateVector chi = chi_vector(n_max);
    const double g0 = incoherent_bound_rank_one(chi, SymmetryClass::Distinguishable);
    const double gplus = incoherent_bound_rank_one(chi, SymmetryClass::Bosonic);
    const double gsep0 = sep_bound(schmidt(chi));
    const double gsep_plus = sep_bound(takagi(chi));

    const double threshold = fig2_threshold(kappa);

    std::ostringstream out;
    out << "# kappa=" << fmt_g12(kappa) << " n_max=" << n_max
        << " truncated_weight=" << fmt_g12(tmsv_truncated_weight(params))
        << " delta_phi_star="
        << (std::isnan(threshold) ? std::string("n.a.") : fmt_g12(threshold))
        << " (approximate root of analytic <L> = gsep_plus)" << '\n';
    out << "delta_phi,L_analytic,L_numeric,g0,gplus,gsep0,gsep_plus" << '\n';
    for (int i = 0; i < grid; ++i) {
        const double dphi = M_PI * static_cast<double>(i) / (grid - 1);
        params.delta_phi = dphi;
        out << fmt_g12(dphi) << ',' << fmt_g12(chi_expectation_analytic(kappa, dphi))
            << ',' << fmt_g12(chi_expectation_numeric(params)) << ',' << fmt_g12(g0)
            << ',' << fmt_g12(gplus) << ',' << fmt_g12(gsep0) << ','
            << fmt_g12(gsep_plus) << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// tripartite

std::string render_tripartite(const SolverOptions& solver) {
    ClassifyOptions opts;
    opts.solver = solver;

    std::ostringstream out;
    out << pad("state", 10) << pad("gamma0", 16) << pad("gamma_partsep0", 16)
        << "gamma_fullsep0" << '\n';
    for (int n = 4; n <= 5; ++n) {
        const StateVector base = example_state(n, SymmetryClass::Distinguishable);
        const BoundsReport r =
            classify(HermitianOperator::projector(base), base, opts);
        out << pad("psi" + std::to_string(n) + "_0", 10)
            << pad(fmt_g12(r.g0->gamma.value()), 16)
            << pad(fmt_g12(r.gsep_part0->gamma.value()), 16)
            << fmt_g12(r.gsep_full0->gamma.value()) << '\n';
    }
    out << '\n'
        << pad("state", 10) << pad("gamma0", 16) << "gamma_pm" << '\n';
    for (int n = 4; n <= 5; ++n) {
        const StateVector plus = example_state(n, SymmetryClass::Bosonic);
        const StateVector minus = example_state(n, SymmetryClass::Fermionic);
        const BoundsReport rp =
            classify(HermitianOperator::projector(plus), plus, opts);
        const BoundsReport rm =
            classify(HermitianOperator::projector(minus), minus, opts);
        require_match(rp.g0->gamma.value(), rm.g0->gamma.value(), "gamma0");
        require_match(rp.gplus->gamma.value(), rm.gminus->gamma.value(), "gamma_pm");
        out << pad("psi" + std::to_string(n) + "_pm", 10)
            << pad(fmt_g12(rp.g0->gamma.value()), 16)
            << fmt_g12(rp.gplus->gamma.value()) << '\n';
    }
    return out.str();
}

// ---------------------------------------------------------------------------
// classify

namespace {

RunReport finish_report(const ClassifyInputs& inputs, BoundsReport bounds,
                        const ClassifyOptions& opts,
                        std::chrono::steady_clock::time_point start) {
    RunReport report;
    report.inputs = inputs;
    report.report = std::move(bounds);
    report.library_version = kVersion;
    report.solver_tol = opts.solver.tol;
    report.na_tol = opts.na_tol;
    report.wall_time_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

}  // namespace

RunReport run_classify_builtin(const std::string& name, double kappa, int n_max,
                               const ClassifyOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    ClassifyInputs inputs;
    inputs.source = "builtin:" + name;
    inputs.seed = opts.solver.seed;
    inputs.restarts = opts.solver.restarts;

    StateVector state = [&] {
        if (name == "chi_kappa") {
            inputs.kappa = kappa;
            inputs.n_max = n_max;
            TMSVParams params;
            params.kappa = kappa;
            params.n_max = n_max;
            return tmsv(params);
        }
        return example_state(name);
    }();
    BoundsReport bounds =
        classify(HermitianOperator::projector(state), state, opts);
    return finish_report(inputs, std::move(bounds), opts, start);
}

RunReport run_classify_file(const std::string& state_path,
                            const std::optional<std::string>& operator_path,
                            const ClassifyOptions& opts) {
    const auto start = std::chrono::steady_clock::now();
    ClassifyInputs inputs;
    inputs.source = "file:" + state_path;
    inputs.seed = opts.solver.seed;
    inputs.restarts = opts.solver.restarts;

    std::ifstream in(state_path);
    if (!in) {
        throw InvalidValue("cannot open state file: " + state_path);
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    const std::string text = buffer.str();
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        throw InvalidValue("malformed JSON in " + state_path + " at " +
                           line_column(text, e.byte) + ": " + e.what());
    }

    std::optional<HermitianOperator> op;
    if (operator_path) {
        std::ifstream op_in(*operator_path);
        if (!op_in) {
            throw InvalidValue("cannot open operator file: " + *operator_path);
        }
        std::stringstream op_buffer;
        op_buffer << op_in.rdbuf();
        const std::string op_text = op_buffer.str();
        try {
            op = operator_from_json(json::parse(op_text));
        } catch (const json::parse_error& e) {
            throw InvalidValue("malformed JSON in " + *operator_path + " at " +
                               line_column(op_text, e.byte) + ": " + e.what());
        }
    }

    BoundsReport bounds;
    if (is_matrix_layout(doc)) {
        const DensityMatrix rho = density_from_json(doc);
        if (!op) {
            throw InvalidValue(
                "mixed-state input requires --operator with a test operator");
        }
        bounds = classify(*op, rho, opts);
    } else {
        const StateVector psi = state_from_json(doc);
        bounds = classify(op ? *op : HermitianOperator::projector(psi), psi, opts);
    }
    return finish_report(inputs, std::move(bounds), opts, start);
}

}  // namespace qcorr::cli
