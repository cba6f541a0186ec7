#include "cli_app.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "pqclone/discrimination.hpp"
#include "pqclone/matrixkit.hpp"
#include "pqclone/synthesis.hpp"

namespace pqclone::cli {

namespace {

using ordered_json = nlohmann::ordered_json;

// Reals are rounded to 12 significant digits before they enter a JSON
// document, so re-parsing the output reproduces every number bit-identically.
double round_sig(double x) {
    if (!std::isfinite(x) || x == 0.0) return x;
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.11e", x);
    return std::strtod(buf, nullptr);
}

ordered_json jreal(double x) { return round_sig(x); }

ordered_json jcomplex(const Complex& z) {
    return ordered_json::array({round_sig(z.real()), round_sig(z.imag())});
}

ordered_json jvector(const CVector& v) {
    ordered_json out = ordered_json::array();
    for (const Complex& z : v) out.push_back(jcomplex(z));
    return out;
}

ordered_json jmatrix(const CMatrix& m) {
    ordered_json out = ordered_json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        ordered_json row = ordered_json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(jcomplex(m(i, j)));
        out.push_back(std::move(row));
    }
    return out;
}

ordered_json jindices(const std::vector<std::size_t>& v) {
    return ordered_json(v);
}

std::string fmt6(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", x);
    return buf;
}

std::string fmtc(const Complex& z) {
    if (std::abs(z.imag()) < 1e-12) return fmt6(z.real());
    std::ostringstream os;
    os << fmt6(z.real()) << (z.imag() < 0 ? "-" : "+") << fmt6(std::abs(z.imag())) << "i";
    return os.str();
}

std::string command_name(Command c) {
    switch (c) {
        case Command::analyze: return "analyze";
        case Command::optimize: return "optimize";
        case Command::synthesize: return "synthesize";
        case Command::simulate: return "simulate";
        case Command::discriminate: return "discriminate";
        case Command::compare_limit: return "compare-limit";
    }
    return "?";
}

std::string pgram_mode_name(PGramMode m) {
    switch (m) {
        case PGramMode::identity: return "identity";
        case PGramMode::all_ones: return "all_ones";
        case PGramMode::search: return "search";
    }
    return "?";
}

struct Analysis {
    StateSet set;
    IndependentSubset subset;
    Partition part;
};

Analysis analyze_set(const RunConfig& config, std::ostream& warn) {
    StateSet set = load_state_file(config.input_path, warn);
    IndependentSubset subset = maximal_independent_subset(set);
    Partition part = clonable_partition(set, subset);
    return Analysis{std::move(set), std::move(subset), std::move(part)};
}

// Per-state efficiency vector in global input order.
std::vector<double> gamma_in_input_order(const Analysis& a, const std::vector<double>& gamma_sm) {
    std::vector<double> out(a.set.size(), 0.0);
    for (std::size_t pos = 0; pos < a.part.sm_order.size(); ++pos) {
        out[a.part.sm_order[pos]] = gamma_sm[pos];
    }
    return out;
}

ordered_json partition_json(const Analysis& a) {
    ordered_json p;
    p["independent"] = jindices(a.part.independent);
    p["dependent"] = jindices(a.part.dependent);
    p["clonable"] = jindices(a.part.clonable);
    p["blocked"] = jindices(a.part.blocked);
    p["sm_order"] = jindices(a.part.sm_order);
    ordered_json usage = ordered_json::array();
    for (double u : a.part.usage) usage.push_back(jreal(u));
    p["usage"] = std::move(usage);
    ordered_json expansions = ordered_json::array();
    for (std::size_t k = 0; k < a.part.dependent.size(); ++k) {
        ordered_json e;
        e["state"] = a.part.dependent[k];
        e["coefficients"] = jvector(a.part.expansions[k]);
        expansions.push_back(std::move(e));
    }
    p["expansions"] = std::move(expansions);
    p["verdict"] = a.part.part_pqc_possible() ? "part PQC possible" : "part PQC impossible";
    return p;
}

ordered_json report_header(const RunConfig& config, const Analysis& a) {
    ordered_json doc;
    doc["command"] = command_name(config.command);
    doc["input"] = config.input_path;
    doc["dim"] = a.set.dim();
    doc["n_states"] = a.set.size();
    doc["n_copies"] = config.n_copies;
    doc["pgram_mode"] = pgram_mode_name(config.pgram_mode);
    doc["tol"] = jreal(config.tol);
    doc["seed"] = config.seed;
    doc["partition"] = partition_json(a);
    return doc;
}

void print_partition_table(const Analysis& a, std::ostream& out) {
    const auto list = [](const std::vector<std::size_t>& v) {
        std::ostringstream os;
        os << "[";
        for (std::size_t i = 0; i < v.size(); ++i) os << (i ? " " : "") << v[i];
        os << "]";
        return os.str();
    };
    out << "states: " << a.set.size() << " in dimension " << a.set.dim() << "\n";
    out << "independent S_m:  " << list(a.part.independent) << "\n";
    out << "dependent S'_m:   " << list(a.part.dependent) << "\n";
    out << "clonable S_l:     " << list(a.part.clonable) << "\n";
    out << "blocked S_m\\S_l:  " << list(a.part.blocked) << "\n";
    out << "usage A_j over " << list(a.part.sm_order) << ": ";
    for (std::size_t i = 0; i < a.part.usage.size(); ++i) {
        out << (i ? " " : "") << fmt6(a.part.usage[i]);
    }
    out << "\n";
    for (std::size_t k = 0; k < a.part.dependent.size(); ++k) {
        out << "expansion state " << a.part.dependent[k] << " =";
        for (std::size_t i = 0; i < a.part.sm_order.size(); ++i) {
            out << " (" << fmtc(a.part.expansions[k][i]) << ")*state" << a.part.sm_order[i];
            if (i + 1 < a.part.sm_order.size()) out << " +";
        }
        out << "\n";
    }
    out << "verdict: "
        << (a.part.part_pqc_possible() ? "part PQC possible" : "part PQC impossible") << "\n";
}

void emit(const RunConfig& config, const ordered_json& doc, std::ostream& out,
          const std::function<void()>& table_printer) {
    if (config.format == OutputFormat::json) {
        out << doc.dump(2) << "\n";
    } else {
        table_printer();
    }
}

struct OptimizeOutcome {
    PGram pgram;
    double t_star = 0.0;
    FeasibilityReport report;
};

// Bisection accepts boundary points whose residual dips ~1e-9 negative; the
// square-root clamp would smear that onto the failure block. Machines are
// built a hair inside the feasible set instead.
double backed_off(double t, const std::function<double(double)>& min_eig_at) {
    double step = 1e-9;
    for (int i = 0; i < 60 && t > 0.0 && min_eig_at(t) < -1e-12; ++i) {
        t = std::max(0.0, t - step);
        step *= 2.0;
    }
    return t;
}

OptimizeOutcome run_optimize(const Analysis& a, const RunConfig& config) {
    OptimizeOutcome out;
    if (config.pgram_mode == PGramMode::search) {
        PGramOptimum best = optimize_pgram(a.set, a.part, config.n_copies,
                                           PGramMode::search, config.seed);
        out.pgram = std::move(best.pgram);
        out.t_star = best.t_star;
    } else {
        out.pgram = (config.pgram_mode == PGramMode::identity)
                        ? PGram::identity(a.part.m())
                        : PGram::all_ones(a.part.m());
        out.t_star = max_uniform_efficiency(a.set, a.part, out.pgram, config.n_copies).t_star;
    }
    const double t_build = backed_off(out.t_star, [&](double t) {
        return is_feasible(a.set, a.part, EfficiencySpec::uniform(a.part, t, config.n_copies),
                           out.pgram, config.tol)
            .min_eigenvalue;
    });
    out.report = is_feasible(a.set, a.part,
                             EfficiencySpec::uniform(a.part, t_build, config.n_copies),
                             out.pgram, config.tol);
    return out;
}

ordered_json efficiencies_json(const Analysis& a, const RunConfig& config,
                               const OptimizeOutcome& opt) {
    ordered_json eff;
    eff["t_star"] = jreal(opt.t_star);
    ordered_json gamma = ordered_json::array();
    for (double g : gamma_in_input_order(a, opt.report.gamma.gamma)) gamma.push_back(jreal(g));
    eff["gamma"] = std::move(gamma);
    eff["n_copies"] = config.n_copies;
    eff["pgram_mode"] = pgram_mode_name(config.pgram_mode);
    eff["pgram"] = jmatrix(opt.pgram.overlaps());
    try {
        const ClosedFormBound bound = closed_form_bounds(a.set, a.part);
        eff["closed_form_bound"] = jreal(bound.bound);
        eff["closed_form_delta"] = jreal(std::abs(bound.bound - opt.t_star));
    } catch (const ShapeNotCoveredError&) {
        eff["closed_form_bound"] = nullptr;
        eff["closed_form_delta"] = nullptr;
    }
    return eff;
}

ordered_json feasibility_json(const FeasibilityReport& report) {
    ordered_json f;
    f["min_eigenvalue"] = jreal(report.min_eigenvalue);
    f["feasible"] = report.feasible;
    return f;
}

int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const Analysis a = analyze_set(config, err);
    const ordered_json doc = report_header(config, a);
    emit(config, doc, out, [&] { print_partition_table(a, out); });
    return a.part.part_pqc_possible() ? kExitOk : kExitImpossible;
}

int cmd_optimize(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const Analysis a = analyze_set(config, err);
    if (!a.part.part_pqc_possible()) {
        err << "error: no clonable subset (every independent state is drawn on by a "
               "dependent one); part PQC impossible\n";
        return kExitImpossible;
    }
    const OptimizeOutcome opt = run_optimize(a, config);
    ordered_json doc = report_header(config, a);
    doc["efficiencies"] = efficiencies_json(a, config, opt);
    doc["feasibility"] = feasibility_json(opt.report);

    emit(config, doc, out, [&] {
        print_partition_table(a, out);
        out << "\n";
        out << "pgram mode: " << pgram_mode_name(config.pgram_mode) << " (N = "
            << config.n_copies << ")\n";
        out << "max uniform efficiency t* = " << fmt6(opt.t_star) << "\n";
        out << "gamma per state:";
        for (double g : gamma_in_input_order(a, opt.report.gamma.gamma)) out << " " << fmt6(g);
        out << "\n";
        out << "min residual eigenvalue: " << fmt6(opt.report.min_eigenvalue) << "\n";
        const ordered_json& eff = doc["efficiencies"];
        if (!eff["closed_form_bound"].is_null()) {
            out << "closed-form bound: " << fmt6(eff["closed_form_bound"].get<double>())
                << " (delta " << fmt6(eff["closed_form_delta"].get<double>()) << ")\n";
        }
    });
    return kExitOk;
}

int cmd_synthesize(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const Analysis a = analyze_set(config, err);
    if (!a.part.part_pqc_possible()) {
        err << "error: no clonable subset; nothing to synthesize\n";
        return kExitImpossible;
    }
    const OptimizeOutcome opt = run_optimize(a, config);
    const CloningMap map = build_cloning_map(a.set, a.part, opt.report.gamma, opt.pgram);

    std::size_t c_rank = 0;
    for (double ev : hermitian_eig(map.c_matrix).eigenvalues) {
        if (ev > 1e-7) ++c_rank;
    }
    double unitary_dev = -1.0;
    if (map.output_dim() <= 1024) {
        const CMatrix u = extend_to_unitary(map);
        unitary_dev = (u.adjoint() * u - CMatrix::identity(map.output_dim())).max_abs();
    }

    ordered_json doc = report_header(config, a);
    doc["efficiencies"] = efficiencies_json(a, config, opt);
    doc["feasibility"] = feasibility_json(opt.report);
    ordered_json syn;
    syn["output_dim"] = map.output_dim();
    syn["copies_dim"] = map.copies_dim();
    syn["z_dim"] = map.z_dim();
    syn["flag_rank"] = map.flag_rank;
    syn["gram_deviation"] = jreal(map.gram_deviation());
    syn["c_rank"] = c_rank;
    syn["c_matrix"] = jmatrix(map.c_matrix);
    if (unitary_dev >= 0.0) {
        syn["unitary_deviation"] = jreal(unitary_dev);
    } else {
        syn["unitary_deviation"] = nullptr;
    }
    doc["synthesis"] = std::move(syn);

    emit(config, doc, out, [&] {
        out << "cloning map: 1 -> " << config.n_copies << " copies, gamma = t* = "
            << fmt6(opt.t_star) << "\n";
        out << "output dimension: " << map.output_dim() << " (copies " << map.copies_dim()
            << " x z " << map.z_dim() << ")\n";
        out << "flag rank (dim H_p): " << map.flag_rank << "\n";
        out << "gram deviation: " << fmt6(map.gram_deviation()) << "\n";
        out << "failure factor rank: " << c_rank << "\n";
        if (unitary_dev >= 0.0) {
            out << "unitary deviation |U+U - I|: " << fmt6(unitary_dev) << "\n";
        } else {
            out << "unitary extension skipped (output dimension too large)\n";
        }
    });
    return kExitOk;
}

int run_probe(const Analysis& a, const RunConfig& config, ordered_json& doc, std::ostream& out,
              const RunConfig& cfg_for_emit) {
    // Forced efficiencies: uniform on all of S_m at half the largest value
    // that keeps the residual PSD (zero pattern deliberately ignored).
    const CMatrix gram_m = a.set.gram_submatrix(a.part.sm_order);
    const PGram pgram = (config.pgram_mode == PGramMode::identity)
                            ? PGram::identity(a.part.m())
                            : PGram::all_ones(a.part.m());
    const CMatrix xz = xz_matrix(a.set, a.part, pgram, config.n_copies);
    const auto residual_ok = [&](double t) {
        EfficiencySpec g;
        g.gamma.assign(a.part.m(), t);
        g.n_copies = config.n_copies;
        return is_psd(residual_matrix(gram_m, xz, g), kPsdTol).psd;
    };
    double lo = 0.0, hi = 1.0;
    if (residual_ok(1.0)) {
        lo = 1.0;
    } else {
        while (hi - lo > 1e-6) {
            const double mid = 0.5 * (lo + hi);
            (residual_ok(mid) ? lo : hi) = mid;
        }
    }
    EfficiencySpec forced;
    forced.gamma.assign(a.part.m(), 0.5 * lo);
    forced.n_copies = config.n_copies;

    const ProbeReport probe = soundness_probe(a.set, a.part, forced, pgram);

    ordered_json pj;
    ordered_json used = ordered_json::array();
    for (double g : probe.used_gamma.gamma) used.push_back(jreal(g));
    pj["forced_gamma"] = std::move(used);
    ordered_json cases = ordered_json::array();
    for (const ProbeCase& c : probe.cases) {
        ordered_json cj;
        cj["state"] = c.state_index;
        cj["success_probability"] = jreal(c.success_probability);
        cj["clone_fidelity"] = jreal(c.clone_fidelity);
        cj["violation"] = c.violation;
        cases.push_back(std::move(cj));
    }
    pj["cases"] = std::move(cases);
    pj["any_violation"] = probe.any_violation;
    doc["probe"] = std::move(pj);

    emit(cfg_for_emit, doc, out, [&] {
        print_partition_table(a, out);
        out << "\n";
        out << "soundness probe: forced gamma " << fmt6(forced.gamma.empty() ? 0.0 : forced.gamma[0])
            << " on every independent state (zero pattern ignored)\n";
        if (probe.cases.empty()) {
            out << "no dependent states to probe\n";
        }
        for (const ProbeCase& c : probe.cases) {
            out << "dependent state " << c.state_index << ": success probability "
                << fmt6(c.success_probability) << ", clone fidelity " << fmt6(c.clone_fidelity)
                << (c.violation ? "  <-- unsound cloner: succeeds without copying" : "") << "\n";
        }
        out << (probe.any_violation
                    ? "violation detected: positive efficiency on a blocked state lets a "
                      "dependent state pass with fidelity < 1\n"
                    : "no violation detected\n");
    });
    return kExitOk;
}

int cmd_simulate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const Analysis a = analyze_set(config, err);
    ordered_json doc = report_header(config, a);

    if (config.probe_soundness) {
        return run_probe(a, config, doc, out, config);
    }
    if (!a.part.part_pqc_possible()) {
        err << "error: no clonable subset; nothing to simulate (try --probe-soundness)\n";
        return kExitImpossible;
    }

    const OptimizeOutcome opt = run_optimize(a, config);
    const CloningMap map = build_cloning_map(a.set, a.part, opt.report.gamma, opt.pgram);
    const std::vector<double> gamma_global = gamma_in_input_order(a, opt.report.gamma.gamma);

    bool invariants_ok = true;
    ordered_json rows = ordered_json::array();
    std::vector<SimOutcome> outcomes;
    for (std::size_t j = 0; j < a.set.size(); ++j) {
        const SimOutcome sim = simulate_cloning(map, a.set.state(j));
        outcomes.push_back(sim);
        ordered_json row;
        row["state"] = j;
        row["success_probability"] = jreal(sim.success_probability);
        row["clone_fidelity"] = jreal(sim.clone_fidelity);
        row["failure_probability"] = jreal(sim.failure_probability);
        rows.push_back(std::move(row));

        if (std::abs(sim.success_probability - gamma_global[j]) > 1e-10) invariants_ok = false;
        if (gamma_global[j] > 0.0 && std::abs(sim.clone_fidelity - 1.0) > 1e-10) {
            invariants_ok = false;
        }
        if (std::abs(sim.success_probability + sim.failure_probability - 1.0) > 1e-10) {
            invariants_ok = false;
        }
    }
    doc["efficiencies"] = efficiencies_json(a, config, opt);
    doc["feasibility"] = feasibility_json(opt.report);
    doc["simulation"] = std::move(rows);
    doc["invariants_ok"] = invariants_ok;

    emit(config, doc, out, [&] {
        out << "simulating the optimal cloner (t* = " << fmt6(opt.t_star) << ", N = "
            << config.n_copies << ")\n";
        out << "state  success_prob  clone_fidelity  failure_prob  role\n";
        for (std::size_t j = 0; j < a.set.size(); ++j) {
            const char* role = "dependent";
            if (std::find(a.part.clonable.begin(), a.part.clonable.end(), j) !=
                a.part.clonable.end()) {
                role = "clonable";
            } else if (std::find(a.part.blocked.begin(), a.part.blocked.end(), j) !=
                       a.part.blocked.end()) {
                role = "blocked";
            }
            out << j << "      " << fmt6(outcomes[j].success_probability) << "      "
                << fmt6(outcomes[j].clone_fidelity) << "      "
                << fmt6(outcomes[j].failure_probability) << "      " << role << "\n";
        }
        out << (invariants_ok ? "all simulation invariants hold\n"
                              : "SIMULATION INVARIANT VIOLATION\n");
    });
    if (!invariants_ok) {
        err << "error: simulation invariants failed\n";
        return kExitInputError;
    }
    return kExitOk;
}

int cmd_discriminate(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const Analysis a = analyze_set(config, err);
    if (!a.part.part_pqc_possible()) {
        err << "error: no clonable subset; part discrimination impossible\n";
        return kExitImpossible;
    }
    const DiscriminationOptimum opt = disc_max_uniform(a.set, a.part);
    const CMatrix gram_m = a.set.gram_submatrix(a.part.sm_order);
    const double t_build = backed_off(opt.t_star, [&](double t) {
        CMatrix res = gram_m;
        for (std::size_t j = 0; j < a.part.l(); ++j) res(j, j) -= t;
        return is_psd(res, kPsdTol).min_eigenvalue;
    });
    std::vector<double> gamma(a.part.m(), 0.0);
    for (std::size_t j = 0; j < a.part.l(); ++j) gamma[j] = t_build;
    const DiscriminationMap map = build_discrimination_map(a.set, a.part, gamma);

    ordered_json doc = report_header(config, a);
    ordered_json disc;
    disc["t_star"] = jreal(opt.t_star);
    ordered_json gj = ordered_json::array();
    for (double g : gamma_in_input_order(a, gamma)) gj.push_back(jreal(g));
    disc["gamma"] = std::move(gj);
    disc["min_eigenvalue"] = jreal(opt.min_eigenvalue);
    ordered_json outcomes = ordered_json::array();
    std::vector<std::vector<double>> tables;
    for (std::size_t j = 0; j < a.set.size(); ++j) {
        const std::vector<double> probs = simulate_discrimination(map, a.set.state(j));
        tables.push_back(probs);
        ordered_json oj;
        oj["state"] = j;
        ordered_json pj = ordered_json::array();
        for (double p : probs) pj.push_back(jreal(p));
        oj["flag_probabilities"] = std::move(pj);
        outcomes.push_back(std::move(oj));
    }
    disc["outcomes"] = std::move(outcomes);
    doc["discrimination"] = std::move(disc);

    emit(config, doc, out, [&] {
        print_partition_table(a, out);
        out << "\n";
        out << "discrimination optimum t* = " << fmt6(opt.t_star)
            << " (min eigenvalue of X - Gamma: " << fmt6(opt.min_eigenvalue) << ")\n";
        out << "state | flag probabilities (last = inconclusive)\n";
        for (std::size_t j = 0; j < tables.size(); ++j) {
            out << j << "     |";
            for (double p : tables[j]) out << " " << fmt6(p);
            out << "\n";
        }
    });
    return kExitOk;
}

int cmd_compare_limit(const RunConfig& config, std::ostream& out, std::ostream& err) {
    const Analysis a = analyze_set(config, err);
    if (!a.part.part_pqc_possible()) {
        err << "error: no clonable subset; nothing to compare\n";
        return kExitImpossible;
    }
    const std::vector<std::size_t> n_values{2, 3, 5, 10, 20};
    const LimitComparison table =
        pqc_limit_comparison(a.set, a.part, n_values, config.pgram_mode, config.seed);

    ordered_json doc = report_header(config, a);
    ordered_json lim;
    ordered_json rows = ordered_json::array();
    for (const LimitRow& row : table.rows) {
        ordered_json rj;
        rj["n_copies"] = row.n_copies;
        rj["t_star"] = jreal(row.t_star);
        rj["gap"] = jreal(row.t_star - table.t_disc);
        rows.push_back(std::move(rj));
    }
    lim["rows"] = std::move(rows);
    lim["t_disc"] = jreal(table.t_disc);
    doc["limit_comparison"] = std::move(lim);

    emit(config, doc, out, [&] {
        out << "1->N cloning optimum vs discrimination optimum (pgram mode "
            << pgram_mode_name(config.pgram_mode) << ")\n";
        out << "N      t*(N)       gap\n";
        for (const LimitRow& row : table.rows) {
            out << row.n_copies << (row.n_copies < 10 ? "      " : "     ") << fmt6(row.t_star)
                << "    " << fmt6(row.t_star - table.t_disc) << "\n";
        }
        out << "disc   " << fmt6(table.t_disc) << "\n";
    });
    return kExitOk;
}

}  // namespace

StateSet load_state_file(const std::string& path, std::ostream& warn) {
    std::ifstream file(path);
    if (!file) {
        throw FileNotFoundError("cannot open input file: " + path);
    }
    nlohmann::json doc;
    try {
        file >> doc;
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("input JSON: ") + e.what());
    }
    if (!doc.is_object() || !doc.contains("dim") || !doc.contains("states")) {
        throw ParseError("input JSON must be an object with \"dim\" and \"states\"");
    }
    if (!doc["dim"].is_number_unsigned() || doc["dim"].get<std::size_t>() == 0) {
        throw ParseError("field \"dim\" must be a positive integer");
    }
    const std::size_t dim = doc["dim"].get<std::size_t>();
    if (!doc["states"].is_array() || doc["states"].empty()) {
        throw ParseError("field \"states\" must be a nonempty array");
    }

    std::vector<CVector> raw;
    for (std::size_t j = 0; j < doc["states"].size(); ++j) {
        const auto& state = doc["states"][j];
        if (!state.is_array() || state.size() != dim) {
            throw ParseError("state " + std::to_string(j) + " must be an array of " +
                             std::to_string(dim) + " complex amplitudes");
        }
        CVector amps;
        for (std::size_t d = 0; d < dim; ++d) {
            const auto& entry = state[d];
            if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number() ||
                !entry[1].is_number()) {
                throw ParseError("state " + std::to_string(j) + ", amplitude " +
                                 std::to_string(d) + " must be [re, im]");
            }
            amps.emplace_back(entry[0].get<double>(), entry[1].get<double>());
        }
        const double n = norm2(amps);
        if (n < 1e-6) {
            throw ZeroVectorError("state " + std::to_string(j) + " has norm " +
                                  std::to_string(n) + ": zero vector");
        }
        if (std::abs(n - 1.0) > 1e-6) {
            throw ParseError("state " + std::to_string(j) + " has norm " + std::to_string(n) +
                             ", more than 1e-6 away from 1");
        }
        if (std::abs(n - 1.0) > 1e-9) {
            warn << "warning: state " << j << " renormalized (norm was off by "
                 << fmt6(std::abs(n - 1.0)) << ")\n";
        }
        raw.push_back(std::move(amps));
    }
    return load_states(dim, raw);
}

int run_command(const RunConfig& config, std::ostream& out, std::ostream& err) {
    try {
        switch (config.command) {
            case Command::analyze: return cmd_analyze(config, out, err);
            case Command::optimize: return cmd_optimize(config, out, err);
            case Command::synthesize: return cmd_synthesize(config, out, err);
            case Command::simulate: return cmd_simulate(config, out, err);
            case Command::discriminate: return cmd_discriminate(config, out, err);
            case Command::compare_limit: return cmd_compare_limit(config, out, err);
        }
    } catch (const EmptyClonableSubsetError& e) {
        err << "error: " << e.what() << "\n";
        return kExitImpossible;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kExitInputError;
    }
    return kExitInputError;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"part probabilistic cloning and unambiguous discrimination of pure state sets"};
    app.require_subcommand(1);

    RunConfig config;
    std::string pgram = "search";
    std::string format = "table";

    const auto add_common = [&](CLI::App* sub) {
        sub->add_option("input", config.input_path, "state-set JSON file")->required();
        sub->add_option("--copies", config.n_copies, "number of copies N (default 2)")
            ->check(CLI::Range(std::size_t{2}, std::size_t{64}));
        sub->add_option("--pgram", pgram, "flag-overlap mode (default search)")
            ->check(CLI::IsMember({"identity", "all_ones", "search"}));
        sub->add_option("--tol", config.tol, "PSD tolerance (default 1e-9)")
            ->check(CLI::PositiveNumber);
        sub->add_option("--format", format, "output format (default table)")
            ->check(CLI::IsMember({"json", "table"}));
        sub->add_option("--seed", config.seed, "seed for search restarts (default 0)");
        sub->add_flag("--probe-soundness", config.probe_soundness,
                      "simulate with forced efficiencies on blocked states");
    };

    std::map<std::string, Command> commands{
        {"analyze", Command::analyze},         {"optimize", Command::optimize},
        {"synthesize", Command::synthesize},   {"simulate", Command::simulate},
        {"discriminate", Command::discriminate}, {"compare-limit", Command::compare_limit},
    };
    std::map<std::string, CLI::App*> subs;
    subs["analyze"] = app.add_subcommand("analyze", "partition the set per the clonability test");
    subs["optimize"] = app.add_subcommand("optimize", "maximize the uniform cloning efficiency");
    subs["synthesize"] = app.add_subcommand("synthesize", "build the explicit cloning map");
    subs["simulate"] = app.add_subcommand("simulate", "simulate the cloner on every state");
    subs["discriminate"] =
        app.add_subcommand("discriminate", "part unambiguous discrimination analysis");
    subs["compare-limit"] =
        app.add_subcommand("compare-limit", "t*(N) for N in {2,3,5,10,20} vs discrimination");
    for (auto& [name, sub] : subs) add_common(sub);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        std::ostringstream usage;
        const int code = app.exit(e, usage, usage);
        (code == 0 ? out : err) << usage.str();
        return code == 0 ? kExitOk : kExitInputError;
    }

    for (const auto& [name, sub] : subs) {
        if (sub->parsed()) config.command = commands.at(name);
    }
    if (pgram == "identity") config.pgram_mode = PGramMode::identity;
    if (pgram == "all_ones") config.pgram_mode = PGramMode::all_ones;
    if (pgram == "search") config.pgram_mode = PGramMode::search;
    config.format = (format == "json") ? OutputFormat::json : OutputFormat::table;

    return run_command(config, out, err);
}

}  // namespace pqclone::cli
