#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mokkt/report.hpp"

using namespace mokkt;
using nlohmann::json;

namespace {

std::vector<double> parse_csv_vector(const std::string& csv) {
    std::vector<double> out;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw FormatError("cannot parse '" + item + "' as a number");
        }
    }
    if (out.empty()) throw FormatError("empty vector argument");
    return out;
}

std::string fmt_vec(std::span<const double> v) {
    std::ostringstream ss;
    ss << "(";
    for (std::size_t i = 0; i < v.size(); ++i) ss << (i ? ", " : "") << v[i];
    ss << ")";
    return ss.str();
}

std::string fmt_set(const std::vector<int>& v) {
    std::ostringstream ss;
    ss << "{";
    for (std::size_t i = 0; i < v.size(); ++i) ss << (i ? "," : "") << v[i] + 1;
    ss << "}";
    return ss.str();
}

void emit(const json& report, bool as_json, const std::string& human) {
    if (as_json)
        std::cout << report.dump(2) << "\n";
    else
        std::cout << human;
}

std::vector<double> require_point(const Problem& p) {
    if (!p.point) throw FormatError("problem file has no candidate point");
    return *p.point;
}

// ---------------------------------------------------------------------------

int run_certify(const std::string& file, const std::string& mode_str, int directions,
                std::uint64_t seed, bool as_json, const Tolerances& tol) {
    Problem p = load_problem_file(file);
    std::vector<double> x = require_point(p);
    MultiplierMode mode =
        mode_str == "fj" ? MultiplierMode::FritzJohn : MultiplierMode::KuhnTucker;

    PointCertification cert = certify_point(p, x, mode, directions, seed, tol);
    json result = {{"certification", to_json(cert)}};
    int code = derive_exit_code("certify", result);

    std::ostringstream human;
    human << "certify " << p.id << " at x = " << fmt_vec(x) << "  [mode "
          << multiplier_mode_name(mode) << ", seed " << seed << "]\n";
    human << "status: " << certify_status_name(cert.status) << " over "
          << cert.directions_found << " sampled critical directions (budget "
          << cert.direction_budget << ")\n";
    if (cert.witness) human << "witness direction: " << fmt_vec(*cert.witness) << "\n";
    if (cert.socq) {
        human << "socq: "
              << (cert.socq->overall == CqReport::Overall::HoldsSampled ? "holds-sampled"
                  : cert.socq->overall == CqReport::Overall::Fails      ? "fails"
                                                                        : "inconclusive")
              << ", refutation implies non-optimality: "
              << (cert.refutation_implies_not_pareto ? "yes" : "no") << "\n";
    }
    human << std::left << std::setw(24) << "d" << std::setw(10) << "I" << std::setw(10) << "J"
          << std::setw(16) << "outcome" << std::setw(26) << "lambda" << std::setw(26) << "mu"
          << std::setw(14) << "L''(x,d)" << "margin\n";
    for (const DirectionOutcome& o : cert.directions) {
        human << std::left << std::setw(24) << fmt_vec(o.direction.d) << std::setw(10)
              << fmt_set(o.direction.I) << std::setw(10) << fmt_set(o.direction.J)
              << std::setw(16) << direction_outcome_name(o.kind);
        if (o.certificate) {
            human << std::setw(26) << fmt_vec(o.certificate->lambda) << std::setw(26)
                  << fmt_vec(o.certificate->mu) << std::setw(14) << o.certificate->curvature
                  << o.certificate->lp_margin;
        } else if (!o.note.empty()) {
            human << o.note;
        }
        human << "\n";
    }
    emit(make_report("certify", seed, tol, p, result, code), as_json, human.str());
    return code;
}

int run_cq(const std::string& file, int directions, std::uint64_t seed, bool as_json,
           const Tolerances& tol) {
    Problem p = load_problem_file(file);
    std::vector<double> x = require_point(p);

    std::vector<std::vector<double>> dirs = sample_cq_directions(p, x, directions, seed, tol);
    CqReport report = check_socq(p, x, dirs, tol);
    json result = {{"cq", to_json(report)}};
    int code = derive_exit_code("cq", result);

    std::ostringstream human;
    human << "cq " << p.id << " at x = " << fmt_vec(x) << "  [seed " << seed << "]\n";
    human << "mfcq: " << (report.mfcq.holds ? "holds" : "fails");
    if (report.mfcq.vacuous) human << " (vacuous: no active constraints)";
    else
        human << "  margin s* = " << report.mfcq.margin << " at u = " << fmt_vec(report.mfcq.u);
    human << "\n";
    human << "socq over " << report.directions_tested << " sampled directions: "
          << (report.overall == CqReport::Overall::HoldsSampled ? "holds-sampled"
              : report.overall == CqReport::Overall::Fails      ? "fails"
                                                                : "inconclusive");
    if (!report.note.empty()) human << " (" << report.note << ")";
    human << "\n";
    human << std::left << std::setw(24) << "d" << std::setw(14) << "status" << std::setw(24)
          << "u*" << std::setw(10) << "omega*" << "s*\n";
    for (const SocqDirectionResult& r : report.socq) {
        human << std::left << std::setw(24) << fmt_vec(r.d) << std::setw(14)
              << socq_status_name(r.status) << std::setw(24) << fmt_vec(r.u) << std::setw(10)
              << r.omega;
        if (std::isfinite(r.margin)) human << r.margin;
        else human << "+inf";
        if (!r.note.empty()) human << "  [" << r.note << "]";
        human << "\n";
    }
    emit(make_report("cq", seed, tol, p, result, code), as_json, human.str());
    return code;
}

int run_pareto(const std::string& file, double grid, const std::string& scope_str,
               bool kanniappan, bool as_json, const Tolerances& tol) {
    Problem p = load_problem_file(file);
    std::vector<double> x = require_point(p);
    OracleScope scope = scope_str == "local" ? OracleScope::Local : OracleScope::Global;

    OracleVerdict verdict = classify(p, x, scope, grid, tol);
    json result = {{"oracle", to_json(verdict)}};
    std::ostringstream human;
    human << "pareto " << p.id << " at x = " << fmt_vec(x) << "  [grid " << grid << ", "
          << scope_str << "]\n";
    human << "classification: " << pareto_class_name(verdict.classification)
          << "  (grid resolution " << fmt_vec(verdict.grid_steps) << ", "
          << verdict.feasible_points << " feasible points)\n";
    if (verdict.dominating_witness)
        human << "witness: " << fmt_vec(*verdict.dominating_witness) << " with f = "
              << fmt_vec(p.eval_objectives(*verdict.dominating_witness)) << "\n";
    if (kanniappan) {
        RestrictionCheck rc = component_restriction_check(p, x, grid, tol);
        result["kanniappan"] = to_json(rc);
        human << "component-restriction check: " << (rc.consistent ? "consistent" : "VIOLATION");
        if (rc.violating_component >= 0) human << " at f" << rc.violating_component + 1;
        human << "\n";
    }
    int code = derive_exit_code("pareto", result);
    emit(make_report("pareto", 0, tol, p, result, code), as_json, human.str());
    return code;
}

int run_probe(const std::string& file, const std::string& property, long trials,
              std::uint64_t seed, bool as_json, const Tolerances& tol) {
    Problem p = load_problem_file(file);
    json probes = json::array();
    std::ostringstream human;
    human << "probe " << p.id << " property " << property << "  [trials " << trials << ", seed "
          << seed << "]\n";

    auto run_scalar = [&](const Expr& e, const std::string& target, std::uint64_t probe_seed) {
        ProbeResult r;
        if (property == "quasiconvex") r = probe_quasiconvex(e, p.box, trials, probe_seed, tol);
        else if (property == "quasiconvex-at")
            r = probe_quasiconvex_at(e, require_point(p), p.box, trials, probe_seed, tol);
        else if (property == "pseudoconvex")
            r = probe_pseudoconvex(e, p.box, trials, probe_seed, tol);
        else if (property == "2-pseudoconvex")
            r = probe_2pseudoconvex(e, p.box, trials, probe_seed, tol);
        else if (property == "semistrict-quasiconvex")
            r = probe_semistrict_quasiconvex(e, p.box, trials, probe_seed, tol);
        else
            throw FormatError("unknown probe property '" + property + "'");
        json jr = to_json(r);
        jr["target"] = target;
        probes.push_back(jr);
        human << target << ": " << (r.none_found() ? "none-found" : "counterexample") << " ("
              << r.trials << " trials)";
        if (r.counterexample)
            human << "  witness x = " << fmt_vec(r.counterexample->x) << ", y = "
                  << fmt_vec(r.counterexample->y);
        human << "\n";
    };

    if (property == "problem-2kt-pseudoconvex") {
        ProbeResult r = probe_problem_2kt_pseudoconvex(p, trials, seed, tol);
        json jr = to_json(r);
        jr["target"] = "problem";
        probes.push_back(jr);
        human << "problem: " << (r.none_found() ? "none-found" : "counterexample") << " ("
              << r.accepted << " dominated pairs in " << r.trials << " trials)\n";
        if (r.counterexample) {
            const ProbeWitness& w = *r.counterexample;
            human << "witness x = " << fmt_vec(w.x) << ", y = " << fmt_vec(w.y) << ", branch "
                  << w.branch << "\n";
        }
    } else {
        std::uint64_t k = 0;
        for (int i = 0; i < p.num_objectives(); ++i)
            run_scalar(p.objectives[static_cast<std::size_t>(i)], "f" + std::to_string(i + 1), seed + k++);
        for (int j = 0; j < p.num_constraints(); ++j)
            run_scalar(p.constraints[static_cast<std::size_t>(j)], "g" + std::to_string(j + 1), seed + k++);
    }

    json result = {{"probes", probes}};
    int code = derive_exit_code("probe", result);
    emit(make_report("probe", seed, tol, p, result, code), as_json, human.str());
    return code;
}

int run_deriv(const std::string& file, const std::string& fn, const std::string& at,
              const std::string& dir, bool as_json, const Tolerances& tol) {
    Problem p = load_problem_file(file);
    std::vector<double> x = at.empty() ? require_point(p) : parse_csv_vector(at);
    std::vector<double> d = parse_csv_vector(dir);
    if (static_cast<int>(x.size()) != p.dim() || static_cast<int>(d.size()) != p.dim())
        throw FormatError("--at/--dir dimension does not match the problem");

    if (fn.size() < 2 || (fn[0] != 'f' && fn[0] != 'g'))
        throw FormatError("--fn must look like f1 or g2");
    int index = std::stoi(fn.substr(1)) - 1;
    const std::vector<Expr>& pool = fn[0] == 'f' ? p.objectives : p.constraints;
    if (index < 0 || index >= static_cast<int>(pool.size()))
        throw FormatError("function '" + fn + "' does not exist in this problem");
    const Expr& e = pool[static_cast<std::size_t>(index)];

    std::vector<double> grad = gradient(e, x);
    double gd = directional_derivative(e, x, d);
    SecondDeriv d2 = second_dir_deriv(e, x, d, tol.estimator);

    json result = {{"deriv",
                    {{"fn", fn},
                     {"x", x},
                     {"d", d},
                     {"gradient", grad},
                     {"grad_dot_d", gd},
                     {"second", to_json(d2)}}}};

    std::ostringstream human;
    human << "deriv " << fn << " of " << p.id << " at x = " << fmt_vec(x) << ", d = "
          << fmt_vec(d) << "\n";
    human << "gradient: " << fmt_vec(grad) << "\n";
    human << "grad . d: " << gd << "\n";
    human << "f''(x,d): ";
    if (d2.status == D2Status::Failed) human << "failed";
    else human << d2.value;
    human << "  [" << d2_status_name(d2.status);
    if (d2.status == D2Status::Estimated) human << ", convergence ratio " << d2.confidence;
    human << "]\n";
    if (!d2.table.empty()) {
        human << std::left << std::setw(16) << "t" << std::setw(22) << "q(t)"
              << "extrapolated\n";
        for (const QSample& s : d2.table)
            human << std::left << std::setw(16) << s.t << std::setw(22) << s.q << s.extrapolated
                  << "\n";
    }
    int code = derive_exit_code("deriv", result);
    emit(make_report("deriv", 0, tol, p, result, code), as_json, human.str());
    return code;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"moKKT: second-order multiobjective KKT condition verifier"};
    app.require_subcommand(1);

    bool as_json = false;
    std::uint64_t seed = 0;
    Tolerances tol;
    app.add_flag("--json", as_json, "emit the JSON report instead of text");
    app.add_option("--seed", seed, "RNG seed for all sampling");
    app.add_option("--tol-act", tol.active, "active-set / feasibility tolerance");
    app.add_option("--tol-strict", tol.strict_margin, "strict-inequality margin for the CQ LPs");
    app.add_option("--tol-curv", tol.curvature, "curvature tolerance L''(x,d) >= -tol");

    std::string file, mode = "kt", scope = "global", property = "quasiconvex", fn = "f1", at, dir;
    int directions_certify = 200, directions_cq = 64;
    double grid = 0.05;
    long trials = 100000;
    bool kanniappan = false;

    CLI::App* certify = app.add_subcommand("certify", "multiplier certification at the candidate point");
    certify->fallthrough();
    certify->add_option("file", file)->required();
    certify->add_option("--mode", mode)->check(CLI::IsMember({"fj", "kt"}));
    certify->add_option("--directions", directions_certify, "critical-direction budget");

    CLI::App* cq = app.add_subcommand("cq", "constraint-qualification checks at the candidate point");
    cq->fallthrough();
    cq->add_option("file", file)->required();
    cq->add_option("--directions", directions_cq, "direction budget for the second-order CQ");

    CLI::App* pareto = app.add_subcommand("pareto", "grid-oracle classification of the candidate point");
    pareto->fallthrough();
    pareto->add_option("file", file)->required();
    pareto->add_option("--grid", grid, "target grid step (rounded down to a dyadic refinement)");
    pareto->add_option("--scope", scope)->check(CLI::IsMember({"global", "local"}));
    pareto->add_flag("--kanniappan", kanniappan, "also run the component-restriction cross-check");

    CLI::App* probe = app.add_subcommand("probe", "generalized-convexity refutation probes");
    probe->fallthrough();
    probe->add_option("file", file)->required();
    probe->add_option("--property", property)
        ->check(CLI::IsMember({"quasiconvex", "quasiconvex-at", "pseudoconvex", "2-pseudoconvex",
                               "semistrict-quasiconvex", "problem-2kt-pseudoconvex"}));
    probe->add_option("--trials", trials);

    CLI::App* deriv = app.add_subcommand("deriv", "gradients and second-order directional derivative");
    deriv->fallthrough();
    deriv->add_option("file", file)->required();
    deriv->add_option("--fn", fn, "f<i> or g<j>");
    deriv->add_option("--at", at, "comma-separated point (defaults to the file's point)");
    deriv->add_option("--dir", dir, "comma-separated direction")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (certify->parsed()) return run_certify(file, mode, directions_certify, seed, as_json, tol);
        if (cq->parsed()) return run_cq(file, directions_cq, seed, as_json, tol);
        if (pareto->parsed()) return run_pareto(file, grid, scope, kanniappan, as_json, tol);
        if (probe->parsed()) return run_probe(file, property, trials, seed, as_json, tol);
        if (deriv->parsed()) return run_deriv(file, fn, at, dir, as_json, tol);
    } catch (const Error& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return 3;
    } catch (const std::exception& ex) {
        std::cerr << "unexpected error: " << ex.what() << "\n";
        return 3;
    }
    return 3;
}
