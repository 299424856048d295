#include "mokkt/report.hpp"

#include <cmath>

namespace mokkt {

using nlohmann::json;

json json_extended(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
    return v;
}

json to_json(const Tolerances& t) {
    return {
        {"active", t.active},
        {"criticality", t.criticality},
        {"strict_margin", t.strict_margin},
        {"stationarity", t.stationarity},
        {"curvature", t.curvature},
        {"probe_margin", t.probe_margin},
        {"oracle_slack", t.oracle_slack},
        {"estimator",
         {{"t0", t.estimator.t0},
          {"ratio", t.estimator.ratio},
          {"steps", t.estimator.steps},
          {"accept_tol", t.estimator.accept_tol},
          {"diverge_threshold", t.estimator.diverge_threshold},
          {"note", "the defining limit carries no convergence rate; schedule and "
                   "acceptance thresholds are artifact choices"}}},
    };
}

json to_json(const SecondDeriv& d) {
    json table = json::array();
    for (const QSample& s : d.table)
        table.push_back({{"t", s.t}, {"q", json_extended(s.q)}, {"extrapolated", json_extended(s.extrapolated)}});
    json out = {{"value", json_extended(d.value)}, {"status", d2_status_name(d.status)}};
    if (d.status == D2Status::Estimated) out["confidence"] = d.confidence;
    if (!d.table.empty()) out["table"] = table;
    return out;
}

json to_json(const MfcqResult& r) {
    return {{"holds", r.holds},
            {"vacuous", r.vacuous},
            {"u", r.u},
            {"margin", json_extended(r.margin)}};
}

json to_json(const SocqDirectionResult& r) {
    json out = {{"status", socq_status_name(r.status)},
                {"vacuous", r.vacuous},
                {"d", r.d},
                {"u", r.u},
                {"omega", r.omega},
                {"margin", json_extended(r.margin)}};
    if (!r.note.empty()) out["note"] = r.note;
    return out;
}

json to_json(const CqReport& r) {
    json dirs = json::array();
    for (const auto& d : r.socq) dirs.push_back(to_json(d));
    const char* overall = r.overall == CqReport::Overall::HoldsSampled ? "holds-sampled"
                          : r.overall == CqReport::Overall::Fails      ? "fails"
                                                                       : "inconclusive";
    json out = {{"mfcq", to_json(r.mfcq)},
                {"socq", dirs},
                {"directions_tested", r.directions_tested},
                {"mfcq_implies_socq_checked", r.mfcq_implies_socq_checked},
                {"prop1_consistent", r.prop1_consistent},
                {"overall", overall}};
    if (!r.note.empty()) out["note"] = r.note;
    return out;
}

json to_json(const MultiplierCertificate& c) {
    return {{"mode", multiplier_mode_name(c.mode)},
            {"lambda", c.lambda},
            {"mu", c.mu},
            {"curvature", json_extended(c.curvature)},
            {"lp_margin", c.lp_margin}};
}

namespace {

json index_set_1based(const std::vector<int>& v) {
    json out = json::array();
    for (int i : v) out.push_back(i + 1);
    return out;
}

} // namespace

json to_json(const DirectionOutcome& o) {
    json out = {{"d", o.direction.d},
                {"I", index_set_1based(o.direction.I)},
                {"J", index_set_1based(o.direction.J)},
                {"outcome", direction_outcome_name(o.kind)}};
    if (o.certificate) out["certificate"] = to_json(*o.certificate);
    if (!o.note.empty()) out["note"] = o.note;
    return out;
}

json to_json(const PointCertification& c) {
    json dirs = json::array();
    for (const auto& o : c.directions) dirs.push_back(to_json(o));
    json out = {{"status", certify_status_name(c.status)},
                {"mode", multiplier_mode_name(c.mode)},
                {"directions", dirs},
                {"direction_budget", c.direction_budget},
                {"directions_found", c.directions_found},
                {"sampled_quantifier",
                 "certified means multipliers were found on every one of the " +
                     std::to_string(c.directions_found) + " sampled critical directions"},
                {"seed", c.seed},
                {"refutation_implies_not_pareto", c.refutation_implies_not_pareto}};
    if (c.witness) out["witness"] = *c.witness;
    if (c.socq) out["socq"] = to_json(*c.socq);
    return out;
}

json to_json(const OracleVerdict& v) {
    json out = {{"classification", pareto_class_name(v.classification)},
                {"scope", v.scope == OracleScope::Global ? "global" : "local"},
                {"grid_steps", v.grid_steps},
                {"points_scanned", v.points_scanned},
                {"feasible_points", v.feasible_points},
                {"resolution_note", "verdicts are no-counterexample statements at this grid resolution"}};
    if (v.scope == OracleScope::Local) out["radius"] = v.radius;
    if (v.dominating_witness) out["dominating_witness"] = *v.dominating_witness;
    return out;
}

json to_json(const RestrictionCheck& r) {
    json out = {{"consistent", r.consistent},
                {"minimizes", r.minimizes},
                {"oracle_class", pareto_class_name(r.oracle_class)},
                {"grid_steps", r.grid_steps}};
    if (r.violating_component >= 0) out["violating_component"] = r.violating_component + 1;
    if (r.witness) out["witness"] = *r.witness;
    return out;
}

json to_json(const LucSchaibleCheck& r) {
    json out = {{"consistent", r.consistent},
                {"hypotheses_ok", r.hypotheses_ok},
                {"weak_pareto", r.weak_pareto},
                {"grid_steps", r.grid_steps}};
    if (r.witness_k) out["witness_k"] = *r.witness_k + 1;
    if (!r.annotation.empty()) out["annotation"] = r.annotation;
    return out;
}

json to_json(const ProbeWitness& w) {
    json values = json::object();
    for (const auto& [k, v] : w.values) values[k] = json_extended(v);
    json out = {{"x", w.x}, {"y", w.y}, {"values", values}};
    if (w.t != 0.0) out["t"] = w.t;
    if (w.component >= 0) {
        out["component"] = (w.on_constraint ? "g" : "f") + std::to_string(w.component + 1);
        out["branch"] = w.branch;
    } else if (w.branch >= 0) {
        out["branch"] = w.branch;
    }
    return out;
}

json to_json(const ProbeResult& r) {
    json out = {{"property", probe_property_name(r.property)},
                {"trials", r.trials},
                {"skipped_domain", r.skipped_domain},
                {"skipped_derivative", r.skipped_derivative},
                {"antecedent_hits", r.accepted},
                {"seed", r.seed},
                {"outcome", r.none_found() ? "none-found" : "counterexample"},
                {"sampled", true}};
    if (r.counterexample) out["counterexample"] = to_json(*r.counterexample);
    return out;
}

json to_json(const Theorem3Verdict& v) {
    return {{"status", theorem3_status_name(v.status)}, {"reason", v.reason}};
}

json make_report(const std::string& command, std::uint64_t seed, const Tolerances& tol,
                 const Problem& problem, json result, int exit_code) {
    json problem_echo = {{"id", problem.id}, {"vars", problem.vars}};
    json objs = json::array();
    for (const Expr& f : problem.objectives) objs.push_back(f.str());
    json cons = json::array();
    for (const Expr& g : problem.constraints) cons.push_back(g.str());
    problem_echo["objectives"] = objs;
    problem_echo["constraints"] = cons;
    if (problem.point) problem_echo["point"] = *problem.point;

    return {{"schema", kReportSchema},
            {"tool", {{"name", kToolName}, {"version", kToolVersion}}},
            {"command", command},
            {"seed", seed},
            {"tolerances", to_json(tol)},
            {"problem", problem_echo},
            {"result", std::move(result)},
            {"exit_code", exit_code}};
}

int derive_exit_code(const std::string& command, const json& result) {
    if (command == "certify") {
        std::string s = result.at("certification").at("status");
        if (s == "certified") return 0;
        if (s == "refuted") return 1;
        return 2;
    }
    if (command == "cq") {
        bool mfcq = result.at("cq").at("mfcq").at("holds");
        std::string overall = result.at("cq").at("overall");
        if (overall != "holds-sampled") return 2;
        return mfcq ? 0 : 1;
    }
    if (command == "pareto") {
        std::string c = result.at("oracle").at("classification");
        if (c == "pareto") return 0;
        if (c == "weak-pareto-only") return 1;
        return 2;
    }
    if (command == "probe") {
        for (const auto& r : result.at("probes"))
            if (r.at("outcome") == "counterexample") return 1;
        return 0;
    }
    if (command == "deriv") return 0;
    return 3;
}

} // namespace mokkt
