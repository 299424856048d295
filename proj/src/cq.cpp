#include "mokkt/cq.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mokkt/calculus.hpp"
#include "mokkt/cones.hpp"
#include "mokkt/lp.hpp"

namespace mokkt {

const char* socq_status_name(SocqStatus s) {
    switch (s) {
    case SocqStatus::Holds: return "holds";
    case SocqStatus::Fails: return "fails";
    case SocqStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

MfcqResult check_mfcq(const Problem& p, std::span<const double> x, const Tolerances& tol) {
    std::vector<int> active = active_set(p, x, tol.active);
    const int s = p.dim();
    if (active.empty())
        return {true, true, std::vector<double>(static_cast<std::size_t>(s), 0.0), kInf};

    // vars: u_1..u_s in [-1,1], then the margin variable
    LinearProgram lp(s + 1);
    for (int k = 0; k < s; ++k) {
        lp.lower[static_cast<std::size_t>(k)] = -1.0;
        lp.upper[static_cast<std::size_t>(k)] = 1.0;
    }
    lp.objective[static_cast<std::size_t>(s)] = 1.0;
    for (int j : active) {
        std::vector<double> row = gradient(p.constraints[static_cast<std::size_t>(j)], x);
        row.push_back(-1.0);
        lp.add_inequality_ge(std::move(row), 0.0);
    }
    LpSolution sol = solve(lp);
    if (sol.status != LpStatus::Optimal)
        throw LpError("MFCQ margin LP did not solve to optimality");
    std::vector<double> u(sol.x.begin(), sol.x.begin() + s);
    return {sol.value > tol.strict_margin, false, std::move(u), sol.value};
}

SocqDirectionResult check_socq_direction(const Problem& p, std::span<const double> x,
                                         std::span<const double> d, const Tolerances& tol) {
    SocqDirectionResult out;
    out.d.assign(d.begin(), d.end());
    const int s = p.dim();

    bool zero = std::all_of(d.begin(), d.end(), [](double v) { return v == 0.0; });
    if (zero) throw PreconditionError("SOCQ direction must be nonzero");

    std::vector<int> active = active_set(p, x, tol.active);
    if (active.empty()) {
        out.status = SocqStatus::Holds;
        out.vacuous = true;
        out.u.assign(static_cast<std::size_t>(s), 0.0);
        out.margin = kInf;
        return out;
    }

    std::vector<std::vector<double>> grads;
    for (int j : active) {
        grads.push_back(gradient(p.constraints[static_cast<std::size_t>(j)], x));
        double dot = 0.0;
        for (int k = 0; k < s; ++k) dot += grads.back()[static_cast<std::size_t>(k)] * d[static_cast<std::size_t>(k)];
        if (dot > tol.criticality) {
            std::ostringstream msg;
            msg << "direction violates grad(g" << j + 1 << ").d <= 0 (dot = " << dot << ")";
            throw PreconditionError(msg.str());
        }
    }

    std::vector<double> curvature;
    std::vector<bool> keep_row;
    bool any_dropped = false;
    for (std::size_t k = 0; k < active.size(); ++k) {
        int j = active[k];
        SecondDeriv d2 = second_dir_deriv(p.constraints[static_cast<std::size_t>(j)], x, d, tol.estimator);
        if (d2.status == D2Status::Failed) {
            out.status = SocqStatus::Inconclusive;
            out.note = "second-order derivative estimate failed for g" + std::to_string(j + 1);
            return out;
        }
        if (d2.status == D2Status::Nonfinite) {
            if (d2.value > 0) {
                out.status = SocqStatus::Inconclusive;
                out.note = "g" + std::to_string(j + 1) + "''(x,d) = +inf";
                return out;
            }
            // -inf rows hold for any omega > 0; solve the LP on the rest.
            keep_row.push_back(false);
            curvature.push_back(0.0);
            any_dropped = true;
            continue;
        }
        keep_row.push_back(true);
        curvature.push_back(d2.value);
    }
    if (any_dropped) out.note = "nonfinite-curvature";

    // vars: u in [-1,1]^s, omega in [0,1], margin free
    LinearProgram lp(s + 2);
    for (int k = 0; k < s; ++k) {
        lp.lower[static_cast<std::size_t>(k)] = -1.0;
        lp.upper[static_cast<std::size_t>(k)] = 1.0;
    }
    lp.lower[static_cast<std::size_t>(s)] = 0.0;
    lp.upper[static_cast<std::size_t>(s)] = 1.0;
    lp.objective[static_cast<std::size_t>(s + 1)] = 1.0;
    int rows = 0;
    for (std::size_t k = 0; k < active.size(); ++k) {
        if (!keep_row[k]) continue;
        std::vector<double> row = grads[k];
        row.push_back(-curvature[k]);
        row.push_back(-1.0);
        lp.add_inequality_ge(std::move(row), 0.0);
        ++rows;
    }
    if (rows == 0) {
        out.status = SocqStatus::Holds;
        out.vacuous = true;
        out.u.assign(static_cast<std::size_t>(s), 0.0);
        out.omega = 1.0;
        out.margin = kInf;
        return out;
    }
    LpSolution sol = solve(lp);
    if (sol.status != LpStatus::Optimal)
        throw LpError("SOCQ margin LP did not solve to optimality");
    out.u.assign(sol.x.begin(), sol.x.begin() + s);
    out.omega = sol.x[static_cast<std::size_t>(s)];
    out.margin = sol.value;
    out.status = sol.value > tol.strict_margin ? SocqStatus::Holds : SocqStatus::Fails;
    return out;
}

CqReport check_socq(const Problem& p, std::span<const double> x,
                    const std::vector<std::vector<double>>& directions, const Tolerances& tol) {
    CqReport report;
    report.mfcq = check_mfcq(p, x, tol);
    report.directions_tested = static_cast<int>(directions.size());

    if (directions.empty()) {
        report.overall = CqReport::Overall::Inconclusive;
        report.note = "no-directions";
        return report;
    }

    bool all_hold = true;
    bool any_fail = false;
    for (const auto& d : directions) {
        SocqDirectionResult r = check_socq_direction(p, x, d, tol);
        if (r.status != SocqStatus::Holds) all_hold = false;
        if (r.status == SocqStatus::Fails) any_fail = true;
        if (report.mfcq.holds && !report.mfcq.vacuous && r.status == SocqStatus::Holds &&
            std::isfinite(r.margin)) {
            report.mfcq_implies_socq_checked = true;
            if (r.margin < report.mfcq.margin - 1e-9) report.prop1_consistent = false;
        }
        report.socq.push_back(std::move(r));
    }
    report.overall = all_hold    ? CqReport::Overall::HoldsSampled
                     : any_fail  ? CqReport::Overall::Fails
                                 : CqReport::Overall::Inconclusive;
    return report;
}

std::vector<std::vector<double>> sample_cq_directions(const Problem& p,
                                                      std::span<const double> x, int count,
                                                      std::uint64_t seed, const Tolerances& tol) {
    std::vector<std::vector<double>> rows;
    for (int j : active_set(p, x, tol.active))
        rows.push_back(gradient(p.constraints[static_cast<std::size_t>(j)], x));
    return sample_cone_directions(rows, p.dim(), count, seed, tol.criticality);
}

} // namespace mokkt
