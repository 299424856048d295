#include "mokkt/kkt.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include "mokkt/calculus.hpp"
#include "mokkt/lp.hpp"

namespace mokkt {

const char* multiplier_mode_name(MultiplierMode m) {
    return m == MultiplierMode::FritzJohn ? "fj" : "kt";
}

const char* direction_outcome_name(DirectionOutcomeKind k) {
    switch (k) {
    case DirectionOutcomeKind::Certified: return "certified";
    case DirectionOutcomeKind::NoMultipliers: return "no-multipliers";
    case DirectionOutcomeKind::Inconclusive: return "inconclusive";
    }
    return "?";
}

const char* certify_status_name(CertifyStatus s) {
    switch (s) {
    case CertifyStatus::Certified: return "certified";
    case CertifyStatus::Refuted: return "refuted";
    case CertifyStatus::Inconclusive: return "inconclusive";
    }
    return "?";
}

const char* theorem3_status_name(Theorem3Status s) {
    switch (s) {
    case Theorem3Status::WeakParetoCertified: return "weak-pareto-certified";
    case Theorem3Status::Refuted: return "refuted";
    case Theorem3Status::HypothesesUnverified: return "hypotheses-unverified";
    }
    return "?";
}

std::uint64_t direction_hash(std::span<const double> d) {
    std::uint64_t h = 1469598103934665603ull; // FNV-1a
    for (double v : d) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        for (int b = 0; b < 8; ++b) {
            h ^= (bits >> (8 * b)) & 0xffu;
            h *= 1099511628211ull;
        }
    }
    return h;
}

FindMultipliersResult find_multipliers(const Problem& p, std::span<const double> x,
                                       const CriticalDirection& cd, MultiplierMode mode,
                                       const Tolerances& tol) {
    const int s = p.dim();
    const int n = p.num_objectives();
    const int m = p.num_constraints();
    const std::vector<int>& I = cd.I;
    const std::vector<int>& J = cd.J;

    if (I.empty() && J.empty())
        return {DirectionOutcomeKind::NoMultipliers, std::nullopt,
                "support sets empty: normalization unreachable"};
    if (mode == MultiplierMode::KuhnTucker && I.empty())
        return {DirectionOutcomeKind::NoMultipliers, std::nullopt,
                "I(x,d) empty: lambda cannot be normalized"};

    std::vector<std::vector<double>> gf(static_cast<std::size_t>(I.size()));
    std::vector<std::vector<double>> gg(static_cast<std::size_t>(J.size()));
    std::vector<double> d2f(I.size()), d2g(J.size());
    for (std::size_t k = 0; k < I.size(); ++k) {
        const Expr& f = p.objectives[static_cast<std::size_t>(I[k])];
        gf[k] = gradient(f, x);
        SecondDeriv d2 = second_dir_deriv(f, x, cd.d, tol.estimator);
        if (d2.status == D2Status::Nonfinite || d2.status == D2Status::Failed)
            return {DirectionOutcomeKind::Inconclusive, std::nullopt,
                    "f" + std::to_string(I[k] + 1) + "''(x,d) is " + d2_status_name(d2.status)};
        d2f[k] = d2.value;
    }
    for (std::size_t k = 0; k < J.size(); ++k) {
        const Expr& g = p.constraints[static_cast<std::size_t>(J[k])];
        gg[k] = gradient(g, x);
        SecondDeriv d2 = second_dir_deriv(g, x, cd.d, tol.estimator);
        if (d2.status == D2Status::Nonfinite || d2.status == D2Status::Failed)
            return {DirectionOutcomeKind::Inconclusive, std::nullopt,
                    "g" + std::to_string(J[k] + 1) + "''(x,d) is " + d2_status_name(d2.status)};
        d2g[k] = d2.value;
    }

    // vars: lambda over I then mu over J, all >= 0
    const int nv = static_cast<int>(I.size() + J.size());
    LinearProgram lp(nv);
    for (int k = 0; k < nv; ++k) lp.lower[static_cast<std::size_t>(k)] = 0.0;

    for (int coord = 0; coord < s; ++coord) {
        std::vector<double> row(static_cast<std::size_t>(nv), 0.0);
        for (std::size_t k = 0; k < I.size(); ++k) row[k] = gf[k][static_cast<std::size_t>(coord)];
        for (std::size_t k = 0; k < J.size(); ++k) row[I.size() + k] = gg[k][static_cast<std::size_t>(coord)];
        lp.add_equality(std::move(row), 0.0);
    }
    {
        std::vector<double> row(static_cast<std::size_t>(nv), 0.0);
        for (std::size_t k = 0; k < I.size(); ++k) row[k] = d2f[k];
        for (std::size_t k = 0; k < J.size(); ++k) row[I.size() + k] = d2g[k];
        lp.add_inequality_ge(std::move(row), -tol.curvature);
    }
    {
        std::vector<double> row(static_cast<std::size_t>(nv), 0.0);
        for (std::size_t k = 0; k < I.size(); ++k) row[k] = 1.0;
        if (mode == MultiplierMode::FritzJohn)
            for (std::size_t k = 0; k < J.size(); ++k) row[I.size() + k] = 1.0;
        lp.add_equality(std::move(row), 1.0);
    }

    LpSolution sol = solve(lp);
    if (sol.status == LpStatus::Infeasible)
        return {DirectionOutcomeKind::NoMultipliers, std::nullopt, "multiplier LP infeasible"};
    if (sol.status != LpStatus::Optimal)
        throw LpError("multiplier feasibility LP reported unbounded");

    MultiplierCertificate cert;
    cert.mode = mode;
    cert.direction = cd;
    cert.lambda.assign(static_cast<std::size_t>(n), 0.0);
    cert.mu.assign(static_cast<std::size_t>(m), 0.0);
    for (std::size_t k = 0; k < I.size(); ++k)
        cert.lambda[static_cast<std::size_t>(I[k])] = std::max(0.0, sol.x[k]);
    for (std::size_t k = 0; k < J.size(); ++k)
        cert.mu[static_cast<std::size_t>(J[k])] = std::max(0.0, sol.x[I.size() + k]);
    cert.curvature = 0.0;
    for (std::size_t k = 0; k < I.size(); ++k) cert.curvature += sol.x[k] * d2f[k];
    for (std::size_t k = 0; k < J.size(); ++k) cert.curvature += sol.x[I.size() + k] * d2g[k];
    cert.lp_margin = cert.curvature + tol.curvature;
    return {DirectionOutcomeKind::Certified, std::move(cert), ""};
}

bool verify_certificate(const Problem& p, std::span<const double> x,
                        const MultiplierCertificate& cert, const Tolerances& tol) {
    const int s = p.dim();
    std::vector<int> active = active_set(p, x, tol.active);
    std::vector<double> g = p.eval_constraints(x);

    // complementary slackness
    for (int j = 0; j < p.num_constraints(); ++j)
        if (std::abs(cert.mu[static_cast<std::size_t>(j)] * g[static_cast<std::size_t>(j)]) > tol.stationarity)
            return false;

    // support conditions
    for (int i = 0; i < p.num_objectives(); ++i) {
        bool in_I = std::find(cert.direction.I.begin(), cert.direction.I.end(), i) !=
                    cert.direction.I.end();
        if (!in_I && cert.lambda[static_cast<std::size_t>(i)] != 0.0) return false;
        if (cert.lambda[static_cast<std::size_t>(i)] < 0.0) return false;
    }
    for (int j = 0; j < p.num_constraints(); ++j) {
        bool in_J = std::find(cert.direction.J.begin(), cert.direction.J.end(), j) !=
                    cert.direction.J.end();
        if (!in_J && cert.mu[static_cast<std::size_t>(j)] != 0.0) return false;
        if (cert.mu[static_cast<std::size_t>(j)] < 0.0) return false;
    }

    // stationarity
    std::vector<double> resid(static_cast<std::size_t>(s), 0.0);
    for (int i = 0; i < p.num_objectives(); ++i) {
        if (cert.lambda[static_cast<std::size_t>(i)] == 0.0) continue;
        std::vector<double> gr = gradient(p.objectives[static_cast<std::size_t>(i)], x);
        for (int k = 0; k < s; ++k) resid[static_cast<std::size_t>(k)] += cert.lambda[static_cast<std::size_t>(i)] * gr[static_cast<std::size_t>(k)];
    }
    for (int j = 0; j < p.num_constraints(); ++j) {
        if (cert.mu[static_cast<std::size_t>(j)] == 0.0) continue;
        std::vector<double> gr = gradient(p.constraints[static_cast<std::size_t>(j)], x);
        for (int k = 0; k < s; ++k) resid[static_cast<std::size_t>(k)] += cert.mu[static_cast<std::size_t>(j)] * gr[static_cast<std::size_t>(k)];
    }
    for (double r : resid)
        if (std::abs(r) > tol.stationarity) return false;

    // curvature row
    double curv = 0.0;
    for (int i : cert.direction.I) {
        if (cert.lambda[static_cast<std::size_t>(i)] == 0.0) continue;
        SecondDeriv d2 = second_dir_deriv(p.objectives[static_cast<std::size_t>(i)], x, cert.direction.d, tol.estimator);
        if (d2.status == D2Status::Nonfinite || d2.status == D2Status::Failed) return false;
        curv += cert.lambda[static_cast<std::size_t>(i)] * d2.value;
    }
    for (int j : cert.direction.J) {
        if (cert.mu[static_cast<std::size_t>(j)] == 0.0) continue;
        SecondDeriv d2 = second_dir_deriv(p.constraints[static_cast<std::size_t>(j)], x, cert.direction.d, tol.estimator);
        if (d2.status == D2Status::Nonfinite || d2.status == D2Status::Failed) return false;
        curv += cert.mu[static_cast<std::size_t>(j)] * d2.value;
    }
    if (curv < -tol.curvature - 1e-12) return false;

    // normalization
    double sum_l = 0.0, sum_m = 0.0;
    for (double v : cert.lambda) sum_l += v;
    for (double v : cert.mu) sum_m += v;
    double norm = cert.mode == MultiplierMode::FritzJohn ? sum_l + sum_m : sum_l;
    return std::abs(norm - 1.0) <= 1e-7;
}

PointCertification certify_point(const Problem& p, std::span<const double> x,
                                 MultiplierMode mode, int direction_budget, std::uint64_t seed,
                                 const Tolerances& tol) {
    PointCertification out;
    out.mode = mode;
    out.direction_budget = direction_budget;
    out.seed = seed;

    std::vector<CriticalDirection> dirs =
        sample_critical_directions(p, x, direction_budget, seed, tol);
    out.directions_found = static_cast<int>(dirs.size());

    for (CriticalDirection& cd : dirs) {
        FindMultipliersResult fm = find_multipliers(p, x, cd, mode, tol);
        out.directions.push_back({std::move(cd), fm.kind, std::move(fm.certificate),
                                  std::move(fm.note)});
    }
    std::sort(out.directions.begin(), out.directions.end(),
              [](const DirectionOutcome& a, const DirectionOutcome& b) {
                  std::uint64_t ha = direction_hash(a.direction.d);
                  std::uint64_t hb = direction_hash(b.direction.d);
                  if (ha != hb) return ha < hb;
                  return a.direction.d < b.direction.d;
              });

    out.status = CertifyStatus::Certified;
    for (const DirectionOutcome& o : out.directions) {
        if (o.kind == DirectionOutcomeKind::NoMultipliers) {
            out.status = CertifyStatus::Refuted;
            out.witness = o.direction.d;
            break;
        }
    }
    if (out.status != CertifyStatus::Refuted) {
        for (const DirectionOutcome& o : out.directions) {
            if (o.kind == DirectionOutcomeKind::Inconclusive) {
                out.status = CertifyStatus::Inconclusive;
                break;
            }
        }
    }

    if (mode == MultiplierMode::KuhnTucker) {
        std::vector<std::vector<double>> dvecs;
        for (const DirectionOutcome& o : out.directions) dvecs.push_back(o.direction.d);
        out.socq = check_socq(p, x, dvecs, tol);
        out.refutation_implies_not_pareto =
            out.socq->overall == CqReport::Overall::HoldsSampled;
    } else {
        out.refutation_implies_not_pareto = true;
    }
    return out;
}

Theorem3Verdict theorem3_verdict(const Problem& p, std::span<const double> x,
                                 const std::vector<ProbeResult>& objective_2pseudo_probes,
                                 const std::vector<ProbeResult>& constraint_quasiconvex_probes,
                                 const PointCertification& kt_certification) {
    (void)p;
    (void)x;
    if (kt_certification.mode != MultiplierMode::KuhnTucker)
        throw PreconditionError("theorem3_verdict requires a Kuhn-Tucker certification");

    for (std::size_t i = 0; i < objective_2pseudo_probes.size(); ++i) {
        if (!objective_2pseudo_probes[i].none_found())
            return {Theorem3Status::HypothesesUnverified,
                    "objective f" + std::to_string(i + 1) + " failed the 2-pseudoconvexity probe"};
    }
    for (std::size_t j = 0; j < constraint_quasiconvex_probes.size(); ++j) {
        if (!constraint_quasiconvex_probes[j].none_found())
            return {Theorem3Status::HypothesesUnverified,
                    "constraint g" + std::to_string(j + 1) + " failed the quasiconvexity probe"};
    }
    if (!kt_certification.socq ||
        kt_certification.socq->overall != CqReport::Overall::HoldsSampled)
        return {Theorem3Status::HypothesesUnverified, "SOCQ not verified (sampled) at x"};

    switch (kt_certification.status) {
    case CertifyStatus::Certified:
        return {Theorem3Status::WeakParetoCertified,
                "KT multipliers found on every sampled critical direction"};
    case CertifyStatus::Refuted:
        return {Theorem3Status::Refuted, "a sampled critical direction admits no KT multipliers"};
    case CertifyStatus::Inconclusive:
        return {Theorem3Status::HypothesesUnverified, "certification inconclusive"};
    }
    return {Theorem3Status::HypothesesUnverified, "unreachable"};
}

} // namespace mokkt
