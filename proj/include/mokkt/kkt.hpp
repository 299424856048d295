#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mokkt/cones.hpp"
#include "mokkt/cq.hpp"
#include "mokkt/gconvex.hpp"
#include "mokkt/problem.hpp"
#include "mokkt/tolerances.hpp"

namespace mokkt {

enum class MultiplierMode { FritzJohn, KuhnTucker };

const char* multiplier_mode_name(MultiplierMode m);

// Nonnegative multipliers (lambda, mu) for one critical direction d:
//   mu_j g_j(x) = 0,          sum_i lambda_i grad(f_i)(x) + sum_j mu_j grad(g_j)(x) = 0,
//   lambda_i = 0 off I(x,d),  mu_j = 0 off J(x,d),
//   L''(x,d) = sum lambda_i f_i''(x,d) + sum mu_j g_j''(x,d) >= 0,
// normalized sum(lambda) + sum(mu) = 1 (Fritz John) or sum(lambda) = 1
// (Kuhn-Tucker).
struct MultiplierCertificate {
    MultiplierMode mode;
    CriticalDirection direction;
    std::vector<double> lambda; // length n
    std::vector<double> mu;     // length m, zero off the active set
    double curvature;           // L''(x,d) at these multipliers
    double lp_margin;           // slack of the curvature row
};

// Re-checks every certificate invariant against freshly computed derivatives.
bool verify_certificate(const Problem& p, std::span<const double> x,
                        const MultiplierCertificate& cert, const Tolerances& tol = {});

enum class DirectionOutcomeKind { Certified, NoMultipliers, Inconclusive };

const char* direction_outcome_name(DirectionOutcomeKind k);

struct FindMultipliersResult {
    DirectionOutcomeKind kind;
    std::optional<MultiplierCertificate> certificate;
    std::string note;
};

// Feasibility LP over (lambda restricted to I, mu restricted to J):
// stationarity equalities, the curvature row, and the mode's normalization.
// NoMultipliers = the LP is infeasible. Inconclusive = some required second
// derivative is nonfinite or its estimate failed.
FindMultipliersResult find_multipliers(const Problem& p, std::span<const double> x,
                                       const CriticalDirection& cd, MultiplierMode mode,
                                       const Tolerances& tol = {});

enum class CertifyStatus { Certified, Refuted, Inconclusive };

const char* certify_status_name(CertifyStatus s);

struct DirectionOutcome {
    CriticalDirection direction;
    DirectionOutcomeKind kind;
    std::optional<MultiplierCertificate> certificate;
    std::string note;
};

struct PointCertification {
    CertifyStatus status = CertifyStatus::Inconclusive;
    MultiplierMode mode = MultiplierMode::FritzJohn;
    std::vector<DirectionOutcome> directions; // sorted by direction hash
    std::optional<std::vector<double>> witness; // refuting direction
    int direction_budget = 0;
    int directions_found = 0;
    std::uint64_t seed = 0;
    std::optional<CqReport> socq; // populated in Kuhn-Tucker mode
    // In Fritz-John mode a refutation contradicts the necessary conditions
    // outright; in Kuhn-Tucker mode only when SOCQ held (sampled) at x.
    bool refutation_implies_not_pareto = false;
};

// Samples critical directions and searches multipliers on each. `certified`
// means every sampled direction admitted multipliers -- always a statement
// about the sampled directions, never an unqualified optimality claim.
PointCertification certify_point(const Problem& p, std::span<const double> x,
                                 MultiplierMode mode, int direction_budget, std::uint64_t seed,
                                 const Tolerances& tol = {});

enum class Theorem3Status { WeakParetoCertified, Refuted, HypothesesUnverified };

const char* theorem3_status_name(Theorem3Status s);

struct Theorem3Verdict {
    Theorem3Status status;
    std::string reason;
};

// Sufficiency/necessity reading for weak global efficiency: requires every
// objective to pass the 2-pseudoconvexity probe, every constraint to pass the
// quasiconvexity probe, and SOCQ (sampled) at x; then a Kuhn-Tucker
// certification verdict transfers to weak Pareto optimality.
Theorem3Verdict theorem3_verdict(const Problem& p, std::span<const double> x,
                                 const std::vector<ProbeResult>& objective_2pseudo_probes,
                                 const std::vector<ProbeResult>& constraint_quasiconvex_probes,
                                 const PointCertification& kt_certification);

// Stable 64-bit hash of a direction vector; certification tables are sorted
// by this value so report assembly is order-deterministic.
std::uint64_t direction_hash(std::span<const double> d);

} // namespace mokkt
