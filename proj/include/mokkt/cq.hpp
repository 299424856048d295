#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mokkt/problem.hpp"
#include "mokkt/tolerances.hpp"

namespace mokkt {

// Mangasarian-Fromovitz CQ at x: existence of u with grad(g_j)(x).u > 0 for
// every active j. Checked as the LP
//   max s  s.t.  grad(g_j)(x).u >= s  (j active),  ||u||_inf <= 1
// holds iff the margin s* exceeds the strict tolerance. With no active
// constraints the condition is vacuous; margin is reported as +inf.
struct MfcqResult {
    bool holds;
    bool vacuous;
    std::vector<double> u;
    double margin;
};

MfcqResult check_mfcq(const Problem& p, std::span<const double> x, const Tolerances& tol = {});

enum class SocqStatus { Holds, Fails, Inconclusive };

const char* socq_status_name(SocqStatus s);

// Second-order Mangasarian-Fromovitz CQ for one direction d with
// grad(g_j)(x).d <= 0 on the active set, d != 0: existence of u and
// omega >= 0 with grad(g_j)(x).u > omega * g_j''(x,d) for all active j.
// The condition is jointly positively homogeneous in (u, omega), so it is
// checked as the LP
//   max s  s.t.  grad(g_j)(x).u - omega g_j''(x,d) >= s,
//                ||u||_inf <= 1, 0 <= omega <= 1.
// Curvature entries of -inf satisfy their row for any omega > 0 and are
// dropped from the LP with a nonfinite-curvature annotation; a +inf entry or
// a failed estimate makes the check inconclusive.
struct SocqDirectionResult {
    SocqStatus status;
    bool vacuous = false;
    std::vector<double> d;
    std::vector<double> u;
    double omega = 0.0;
    double margin = 0.0;
    std::string note;
};

SocqDirectionResult check_socq_direction(const Problem& p, std::span<const double> x,
                                         std::span<const double> d, const Tolerances& tol = {});

struct CqReport {
    MfcqResult mfcq;
    std::vector<SocqDirectionResult> socq;
    int directions_tested = 0;
    // Whenever MFCQ holds, every per-direction SOCQ margin is compared against
    // the MFCQ margin ((u*, omega=0) stays feasible for the SOCQ LP).
    bool mfcq_implies_socq_checked = false;
    bool prop1_consistent = true;

    enum class Overall { HoldsSampled, Fails, Inconclusive } overall = Overall::Inconclusive;
    std::string note;
};

// Aggregate over a list of admissible directions. The verdict is
// `holds-sampled` only if every tested direction holds; an empty list is
// inconclusive (a sampled universal quantifier cannot be vacuously checked).
CqReport check_socq(const Problem& p, std::span<const double> x,
                    const std::vector<std::vector<double>>& directions,
                    const Tolerances& tol = {});

// Directions satisfying the SOCQ admissibility condition at x
// (grad(g_j)(x).d <= 0 for all active j, d != 0), unit sup-norm.
std::vector<std::vector<double>> sample_cq_directions(const Problem& p,
                                                      std::span<const double> x, int count,
                                                      std::uint64_t seed,
                                                      const Tolerances& tol = {});

} // namespace mokkt
