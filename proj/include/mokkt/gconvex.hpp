#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mokkt/problem.hpp"
#include "mokkt/tolerances.hpp"

namespace mokkt {

// Sampling-based refutation probes for the generalized-convexity classes.
// A probe either produces a concrete counterexample (which re-verifies
// deterministically) or reports that none was found in the given number of
// trials. "None found" is a sampled statement, never a proof.

enum class ProbeProperty {
    QuasiconvexAt,
    QuasiconvexOn,
    Pseudoconvex,
    TwoPseudoconvex,
    SemistrictQuasiconvex,
    Problem2KtPseudoconvex,
};

const char* probe_property_name(ProbeProperty p);

struct ProbeWitness {
    std::vector<double> x, y;
    double t = 0.0;     // segment parameter for the quasiconvexity-style probes
    int component = -1; // objective/constraint index for the problem probe
    bool on_constraint = false;
    int branch = -1;    // violated consequent (1..4) for the problem probe
    std::map<std::string, double> values; // named evaluation evidence
};

struct ProbeResult {
    ProbeProperty property;
    long trials = 0;
    long skipped_domain = 0;
    long skipped_derivative = 0;
    long accepted = 0; // antecedent hits (dominated pairs for the problem probe)
    std::uint64_t seed = 0;
    std::optional<ProbeWitness> counterexample;

    bool none_found() const { return !counterexample.has_value(); }
};

using BoxRanges = std::vector<std::array<double, 2>>;

// f((1-t)x + ty) <= max(f(x), f(y)) over box x box x [0,1], uniform samples.
ProbeResult probe_quasiconvex(const Expr& e, const BoxRanges& box, long trials,
                              std::uint64_t seed, const Tolerances& tol = {});

// Quasiconvexity at a fixed point x: f(y) <= f(x) implies the segment toward
// y stays at or below f(x).
ProbeResult probe_quasiconvex_at(const Expr& e, std::span<const double> x, const BoxRanges& box,
                                 long trials, std::uint64_t seed, const Tolerances& tol = {});

// f(y) < f(x) implies grad(f)(x).(y-x) < 0.
ProbeResult probe_pseudoconvex(const Expr& e, const BoxRanges& box, long trials,
                               std::uint64_t seed, const Tolerances& tol = {});

// f(y) < f(x) implies grad(f)(x).(y-x) <= 0, and when that product vanishes,
// f''(x, y-x) < 0.
ProbeResult probe_2pseudoconvex(const Expr& e, const BoxRanges& box, long trials,
                                std::uint64_t seed, const Tolerances& tol = {});

// f(y) < f(x) implies f < f(x) on the open segment toward y.
ProbeResult probe_semistrict_quasiconvex(const Expr& e, const BoxRanges& box, long trials,
                                         std::uint64_t seed, const Tolerances& tol = {});

// Problem-level second-order KT pseudoconvexity: for feasible pairs with
// f(y) <= f(x) componentwise and strictly somewhere, checks
//   (1) grad(f_i)(x).(y-x) <= 0 for all i,
//   (2) grad(f_i)(x).u = 0  =>  f_i''(x, u) < 0,
//   (3) grad(g_j)(x).(y-x) <= 0 for active j,
//   (4) grad(g_j)(x).u = 0, j active  =>  g_j''(x, u) <= 0,
// where u = (y-x)/||y-x||_2 in the vanishing-product branches (second-order
// directional derivatives are positively homogeneous of degree 2, so the
// normalization changes no signs while keeping the thresholds scale-free).
ProbeResult probe_problem_2kt_pseudoconvex(const Problem& p, long trials, std::uint64_t seed,
                                           const Tolerances& tol = {});

// Re-evaluate the defining inequality of a stored counterexample.
bool reverify(const Expr& e, ProbeProperty property, const ProbeWitness& w,
              const Tolerances& tol = {});
bool reverify_problem(const Problem& p, const ProbeWitness& w, const Tolerances& tol = {});

} // namespace mokkt
