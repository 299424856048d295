#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mokkt/problem.hpp"
#include "mokkt/tolerances.hpp"

namespace mokkt {

// Componentwise vector orderings. `Strict` is a_i < b_i everywhere, `Weak` is
// a_i <= b_i everywhere, `Pareto` is weak with at least one strict component.
// Comparisons are exact; the grid oracle works with exact values.
enum class DominanceKind { Strict, Weak, Pareto };

bool dominates(std::span<const double> a, std::span<const double> b, DominanceKind kind);

enum class ParetoClass { Pareto, WeakParetoOnly, Dominated };
enum class OracleScope { Global, Local };

const char* pareto_class_name(ParetoClass c);

// Grid-scan verdict. `Pareto` means no feasible grid point pareto-dominates
// f(x) at this resolution; it is a no-counterexample statement, not a proof.
// Grids are nested dyadic refinements of the box (per-dimension steps
// (hi-lo)/2^k), so refining the step can never lose a dominating witness.
struct OracleVerdict {
    ParetoClass classification;
    OracleScope scope;
    double radius = 0.0;                 // local scope only
    std::vector<double> grid_steps;      // effective per-dimension steps
    long points_scanned = 0;
    long feasible_points = 0;
    std::optional<std::vector<double>> dominating_witness; // strict witness when
                                          // Dominated, pareto witness when WeakParetoOnly
};

// Scans the feasible dyadic grid (plus x itself) and classifies x. The grid
// is global over the box, or restricted to the Euclidean ball of the given
// radius for local scope (default radius 0.1 * box diagonal).
OracleVerdict classify(const Problem& p, std::span<const double> x, OracleScope scope,
                       double grid_step, const Tolerances& tol = {},
                       long budget = 10'000'000, double local_radius = -1.0);

// Kanniappan's scalarization: x is Pareto optimal iff it minimizes every
// component f_i over C_i = { y feasible : f_j(y) <= f_j(x) for all j != i }.
// Both sides are evaluated on the same grid and compared.
struct RestrictionCheck {
    bool consistent;
    std::vector<bool> minimizes;          // per-objective LHS
    ParetoClass oracle_class;             // RHS
    int violating_component = -1;         // 0-based, -1 when consistent
    std::optional<std::vector<double>> witness;
    std::vector<double> grid_steps;
};

RestrictionCheck component_restriction_check(const Problem& p, std::span<const double> x,
                                             double grid_step, const Tolerances& tol = {},
                                             long budget = 10'000'000);

// Luc–Schaible scalarization for weak efficiency: x is a weak Pareto
// minimizer iff some component f_k is minimized over C_k. Valid under
// quasiconvex + semistrictly quasiconvex objectives; the caller passes its
// probe outcome and a failed hypothesis turns the result into an annotation
// rather than a violation.
struct LucSchaibleCheck {
    bool consistent;
    bool hypotheses_ok;
    std::string annotation;               // "hypotheses-unverified" when probes refuted
    std::optional<int> witness_k;         // 0-based minimizing component
    bool weak_pareto;                     // oracle side
    std::vector<double> grid_steps;
};

LucSchaibleCheck luc_schaible_check(const Problem& p, std::span<const double> x,
                                    double grid_step, bool hypotheses_pass,
                                    const Tolerances& tol = {}, long budget = 10'000'000);

} // namespace mokkt
