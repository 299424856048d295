#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "mokkt/problem.hpp"
#include "mokkt/tolerances.hpp"

namespace mokkt {

// Indices of constraints active at x: { j : |g_j(x)| <= tol }. The point must
// be feasible within the same tolerance, otherwise an InfeasiblePointError
// listing the violated constraints is thrown. Tolerances scale mildly with
// the constraint value, tol_act * (1 + |g_j(x)|).
std::vector<int> active_set(const Problem& p, std::span<const double> x, double tol_act);

// Direction d with grad(f_i).d <= 0 for every objective and grad(g_j).d <= 0
// for every active constraint, stored with the index sets
//   I = { i : grad(f_i).d = 0 },  J = { j in A(x) : grad(g_j).d = 0 }
// (all comparisons within the criticality tolerance). Directions are
// normalized to unit sup-norm.
struct CriticalDirection {
    std::vector<double> d;
    std::vector<int> I;
    std::vector<int> J;
};

struct CriticalityCheck {
    bool critical;
    std::vector<int> I;
    std::vector<int> J;
};

// d = 0 counts as critical with I = all objectives and J = A(x).
CriticalityCheck is_critical(const Problem& p, std::span<const double> x,
                             std::span<const double> d, const Tolerances& tol = {});

// Deterministic sampler for { d != 0 : rows[k] . d <= tol for all k } with
// ||d||_inf = 1. Candidates, in order: +/- basis vectors, basis vectors
// projected orthogonal to each row, null-space bases of row subsets of size
// <= s-1 (only for s <= 4), then Gaussian sphere samples to fill the budget.
// May return fewer than `count` directions (possibly none) when the cone is
// thin or empty.
std::vector<std::vector<double>> sample_cone_directions(
    const std::vector<std::vector<double>>& rows, int s, int count, std::uint64_t seed,
    double tol);

// Candidate critical directions at a feasible x, deterministic given the
// seed. d = 0 is never emitted.
std::vector<CriticalDirection> sample_critical_directions(const Problem& p,
                                                          std::span<const double> x, int count,
                                                          std::uint64_t seed,
                                                          const Tolerances& tol = {});

} // namespace mokkt
