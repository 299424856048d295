#include "mokkt/pareto.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

#include "mokkt/lp.hpp"

namespace mokkt {

const char* pareto_class_name(ParetoClass c) {
    switch (c) {
    case ParetoClass::Pareto: return "pareto";
    case ParetoClass::WeakParetoOnly: return "weak-pareto-only";
    case ParetoClass::Dominated: return "dominated";
    }
    return "?";
}

bool dominates(std::span<const double> a, std::span<const double> b, DominanceKind kind) {
    if (a.size() != b.size()) throw FormatError("dominance comparison of unequal lengths");
    bool strict_somewhere = false;
    for (std::size_t i = 0; i < a.size(); ++i) {
        switch (kind) {
        case DominanceKind::Strict:
            if (!(a[i] < b[i])) return false;
            break;
        case DominanceKind::Weak:
        case DominanceKind::Pareto:
            if (a[i] > b[i]) return false;
            if (a[i] < b[i]) strict_somewhere = true;
            break;
        }
    }
    if (kind == DominanceKind::Pareto) return strict_somewhere;
    return true;
}

namespace {

struct Grid {
    std::vector<double> steps;   // per-dimension effective step
    std::vector<long> counts;    // points per dimension (2^k + 1)
    long total = 1;
};

// Nested dyadic grid: per-dimension step (hi - lo) / 2^k with the smallest k
// such that the step does not exceed the request.
Grid make_grid(const Problem& p, double grid_step, long budget) {
    if (grid_step <= 0.0) throw PreconditionError("grid step must be positive");
    Grid g;
    for (const auto& range : p.box) {
        double width = range[1] - range[0];
        int k = 0;
        while (width / static_cast<double>(1L << k) > grid_step && k < 40) ++k;
        long n = (1L << k) + 1;
        g.steps.push_back(width / static_cast<double>(1L << k));
        g.counts.push_back(n);
        if (g.total > budget / n + 1) throw BudgetError("grid exceeds the evaluation budget; increase grid_step");
        g.total *= n;
    }
    if (g.total > budget)
        throw BudgetError("grid exceeds the evaluation budget; increase grid_step");
    return g;
}

bool feasible(const Problem& p, std::span<const double> y, double tol_act) {
    for (const Expr& g : p.constraints) {
        double v = g.eval(y);
        if (v > tol_act * (1.0 + std::abs(v))) return false;
    }
    return true;
}

// Lexicographic scan over feasible grid points; the callback receives the
// point and its objective values.
void scan(const Problem& p, const Grid& g, const Tolerances& tol,
          const std::function<void(const std::vector<double>&, const std::vector<double>&)>& fn,
          long& visited, long& feas) {
    const int s = p.dim();
    std::vector<long> idx(static_cast<std::size_t>(s), 0);
    std::vector<double> y(static_cast<std::size_t>(s));
    for (;;) {
        for (int i = 0; i < s; ++i)
            y[static_cast<std::size_t>(i)] =
                p.box[static_cast<std::size_t>(i)][0] + g.steps[static_cast<std::size_t>(i)] * static_cast<double>(idx[static_cast<std::size_t>(i)]);
        ++visited;
        if (feasible(p, y, tol.active)) {
            ++feas;
            fn(y, p.eval_objectives(y));
        }
        int d = s - 1;
        while (d >= 0 && ++idx[static_cast<std::size_t>(d)] == g.counts[static_cast<std::size_t>(d)]) {
            idx[static_cast<std::size_t>(d)] = 0;
            --d;
        }
        if (d < 0) break;
    }
}

double dist2(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
    return s;
}

} // namespace

OracleVerdict classify(const Problem& p, std::span<const double> x, OracleScope scope,
                       double grid_step, const Tolerances& tol, long budget,
                       double local_radius) {
    Grid grid = make_grid(p, grid_step, budget);
    OracleVerdict v;
    v.scope = scope;
    v.grid_steps = grid.steps;
    if (scope == OracleScope::Local)
        v.radius = local_radius > 0.0 ? local_radius : 0.1 * p.box_diagonal();

    std::vector<double> fx = p.eval_objectives(x);
    std::optional<std::vector<double>> strict_witness, pareto_witness;
    double r2 = v.radius * v.radius;

    scan(p, grid, tol,
         [&](const std::vector<double>& y, const std::vector<double>& fy) {
             if (scope == OracleScope::Local && dist2(y, x) > r2) return;
             if (!pareto_witness && dominates(fy, fx, DominanceKind::Pareto)) pareto_witness = y;
             if (!strict_witness && dominates(fy, fx, DominanceKind::Strict)) strict_witness = y;
         },
         v.points_scanned, v.feasible_points);

    if (strict_witness) {
        v.classification = ParetoClass::Dominated;
        v.dominating_witness = std::move(strict_witness);
    } else if (pareto_witness) {
        v.classification = ParetoClass::WeakParetoOnly;
        v.dominating_witness = std::move(pareto_witness);
    } else {
        v.classification = ParetoClass::Pareto;
    }
    return v;
}

RestrictionCheck component_restriction_check(const Problem& p, std::span<const double> x,
                                             double grid_step, const Tolerances& tol,
                                             long budget) {
    Grid grid = make_grid(p, grid_step, budget);
    const int n = p.num_objectives();
    std::vector<double> fx = p.eval_objectives(x);

    std::vector<double> min_val(static_cast<std::size_t>(n), kInf);
    std::vector<std::optional<std::vector<double>>> argmin(static_cast<std::size_t>(n));
    std::optional<std::vector<double>> strict_witness, pareto_witness;

    long visited = 0, feas = 0;
    scan(p, grid, tol,
         [&](const std::vector<double>& y, const std::vector<double>& fy) {
             if (!pareto_witness && dominates(fy, fx, DominanceKind::Pareto)) pareto_witness = y;
             if (!strict_witness && dominates(fy, fx, DominanceKind::Strict)) strict_witness = y;
             for (int i = 0; i < n; ++i) {
                 bool in_Ci = true;
                 for (int j = 0; j < n && in_Ci; ++j)
                     if (j != i && fy[static_cast<std::size_t>(j)] > fx[static_cast<std::size_t>(j)]) in_Ci = false;
                 if (in_Ci && fy[static_cast<std::size_t>(i)] < min_val[static_cast<std::size_t>(i)]) {
                     min_val[static_cast<std::size_t>(i)] = fy[static_cast<std::size_t>(i)];
                     argmin[static_cast<std::size_t>(i)] = y;
                 }
             }
         },
         visited, feas);

    RestrictionCheck out;
    out.grid_steps = grid.steps;
    out.oracle_class = strict_witness   ? ParetoClass::Dominated
                       : pareto_witness ? ParetoClass::WeakParetoOnly
                                        : ParetoClass::Pareto;
    // x belongs to every C_i.
    bool lhs_all = true;
    for (int i = 0; i < n; ++i) {
        double mi = std::min(min_val[static_cast<std::size_t>(i)], fx[static_cast<std::size_t>(i)]);
        bool minimizes = mi >= fx[static_cast<std::size_t>(i)] - tol.oracle_slack;
        out.minimizes.push_back(minimizes);
        if (!minimizes) lhs_all = false;
    }
    bool rhs = out.oracle_class == ParetoClass::Pareto;
    out.consistent = lhs_all == rhs;
    if (!out.consistent) {
        for (int i = 0; i < n; ++i) {
            if (!out.minimizes[static_cast<std::size_t>(i)]) {
                out.violating_component = i;
                out.witness = argmin[static_cast<std::size_t>(i)];
                break;
            }
        }
        // LHS claims minimality everywhere yet the oracle found a dominator.
        if (out.violating_component < 0)
            out.witness = strict_witness ? strict_witness : pareto_witness;
    }
    return out;
}

LucSchaibleCheck luc_schaible_check(const Problem& p, std::span<const double> x,
                                    double grid_step, bool hypotheses_pass,
                                    const Tolerances& tol, long budget) {
    Grid grid = make_grid(p, grid_step, budget);
    const int n = p.num_objectives();
    std::vector<double> fx = p.eval_objectives(x);

    std::vector<double> min_val(static_cast<std::size_t>(n), kInf);
    bool strict_dominated = false;

    long visited = 0, feas = 0;
    scan(p, grid, tol,
         [&](const std::vector<double>&, const std::vector<double>& fy) {
             if (dominates(fy, fx, DominanceKind::Strict)) strict_dominated = true;
             for (int k = 0; k < n; ++k) {
                 bool in_Ck = true;
                 for (int j = 0; j < n && in_Ck; ++j)
                     if (j != k && fy[static_cast<std::size_t>(j)] > fx[static_cast<std::size_t>(j)]) in_Ck = false;
                 if (in_Ck)
                     min_val[static_cast<std::size_t>(k)] = std::min(min_val[static_cast<std::size_t>(k)], fy[static_cast<std::size_t>(k)]);
             }
         },
         visited, feas);

    LucSchaibleCheck out;
    out.grid_steps = grid.steps;
    out.hypotheses_ok = hypotheses_pass;
    out.weak_pareto = !strict_dominated;
    for (int k = 0; k < n; ++k) {
        double mk = std::min(min_val[static_cast<std::size_t>(k)], fx[static_cast<std::size_t>(k)]);
        if (mk >= fx[static_cast<std::size_t>(k)] - tol.oracle_slack) {
            out.witness_k = k;
            break;
        }
    }
    out.consistent = out.witness_k.has_value() == out.weak_pareto;
    if (!hypotheses_pass) out.annotation = "hypotheses-unverified";
    return out;
}

} // namespace mokkt
