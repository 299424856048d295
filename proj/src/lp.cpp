#include "mokkt/lp.hpp"

#include <algorithm>
#include <cmath>

namespace mokkt {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kFeasTol = 1e-9;

// Standard-form working problem: minimize cost . u, W u = rhs, u >= 0.
struct Tableau {
    int cols = 0;
    std::vector<std::vector<double>> rows; // each of size cols + 1 (rhs last)
    std::vector<int> basis;                // basic column per row

    double& at(int r, int c) { return rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]; }
    double rhs(int r) const { return rows[static_cast<std::size_t>(r)][static_cast<std::size_t>(cols)]; }
    int height() const { return static_cast<int>(rows.size()); }

    void pivot(int pr, int pc, std::vector<double>& zrow, double& zval) {
        auto& prow = rows[static_cast<std::size_t>(pr)];
        double inv = 1.0 / prow[static_cast<std::size_t>(pc)];
        for (double& v : prow) v *= inv;
        prow[static_cast<std::size_t>(pc)] = 1.0;
        for (int r = 0; r < height(); ++r) {
            if (r == pr) continue;
            double factor = at(r, pc);
            if (factor == 0.0) continue;
            auto& row = rows[static_cast<std::size_t>(r)];
            for (int c = 0; c <= cols; ++c) row[static_cast<std::size_t>(c)] -= factor * prow[static_cast<std::size_t>(c)];
            row[static_cast<std::size_t>(pc)] = 0.0;
        }
        double zf = zrow[static_cast<std::size_t>(pc)];
        if (zf != 0.0) {
            for (int c = 0; c < cols; ++c) zrow[static_cast<std::size_t>(c)] -= zf * prow[static_cast<std::size_t>(c)];
            zrow[static_cast<std::size_t>(pc)] = 0.0;
            zval += zf * prow[static_cast<std::size_t>(cols)];
        }
        basis[static_cast<std::size_t>(pr)] = pc;
    }
};

// Bland's rule: entering = lowest-index column with reduced cost < -tol;
// leaving = min ratio, ties broken by lowest basic column index.
// Returns 0 optimal, 1 pivoted, -1 unbounded.
int simplex_step(Tableau& t, std::vector<double>& zrow, double& zval, int allowed_cols) {
    int enter = -1;
    for (int c = 0; c < allowed_cols; ++c) {
        if (zrow[static_cast<std::size_t>(c)] < -kPivotTol) {
            enter = c;
            break;
        }
    }
    if (enter < 0) return 0;
    int leave = -1;
    double best_ratio = 0.0;
    for (int r = 0; r < t.height(); ++r) {
        double a = t.at(r, enter);
        if (a > kPivotTol) {
            double ratio = t.rhs(r) / a;
            if (leave < 0 || ratio < best_ratio - 1e-15 ||
                (std::abs(ratio - best_ratio) <= 1e-15 &&
                 t.basis[static_cast<std::size_t>(r)] < t.basis[static_cast<std::size_t>(leave)])) {
                leave = r;
                best_ratio = ratio;
            }
        }
    }
    if (leave < 0) return -1;
    t.pivot(leave, enter, zrow, zval);
    return 1;
}

std::vector<double> reduced_costs(const Tableau& t, const std::vector<double>& cost,
                                  double& zval) {
    std::vector<double> z = cost;
    zval = 0.0;
    for (int r = 0; r < t.height(); ++r) {
        double cb = cost[static_cast<std::size_t>(t.basis[static_cast<std::size_t>(r)])];
        if (cb == 0.0) continue;
        const auto& row = t.rows[static_cast<std::size_t>(r)];
        for (int c = 0; c < t.cols; ++c) z[static_cast<std::size_t>(c)] -= cb * row[static_cast<std::size_t>(c)];
        zval += cb * row[static_cast<std::size_t>(t.cols)];
    }
    return z;
}

// How an original variable maps onto the nonnegative working variables.
struct VarMap {
    double offset = 0.0;
    double scale = 1.0; // x = offset + scale * u[col]
    int col = -1;
    int col_neg = -1;   // free variables: x = u[col] - u[col_neg]
};

} // namespace

LpSolution solve(const LinearProgram& lp) {
    const int n = lp.num_vars;
    const int given_rows = static_cast<int>(lp.eq_rows.size() + lp.ge_rows.size());
    if (n > 64) throw LpError("LP exceeds the 64-variable desk-scale limit");
    if (given_rows > 256) throw LpError("LP exceeds the 256-row desk-scale limit");
    if (static_cast<int>(lp.objective.size()) != n || static_cast<int>(lp.lower.size()) != n ||
        static_cast<int>(lp.upper.size()) != n)
        throw LpError("LP vectors are inconsistent with num_vars");
    for (int j = 0; j < n; ++j)
        if (!(lp.lower[static_cast<std::size_t>(j)] <= lp.upper[static_cast<std::size_t>(j)]))
            throw LpError("LP has lower bound above upper bound");

    // --- substitute variables so every working variable is >= 0
    std::vector<VarMap> vmap(static_cast<std::size_t>(n));
    std::vector<double> ucap; // upper bound on working var, NaN if none (index-aligned with cols)
    int ncols = 0;
    for (int j = 0; j < n; ++j) {
        double lo = lp.lower[static_cast<std::size_t>(j)], hi = lp.upper[static_cast<std::size_t>(j)];
        VarMap& m = vmap[static_cast<std::size_t>(j)];
        if (std::isfinite(lo)) {
            m.offset = lo;
            m.scale = 1.0;
            m.col = ncols++;
            ucap.push_back(std::isfinite(hi) ? hi - lo : kInf);
        } else if (std::isfinite(hi)) {
            m.offset = hi;
            m.scale = -1.0;
            m.col = ncols++;
            ucap.push_back(kInf);
        } else {
            m.col = ncols++;
            m.col_neg = ncols++;
            ucap.push_back(kInf);
            ucap.push_back(kInf);
        }
    }
    const int nstruct = ncols;

    struct WorkRow {
        std::vector<double> coeff; // over structural columns
        double rhs;
        bool is_eq;
    };
    std::vector<WorkRow> work;
    auto add_work = [&](const std::vector<double>& row, double rhs, bool is_eq) {
        WorkRow w;
        w.coeff.assign(static_cast<std::size_t>(nstruct), 0.0);
        w.rhs = rhs;
        w.is_eq = is_eq;
        for (int j = 0; j < n; ++j) {
            double a = row[static_cast<std::size_t>(j)];
            if (a == 0.0) continue;
            const VarMap& m = vmap[static_cast<std::size_t>(j)];
            w.rhs -= a * m.offset;
            w.coeff[static_cast<std::size_t>(m.col)] += a * m.scale;
            if (m.col_neg >= 0) w.coeff[static_cast<std::size_t>(m.col_neg)] -= a;
        }
        work.push_back(std::move(w));
    };
    for (std::size_t r = 0; r < lp.eq_rows.size(); ++r) add_work(lp.eq_rows[r], lp.eq_rhs[r], true);
    for (std::size_t r = 0; r < lp.ge_rows.size(); ++r) add_work(lp.ge_rows[r], lp.ge_rhs[r], false);
    for (int c = 0; c < nstruct; ++c) {
        if (std::isfinite(ucap[static_cast<std::size_t>(c)])) {
            WorkRow w;
            w.coeff.assign(static_cast<std::size_t>(nstruct), 0.0);
            w.coeff[static_cast<std::size_t>(c)] = -1.0; // -u >= -cap
            w.rhs = -ucap[static_cast<std::size_t>(c)];
            w.is_eq = false;
            work.push_back(std::move(w));
        }
    }

    const int nrows = static_cast<int>(work.size());
    int nslack = 0;
    for (const WorkRow& w : work)
        if (!w.is_eq) ++nslack;

    // Columns: [structural | surplus | artificial], one artificial per row.
    Tableau t;
    t.cols = nstruct + nslack + nrows;
    t.rows.assign(static_cast<std::size_t>(nrows), std::vector<double>(static_cast<std::size_t>(t.cols) + 1, 0.0));
    t.basis.assign(static_cast<std::size_t>(nrows), -1);

    int slack_at = nstruct;
    for (int r = 0; r < nrows; ++r) {
        WorkRow& w = work[static_cast<std::size_t>(r)];
        double sign = w.rhs < 0.0 ? -1.0 : 1.0;
        for (int c = 0; c < nstruct; ++c) t.at(r, c) = sign * w.coeff[static_cast<std::size_t>(c)];
        if (!w.is_eq) t.at(r, slack_at++) = -sign; // row - surplus = rhs
        t.at(r, nstruct + nslack + r) = 1.0;
        t.at(r, t.cols) = sign * w.rhs;
        t.basis[static_cast<std::size_t>(r)] = nstruct + nslack + r;
    }

    const int art_begin = nstruct + nslack;
    double rhs_scale = 1.0;
    for (int r = 0; r < nrows; ++r) rhs_scale = std::max(rhs_scale, std::abs(t.rhs(r)));

    LpSolution sol;
    sol.iterations = 0;
    const int max_iter = 10000 + 200 * (t.cols + nrows);

    // --- Phase I: minimize the artificial sum
    {
        std::vector<double> cost(static_cast<std::size_t>(t.cols), 0.0);
        for (int c = art_begin; c < t.cols; ++c) cost[static_cast<std::size_t>(c)] = 1.0;
        double zval = 0.0;
        std::vector<double> zrow = reduced_costs(t, cost, zval);
        for (;;) {
            int step = simplex_step(t, zrow, zval, t.cols);
            if (step == 0) break;
            if (step < 0) throw LpError("phase-I subproblem reported unbounded"); // cannot happen
            if (++sol.iterations > max_iter) throw LpError("simplex stalled (numerically singular basis)");
        }
        if (zval > kFeasTol * rhs_scale) {
            sol.status = LpStatus::Infeasible;
            return sol;
        }
        // Drive leftover artificials out of the basis or drop dependent rows.
        for (int r = t.height() - 1; r >= 0; --r) {
            if (t.basis[static_cast<std::size_t>(r)] < art_begin) continue;
            int pc = -1;
            for (int c = 0; c < art_begin; ++c) {
                if (std::abs(t.at(r, c)) > kPivotTol) {
                    pc = c;
                    break;
                }
            }
            if (pc >= 0) {
                t.pivot(r, pc, zrow, zval);
            } else {
                t.rows.erase(t.rows.begin() + r);
                t.basis.erase(t.basis.begin() + r);
            }
        }
    }

    // --- Phase II: minimize -(objective in working variables)
    {
        std::vector<double> cost(static_cast<std::size_t>(t.cols), 0.0);
        for (int j = 0; j < n; ++j) {
            double cj = lp.objective[static_cast<std::size_t>(j)];
            if (cj == 0.0) continue;
            const VarMap& m = vmap[static_cast<std::size_t>(j)];
            cost[static_cast<std::size_t>(m.col)] -= cj * m.scale;
            if (m.col_neg >= 0) cost[static_cast<std::size_t>(m.col_neg)] += cj;
        }
        double zval = 0.0;
        std::vector<double> zrow = reduced_costs(t, cost, zval);
        for (;;) {
            int step = simplex_step(t, zrow, zval, art_begin); // artificials blocked
            if (step == 0) break;
            if (step < 0) {
                sol.status = LpStatus::Unbounded;
                return sol;
            }
            if (++sol.iterations > max_iter) throw LpError("simplex stalled (numerically singular basis)");
        }
    }

    // --- read the solution back
    std::vector<double> u(static_cast<std::size_t>(t.cols), 0.0);
    for (int r = 0; r < t.height(); ++r) u[static_cast<std::size_t>(t.basis[static_cast<std::size_t>(r)])] = t.rhs(r);
    sol.x.assign(static_cast<std::size_t>(n), 0.0);
    for (int j = 0; j < n; ++j) {
        const VarMap& m = vmap[static_cast<std::size_t>(j)];
        double xv = m.offset + m.scale * u[static_cast<std::size_t>(m.col)];
        if (m.col_neg >= 0) xv -= u[static_cast<std::size_t>(m.col_neg)];
        sol.x[static_cast<std::size_t>(j)] = xv;
    }
    sol.value = 0.0;
    for (int j = 0; j < n; ++j) sol.value += lp.objective[static_cast<std::size_t>(j)] * sol.x[static_cast<std::size_t>(j)];
    sol.status = LpStatus::Optimal;

    // Residual audit; a violation means the final basis went numerically bad.
    auto check = [&](double violation) {
        if (violation > kFeasTol * (1.0 + rhs_scale))
            throw LpError("solution residual exceeds tolerance (numerically singular basis)");
    };
    for (std::size_t r = 0; r < lp.eq_rows.size(); ++r) {
        double dot = 0.0;
        for (int j = 0; j < n; ++j) dot += lp.eq_rows[r][static_cast<std::size_t>(j)] * sol.x[static_cast<std::size_t>(j)];
        check(std::abs(dot - lp.eq_rhs[r]));
    }
    for (std::size_t r = 0; r < lp.ge_rows.size(); ++r) {
        double dot = 0.0;
        for (int j = 0; j < n; ++j) dot += lp.ge_rows[r][static_cast<std::size_t>(j)] * sol.x[static_cast<std::size_t>(j)];
        check(std::max(0.0, lp.ge_rhs[r] - dot));
    }
    for (int j = 0; j < n; ++j) {
        check(std::max(0.0, lp.lower[static_cast<std::size_t>(j)] - sol.x[static_cast<std::size_t>(j)]));
        check(std::max(0.0, sol.x[static_cast<std::size_t>(j)] - lp.upper[static_cast<std::size_t>(j)]));
    }
    return sol;
}

} // namespace mokkt
