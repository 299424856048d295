// Test-only oracles: independent reference implementations the suites check
// the library against. Nothing here may call back into the code path it is
// used to verify.
#pragma once

#include <cmath>
#include <functional>
#include <random>
#include <vector>

#include "mokkt/expr.hpp"
#include "mokkt/lp.hpp"
#include "mokkt/problem.hpp"

namespace mokkt::testsupport {

// ---------------------------------------------------------------------------
// Direct recursive interpreter, structurally independent of Expr::eval's
// arena pass.

inline double naive_eval_node(const Expr& e, int idx, std::span<const double> x) {
    const Node& n = e.node(idx);
    switch (n.kind) {
    case NodeKind::Constant: return n.value;
    case NodeKind::Var: return x[static_cast<std::size_t>(n.var)];
    case NodeKind::Neg: return -naive_eval_node(e, n.a, x);
    case NodeKind::Add: return naive_eval_node(e, n.a, x) + naive_eval_node(e, n.b, x);
    case NodeKind::Sub: return naive_eval_node(e, n.a, x) - naive_eval_node(e, n.b, x);
    case NodeKind::Mul: return naive_eval_node(e, n.a, x) * naive_eval_node(e, n.b, x);
    case NodeKind::Div: {
        double denom = naive_eval_node(e, n.b, x);
        if (denom == 0.0) throw DomainError("division by zero", idx);
        return naive_eval_node(e, n.a, x) / denom;
    }
    case NodeKind::Pow: {
        double base = naive_eval_node(e, n.a, x);
        double expo = naive_eval_node(e, n.b, x);
        if (is_integral_value(expo)) {
            long long p = static_cast<long long>(expo);
            if (base == 0.0 && p < 0) throw DomainError("0^negative", idx);
            return integer_pow(base, p);
        }
        if (base <= 0.0) throw DomainError("pow domain", idx);
        return std::pow(base, expo);
    }
    case NodeKind::Abs: return std::abs(naive_eval_node(e, n.a, x));
    case NodeKind::Sqrt: {
        double v = naive_eval_node(e, n.a, x);
        if (v < 0.0) throw DomainError("sqrt domain", idx);
        return std::sqrt(v);
    }
    case NodeKind::Exp: return std::exp(naive_eval_node(e, n.a, x));
    case NodeKind::Log: {
        double v = naive_eval_node(e, n.a, x);
        if (v <= 0.0) throw DomainError("log domain", idx);
        return std::log(v);
    }
    case NodeKind::Sin: return std::sin(naive_eval_node(e, n.a, x));
    case NodeKind::Cos: return std::cos(naive_eval_node(e, n.a, x));
    case NodeKind::Min2:
        return std::min(naive_eval_node(e, n.a, x), naive_eval_node(e, n.b, x));
    case NodeKind::Max2:
        return std::max(naive_eval_node(e, n.a, x), naive_eval_node(e, n.b, x));
    }
    return 0.0;
}

inline double naive_eval(const Expr& e, std::span<const double> x) {
    return naive_eval_node(e, e.root(), x);
}

// ---------------------------------------------------------------------------
// Central finite differences.

inline std::vector<double> fd_gradient(const Expr& e, std::span<const double> x,
                                       double h = 1e-6) {
    std::vector<double> g(x.size());
    std::vector<double> xp(x.begin(), x.end()), xm(x.begin(), x.end());
    for (std::size_t i = 0; i < x.size(); ++i) {
        xp[i] = x[i] + h;
        xm[i] = x[i] - h;
        g[i] = (e.eval(xp) - e.eval(xm)) / (2.0 * h);
        xp[i] = x[i];
        xm[i] = x[i];
    }
    return g;
}

// ---------------------------------------------------------------------------
// Brute-force vertex enumeration for LPs whose variables all carry finite
// bounds: every constraint subset of size num_vars is intersected, candidate
// vertices are filtered for feasibility, and the best objective wins.

struct VertexOracleResult {
    bool feasible = false;
    double value = 0.0;
    std::vector<double> x;
};

namespace detail {

// Gaussian elimination with partial pivoting; false when near-singular.
inline bool solve_square(std::vector<std::vector<double>> a, std::vector<double> b,
                         std::vector<double>& out) {
    const int n = static_cast<int>(b.size());
    for (int c = 0; c < n; ++c) {
        int piv = c;
        for (int r = c + 1; r < n; ++r)
            if (std::abs(a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) >
                std::abs(a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(c)]))
                piv = r;
        if (std::abs(a[static_cast<std::size_t>(piv)][static_cast<std::size_t>(c)]) < 1e-9) return false;
        std::swap(a[static_cast<std::size_t>(c)], a[static_cast<std::size_t>(piv)]);
        std::swap(b[static_cast<std::size_t>(c)], b[static_cast<std::size_t>(piv)]);
        for (int r = c + 1; r < n; ++r) {
            double f = a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] /
                       a[static_cast<std::size_t>(c)][static_cast<std::size_t>(c)];
            if (f == 0.0) continue;
            for (int cc = c; cc < n; ++cc)
                a[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)] -=
                    f * a[static_cast<std::size_t>(c)][static_cast<std::size_t>(cc)];
            b[static_cast<std::size_t>(r)] -= f * b[static_cast<std::size_t>(c)];
        }
    }
    out.assign(static_cast<std::size_t>(n), 0.0);
    for (int r = n - 1; r >= 0; --r) {
        double acc = b[static_cast<std::size_t>(r)];
        for (int c = r + 1; c < n; ++c)
            acc -= a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] * out[static_cast<std::size_t>(c)];
        out[static_cast<std::size_t>(r)] = acc / a[static_cast<std::size_t>(r)][static_cast<std::size_t>(r)];
    }
    return true;
}

} // namespace detail

inline VertexOracleResult vertex_enumeration(const LinearProgram& lp, double feas_tol = 1e-7) {
    const int n = lp.num_vars;
    struct Row {
        std::vector<double> a;
        double b;
        bool eq;
    };
    std::vector<Row> rows;
    for (std::size_t r = 0; r < lp.eq_rows.size(); ++r) rows.push_back({lp.eq_rows[r], lp.eq_rhs[r], true});
    for (std::size_t r = 0; r < lp.ge_rows.size(); ++r) rows.push_back({lp.ge_rows[r], lp.ge_rhs[r], false});
    for (int j = 0; j < n; ++j) {
        std::vector<double> e(static_cast<std::size_t>(n), 0.0);
        e[static_cast<std::size_t>(j)] = 1.0;
        rows.push_back({e, lp.lower[static_cast<std::size_t>(j)], false}); // x_j >= lo
        std::vector<double> me(static_cast<std::size_t>(n), 0.0);
        me[static_cast<std::size_t>(j)] = -1.0;
        rows.push_back({me, -lp.upper[static_cast<std::size_t>(j)], false}); // -x_j >= -hi
    }

    std::vector<int> eq_idx, ineq_idx;
    for (std::size_t r = 0; r < rows.size(); ++r)
        (rows[r].eq ? eq_idx : ineq_idx).push_back(static_cast<int>(r));
    if (static_cast<int>(eq_idx.size()) > n) return {};

    VertexOracleResult best;
    const int extra = n - static_cast<int>(eq_idx.size());
    std::vector<int> pick(static_cast<std::size_t>(extra));
    // iterate over all size-`extra` subsets of the inequality rows
    std::vector<int> comb;
    std::function<void(std::size_t)> rec = [&](std::size_t start) {
        if (static_cast<int>(comb.size()) == extra) {
            std::vector<std::vector<double>> A;
            std::vector<double> b;
            for (int r : eq_idx) {
                A.push_back(rows[static_cast<std::size_t>(r)].a);
                b.push_back(rows[static_cast<std::size_t>(r)].b);
            }
            for (int r : comb) {
                A.push_back(rows[static_cast<std::size_t>(r)].a);
                b.push_back(rows[static_cast<std::size_t>(r)].b);
            }
            std::vector<double> x;
            if (detail::solve_square(A, b, x)) {
                bool ok = true;
                for (const Row& row : rows) {
                    double dot = 0.0;
                    for (int j = 0; j < n; ++j) dot += row.a[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
                    if (row.eq ? std::abs(dot - row.b) > feas_tol : dot < row.b - feas_tol) {
                        ok = false;
                        break;
                    }
                }
                if (ok) {
                    double val = 0.0;
                    for (int j = 0; j < n; ++j) val += lp.objective[static_cast<std::size_t>(j)] * x[static_cast<std::size_t>(j)];
                    if (!best.feasible || val > best.value) {
                        best.feasible = true;
                        best.value = val;
                        best.x = x;
                    }
                }
            }
            return;
        }
        for (std::size_t i = start; i < ineq_idx.size(); ++i) {
            comb.push_back(ineq_idx[i]);
            rec(i + 1);
            comb.pop_back();
        }
    };
    rec(0);
    return best;
}

// ---------------------------------------------------------------------------
// Deterministic random generators.

inline double round3(double v) { return std::round(v * 1000.0) / 1000.0; }

// Random polynomial of total degree <= max_degree as an explicit monomial sum.
inline Expr random_polynomial(std::mt19937_64& rng, const std::vector<std::string>& vars,
                              int max_degree, int monomials = 6) {
    const int s = static_cast<int>(vars.size());
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    std::uniform_int_distribution<int> deg(0, max_degree);
    std::uniform_int_distribution<int> pick(0, s - 1);

    Expr sum = Expr::constant(round3(coef(rng)), vars);
    for (int m = 0; m < monomials; ++m) {
        Expr term = Expr::constant(round3(coef(rng)), vars);
        int total = deg(rng);
        for (int d = 0; d < total; ++d)
            term = Expr::binary(NodeKind::Mul, term, Expr::variable(pick(rng), vars));
        sum = Expr::binary(NodeKind::Add, sum, term);
    }
    return sum;
}

// Random quadratic q(x) = c.x + x^T B x with small rounded coefficients.
inline Expr random_quadratic(std::mt19937_64& rng, const std::vector<std::string>& vars) {
    const int s = static_cast<int>(vars.size());
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    Expr q = Expr::constant(0.0, vars);
    for (int i = 0; i < s; ++i) {
        Expr lin = Expr::binary(NodeKind::Mul, Expr::constant(round3(coef(rng)), vars),
                                Expr::variable(i, vars));
        q = Expr::binary(NodeKind::Add, q, lin);
        for (int j = i; j < s; ++j) {
            Expr quad = Expr::binary(
                NodeKind::Mul, Expr::constant(round3(coef(rng)), vars),
                Expr::binary(NodeKind::Mul, Expr::variable(i, vars), Expr::variable(j, vars)));
            q = Expr::binary(NodeKind::Add, q, quad);
        }
    }
    return q;
}

// Random LP with finite box bounds (so the vertex oracle is exhaustive).
inline LinearProgram random_bounded_lp(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> nv(1, 4), nr(0, 6), coef(-2, 2), rhs(-3, 3);
    std::uniform_int_distribution<int> lo(-3, -1), hi(1, 3);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    const int n = nv(rng);
    LinearProgram lp(n);
    for (int j = 0; j < n; ++j) {
        lp.lower[static_cast<std::size_t>(j)] = lo(rng);
        lp.upper[static_cast<std::size_t>(j)] = hi(rng);
        lp.objective[static_cast<std::size_t>(j)] = coef(rng);
    }
    const int rows = nr(rng);
    for (int r = 0; r < rows; ++r) {
        std::vector<double> row(static_cast<std::size_t>(n));
        bool nonzero = false;
        for (int j = 0; j < n; ++j) {
            row[static_cast<std::size_t>(j)] = coef(rng);
            nonzero |= row[static_cast<std::size_t>(j)] != 0.0;
        }
        if (!nonzero) continue;
        if (u01(rng) < 0.15 && n >= 2)
            lp.add_equality(std::move(row), rhs(rng));
        else
            lp.add_inequality_ge(std::move(row), rhs(rng));
    }
    return lp;
}

// Random smooth problem with constraints constructed to be active at `x`.
struct ActiveInstance {
    Problem problem;
    std::vector<double> x;
};

inline ActiveInstance random_active_problem(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> sdist(2, 3), mact(1, 2), minact(0, 1);
    std::uniform_int_distribution<int> grid(-2, 2);
    const int s = sdist(rng);
    std::vector<std::string> vars;
    for (int i = 0; i < s; ++i) vars.push_back("x" + std::to_string(i + 1));

    std::vector<double> x0(static_cast<std::size_t>(s));
    for (double& v : x0) v = 0.25 * grid(rng);

    Problem p;
    p.vars = vars;
    p.id = "random-active";
    p.objectives.push_back(random_quadratic(rng, vars));
    const int na = mact(rng), ni = minact(rng);
    for (int j = 0; j < na + ni; ++j) {
        Expr q = random_quadratic(rng, vars);
        double c = q.eval(x0); // bitwise-identical evaluation keeps g(x0) exactly 0
        Expr g = Expr::binary(NodeKind::Sub, q, Expr::constant(c, vars));
        if (j >= na) g = Expr::binary(NodeKind::Sub, g, Expr::constant(1.0, vars));
        p.constraints.push_back(g);
    }
    for (int i = 0; i < s; ++i) p.box.push_back({-2.0, 2.0});
    p.point = x0;
    p.validate();
    return {std::move(p), std::move(x0)};
}

} // namespace mokkt::testsupport
