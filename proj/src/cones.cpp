#include "mokkt/cones.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

#include "mokkt/calculus.hpp"

namespace mokkt {

std::vector<int> active_set(const Problem& p, std::span<const double> x, double tol_act) {
    std::vector<double> g = p.eval_constraints(x);
    std::vector<std::pair<int, double>> violated;
    std::vector<int> active;
    for (std::size_t j = 0; j < g.size(); ++j) {
        double tol = tol_act * (1.0 + std::abs(g[j]));
        if (g[j] > tol) violated.emplace_back(static_cast<int>(j), g[j]);
        else if (std::abs(g[j]) <= tol) active.push_back(static_cast<int>(j));
    }
    if (!violated.empty()) {
        std::ostringstream msg;
        msg << "infeasible point:";
        for (auto& [j, v] : violated) msg << " g" << j + 1 << " = " << v;
        throw InfeasiblePointError(msg.str(), violated);
    }
    return active;
}

CriticalityCheck is_critical(const Problem& p, std::span<const double> x,
                             std::span<const double> d, const Tolerances& tol) {
    CriticalityCheck out;
    out.critical = true;
    for (int i = 0; i < p.num_objectives(); ++i) {
        double dot = directional_derivative(p.objectives[static_cast<std::size_t>(i)], x, d);
        if (dot > tol.criticality) out.critical = false;
        if (std::abs(dot) <= tol.criticality) out.I.push_back(i);
    }
    for (int j : active_set(p, x, tol.active)) {
        double dot = directional_derivative(p.constraints[static_cast<std::size_t>(j)], x, d);
        if (dot > tol.criticality) out.critical = false;
        if (std::abs(dot) <= tol.criticality) out.J.push_back(j);
    }
    if (!out.critical) {
        out.I.clear();
        out.J.clear();
    }
    return out;
}

namespace {

double inf_norm(std::span<const double> v) {
    double m = 0.0;
    for (double x : v) m = std::max(m, std::abs(x));
    return m;
}

bool normalize_inf(std::vector<double>& v) {
    double m = inf_norm(v);
    if (m < 1e-14) return false;
    for (double& x : v) {
        x /= m;
        if (x == 0.0) x = 0.0; // canonicalize -0
    }
    return true;
}

bool in_cone(const std::vector<std::vector<double>>& rows, std::span<const double> d,
             double tol) {
    for (const auto& row : rows) {
        double dot = 0.0;
        for (std::size_t k = 0; k < row.size(); ++k) dot += row[k] * d[k];
        if (dot > tol) return false;
    }
    return true;
}

bool near_duplicate(const std::vector<std::vector<double>>& accepted,
                    const std::vector<double>& d) {
    for (const auto& a : accepted) {
        double diff = 0.0;
        for (std::size_t k = 0; k < d.size(); ++k) diff = std::max(diff, std::abs(a[k] - d[k]));
        if (diff <= 1e-9) return true;
    }
    return false;
}

// Null-space basis of the given rows via Gauss-Jordan; s is tiny here.
std::vector<std::vector<double>> null_space(std::vector<std::vector<double>> m, int s) {
    const double piv_tol = 1e-10;
    int nrows = static_cast<int>(m.size());
    std::vector<int> pivot_col;
    int rank = 0;
    for (int c = 0; c < s && rank < nrows; ++c) {
        int best = -1;
        double best_abs = piv_tol;
        for (int r = rank; r < nrows; ++r) {
            if (std::abs(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]) > best_abs) {
                best = r;
                best_abs = std::abs(m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)]);
            }
        }
        if (best < 0) continue;
        std::swap(m[static_cast<std::size_t>(rank)], m[static_cast<std::size_t>(best)]);
        double inv = 1.0 / m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)];
        for (int cc = 0; cc < s; ++cc) m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(cc)] *= inv;
        for (int r = 0; r < nrows; ++r) {
            if (r == rank) continue;
            double f = m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
            if (f == 0.0) continue;
            for (int cc = 0; cc < s; ++cc)
                m[static_cast<std::size_t>(r)][static_cast<std::size_t>(cc)] -= f * m[static_cast<std::size_t>(rank)][static_cast<std::size_t>(cc)];
        }
        pivot_col.push_back(c);
        ++rank;
    }
    std::vector<std::vector<double>> basis;
    for (int c = 0; c < s; ++c) {
        if (std::find(pivot_col.begin(), pivot_col.end(), c) != pivot_col.end()) continue;
        std::vector<double> v(static_cast<std::size_t>(s), 0.0);
        v[static_cast<std::size_t>(c)] = 1.0;
        for (int r = 0; r < rank; ++r)
            v[static_cast<std::size_t>(pivot_col[static_cast<std::size_t>(r)])] =
                -m[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)];
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace

std::vector<std::vector<double>> sample_cone_directions(
    const std::vector<std::vector<double>>& rows, int s, int count, std::uint64_t seed,
    double tol) {
    std::vector<std::vector<double>> accepted;
    if (count <= 0) return accepted;

    auto offer = [&](std::vector<double> d) {
        if (static_cast<int>(accepted.size()) >= count) return;
        if (!normalize_inf(d)) return;
        if (!in_cone(rows, d, tol)) return;
        if (near_duplicate(accepted, d)) return;
        accepted.push_back(std::move(d));
    };
    auto offer_pm = [&](const std::vector<double>& d) {
        offer(d);
        std::vector<double> neg(d.size());
        for (std::size_t k = 0; k < d.size(); ++k) neg[k] = -d[k];
        offer(std::move(neg));
    };

    // (a) basis vectors and per-row orthogonal projections of basis vectors
    for (int i = 0; i < s; ++i) {
        std::vector<double> e(static_cast<std::size_t>(s), 0.0);
        e[static_cast<std::size_t>(i)] = 1.0;
        offer_pm(e);
    }
    for (const auto& row : rows) {
        double nrm2 = 0.0;
        for (double v : row) nrm2 += v * v;
        if (nrm2 < 1e-20) continue;
        for (int i = 0; i < s; ++i) {
            std::vector<double> w(row.size());
            for (std::size_t k = 0; k < row.size(); ++k) w[k] = -row[static_cast<std::size_t>(i)] * row[k] / nrm2;
            w[static_cast<std::size_t>(i)] += 1.0;
            offer_pm(w);
        }
    }

    // (c) null-space bases of row subsets: targets the cone faces where the
    // index sets I(x,d), J(x,d) are nonempty. Capped at s <= 4 and subset
    // size <= s-1 to avoid combinatorial blow-up; sphere samples cover the rest.
    if (s <= 4 && !rows.empty()) {
        int nr = static_cast<int>(rows.size());
        for (std::uint32_t mask = 1; mask < (1u << nr); ++mask) {
            int bits = __builtin_popcount(mask);
            if (bits > s - 1 || bits == 0) continue;
            std::vector<std::vector<double>> subset;
            for (int r = 0; r < nr; ++r)
                if (mask & (1u << r)) subset.push_back(rows[static_cast<std::size_t>(r)]);
            for (auto& v : null_space(std::move(subset), s)) offer_pm(v);
            if (static_cast<int>(accepted.size()) >= count) break;
        }
    }

    // (b) Gaussian sphere samples to fill the budget
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, 1.0);
    int attempts = 0;
    const int max_attempts = 64 * count + 256;
    while (static_cast<int>(accepted.size()) < count && attempts++ < max_attempts) {
        std::vector<double> d(static_cast<std::size_t>(s));
        for (double& v : d) v = gauss(rng);
        offer(std::move(d));
    }
    return accepted;
}

std::vector<CriticalDirection> sample_critical_directions(const Problem& p,
                                                          std::span<const double> x, int count,
                                                          std::uint64_t seed,
                                                          const Tolerances& tol) {
    std::vector<std::vector<double>> rows;
    for (const Expr& f : p.objectives) rows.push_back(gradient(f, x));
    for (int j : active_set(p, x, tol.active))
        rows.push_back(gradient(p.constraints[static_cast<std::size_t>(j)], x));

    std::vector<CriticalDirection> out;
    for (auto& d : sample_cone_directions(rows, p.dim(), count, seed, tol.criticality)) {
        CriticalityCheck chk = is_critical(p, x, d, tol);
        if (!chk.critical) continue;
        out.push_back({std::move(d), std::move(chk.I), std::move(chk.J)});
    }
    return out;
}

} // namespace mokkt
