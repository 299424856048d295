#include "mokkt/calculus.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "mokkt/problem.hpp"

namespace mokkt {

const char* d2_status_name(D2Status s) {
    switch (s) {
    case D2Status::Exact: return "exact";
    case D2Status::Estimated: return "estimated";
    case D2Status::Nonfinite: return "nonfinite";
    case D2Status::Failed: return "failed";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// First-order forward pass

Dual eval_dual(const Expr& e, std::span<const double> x, std::span<const double> d,
               int* kink_node) {
    if (static_cast<int>(x.size()) != e.dim() || x.size() != d.size())
        throw FormatError("point/direction dimension mismatch");
    int kink = -1;
    const auto& nodes = e.nodes();
    std::vector<double> v(nodes.size()), dv(nodes.size());
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Node& n = nodes[i];
        const int ni = static_cast<int>(i);
        switch (n.kind) {
        case NodeKind::Constant: v[i] = n.value; dv[i] = 0.0; break;
        case NodeKind::Var:
            v[i] = x[static_cast<std::size_t>(n.var)];
            dv[i] = d[static_cast<std::size_t>(n.var)];
            break;
        case NodeKind::Neg: v[i] = -v[n.a]; dv[i] = -dv[n.a]; break;
        case NodeKind::Add: v[i] = v[n.a] + v[n.b]; dv[i] = dv[n.a] + dv[n.b]; break;
        case NodeKind::Sub: v[i] = v[n.a] - v[n.b]; dv[i] = dv[n.a] - dv[n.b]; break;
        case NodeKind::Mul:
            v[i] = v[n.a] * v[n.b];
            dv[i] = dv[n.a] * v[n.b] + v[n.a] * dv[n.b];
            break;
        case NodeKind::Div: {
            if (v[n.b] == 0.0) throw DomainError("division by zero", ni);
            v[i] = v[n.a] / v[n.b];
            dv[i] = (dv[n.a] - v[i] * dv[n.b]) / v[n.b];
            break;
        }
        case NodeKind::Pow: {
            double base = v[n.a], db = dv[n.a];
            double expo = v[n.b], de = dv[n.b];
            if (de == 0.0 && is_integral_value(expo)) {
                long long p = static_cast<long long>(expo);
                if (base == 0.0 && p < 0) throw DomainError("0 raised to a negative power", ni);
                v[i] = integer_pow(base, p);
                dv[i] = p == 0 ? 0.0 : static_cast<double>(p) * integer_pow(base, p - 1) * db;
            } else {
                if (base <= 0.0)
                    throw DomainError("non-integer power of a non-positive base", ni);
                v[i] = std::pow(base, expo);
                dv[i] = v[i] * (de * std::log(base) + expo * db / base);
            }
            break;
        }
        case NodeKind::Abs:
            if (v[n.a] > 0.0) {
                v[i] = v[n.a]; dv[i] = dv[n.a];
            } else if (v[n.a] < 0.0) {
                v[i] = -v[n.a]; dv[i] = -dv[n.a];
            } else {
                if (kink < 0) kink = ni;
                v[i] = 0.0;
                dv[i] = std::abs(dv[n.a]); // one-sided: |t u'| = t |u'| for t >= 0
            }
            break;
        case NodeKind::Sqrt:
            if (v[n.a] < 0.0) throw DomainError("sqrt of a negative value", ni);
            if (v[n.a] == 0.0)
                throw NondifferentiableError("sqrt has unbounded slope at zero", ni);
            v[i] = std::sqrt(v[n.a]);
            dv[i] = 0.5 * dv[n.a] / v[i];
            break;
        case NodeKind::Exp: v[i] = std::exp(v[n.a]); dv[i] = v[i] * dv[n.a]; break;
        case NodeKind::Log:
            if (v[n.a] <= 0.0) throw DomainError("log of a non-positive value", ni);
            v[i] = std::log(v[n.a]);
            dv[i] = dv[n.a] / v[n.a];
            break;
        case NodeKind::Sin: v[i] = std::sin(v[n.a]); dv[i] = std::cos(v[n.a]) * dv[n.a]; break;
        case NodeKind::Cos: v[i] = std::cos(v[n.a]); dv[i] = -std::sin(v[n.a]) * dv[n.a]; break;
        case NodeKind::Min2:
            if (v[n.a] < v[n.b]) {
                v[i] = v[n.a]; dv[i] = dv[n.a];
            } else if (v[n.a] > v[n.b]) {
                v[i] = v[n.b]; dv[i] = dv[n.b];
            } else {
                if (kink < 0) kink = ni;
                v[i] = v[n.a];
                dv[i] = std::min(dv[n.a], dv[n.b]);
            }
            break;
        case NodeKind::Max2:
            if (v[n.a] > v[n.b]) {
                v[i] = v[n.a]; dv[i] = dv[n.a];
            } else if (v[n.a] < v[n.b]) {
                v[i] = v[n.b]; dv[i] = dv[n.b];
            } else {
                if (kink < 0) kink = ni;
                v[i] = v[n.a];
                dv[i] = std::max(dv[n.a], dv[n.b]);
            }
            break;
        }
    }
    if (kink_node) *kink_node = kink;
    return {v.back(), dv.back()};
}

double directional_derivative(const Expr& e, std::span<const double> x,
                              std::span<const double> d) {
    return eval_dual(e, x, d).deriv;
}

std::vector<double> gradient(const Expr& e, std::span<const double> x) {
    const int s = e.dim();
    std::vector<double> grad(static_cast<std::size_t>(s));
    std::vector<double> dir(static_cast<std::size_t>(s), 0.0);
    for (int i = 0; i < s; ++i) {
        dir[static_cast<std::size_t>(i)] = 1.0;
        int kink = -1;
        Dual plus = eval_dual(e, x, dir, &kink);
        if (kink >= 0) {
            // A tie was broken one-sidedly. The derivative still exists when
            // the slopes along +e_i and -e_i are exact negatives (x*abs(x)).
            dir[static_cast<std::size_t>(i)] = -1.0;
            Dual minus = eval_dual(e, x, dir);
            if (plus.deriv != -minus.deriv)
                throw NondifferentiableError(
                    "expression is not differentiable along variable '" + e.vars()[static_cast<std::size_t>(i)] + "'",
                    kink);
        }
        grad[static_cast<std::size_t>(i)] = plus.deriv;
        dir[static_cast<std::size_t>(i)] = 0.0;
    }
    return grad;
}

// ---------------------------------------------------------------------------
// Order-2 jet pass (Path A)

namespace {

struct Jet {
    double v, d1, d2; // f(t) = v + d1 t + d2 t^2 / 2 + o(t^2)
};

Jet smooth_apply(double phi, double dphi, double ddphi, const Jet& u) {
    return {phi, dphi * u.d1, dphi * u.d2 + ddphi * u.d1 * u.d1};
}

// kink is set when an abs/min2/max2 argument ties exactly at t = 0; then the
// expression need not be C^2 along the ray and the jet must not be used.
Jet eval_jet(const Expr& e, std::span<const double> x, std::span<const double> d, bool* kink) {
    const auto& nodes = e.nodes();
    std::vector<Jet> j(nodes.size());
    *kink = false;
    for (std::size_t i = 0; i < nodes.size(); ++i) {
        const Node& n = nodes[i];
        const int ni = static_cast<int>(i);
        switch (n.kind) {
        case NodeKind::Constant: j[i] = {n.value, 0.0, 0.0}; break;
        case NodeKind::Var:
            j[i] = {x[static_cast<std::size_t>(n.var)], d[static_cast<std::size_t>(n.var)], 0.0};
            break;
        case NodeKind::Neg: j[i] = {-j[n.a].v, -j[n.a].d1, -j[n.a].d2}; break;
        case NodeKind::Add:
            j[i] = {j[n.a].v + j[n.b].v, j[n.a].d1 + j[n.b].d1, j[n.a].d2 + j[n.b].d2};
            break;
        case NodeKind::Sub:
            j[i] = {j[n.a].v - j[n.b].v, j[n.a].d1 - j[n.b].d1, j[n.a].d2 - j[n.b].d2};
            break;
        case NodeKind::Mul: {
            const Jet &u = j[n.a], &w = j[n.b];
            j[i] = {u.v * w.v, u.d1 * w.v + u.v * w.d1,
                    u.d2 * w.v + 2.0 * u.d1 * w.d1 + u.v * w.d2};
            break;
        }
        case NodeKind::Div: {
            const Jet &u = j[n.a], &w = j[n.b];
            if (w.v == 0.0) throw DomainError("division by zero", ni);
            double q0 = u.v / w.v;
            double q1 = (u.d1 - q0 * w.d1) / w.v;
            double q2 = (u.d2 - 2.0 * q1 * w.d1 - q0 * w.d2) / w.v;
            j[i] = {q0, q1, q2};
            break;
        }
        case NodeKind::Pow: {
            const Jet &u = j[n.a], &p = j[n.b];
            if (p.d1 == 0.0 && p.d2 == 0.0 && is_integral_value(p.v)) {
                long long nn = static_cast<long long>(p.v);
                if (u.v == 0.0 && nn < 0) throw DomainError("0 raised to a negative power", ni);
                double phi = integer_pow(u.v, nn);
                double dphi = nn == 0 ? 0.0 : static_cast<double>(nn) * integer_pow(u.v, nn - 1);
                double ddphi = (nn == 0 || nn == 1)
                                   ? 0.0
                                   : static_cast<double>(nn) * static_cast<double>(nn - 1) *
                                         integer_pow(u.v, nn - 2);
                j[i] = smooth_apply(phi, dphi, ddphi, u);
            } else {
                if (u.v <= 0.0)
                    throw DomainError("non-integer power of a non-positive base", ni);
                double lu = std::log(u.v);
                Jet lj = smooth_apply(lu, 1.0 / u.v, -1.0 / (u.v * u.v), u);
                Jet m = {p.v * lj.v, p.d1 * lj.v + p.v * lj.d1,
                         p.d2 * lj.v + 2.0 * p.d1 * lj.d1 + p.v * lj.d2};
                double ev = std::exp(m.v);
                j[i] = smooth_apply(ev, ev, ev, m);
            }
            break;
        }
        case NodeKind::Abs:
            if (j[n.a].v > 0.0) {
                j[i] = j[n.a];
            } else if (j[n.a].v < 0.0) {
                j[i] = {-j[n.a].v, -j[n.a].d1, -j[n.a].d2};
            } else {
                *kink = true;
                j[i] = {0.0, std::abs(j[n.a].d1), 0.0};
            }
            break;
        case NodeKind::Sqrt: {
            const Jet& u = j[n.a];
            if (u.v < 0.0) throw DomainError("sqrt of a negative value", ni);
            if (u.v == 0.0)
                throw NondifferentiableError("sqrt has unbounded slope at zero", ni);
            double r = std::sqrt(u.v);
            j[i] = smooth_apply(r, 0.5 / r, -0.25 / (u.v * r), u);
            break;
        }
        case NodeKind::Exp: {
            double ev = std::exp(j[n.a].v);
            j[i] = smooth_apply(ev, ev, ev, j[n.a]);
            break;
        }
        case NodeKind::Log: {
            const Jet& u = j[n.a];
            if (u.v <= 0.0) throw DomainError("log of a non-positive value", ni);
            j[i] = smooth_apply(std::log(u.v), 1.0 / u.v, -1.0 / (u.v * u.v), u);
            break;
        }
        case NodeKind::Sin:
            j[i] = smooth_apply(std::sin(j[n.a].v), std::cos(j[n.a].v), -std::sin(j[n.a].v),
                                j[n.a]);
            break;
        case NodeKind::Cos:
            j[i] = smooth_apply(std::cos(j[n.a].v), -std::sin(j[n.a].v), -std::cos(j[n.a].v),
                                j[n.a]);
            break;
        case NodeKind::Min2:
            if (j[n.a].v < j[n.b].v) {
                j[i] = j[n.a];
            } else if (j[n.a].v > j[n.b].v) {
                j[i] = j[n.b];
            } else {
                *kink = true;
                j[i] = {j[n.a].v, std::min(j[n.a].d1, j[n.b].d1), 0.0};
            }
            break;
        case NodeKind::Max2:
            if (j[n.a].v > j[n.b].v) {
                j[i] = j[n.a];
            } else if (j[n.a].v < j[n.b].v) {
                j[i] = j[n.b];
            } else {
                *kink = true;
                j[i] = {j[n.a].v, std::max(j[n.a].d1, j[n.b].d1), 0.0};
            }
            break;
        }
    }
    return j.back();
}

} // namespace

// ---------------------------------------------------------------------------
// Second-order directional derivative

SecondDeriv detail::richardson_limit_impl(double (*fn)(void*, double), void* ctx, double f0,
                                          double gd, const EstimatorOptions& opt) {
    // q(t) expands as f'' + c1 t + c2 t^2 + ... wherever higher one-sided
    // expansions exist, so two elimination levels are carried.
    std::vector<double> q, r1, r2;
    SecondDeriv out;
    out.status = D2Status::Failed;
    out.value = std::numeric_limits<double>::quiet_NaN();
    out.confidence = 0.0;

    const double r = opt.ratio;
    double t = opt.t0;
    for (int k = 0; k <= opt.steps; ++k, t *= r) {
        double ft = fn(ctx, t); // domain violations along the ray propagate
        double qk = 2.0 * (ft - f0 - t * gd) / (t * t);
        q.push_back(qk);

        double extrap = qk;
        if (k >= 1) {
            r1.push_back((q[static_cast<std::size_t>(k)] - r * q[static_cast<std::size_t>(k) - 1]) / (1.0 - r));
            extrap = r1.back();
        }
        if (k >= 2) {
            std::size_t m = r1.size() - 1;
            r2.push_back((r1[m] - r * r * r1[m - 1]) / (1.0 - r * r));
            extrap = r2.back();
        }
        out.table.push_back({t, qk, extrap});

        // Monotone divergence with a stable sign past the threshold reads
        // as an infinite second-order derivative.
        if (k >= 2) {
            double a = q[static_cast<std::size_t>(k) - 2], b = q[static_cast<std::size_t>(k) - 1], c = qk;
            bool same_sign = (a > 0 && b > 0 && c > 0) || (a < 0 && b < 0 && c < 0);
            if (same_sign && std::abs(c) > opt.diverge_threshold && std::abs(c) > std::abs(b) &&
                std::abs(b) > std::abs(a)) {
                out.status = D2Status::Nonfinite;
                out.value = c > 0 ? std::numeric_limits<double>::infinity()
                                  : -std::numeric_limits<double>::infinity();
                return out;
            }
        }

        if (r2.size() >= 3) {
            std::size_t m = r2.size() - 1;
            double hi = std::max({r2[m], r2[m - 1], r2[m - 2]});
            double lo = std::min({r2[m], r2[m - 1], r2[m - 2]});
            if (hi - lo <= opt.accept_tol) {
                out.status = D2Status::Estimated;
                out.value = r2[m];
                std::size_t n = q.size() - 1;
                double d1 = std::abs(q[n - 1] - q[n - 2]);
                double d2v = std::abs(q[n] - q[n - 1]);
                out.confidence = d1 > 0.0 ? d2v / d1 : 0.0;
                return out;
            }
        }
    }
    return out; // Failed: neither converged nor monotonically divergent
}

SecondDeriv second_dir_deriv_limit(const Expr& e, std::span<const double> x,
                                   std::span<const double> d, const EstimatorOptions& opt) {
    if (x.size() != d.size() || static_cast<int>(x.size()) != e.dim())
        throw FormatError("point/direction dimension mismatch");
    const double f0 = e.eval(x);
    const double gd = eval_dual(e, x, d).deriv;
    std::vector<double> xs(x.begin(), x.end());
    auto ray = [&](double t) {
        for (std::size_t i = 0; i < xs.size(); ++i) xs[i] = x[i] + t * d[i];
        return e.eval(xs);
    };
    return richardson_limit(ray, f0, gd, opt);
}

SecondDeriv second_dir_deriv(const Expr& e, std::span<const double> x,
                             std::span<const double> d, const EstimatorOptions& opt) {
    if (x.size() != d.size() || static_cast<int>(x.size()) != e.dim())
        throw FormatError("point/direction dimension mismatch");

    bool zero_dir = std::all_of(d.begin(), d.end(), [](double v) { return v == 0.0; });
    if (zero_dir) return {0.0, D2Status::Exact, 0.0, {}};

    bool kink = false;
    Jet jet = eval_jet(e, x, d, &kink);
    if (!kink) return {jet.d2, D2Status::Exact, 0.0, {}};

    return second_dir_deriv_limit(e, x, d, opt);
}

DerivativeBundle derivative_bundle(const Problem& p, std::span<const double> x,
                                   std::span<const double> d, const EstimatorOptions& opt) {
    DerivativeBundle b;
    b.x.assign(x.begin(), x.end());
    b.d.assign(d.begin(), d.end());
    for (const Expr& f : p.objectives) {
        b.grads_f.push_back(gradient(f, x));
        b.d2f.push_back(second_dir_deriv(f, x, d, opt));
    }
    for (const Expr& g : p.constraints) {
        b.grads_g.push_back(gradient(g, x));
        b.d2g.push_back(second_dir_deriv(g, x, d, opt));
    }
    return b;
}

} // namespace mokkt
