#include "mokkt/gconvex.hpp"

#include <algorithm>
#include <cmath>
#include <random>

#include "mokkt/calculus.hpp"
#include "mokkt/cones.hpp"

namespace mokkt {

const char* probe_property_name(ProbeProperty p) {
    switch (p) {
    case ProbeProperty::QuasiconvexAt: return "quasiconvex-at";
    case ProbeProperty::QuasiconvexOn: return "quasiconvex";
    case ProbeProperty::Pseudoconvex: return "pseudoconvex";
    case ProbeProperty::TwoPseudoconvex: return "2-pseudoconvex";
    case ProbeProperty::SemistrictQuasiconvex: return "semistrict-quasiconvex";
    case ProbeProperty::Problem2KtPseudoconvex: return "problem-2kt-pseudoconvex";
    }
    return "?";
}

namespace {

std::vector<double> uniform_point(std::mt19937_64& rng, const BoxRanges& box) {
    std::vector<double> x(box.size());
    for (std::size_t i = 0; i < box.size(); ++i) {
        std::uniform_real_distribution<double> dist(box[i][0], box[i][1]);
        x[i] = dist(rng);
    }
    return x;
}

// Hotspot mixture for the probes whose antecedents involve a vanishing
// gradient product: exact zeros, box corners, midpoints and +/-1 are where
// stationary structure of hand-written problems concentrates, and uniform
// sampling alone essentially never lands on the measure-zero sets where the
// second-order branch activates.
std::vector<double> special_point(std::mt19937_64& rng, const BoxRanges& box) {
    std::vector<double> x(box.size());
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (std::size_t i = 0; i < box.size(); ++i) {
        double lo = box[i][0], hi = box[i][1];
        if (u01(rng) < 0.5 && lo <= 0.0 && 0.0 <= hi) {
            x[i] = 0.0;
            continue;
        }
        std::vector<double> candidates{lo, hi, 0.5 * (lo + hi)};
        if (lo <= 1.0 && 1.0 <= hi) candidates.push_back(1.0);
        if (lo <= -1.0 && -1.0 <= hi) candidates.push_back(-1.0);
        std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
        x[i] = candidates[pick(rng)];
    }
    return x;
}

double dot(std::span<const double> a, std::span<const double> b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

std::vector<double> minus(std::span<const double> a, std::span<const double> b) {
    std::vector<double> d(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d[i] = a[i] - b[i];
    return d;
}

std::vector<double> lerp(std::span<const double> x, std::span<const double> y, double t) {
    std::vector<double> z(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) z[i] = (1.0 - t) * x[i] + t * y[i];
    return z;
}

} // namespace

ProbeResult probe_quasiconvex(const Expr& e, const BoxRanges& box, long trials,
                              std::uint64_t seed, const Tolerances& tol) {
    ProbeResult r;
    r.property = ProbeProperty::QuasiconvexOn;
    r.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (long k = 0; k < trials; ++k) {
        ++r.trials;
        std::vector<double> x = uniform_point(rng, box);
        std::vector<double> y = uniform_point(rng, box);
        double t = u01(rng);
        try {
            double fx = e.eval(x), fy = e.eval(y);
            double fz = e.eval(lerp(x, y, t));
            ++r.accepted;
            if (fz > std::max(fx, fy) + tol.probe_margin) {
                r.counterexample = ProbeWitness{std::move(x), std::move(y), t, -1, false, -1,
                                                {{"f_x", fx}, {"f_y", fy}, {"f_z", fz}}};
                return r;
            }
        } catch (const DomainError&) {
            ++r.skipped_domain;
        }
    }
    return r;
}

ProbeResult probe_quasiconvex_at(const Expr& e, std::span<const double> x0,
                                 const BoxRanges& box, long trials, std::uint64_t seed,
                                 const Tolerances& tol) {
    ProbeResult r;
    r.property = ProbeProperty::QuasiconvexAt;
    r.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    double fx;
    try {
        fx = e.eval(x0);
    } catch (const DomainError&) {
        ++r.skipped_domain;
        return r;
    }
    std::vector<double> x(x0.begin(), x0.end());
    for (long k = 0; k < trials; ++k) {
        ++r.trials;
        std::vector<double> y = uniform_point(rng, box);
        double t = u01(rng);
        try {
            double fy = e.eval(y);
            if (fy > fx) continue;
            ++r.accepted;
            double fz = e.eval(lerp(x, y, t));
            if (fz > fx + tol.probe_margin) {
                r.counterexample = ProbeWitness{x, std::move(y), t, -1, false, -1,
                                                {{"f_x", fx}, {"f_y", fy}, {"f_z", fz}}};
                return r;
            }
        } catch (const DomainError&) {
            ++r.skipped_domain;
        }
    }
    return r;
}

ProbeResult probe_pseudoconvex(const Expr& e, const BoxRanges& box, long trials,
                               std::uint64_t seed, const Tolerances& tol) {
    ProbeResult r;
    r.property = ProbeProperty::Pseudoconvex;
    r.seed = seed;
    std::mt19937_64 rng(seed);
    for (long k = 0; k < trials; ++k) {
        ++r.trials;
        std::vector<double> x = (k % 4 == 0) ? special_point(rng, box) : uniform_point(rng, box);
        std::vector<double> y = uniform_point(rng, box);
        try {
            double fx = e.eval(x), fy = e.eval(y);
            if (!(fy < fx - tol.probe_margin)) continue;
            ++r.accepted;
            std::vector<double> grad = gradient(e, x);
            double gd = dot(grad, minus(y, x));
            if (gd >= -tol.probe_margin) {
                r.counterexample = ProbeWitness{std::move(x), std::move(y), 0.0, -1, false, -1,
                                                {{"f_x", fx}, {"f_y", fy}, {"grad_dot", gd}}};
                return r;
            }
        } catch (const DomainError&) {
            ++r.skipped_domain;
        } catch (const NondifferentiableError&) {
            ++r.skipped_derivative;
        }
    }
    return r;
}

ProbeResult probe_2pseudoconvex(const Expr& e, const BoxRanges& box, long trials,
                                std::uint64_t seed, const Tolerances& tol) {
    ProbeResult r;
    r.property = ProbeProperty::TwoPseudoconvex;
    r.seed = seed;
    std::mt19937_64 rng(seed);
    for (long k = 0; k < trials; ++k) {
        ++r.trials;
        std::vector<double> x = (k % 4 == 0) ? special_point(rng, box) : uniform_point(rng, box);
        std::vector<double> y = uniform_point(rng, box);
        try {
            double fx = e.eval(x), fy = e.eval(y);
            if (!(fy < fx - tol.probe_margin)) continue;
            ++r.accepted;
            std::vector<double> grad = gradient(e, x);
            std::vector<double> d = minus(y, x);
            double gd = dot(grad, d);
            if (gd > tol.probe_margin) {
                r.counterexample = ProbeWitness{std::move(x), std::move(y), 0.0, -1, false, 1,
                                                {{"f_x", fx}, {"f_y", fy}, {"grad_dot", gd}}};
                return r;
            }
            if (std::abs(gd) <= tol.probe_margin) {
                SecondDeriv d2 = second_dir_deriv(e, x, d, tol.estimator);
                if (d2.status == D2Status::Failed) {
                    ++r.skipped_derivative;
                    continue;
                }
                if (d2.value >= -tol.probe_margin) {
                    r.counterexample =
                        ProbeWitness{std::move(x), std::move(y), 0.0, -1, false, 2,
                                     {{"f_x", fx}, {"f_y", fy}, {"grad_dot", gd},
                                      {"second_deriv", d2.value}}};
                    return r;
                }
            }
        } catch (const DomainError&) {
            ++r.skipped_domain;
        } catch (const NondifferentiableError&) {
            ++r.skipped_derivative;
        }
    }
    return r;
}

ProbeResult probe_semistrict_quasiconvex(const Expr& e, const BoxRanges& box, long trials,
                                         std::uint64_t seed, const Tolerances& tol) {
    ProbeResult r;
    r.property = ProbeProperty::SemistrictQuasiconvex;
    r.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (long k = 0; k < trials; ++k) {
        ++r.trials;
        std::vector<double> x = uniform_point(rng, box);
        std::vector<double> y = uniform_point(rng, box);
        double t = u01(rng);
        if (t == 0.0) continue;
        try {
            double fx = e.eval(x), fy = e.eval(y);
            if (!(fy < fx - tol.probe_margin)) continue;
            ++r.accepted;
            double fz = e.eval(lerp(x, y, t));
            if (fz >= fx - tol.probe_margin) {
                r.counterexample = ProbeWitness{std::move(x), std::move(y), t, -1, false, -1,
                                                {{"f_x", fx}, {"f_y", fy}, {"f_z", fz}}};
                return r;
            }
        } catch (const DomainError&) {
            ++r.skipped_domain;
        }
    }
    return r;
}

namespace {

bool feasible_exact(const Problem& p, std::span<const double> x) {
    for (const Expr& g : p.constraints)
        if (g.eval(x) > 0.0) return false;
    return true;
}

bool feasible_tol(const Problem& p, std::span<const double> x, double tol_act) {
    for (const Expr& g : p.constraints) {
        double v = g.eval(x);
        if (v > tol_act * (1.0 + std::abs(v))) return false;
    }
    return true;
}

// Dominated pareto-order pair: f(y) <= f(x) componentwise, strict (by the
// probe margin) in at least one component.
bool dominated_pair(const std::vector<double>& fx, const std::vector<double>& fy,
                    double margin) {
    bool strict = false;
    for (std::size_t i = 0; i < fx.size(); ++i) {
        if (fy[i] > fx[i]) return false;
        if (fy[i] < fx[i] - margin) strict = true;
    }
    return strict;
}

} // namespace

ProbeResult probe_problem_2kt_pseudoconvex(const Problem& p, long trials, std::uint64_t seed,
                                           const Tolerances& tol) {
    ProbeResult r;
    r.property = ProbeProperty::Problem2KtPseudoconvex;
    r.seed = seed;
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(-1.0, 1.0);
    const double diag = p.box_diagonal();

    for (long k = 0; k < trials; ++k) {
        ++r.trials;
        std::vector<double> x = (k % 4 == 0) ? special_point(rng, p.box) : uniform_point(rng, p.box);
        try {
            if (!feasible_tol(p, x, tol.active)) continue;
            std::vector<double> fx = p.eval_objectives(x);

            // Dominated feasible y: one whole-box draw, then shrinking balls
            // around x to enrich the acceptance rate.
            std::vector<double> y;
            std::vector<double> fy;
            bool found = false;
            for (int attempt = 0; attempt < 8 && !found; ++attempt) {
                std::vector<double> cand;
                if (attempt == 0) {
                    cand = uniform_point(rng, p.box);
                } else {
                    double radius = diag / static_cast<double>(1 << attempt);
                    cand.resize(x.size());
                    for (std::size_t i = 0; i < x.size(); ++i) cand[i] = x[i] + radius * unit(rng);
                    if (!p.inside_box(cand)) continue;
                }
                if (!feasible_exact(p, cand)) continue;
                std::vector<double> fc = p.eval_objectives(cand);
                if (dominated_pair(fx, fc, tol.probe_margin)) {
                    y = std::move(cand);
                    fy = std::move(fc);
                    found = true;
                }
            }
            if (!found) continue;
            ++r.accepted;

            std::vector<int> active = active_set(p, x, tol.active);
            std::vector<double> step = minus(y, x);
            double norm = std::sqrt(dot(step, step));
            std::vector<double> u(step.size());
            for (std::size_t i = 0; i < u.size(); ++i) u[i] = step[i] / norm;

            auto witness = [&](int component, bool on_constraint, int branch,
                              std::map<std::string, double> values) {
                values["f_x_first"] = fx[0];
                values["f_y_first"] = fy[0];
                r.counterexample =
                    ProbeWitness{x, y, 0.0, component, on_constraint, branch, std::move(values)};
            };

            for (int i = 0; i < p.num_objectives(); ++i) {
                std::vector<double> grad = gradient(p.objectives[static_cast<std::size_t>(i)], x);
                double raw = dot(grad, step);
                if (raw > tol.probe_margin) {
                    witness(i, false, 1, {{"grad_dot", raw}});
                    return r;
                }
                double gu = dot(grad, u);
                if (std::abs(gu) <= tol.probe_margin) {
                    SecondDeriv d2 = second_dir_deriv(p.objectives[static_cast<std::size_t>(i)], x, u, tol.estimator);
                    if (d2.status == D2Status::Failed) {
                        ++r.skipped_derivative;
                        continue;
                    }
                    if (d2.value >= -tol.probe_margin) {
                        witness(i, false, 2, {{"grad_dot_unit", gu}, {"second_deriv", d2.value}});
                        return r;
                    }
                }
            }
            for (int j : active) {
                std::vector<double> grad = gradient(p.constraints[static_cast<std::size_t>(j)], x);
                double raw = dot(grad, step);
                if (raw > tol.probe_margin) {
                    witness(j, true, 3, {{"grad_dot", raw}});
                    return r;
                }
                double gu = dot(grad, u);
                if (std::abs(gu) <= tol.probe_margin) {
                    SecondDeriv d2 = second_dir_deriv(p.constraints[static_cast<std::size_t>(j)], x, u, tol.estimator);
                    if (d2.status == D2Status::Failed) {
                        ++r.skipped_derivative;
                        continue;
                    }
                    if (d2.value > tol.probe_margin) {
                        witness(j, true, 4, {{"grad_dot_unit", gu}, {"second_deriv", d2.value}});
                        return r;
                    }
                }
            }
        } catch (const DomainError&) {
            ++r.skipped_domain;
        } catch (const NondifferentiableError&) {
            ++r.skipped_derivative;
        }
    }
    return r;
}

// ---------------------------------------------------------------------------
// Witness re-verification

bool reverify(const Expr& e, ProbeProperty property, const ProbeWitness& w,
              const Tolerances& tol) {
    const double m = tol.probe_margin;
    switch (property) {
    case ProbeProperty::QuasiconvexOn: {
        double fx = e.eval(w.x), fy = e.eval(w.y);
        double fz = e.eval(lerp(w.x, w.y, w.t));
        return fz > std::max(fx, fy) + m;
    }
    case ProbeProperty::QuasiconvexAt: {
        double fx = e.eval(w.x), fy = e.eval(w.y);
        double fz = e.eval(lerp(w.x, w.y, w.t));
        return fy <= fx && fz > fx + m;
    }
    case ProbeProperty::Pseudoconvex: {
        double fx = e.eval(w.x), fy = e.eval(w.y);
        if (!(fy < fx - m)) return false;
        double gd = dot(gradient(e, w.x), minus(w.y, w.x));
        return gd >= -m;
    }
    case ProbeProperty::TwoPseudoconvex: {
        double fx = e.eval(w.x), fy = e.eval(w.y);
        if (!(fy < fx - m)) return false;
        std::vector<double> d = minus(w.y, w.x);
        double gd = dot(gradient(e, w.x), d);
        if (w.branch == 1) return gd > m;
        if (std::abs(gd) > m) return false;
        SecondDeriv d2 = second_dir_deriv(e, w.x, d, tol.estimator);
        return d2.status != D2Status::Failed && d2.value >= -m;
    }
    case ProbeProperty::SemistrictQuasiconvex: {
        double fx = e.eval(w.x), fy = e.eval(w.y);
        if (!(fy < fx - m)) return false;
        double fz = e.eval(lerp(w.x, w.y, w.t));
        return fz >= fx - m;
    }
    default:
        throw PreconditionError("witness property requires reverify_problem");
    }
}

bool reverify_problem(const Problem& p, const ProbeWitness& w, const Tolerances& tol) {
    const double m = tol.probe_margin;
    if (!feasible_exact(p, w.y) || !feasible_tol(p, w.x, tol.active)) return false;
    std::vector<double> fx = p.eval_objectives(w.x);
    std::vector<double> fy = p.eval_objectives(w.y);
    if (!dominated_pair(fx, fy, m)) return false;

    std::vector<double> step = minus(w.y, w.x);
    double norm = std::sqrt(dot(step, step));
    std::vector<double> u(step.size());
    for (std::size_t i = 0; i < u.size(); ++i) u[i] = step[i] / norm;

    const Expr& fn = w.on_constraint ? p.constraints[static_cast<std::size_t>(w.component)]
                                     : p.objectives[static_cast<std::size_t>(w.component)];
    std::vector<double> grad = gradient(fn, w.x);
    switch (w.branch) {
    case 1:
    case 3:
        return dot(grad, step) > m;
    case 2: {
        if (std::abs(dot(grad, u)) > m) return false;
        SecondDeriv d2 = second_dir_deriv(fn, w.x, u, tol.estimator);
        return d2.status != D2Status::Failed && d2.value >= -m;
    }
    case 4: {
        if (std::abs(dot(grad, u)) > m) return false;
        SecondDeriv d2 = second_dir_deriv(fn, w.x, u, tol.estimator);
        return d2.status != D2Status::Failed && d2.value > m;
    }
    default:
        return false;
    }
}

} // namespace mokkt
