#pragma once

#include <memory>
#include <span>
#include <type_traits>
#include <string>
#include <vector>

#include "mokkt/expr.hpp"

namespace mokkt {

// Value and one-sided directional derivative of t -> e(x + t d) at t = 0+.
struct Dual {
    double value;
    double deriv;
};

// Forward pass seeded with direction d. abs/min2/max2 ties are resolved
// one-sidedly (|u| contributes |u'|, min contributes min(u', v'), ...), which
// is exact for the t -> 0+ limit. When such a tie was broken, *kink_node
// receives the first node index involved; -1 means the pass was classically
// smooth along the ray.
Dual eval_dual(const Expr& e, std::span<const double> x, std::span<const double> d,
               int* kink_node = nullptr);

// One-sided directional derivative e'(x; d) = lim_{t->0+} [e(x+td)-e(x)]/t.
double directional_derivative(const Expr& e, std::span<const double> x,
                              std::span<const double> d);

// Two-sided gradient. Each component is computed by forward passes along the
// +/- basis directions; a kink is accepted only when the two one-sided slopes
// agree exactly (e.g. x*abs(x) at 0), otherwise the point is reported as
// nondifferentiable.
std::vector<double> gradient(const Expr& e, std::span<const double> x);

enum class D2Status { Exact, Estimated, Nonfinite, Failed };

const char* d2_status_name(D2Status s);

// One row of the limit-quotient convergence table.
struct QSample {
    double t;
    double q;
    double extrapolated; // best Richardson value available at this step
};

struct SecondDeriv {
    double value;      // +/-inf for Nonfinite, NaN for Failed
    D2Status status;
    double confidence; // observed convergence ratio of the raw quotients (Estimated only)
    std::vector<QSample> table;
};

// Limit-estimator schedule and decision thresholds. The definition of the
// second-order directional derivative gives no convergence rate, so these
// are artifact-level choices and are echoed in every report.
struct EstimatorOptions {
    double t0 = 1e-2;
    double ratio = 0.5;
    int steps = 20;
    double accept_tol = 1e-7;          // three consecutive extrapolants this close
    double diverge_threshold = 1e12;   // monotone growth past this => +/-inf
};

// Second-order directional derivative
//   e''(x, d) = lim_{t->0+} 2 t^-2 [e(x+td) - e(x) - t grad(e)(x).d]
// valued in the extended reals. Requires gradient(e, x) to exist.
//
// Path A (analytic): when no abs/min2/max2 argument sits exactly at a tie at
// t = 0 along the ray, the expression is C^2 there and the order-2 jet
// coefficient is returned with status Exact.
// Path B (limit estimator): evaluates q(t) on the geometric schedule
// t = t0 * ratio^k and Richardson-extrapolates; returns Estimated with the
// observed convergence ratio, Nonfinite on monotone divergence past the
// threshold, Failed otherwise.
SecondDeriv second_dir_deriv(const Expr& e, std::span<const double> x,
                             std::span<const double> d, const EstimatorOptions& opt = {});

// Path B alone, regardless of smoothness (the Path A / Path B agreement
// checks need both routes on the same input).
SecondDeriv second_dir_deriv_limit(const Expr& e, std::span<const double> x,
                                   std::span<const double> d, const EstimatorOptions& opt = {});

// The raw limit machinery over an arbitrary ray evaluation t -> f(x + t d).
template <class F>
SecondDeriv richardson_limit(F&& ray_value, double f0, double gd, const EstimatorOptions& opt);

namespace detail {
SecondDeriv richardson_limit_impl(double (*fn)(void*, double), void* ctx, double f0, double gd,
                                  const EstimatorOptions& opt);
}

template <class F>
SecondDeriv richardson_limit(F&& ray_value, double f0, double gd, const EstimatorOptions& opt) {
    using Fn = std::remove_reference_t<F>;
    auto thunk = [](void* ctx, double t) -> double { return (*static_cast<Fn*>(ctx))(t); };
    return detail::richardson_limit_impl(thunk, const_cast<void*>(static_cast<const void*>(std::addressof(ray_value))), f0, gd, opt);
}

class Problem; // problem.hpp

// Gradients of every objective and constraint plus the second-order
// directional derivatives at (x, d).
struct DerivativeBundle {
    std::vector<double> x, d;
    std::vector<std::vector<double>> grads_f; // n x s
    std::vector<std::vector<double>> grads_g; // m x s
    std::vector<SecondDeriv> d2f;             // n entries
    std::vector<SecondDeriv> d2g;             // m entries
};

DerivativeBundle derivative_bundle(const Problem& p, std::span<const double> x,
                                   std::span<const double> d, const EstimatorOptions& opt = {});

} // namespace mokkt
