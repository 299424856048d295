#pragma once

#include <limits>
#include <vector>

#include "mokkt/errors.hpp"

namespace mokkt {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Dense linear program, desk scale (<= 64 variables, <= 256 rows):
//   maximize objective . x
//   subject to eq_rows x = eq_rhs, ge_rows x >= ge_rhs, lower <= x <= upper
// +/-infinity bounds are allowed.
struct LinearProgram {
    int num_vars = 0;
    std::vector<double> objective;
    std::vector<std::vector<double>> eq_rows;
    std::vector<double> eq_rhs;
    std::vector<std::vector<double>> ge_rows;
    std::vector<double> ge_rhs;
    std::vector<double> lower;
    std::vector<double> upper;

    explicit LinearProgram(int n = 0) { resize(n); }

    void resize(int n) {
        num_vars = n;
        objective.assign(static_cast<std::size_t>(n), 0.0);
        lower.assign(static_cast<std::size_t>(n), -kInf);
        upper.assign(static_cast<std::size_t>(n), kInf);
    }

    void add_equality(std::vector<double> row, double rhs) {
        eq_rows.push_back(std::move(row));
        eq_rhs.push_back(rhs);
    }
    void add_inequality_ge(std::vector<double> row, double rhs) {
        ge_rows.push_back(std::move(row));
        ge_rhs.push_back(rhs);
    }
};

enum class LpStatus { Optimal, Infeasible, Unbounded };

struct LpSolution {
    LpStatus status;
    std::vector<double> x; // populated when Optimal
    double value = 0.0;
    int iterations = 0;
};

// Two-phase dense simplex. Phase I drives artificial variables to zero or
// proves infeasibility; both phases pivot under Bland's rule, so termination
// is guaranteed on the degenerate LPs that dominate this library's workload.
// Optimal solutions satisfy every constraint within 1e-9 (+ rhs scale);
// a basis too ill-conditioned to meet that is reported as an LpError.
LpSolution solve(const LinearProgram& lp);

} // namespace mokkt
