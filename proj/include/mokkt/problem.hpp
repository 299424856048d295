#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mokkt/expr.hpp"

namespace mokkt {

// Inequality-constrained multiobjective program
//   minimize f(x)  subject to  g(x) <= 0 componentwise
// over the given box, f: R^s -> R^n, g: R^s -> R^m.
class Problem {
public:
    std::string id;
    std::vector<std::string> vars;
    std::vector<Expr> objectives;
    std::vector<Expr> constraints;
    std::vector<std::array<double, 2>> box;    // per-variable [lo, hi]
    std::optional<std::vector<double>> point;  // candidate under scrutiny

    int dim() const { return static_cast<int>(vars.size()); }
    int num_objectives() const { return static_cast<int>(objectives.size()); }
    int num_constraints() const { return static_cast<int>(constraints.size()); }

    std::vector<double> eval_objectives(std::span<const double> x) const;
    std::vector<double> eval_constraints(std::span<const double> x) const;

    bool inside_box(std::span<const double> x) const;
    double box_diagonal() const;

    // Dimensional consistency, box lo < hi, point inside box.
    void validate() const;
};

// JSON problem-file schema (field names are part of the CLI contract):
//   { "vars": [...], "objectives": [...], "constraints": [...],
//     "point": [...]?, "box": [[lo,hi],...] }
Problem load_problem_file(const std::string& path);
Problem problem_from_json_text(const std::string& text);
std::string problem_to_json_text(const Problem& p);

} // namespace mokkt
