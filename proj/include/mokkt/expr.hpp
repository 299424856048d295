#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mokkt/errors.hpp"

namespace mokkt {

enum class NodeKind : std::uint8_t {
    Constant,
    Var,
    Neg,
    Add,
    Sub,
    Mul,
    Div,
    Pow,
    Abs,
    Sqrt,
    Exp,
    Log,
    Sin,
    Cos,
    Min2,
    Max2,
};

bool is_unary(NodeKind k);
bool is_binary(NodeKind k);
const char* node_name(NodeKind k);

// One AST node. Children are indices into the owning Expr's node arena and
// always precede their parent, so arena order is a valid evaluation order.
struct Node {
    NodeKind kind;
    double value = 0.0; // Constant payload
    int var = -1;       // Var payload
    int a = -1, b = -1; // children
    int src = -1;       // byte offset in the source text, -1 when built programmatically
};

// Immutable scalar expression over named variables x -> e(x), x in R^s.
// Safe to share and evaluate from multiple threads once constructed.
class Expr {
public:
    Expr() = default;

    // Recursive-descent parse of the expression grammar:
    //   expr   := term {("+"|"-") term}
    //   term   := factor {("*"|"/") factor}
    //   factor := ["-"] power
    //   power  := atom ["^" factor]
    //   atom   := number | ident | ident "(" expr {"," expr} ")" | "(" expr ")"
    // `^` binds tighter than unary minus and is right-associative. No implicit
    // multiplication. Variable names must be distinct and must not shadow the
    // builtin function names.
    static Expr parse(std::string_view text, std::vector<std::string> vars);

    // Programmatic builders (used by tests and generators). Both operands of a
    // binary builder must share the same variable list.
    static Expr constant(double v, std::vector<std::string> vars);
    static Expr variable(int index, std::vector<std::string> vars);
    static Expr unary(NodeKind k, const Expr& e);
    static Expr binary(NodeKind k, const Expr& lhs, const Expr& rhs);

    double eval(std::span<const double> x) const;

    // Pretty-print with minimal parentheses; parse(str()) reproduces the tree
    // node for node for any parser-produced expression.
    std::string str() const;

    const std::vector<std::string>& vars() const { return vars_; }
    int dim() const { return static_cast<int>(vars_.size()); }

    int root() const { return static_cast<int>(nodes_.size()) - 1; }
    int size() const { return static_cast<int>(nodes_.size()); }
    const Node& node(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
    const std::vector<Node>& nodes() const { return nodes_; }

    // Structural equality: same tree shape, kinds, variable indices, and
    // bit-identical constants. Variable names must match as well.
    friend bool operator==(const Expr& lhs, const Expr& rhs);

private:
    friend class Parser;
    int push(Node n);

    std::vector<Node> nodes_;
    std::vector<std::string> vars_;
};

// Free-function spellings used throughout the library.
inline Expr parse(std::string_view text, std::vector<std::string> vars) {
    return Expr::parse(text, std::move(vars));
}
inline double eval(const Expr& e, std::span<const double> x) { return e.eval(x); }

// Exact integer power by repeated multiplication; p may be negative (x != 0).
double integer_pow(double x, long long p);

// True when v holds an integral value that fits the exact-power fast path.
bool is_integral_value(double v);

} // namespace mokkt
