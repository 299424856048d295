#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace mokkt {

// Base class for everything this library throws.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Syntax error while parsing an expression; `offset` is the byte position in
// the source text where the problem was detected.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t offset)
        : Error(msg + " (at byte " + std::to_string(offset) + ")"), offset(offset) {}
    std::size_t offset;
};

// Evaluation hit a point outside a function's domain (log of a non-positive
// value, division by zero, 0^negative, sqrt of a negative). `node` is the
// index of the offending AST node.
class DomainError : public Error {
public:
    DomainError(const std::string& msg, int node) : Error(msg), node(node) {}
    int node;
};

// A derivative was requested where it does not exist (abs/min2/max2 sitting
// at a kink whose one-sided slopes disagree, sqrt at zero).
class NondifferentiableError : public Error {
public:
    NondifferentiableError(const std::string& msg, int node) : Error(msg), node(node) {}
    int node;
};

// A point violated g(x) <= 0 beyond tolerance. Violations carry the 0-based
// constraint index and the constraint value.
class InfeasiblePointError : public Error {
public:
    InfeasiblePointError(const std::string& msg, std::vector<std::pair<int, double>> violations)
        : Error(msg), violations(std::move(violations)) {}
    std::vector<std::pair<int, double>> violations;
};

// An operation's stated precondition does not hold for the given arguments.
class PreconditionError : public Error {
public:
    using Error::Error;
};

// LP solver failures: size limits or a numerically singular basis.
class LpError : public Error {
public:
    using Error::Error;
};

// A grid scan would exceed the evaluation budget.
class BudgetError : public Error {
public:
    using Error::Error;
};

// Malformed problem file or inconsistent problem data.
class FormatError : public Error {
public:
    using Error::Error;
};

} // namespace mokkt
