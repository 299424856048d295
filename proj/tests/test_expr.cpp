#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mokkt/expr.hpp"
#include "support/oracles.hpp"

using namespace mokkt;
namespace ts = mokkt::testsupport;

namespace {

const std::vector<std::string> XY = {"x1", "x2"};
const std::vector<std::string> X = {"x1"};

Expr c(double v, const std::vector<std::string>& vars = XY) { return Expr::constant(v, vars); }
Expr v(int i, const std::vector<std::string>& vars = XY) { return Expr::variable(i, vars); }

} // namespace

TEST_CASE("parse produces the grammar-forced shapes") {
    Expr sum_sq = Expr::parse("x1^2 + x2^2", XY);
    Expr expected = Expr::binary(NodeKind::Add, Expr::binary(NodeKind::Pow, v(0), c(2)),
                                 Expr::binary(NodeKind::Pow, v(1), c(2)));
    CHECK(sum_sq == expected);

    // unary minus binds looser than ^: -(x1^2), not (-x1)^2
    Expr neg_sq = Expr::parse("-x1^2", X);
    Expr expected_neg =
        Expr::unary(NodeKind::Neg, Expr::binary(NodeKind::Pow, v(0, X), c(2, X)));
    CHECK(neg_sq == expected_neg);
    CHECK(neg_sq.eval(std::vector<double>{2.0}) == -4.0);

    Expr signed_sq = Expr::parse("x1*abs(x1)", X);
    Expr expected_ss = Expr::binary(NodeKind::Mul, v(0, X), Expr::unary(NodeKind::Abs, v(0, X)));
    CHECK(signed_sq == expected_ss);
}

TEST_CASE("operator precedence and associativity") {
    CHECK(Expr::parse("2^3^2", X).eval(std::vector<double>{0.0}) == 512.0); // right-assoc
    CHECK(Expr::parse("2^-1", X).eval(std::vector<double>{0.0}) == 0.5);
    CHECK(Expr::parse("6/3/2", X).eval(std::vector<double>{0.0}) == 1.0);
    CHECK(Expr::parse("1-2-3", X).eval(std::vector<double>{0.0}) == -4.0);
    CHECK(Expr::parse("-x1*x1", X).eval(std::vector<double>{3.0}) == -9.0); // (-x1)*x1
    CHECK(Expr::parse("min2(1, max2(x1, 0))", X).eval(std::vector<double>{0.4}) == 0.4);
}

TEST_CASE("parse errors carry byte offsets") {
    CHECK_THROWS_AS(Expr::parse("x1 +", X), ParseError);
    CHECK_THROWS_AS(Expr::parse("x3", XY), ParseError);         // unknown identifier
    CHECK_THROWS_AS(Expr::parse("abs(x1, x2)", XY), ParseError); // wrong arity
    CHECK_THROWS_AS(Expr::parse("abs x1", X), ParseError);       // function without call
    CHECK_THROWS_AS(Expr::parse("x1 x2", XY), ParseError);       // no implicit multiplication
    CHECK_THROWS_AS(Expr::parse("2 * (x1", X), ParseError);
    try {
        Expr::parse("x1 + $", X);
        CHECK(false);
    } catch (const ParseError& e) {
        CHECK(e.offset == 5);
    }
    CHECK_THROWS_AS(Expr::parse("x1", {}), FormatError);           // empty vars
    CHECK_THROWS_AS(Expr::parse("x1", {"x1", "x1"}), FormatError); // duplicate names
    CHECK_THROWS_AS(Expr::parse("x1", {"x1", "abs"}), FormatError); // builtin shadowed
}

TEST_CASE("eval matches the worked values") {
    CHECK(Expr::parse("x1^2+x2^2", XY).eval(std::vector<double>{0.0, 0.0}) == 0.0);
    CHECK(Expr::parse("-x1^2-x2^2", XY).eval(std::vector<double>{1.0, 1.0}) == -2.0);
    CHECK_THROWS_AS(Expr::parse("log(x1)", X).eval(std::vector<double>{-1.0}), DomainError);
}

TEST_CASE("domain violations are errors, not NaN") {
    CHECK_THROWS_AS(Expr::parse("1/x1", X).eval(std::vector<double>{0.0}), DomainError);
    CHECK_THROWS_AS(Expr::parse("x1^(0-0.5)", X).eval(std::vector<double>{0.0}), DomainError);
    CHECK_THROWS_AS(Expr::parse("sqrt(x1)", X).eval(std::vector<double>{-4.0}), DomainError);
    CHECK_THROWS_AS(Expr::parse("(0-2)^0.5", X).eval(std::vector<double>{1.0}), DomainError);
    // integer exponents work for any base sign
    CHECK(Expr::parse("(0-2)^3", X).eval(std::vector<double>{0.0}) == -8.0);
    CHECK(Expr::parse("x1^0", X).eval(std::vector<double>{0.0}) == 1.0);
}

namespace {

// Random parser-representable AST: all node kinds, nonnegative finite
// constants (the parser never produces negative literals).
Expr random_ast(std::mt19937_64& rng, const std::vector<std::string>& vars, int depth) {
    std::uniform_real_distribution<double> cval(0.0, 8.0);
    std::uniform_int_distribution<int> vpick(0, static_cast<int>(vars.size()) - 1);
    std::uniform_int_distribution<int> leaf(0, 1), kind(0, 13);
    if (depth == 0 || kind(rng) < 3)
        return leaf(rng) ? Expr::constant(cval(rng), vars)
                         : Expr::variable(vpick(rng), vars);
    switch (kind(rng)) {
    case 0: return Expr::unary(NodeKind::Neg, random_ast(rng, vars, depth - 1));
    case 1: return Expr::unary(NodeKind::Abs, random_ast(rng, vars, depth - 1));
    case 2: return Expr::unary(NodeKind::Sqrt, random_ast(rng, vars, depth - 1));
    case 3: return Expr::unary(NodeKind::Exp, random_ast(rng, vars, depth - 1));
    case 4: return Expr::unary(NodeKind::Log, random_ast(rng, vars, depth - 1));
    case 5: return Expr::unary(NodeKind::Sin, random_ast(rng, vars, depth - 1));
    case 6: return Expr::unary(NodeKind::Cos, random_ast(rng, vars, depth - 1));
    case 7:
        return Expr::binary(NodeKind::Add, random_ast(rng, vars, depth - 1),
                            random_ast(rng, vars, depth - 1));
    case 8:
        return Expr::binary(NodeKind::Sub, random_ast(rng, vars, depth - 1),
                            random_ast(rng, vars, depth - 1));
    case 9:
        return Expr::binary(NodeKind::Mul, random_ast(rng, vars, depth - 1),
                            random_ast(rng, vars, depth - 1));
    case 10:
        return Expr::binary(NodeKind::Div, random_ast(rng, vars, depth - 1),
                            random_ast(rng, vars, depth - 1));
    case 11:
        return Expr::binary(NodeKind::Pow, random_ast(rng, vars, depth - 1),
                            random_ast(rng, vars, depth - 1));
    case 12:
        return Expr::binary(NodeKind::Min2, random_ast(rng, vars, depth - 1),
                            random_ast(rng, vars, depth - 1));
    default:
        return Expr::binary(NodeKind::Max2, random_ast(rng, vars, depth - 1),
                            random_ast(rng, vars, depth - 1));
    }
}

// Like random_ast but restricted to nodes whose evaluation never reorders
// rounding: +, -, *, neg, abs, min2, max2.
Expr random_exact_ast(std::mt19937_64& rng, const std::vector<std::string>& vars, int depth) {
    std::uniform_real_distribution<double> cval(0.0, 4.0);
    std::uniform_int_distribution<int> vpick(0, static_cast<int>(vars.size()) - 1);
    std::uniform_int_distribution<int> leaf(0, 1), kind(0, 6);
    if (depth == 0 || kind(rng) == 0)
        return leaf(rng) ? Expr::constant(cval(rng), vars)
                         : Expr::variable(vpick(rng), vars);
    switch (kind(rng)) {
    case 1: return Expr::unary(NodeKind::Neg, random_exact_ast(rng, vars, depth - 1));
    case 2: return Expr::unary(NodeKind::Abs, random_exact_ast(rng, vars, depth - 1));
    case 3:
        return Expr::binary(NodeKind::Add, random_exact_ast(rng, vars, depth - 1),
                            random_exact_ast(rng, vars, depth - 1));
    case 4:
        return Expr::binary(NodeKind::Sub, random_exact_ast(rng, vars, depth - 1),
                            random_exact_ast(rng, vars, depth - 1));
    case 5:
        return Expr::binary(NodeKind::Mul, random_exact_ast(rng, vars, depth - 1),
                            random_exact_ast(rng, vars, depth - 1));
    default:
        return Expr::binary(NodeKind::Min2, random_exact_ast(rng, vars, depth - 1),
                            random_exact_ast(rng, vars, depth - 1));
    }
}

} // namespace

TEST_CASE("round-trip: parse(str(e)) is structurally identical, 1000 random ASTs") {
    std::mt19937_64 rng(20240517);
    for (int i = 0; i < 1000; ++i) {
        Expr e = random_ast(rng, XY, 4);
        Expr back = Expr::parse(e.str(), XY);
        CAPTURE(e.str());
        REQUIRE(back == e);
    }
}

TEST_CASE("eval agrees with the direct recursive interpreter") {
    std::mt19937_64 rng(99);
    std::uniform_real_distribution<double> coord(-3.0, 3.0);

    // exact node set: bit-identical
    for (int i = 0; i < 400; ++i) {
        Expr e = random_exact_ast(rng, XY, 5);
        std::vector<double> x = {coord(rng), coord(rng)};
        CHECK(e.eval(x) == ts::naive_eval(e, x));
    }
    // full node set: 1e-12 relative (domain errors must agree too)
    for (int i = 0; i < 400; ++i) {
        Expr e = random_ast(rng, XY, 4);
        std::vector<double> x = {coord(rng), coord(rng)};
        double a, b;
        bool threw_a = false, threw_b = false;
        try {
            a = e.eval(x);
        } catch (const DomainError&) {
            threw_a = true;
        }
        try {
            b = ts::naive_eval(e, x);
        } catch (const DomainError&) {
            threw_b = true;
        }
        REQUIRE(threw_a == threw_b);
        if (!threw_a && std::isfinite(a) && std::isfinite(b))
            CHECK(a == doctest::Approx(b).epsilon(1e-12));
    }
}

TEST_CASE("expressions are reusable and printing is stable") {
    Expr e = Expr::parse("exp(x1) * sin(x2) - 0.5", XY);
    std::string s1 = e.str();
    CHECK(Expr::parse(s1, XY).str() == s1);
    std::vector<double> x = {0.25, -1.5};
    CHECK(e.eval(x) == e.eval(x));
}
