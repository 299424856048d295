#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "mokkt/lp.hpp"
#include "support/oracles.hpp"

using namespace mokkt;
namespace ts = mokkt::testsupport;

TEST_CASE("one-variable LP") {
    LinearProgram lp(1);
    lp.lower = {0.0};
    lp.objective = {1.0};
    lp.add_inequality_ge({-1.0}, -3.0); // x <= 3
    LpSolution s = solve(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.value == doctest::Approx(3.0));
    CHECK(s.x[0] == doctest::Approx(3.0));
}

TEST_CASE("contradictory bounds are infeasible") {
    LinearProgram lp(1);
    lp.add_inequality_ge({1.0}, 1.0);  // x >= 1
    lp.add_inequality_ge({-1.0}, 0.0); // x <= 0
    CHECK(solve(lp).status == LpStatus::Infeasible);
}

TEST_CASE("box maximum") {
    LinearProgram lp(2);
    lp.lower = {-1.0, -1.0};
    lp.upper = {1.0, 1.0};
    lp.objective = {1.0, 1.0};
    LpSolution s = solve(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.value == doctest::Approx(2.0));
    CHECK(s.x[0] == doctest::Approx(1.0));
    CHECK(s.x[1] == doctest::Approx(1.0));
}

TEST_CASE("unbounded detection") {
    LinearProgram lp(1);
    lp.lower = {0.0};
    lp.objective = {1.0};
    CHECK(solve(lp).status == LpStatus::Unbounded);
}

TEST_CASE("equalities with free variables") {
    // max x1 + x2 s.t. x1 + x2 = 1, x1 - x2 = 0 -> (0.5, 0.5)
    LinearProgram lp(2);
    lp.objective = {1.0, 1.0};
    lp.add_equality({1.0, 1.0}, 1.0);
    lp.add_equality({1.0, -1.0}, 0.0);
    LpSolution s = solve(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.x[0] == doctest::Approx(0.5));
    CHECK(s.x[1] == doctest::Approx(0.5));
}

TEST_CASE("degenerate LP terminates under Bland's rule") {
    // Many redundant rows through the optimum; naive pivoting is cycle-prone here.
    LinearProgram lp(2);
    lp.lower = {0.0, 0.0};
    lp.objective = {1.0, 1.0};
    lp.add_inequality_ge({-1.0, -1.0}, -1.0);
    lp.add_inequality_ge({-1.0, -2.0}, -1.0);
    lp.add_inequality_ge({-2.0, -1.0}, -1.0);
    lp.add_inequality_ge({-1.0, 0.0}, -1.0);
    LpSolution s = solve(lp);
    REQUIRE(s.status == LpStatus::Optimal);
    CHECK(s.value == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("size limits are enforced") {
    CHECK_THROWS_AS(solve(LinearProgram(65)), LpError);
    LinearProgram lp(2);
    for (int i = 0; i < 257; ++i) lp.add_inequality_ge({1.0, 0.0}, -100.0);
    CHECK_THROWS_AS(solve(lp), LpError);
}

TEST_CASE("property: 500 random LPs agree with vertex enumeration") {
    std::mt19937_64 rng(123456);
    int optimal = 0, infeasible = 0;
    for (int i = 0; i < 500; ++i) {
        LinearProgram lp = ts::random_bounded_lp(rng);
        LpSolution s = solve(lp);
        ts::VertexOracleResult oracle = ts::vertex_enumeration(lp);
        CAPTURE(i);
        if (oracle.feasible) {
            REQUIRE(s.status == LpStatus::Optimal);
            CHECK(std::abs(s.value - oracle.value) < 1e-7);
            ++optimal;
        } else {
            REQUIRE(s.status == LpStatus::Infeasible);
            ++infeasible;
        }
    }
    CHECK(optimal > 100);
    CHECK(infeasible > 10);
}

TEST_CASE("property: strong duality on feasible bounded instances") {
    // primal: max c.x st Ax <= b, x >= 0 ; dual: min b.y st A^T y >= c, y >= 0
    std::mt19937_64 rng(887);
    std::uniform_int_distribution<int> nd(1, 3), md(1, 3);
    std::uniform_real_distribution<double> coef(-1.0, 1.0), rhs(0.1, 2.0);
    int checked = 0;
    for (int iter = 0; iter < 200; ++iter) {
        int n = nd(rng), m = md(rng);
        std::vector<std::vector<double>> A(static_cast<std::size_t>(m),
                                           std::vector<double>(static_cast<std::size_t>(n)));
        std::vector<double> b(static_cast<std::size_t>(m)), c(static_cast<std::size_t>(n));
        for (auto& row : A)
            for (double& v : row) v = ts::round3(coef(rng));
        for (double& v : b) v = ts::round3(rhs(rng));
        for (double& v : c) v = ts::round3(coef(rng));

        LinearProgram primal(n);
        for (int j = 0; j < n; ++j) {
            primal.lower[static_cast<std::size_t>(j)] = 0.0;
            primal.objective[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j)];
        }
        for (int r = 0; r < m; ++r) {
            std::vector<double> neg(A[static_cast<std::size_t>(r)]);
            for (double& v : neg) v = -v;
            primal.add_inequality_ge(std::move(neg), -b[static_cast<std::size_t>(r)]);
        }
        LpSolution ps = solve(primal);
        if (ps.status != LpStatus::Optimal) {
            if (ps.status == LpStatus::Unbounded) {
                // dual must be infeasible
                LinearProgram dual(m);
                for (int r = 0; r < m; ++r) {
                    dual.lower[static_cast<std::size_t>(r)] = 0.0;
                    dual.objective[static_cast<std::size_t>(r)] = -b[static_cast<std::size_t>(r)];
                }
                for (int j = 0; j < n; ++j) {
                    std::vector<double> col(static_cast<std::size_t>(m));
                    for (int r = 0; r < m; ++r) col[static_cast<std::size_t>(r)] = A[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
                    dual.add_inequality_ge(std::move(col), c[static_cast<std::size_t>(j)]);
                }
                CHECK(solve(dual).status == LpStatus::Infeasible);
            }
            continue;
        }
        LinearProgram dual(m);
        for (int r = 0; r < m; ++r) {
            dual.lower[static_cast<std::size_t>(r)] = 0.0;
            dual.objective[static_cast<std::size_t>(r)] = -b[static_cast<std::size_t>(r)];
        }
        for (int j = 0; j < n; ++j) {
            std::vector<double> col(static_cast<std::size_t>(m));
            for (int r = 0; r < m; ++r) col[static_cast<std::size_t>(r)] = A[static_cast<std::size_t>(r)][static_cast<std::size_t>(j)];
            dual.add_inequality_ge(std::move(col), c[static_cast<std::size_t>(j)]);
        }
        LpSolution ds = solve(dual);
        REQUIRE(ds.status == LpStatus::Optimal);
        CHECK(std::abs(ps.value - (-ds.value)) < 1e-7);
        ++checked;
    }
    CHECK(checked > 50);
}
