#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "mokkt/catalog.hpp"
#include "mokkt/cq.hpp"
#include "support/oracles.hpp"

using namespace mokkt;
namespace ts = mokkt::testsupport;

TEST_CASE("mfcq: the worked example fails at the origin") {
    Problem ex1 = load_catalog_entry("paper-example-1").problem;
    MfcqResult r = check_mfcq(ex1, std::vector<double>{0.0, 0.0});
    CHECK_FALSE(r.holds);
    CHECK_FALSE(r.vacuous);
    CHECK(std::abs(r.margin) <= 1e-9);
}

TEST_CASE("mfcq: linear constraint active at (2,0) gives margin 2") {
    Problem p = load_catalog_entry("p1-biobjective-convex").problem;
    MfcqResult r = check_mfcq(p, std::vector<double>{2.0, 0.0});
    CHECK(r.holds);
    CHECK(r.margin == doctest::Approx(2.0));
    // the reported u achieves the margin
    CHECK(r.u[0] + r.u[1] == doctest::Approx(r.margin));
}

TEST_CASE("mfcq: vacuous with no active constraints") {
    Problem p = load_catalog_entry("p1-biobjective-convex").problem;
    MfcqResult r = check_mfcq(p, std::vector<double>{0.5, 0.0});
    CHECK(r.holds);
    CHECK(r.vacuous);
    CHECK(std::isinf(r.margin));
}

TEST_CASE("socq direction: worked example holds with omega = 1, margin 2") {
    Problem ex1 = load_catalog_entry("paper-example-1").problem;
    std::vector<double> x = {0.0, 0.0};
    SocqDirectionResult r = check_socq_direction(ex1, x, std::vector<double>{1.0, 0.0});
    CHECK(r.status == SocqStatus::Holds);
    CHECK(r.omega == doctest::Approx(1.0));
    CHECK(r.margin == doctest::Approx(2.0));
}

TEST_CASE("socq direction: linear constraints reduce to the MFCQ LP") {
    Problem p = load_catalog_entry("p1-biobjective-convex").problem;
    std::vector<double> x = {2.0, 0.0};
    SocqDirectionResult r = check_socq_direction(p, x, std::vector<double>{-1.0, 0.0});
    CHECK(r.status == SocqStatus::Holds);
    CHECK(r.margin == doctest::Approx(2.0));
}

TEST_CASE("socq direction: vacuous with no active constraints") {
    Problem p = load_catalog_entry("p1-biobjective-convex").problem;
    SocqDirectionResult r =
        check_socq_direction(p, std::vector<double>{0.5, 0.0}, std::vector<double>{1.0, 0.0});
    CHECK(r.status == SocqStatus::Holds);
    CHECK(r.vacuous);
}

TEST_CASE("socq direction: preconditions") {
    Problem p = load_catalog_entry("p1-biobjective-convex").problem;
    std::vector<double> x = {2.0, 0.0};
    CHECK_THROWS_AS(check_socq_direction(p, x, std::vector<double>{0.0, 0.0}),
                    PreconditionError);
    // grad(g).(1,1) = 2 > 0 violates the admissibility condition
    CHECK_THROWS_AS(check_socq_direction(p, x, std::vector<double>{1.0, 1.0}),
                    PreconditionError);
}

TEST_CASE("socq aggregate: example-1 holds-sampled over 64 directions with margin 2|d|^2") {
    Problem ex1 = load_catalog_entry("paper-example-1").problem;
    std::vector<double> x = {0.0, 0.0};
    auto dirs = sample_cq_directions(ex1, x, 64, 11);
    REQUIRE(static_cast<int>(dirs.size()) == 64);
    CqReport rep = check_socq(ex1, x, dirs);
    CHECK(rep.overall == CqReport::Overall::HoldsSampled);
    CHECK_FALSE(rep.mfcq.holds);
    for (const SocqDirectionResult& r : rep.socq) {
        double n2 = 0.0;
        for (double v : r.d) n2 += v * v;
        CHECK(std::abs(r.margin - 2.0 * n2) <= 1e-6);
    }
}

TEST_CASE("socq aggregate: empty direction list is inconclusive") {
    Problem ex1 = load_catalog_entry("paper-example-1").problem;
    CqReport rep = check_socq(ex1, std::vector<double>{0.0, 0.0}, {});
    CHECK(rep.overall == CqReport::Overall::Inconclusive);
    CHECK(rep.note == "no-directions");
}

TEST_CASE("nonfinite curvature policy via a lowered divergence threshold") {
    // g = -x1^2 + abs(x1)^3 puts the estimator on a kink ray where |q| grows
    // monotonically toward 2; a tiny threshold makes that read as -inf, which
    // exercises the drop-the-row-and-annotate policy.
    Problem p;
    p.vars = {"x1", "x2"};
    p.objectives = {Expr::parse("x1^2+x2^2", p.vars)};
    p.constraints = {Expr::parse("-x1^2+abs(x1)^3", p.vars)};
    p.box = {{-2.0, 2.0}, {-2.0, 2.0}};
    p.point = std::vector<double>{0.0, 0.0};
    p.validate();

    Tolerances tol;
    tol.estimator.diverge_threshold = 1.5;
    SecondDeriv d2 = second_dir_deriv(p.constraints[0], std::vector<double>{0.0, 0.0},
                                      std::vector<double>{1.0, 0.0}, tol.estimator);
    REQUIRE(d2.status == D2Status::Nonfinite);
    REQUIRE(d2.value < 0);

    SocqDirectionResult r = check_socq_direction(p, std::vector<double>{0.0, 0.0},
                                                 std::vector<double>{1.0, 0.0}, tol);
    CHECK(r.status == SocqStatus::Holds);
    CHECK(r.note == "nonfinite-curvature");

    // flip the sign: +inf curvature is inconclusive
    Problem q = p;
    q.constraints = {Expr::parse("x1^2-abs(x1)^3", p.vars)};
    // x = 0 stays feasible: g(0) = 0
    SocqDirectionResult ri = check_socq_direction(q, std::vector<double>{0.0, 0.0},
                                                  std::vector<double>{1.0, 0.0}, tol);
    CHECK(ri.status == SocqStatus::Inconclusive);
}

TEST_CASE("property: MFCQ implies sampled SOCQ with at least the same margin") {
    std::mt19937_64 rng(31337);
    int accepted = 0;
    int tries = 0;
    while (accepted < 200 && tries < 4000) {
        ++tries;
        ts::ActiveInstance inst = ts::random_active_problem(rng);
        MfcqResult mfcq = check_mfcq(inst.problem, inst.x);
        if (!mfcq.holds || mfcq.vacuous) continue;
        ++accepted;
        auto dirs = sample_cq_directions(inst.problem, inst.x, 16, 1000 + accepted);
        CqReport rep = check_socq(inst.problem, inst.x, dirs);
        CHECK(rep.mfcq_implies_socq_checked);
        CHECK(rep.prop1_consistent);
        for (const SocqDirectionResult& r : rep.socq) {
            REQUIRE(r.status == SocqStatus::Holds);
            if (std::isfinite(r.margin)) CHECK(r.margin >= mfcq.margin - 1e-9);
        }
    }
    REQUIRE(accepted == 200);
}

TEST_CASE("monotonicity: dropping an active constraint never shrinks the margin") {
    std::mt19937_64 rng(2718);
    int done = 0;
    while (done < 30) {
        ts::ActiveInstance inst = ts::random_active_problem(rng);
        if (inst.problem.num_constraints() < 2) continue;
        std::vector<int> act = active_set(inst.problem, inst.x, 1e-8);
        if (act.size() < 2) continue;
        MfcqResult full = check_mfcq(inst.problem, inst.x);

        Problem reduced = inst.problem;
        reduced.constraints.erase(reduced.constraints.begin() + act.back());
        MfcqResult sub = check_mfcq(reduced, inst.x);
        if (sub.vacuous) {
            ++done;
            continue;
        }
        CHECK(sub.margin >= full.margin - 1e-9);
        ++done;
    }
}
