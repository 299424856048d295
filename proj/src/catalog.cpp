#include "mokkt/catalog.hpp"

namespace mokkt {

namespace {

Problem make_problem(std::string id, std::vector<std::string> vars,
                     std::vector<std::string> objectives, std::vector<std::string> constraints,
                     std::vector<std::array<double, 2>> box, std::vector<double> point) {
    Problem p;
    p.id = std::move(id);
    p.vars = std::move(vars);
    for (const auto& text : objectives) p.objectives.push_back(Expr::parse(text, p.vars));
    for (const auto& text : constraints) p.constraints.push_back(Expr::parse(text, p.vars));
    p.box = std::move(box);
    p.point = std::move(point);
    p.validate();
    return p;
}

CatalogEntry paper_example_1() {
    CatalogEntry e;
    e.id = "paper-example-1";
    e.problem = make_problem(e.id, {"x1", "x2"}, {"x1^2+x2^2"}, {"-x1^2-x2^2"},
                             {{{-2.0, 2.0}}, {{-2.0, 2.0}}}, {0.0, 0.0});
    e.facts = {
        {"cq", "MFCQ fails at (0,0): the active gradient vanishes", "worked-example"},
        {"cq", "second-order MFCQ holds at (0,0): g''((0,0),d) = -2|d|^2 < 0", "worked-example"},
        {"pareto", "the objective attains its unique minimum at (0,0)", "worked-example"},
        {"deriv", "g''((0,0),d) = -2(d1^2+d2^2) exactly", "analytic"},
    };
    e.points = {
        {{0.0, 0.0}, ParetoClass::Pareto, true, true},
        {{1.0, 0.0}, ParetoClass::Dominated, false, false},
    };
    return e;
}

CatalogEntry p1_biobjective_convex() {
    CatalogEntry e;
    e.id = "p1-biobjective-convex";
    e.problem = make_problem(e.id, {"x1", "x2"}, {"x1^2+x2^2", "(x1-1)^2+x2^2"}, {"x1+x2-2"},
                             {{{-2.0, 2.0}}, {{-2.0, 2.0}}}, {0.5, 0.0});
    e.facts = {
        {"pareto", "Pareto set is the segment {(t,0) : t in [0,1]}", "analytic"},
        {"gconvex", "both objectives are strictly convex, the constraint is linear", "analytic"},
        {"kkt", "at interior segment points stationarity forces lambda = (1-t, t)", "analytic"},
        {"cq", "MFCQ holds wherever the linear constraint is active", "analytic"},
    };
    e.points = {
        {{0.0, 0.0}, ParetoClass::Pareto, true, true},
        {{0.5, 0.0}, ParetoClass::Pareto, true, true},
        {{1.0, 0.0}, ParetoClass::Pareto, true, true},
        {{2.0, 0.0}, ParetoClass::Dominated, false, false},
        {{0.0, 0.5}, ParetoClass::Dominated, false, false},
    };
    return e;
}

CatalogEntry cubic_objective() {
    CatalogEntry e;
    e.id = "cubic-objective";
    e.problem = make_problem(e.id, {"x1"}, {"x1^3"}, {"x1-1"}, {{{-2.0, 2.0}}}, {0.0});
    e.facts = {
        {"gconvex", "x1^3 is not pseudoconvex: witness x=0, y=-1", "analytic"},
        {"gconvex", "x1^3 is not 2-pseudoconvex: at x=0, y=-1 the gradient product is 0 and f''(0,-1) = 0", "analytic"},
        {"gconvex", "x1^3 is quasiconvex (monotone)", "analytic"},
        {"kkt", "x=0 satisfies the second-order KT conditions yet is not a minimizer", "analytic"},
    };
    e.points = {
        {{0.0}, ParetoClass::Dominated, true, true},
        {{1.0}, ParetoClass::Dominated, false, false},
    };
    return e;
}

CatalogEntry signed_square() {
    CatalogEntry e;
    e.id = "signed-square";
    e.problem = make_problem(e.id, {"x1"}, {"x1*abs(x1)"}, {}, {{{-2.0, 2.0}}}, {0.0});
    e.facts = {
        {"deriv", "f''(0,1) = 2 and f''(0,-1) = -2 via the limit estimator (the kink blocks the analytic path)", "analytic"},
        {"gconvex", "x1*abs(x1) is 2-pseudoconvex: when the gradient product vanishes, x=0 and f''(0,y) = 2y|y| < 0", "analytic"},
        {"kkt", "x=0 is first-order stationary but the curvature row refutes it along d=-1", "analytic"},
    };
    e.points = {
        {{0.0}, ParetoClass::Dominated, false, false},
    };
    return e;
}

CatalogEntry degenerate_equal_gradients() {
    CatalogEntry e;
    e.id = "degenerate-equal-gradients";
    e.problem = make_problem(e.id, {"x1", "x2"}, {"x1", "-x1"}, {"x1^2+x2^2-1"},
                             {{{-2.0, 2.0}}, {{-2.0, 2.0}}}, {0.0, 0.0});
    e.facts = {
        {"kkt", "opposite objective gradients force the balanced multipliers lambda = (1/2, 1/2) at interior points", "analytic"},
        {"pareto", "f1 + f2 = 0, so no feasible point dominates another: every feasible point is Pareto optimal", "analytic"},
    };
    e.points = {
        {{0.0, 0.0}, ParetoClass::Pareto, true, true},
        {{0.5, 0.5}, ParetoClass::Pareto, true, true},
        {{1.0, 0.0}, ParetoClass::Pareto, true, true},
    };
    return e;
}

CatalogEntry active_quadratic() {
    CatalogEntry e;
    e.id = "active-quadratic";
    e.problem = make_problem(e.id, {"x1", "x2"}, {"x1^2+x2^2"}, {"1-x1"},
                             {{{-2.0, 2.0}}, {{-2.0, 2.0}}}, {1.0, 0.0});
    e.facts = {
        {"pareto", "the constrained minimum sits at (1,0) with the constraint active", "analytic"},
        {"kkt", "KT multipliers at (1,0): lambda = 1, mu = 2", "analytic"},
        {"cq", "MFCQ holds at (1,0): u = (-1,0) gives grad(g).u = 1", "analytic"},
    };
    e.points = {
        {{1.0, 0.0}, ParetoClass::Pareto, true, true},
        {{1.5, 0.5}, ParetoClass::Dominated, false, false},
        {{1.0, 1.0}, ParetoClass::Dominated, false, false},
    };
    return e;
}

} // namespace

const std::vector<std::string>& catalog_ids() {
    static const std::vector<std::string> ids = {
        "paper-example-1",    "p1-biobjective-convex",      "cubic-objective",
        "signed-square",      "degenerate-equal-gradients", "active-quadratic",
    };
    return ids;
}

CatalogEntry load_catalog_entry(const std::string& id) {
    if (id == "paper-example-1") return paper_example_1();
    if (id == "p1-biobjective-convex") return p1_biobjective_convex();
    if (id == "cubic-objective") return cubic_objective();
    if (id == "signed-square") return signed_square();
    if (id == "degenerate-equal-gradients") return degenerate_equal_gradients();
    if (id == "active-quadratic") return active_quadratic();
    throw FormatError("unknown catalog id '" + id + "'");
}

} // namespace mokkt
