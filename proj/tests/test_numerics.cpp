#include "doctest.h"
#include "rsym/errors.hpp"
#include "rsym/numerics.hpp"
#include "rsym/parse.hpp"

using namespace rsym;

TEST_CASE("grid residual of the canonical solutions is rounding noise") {
    Params w2{{"m", Expr(2)}, {"k", Expr(1)}};
    ClosedFormSolution sol = specialize(closed_form("warped_hyperbolic"), w2);
    GridReport r = grid_residual(sol, canonical_grid());
    CHECK(r.max_abs < 1e-10);
    CHECK(r.points == 1000);
    Params dw{{"p", Expr(2)}, {"q", Expr(2)}, {"k", Expr(1)}};
    GridReport d = grid_residual(specialize(closed_form("dw_sincos"), dw), canonical_grid());
    CHECK(d.max_abs < 1e-10);
}

TEST_CASE("serial and parallel grid kernels agree") {
    Params dw{{"p", Expr(3)}, {"q", Expr(2)}, {"k", Expr(1)}};
    GridProblem p = grid_problem(specialize(closed_form("dw_sinsin"), dw));
    GridReport a = grid_residual_serial(p, canonical_grid());
    GridReport b = grid_residual_omp(p, canonical_grid());
    CHECK(a.max_abs == b.max_abs);
    CHECK(a.argmax_s == b.argmax_s);
    CHECK(a.argmax_t == b.argmax_t);
    CHECK(to_json(a).dump() == to_json(b).dump());
}

TEST_CASE("a wrong metric shows a large residual") {
    // Hyperbolic profile with the wrong time factor.
    ClosedFormSolution sol = specialize(closed_form("warped_hyperbolic"), {{"m", Expr(2)}, {"k", Expr(1)}});
    sol.K = Expr(-1);
    GridReport r = grid_residual(sol, canonical_grid());
    CHECK(r.max_abs > 1.0);
}

TEST_CASE("flat static metric has exactly zero residual") {
    MetricFamily g(Chart{{sym("s")}, sym("t")});
    g.set(0, 0, Expr(1));
    GridReport r = grid_residual(grid_problem(g, "flat"), canonical_grid());
    CHECK(r.max_abs == 0.0);
    MetricFamily g2(Chart::standard(2));
    g2.set(0, 0, Expr(1));
    g2.set(1, 1, Expr(1));
    Grid grid = canonical_grid();
    grid.fixed["x2"] = 0.5;
    CHECK(grid_residual(grid_problem(g2, "flat2"), grid).max_abs == 0.0);
}

TEST_CASE("grid domain checks") {
    ClosedFormSolution sol = specialize(closed_form("warped_spherical"), {{"m", Expr(2)}, {"k", Expr(1)}});
    Grid g = canonical_grid();
    g.t_hi = 0.5;  // 1 − 2t reaches zero
    CHECK_THROWS_AS(grid_residual(sol, g), DomainError);
    CHECK_THROWS_AS(grid_residual_serial(grid_problem(sol), g), DomainError);
    Grid bad = canonical_grid();
    bad.s_count = 0;
    CHECK_THROWS_AS(grid_residual(sol, bad), std::invalid_argument);
    // Symbolic parameters cannot be evaluated.
    CHECK_THROWS_AS(grid_residual(closed_form("warped_spherical"), canonical_grid()), UnboundSymbolError);
}

TEST_CASE("grid report json") {
    ClosedFormSolution sol = specialize(closed_form("warped_hyperbolic"), {{"m", Expr(3)}, {"k", Expr(1)}});
    nlohmann::json j = to_json(grid_residual(sol, canonical_grid()));
    for (const char* key : {"solution", "grid", "max_abs", "argmax", "seed"}) CHECK(j.contains(key));
    CHECK(j["solution"] == "warped_hyperbolic");
    CHECK(j["grid"]["s"][2] == 50);
}

TEST_CASE("finite-difference cross-checks") {
    Expr s = sym("s"), t = sym("t");
    FdReport a = fd_cross_check(parse("sinh((k/m)^(1/2)*s)^2"), {s}, 200);
    CHECK(a.pass_rate() >= 0.99);
    CHECK(a.per_variable[0].skipped == 0);
    FdReport b = fd_cross_check(parse("(1+2*k*t)^(-1/2)"), {t}, 200);
    CHECK(b.pass_rate() >= 0.99);
    // |s| only enters through a smooth box away from 0; log of a negative is skipped.
    FdReport c = fd_cross_check(parse("log(s - 1)"), {s}, 200);
    CHECK(c.per_variable[0].skipped > 0);
    CHECK(c.per_variable[0].trials + c.per_variable[0].skipped == 200);
    CHECK(to_json(a)["pass_rate"].get<double>() >= 0.99);
}

TEST_CASE("kernel property sweeps") {
    FdReport fd = fd_corpus_check(300);
    CHECK(fd.pass_rate() >= 0.99);
    for (const PropertyReport& r :
         {check_simplify_idempotent(300, 11), check_monomial_reconstruction(300, 12), check_product_rule(300, 13),
          check_clairaut(300, 14), check_print_roundtrip(300, 15)}) {
        CAPTURE(r.property);
        CAPTURE(r.first_failure);
        CHECK(r.ok());
        CHECK(r.cases == 300);
    }
}
