#include <cmath>

#include "doctest.h"
#include "rsym/calculus.hpp"
#include "rsym/errors.hpp"
#include "rsym/eval.hpp"
#include "rsym/parse.hpp"
#include "rsym/print.hpp"
#include "rsym/zero.hpp"

using namespace rsym;

TEST_CASE("parse builds canonical sums") {
    Expr e = parse("x^2 + 2*x + 1");
    CHECK(e.kind() == Kind::Add);
    CHECK(e.str() == "x^2 + 2*x + 1");
    Expr x = sym("x");
    CHECK(e == pow(x, Rational(2)) + num(2) * x + num(1));
}

TEST_CASE("rewrite set") {
    CHECK(parse("sin(th)^2 + cos(th)^2").is_one());
    CHECK(parse("(x+1)^2 - x^2 - 2*x - 1").is_zero());
    CHECK(parse("cosh(s)^2 - sinh(s)^2").is_one());
    Expr e = parse("exp(u)*exp(-u)*(D(u(x,y),x,2) + D(u(x,y),y,2))");
    CHECK(e == parse("D(u(x,y),x,2) + D(u(x,y),y,2)"));
    CHECK(parse("exp(log(x))") == sym("x"));
    CHECK(parse("sin(-x)") == -parse("sin(x)"));
    CHECK(parse("cos(-x)") == parse("cos(x)"));
}

TEST_CASE("derivative grammar") {
    Expr d = parse("D(u, x1, 2)");
    REQUIRE(d.kind() == Kind::Jet);
    CHECK(jet_order_in(d, sym("x1")) == 2);
    Expr j = parse("D(D(g11(x1,x2,t), x1), t)");
    CHECK(jet_total_order(j) == 2);
    CHECK(j == parse("D(D(g11(x1,x2,t), t), x1)"));
    CHECK(parse(j.str()) == j);
}

TEST_CASE("parse errors") {
    CHECK_THROWS_AS(parse("2 x"), ParseError);
    CHECK_THROWS_AS(parse("tan(x)"), ParseError);
    CHECK_THROWS_AS(parse("x^y"), ParseError);
    CHECK_THROWS_AS(parse("(x + 1"), ParseError);
    try {
        parse("x + * y");
    } catch (const ParseError& e) {
        CHECK(e.position() == 4);
    }
}

TEST_CASE("printing round trip") {
    for (const char* s : {"x^(-1/2)", "(a + b)^(-1)", "-x^2 + 3/2*y", "2^(1/2)*x", "sqrt(8)", "1/(1 + 2*k*t)^(1/2)",
                          "sin(x)*exp(2*y)", "D(F(x),x,2)*G(x) - 1/3", "(2/3)^(1/3)", "0.25*x"}) {
        Expr e = parse(s);
        CAPTURE(s);
        CHECK(parse(e.str()) == e);
    }
    CHECK(parse("sqrt(8)").str() == "2*2^(1/2)");
    CHECK(parse("0.25").str() == "1/4");
}

TEST_CASE("diff") {
    Expr x = sym("x"), t = sym("t"), k = sym("k");
    CHECK(diff(parse("sin(x)"), x) == parse("cos(x)"));
    Expr u = Expr::function("u", {x, t});
    CHECK(diff(pow(u, Rational(2)), x) == num(2) * u * jet_raise(u, 0));
    Expr e = parse("(1+2*k*t)^(1/2)*G(x)");
    Expr expect = parse("k*(1+2*k*t)^(-1/2)*G(x)");
    CHECK(diff(e, t) == expect);
    // Central difference oracle at a point.
    Assignment a{{k, 0.7}, {t, 0.3}, {Expr::function("G", {x}), 1.9}};
    double h = 1e-5;
    Assignment ap = a, am = a;
    ap[t] += h;
    am[t] -= h;
    double fd = (eval_numeric(e, ap) - eval_numeric(e, am)) / (2 * h);
    CHECK(eval_numeric(expect, a) == doctest::Approx(fd).epsilon(1e-8));
}

TEST_CASE("substitute") {
    Expr g = parse("g11(x1,x2,t)");
    Expr u = parse("u(x1,x2,t)");
    CHECK(substitute(g, {{g, exp(u)}}) == exp(u));
    Expr dg = parse("D(g11(x1,x2,t), x1)");
    CHECK(substitute(dg, {{g, exp(u)}}) == parse("exp(u(x1,x2,t))*D(u(x1,x2,t),x1)"));
    Expr dt = parse("D(g11(x1,x2,t), t)");
    Expr r = parse("R11");
    CHECK(substitute(dt, {{dt, num(-2) * r}}) == num(-2) * r);
    CHECK_THROWS_AS(substitute(g, {{g, u}, {g, u}}), InconsistentBindingError);
    Expr psi = parse("psi(x,t)");
    Expr rep = parse("(1+2*k*t)^(-1/2)*F(x)");
    CHECK(substitute(psi, {{psi, rep}}) == rep);
    CHECK(substitute(parse("D(psi(x,t),t)"), {{psi, rep}}) == diff(rep, sym("t")));
}

TEST_CASE("eval") {
    CHECK(eval_numeric(parse("sin(x)"), {{sym("x"), 0.0}}) == 0.0);
    Expr e = sinh(sym("s")) * sinh(sym("s")) - cosh(sym("s")) * cosh(sym("s"));
    CHECK(eval_numeric(e, {{sym("s"), 1.3}}) == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK_THROWS_AS(eval_numeric(parse("log(x)"), {{sym("x"), -1.0}}), DomainError);
    CHECK_THROWS_AS(eval_numeric(parse("x + y"), {{sym("x"), 1.0}}), UnboundSymbolError);
}

TEST_CASE("equals_zero") {
    CHECK(equals_zero(parse("(x+y)^2 - x^2 - 2*x*y - y^2")).verdict == Verdict::ZeroSymbolic);
    CHECK(equals_zero(parse("sin(2*x) - 2*sin(x)*cos(x)")).verdict == Verdict::ZeroProbabilistic);
    ZeroResult r = equals_zero(parse("x^2 - x"));
    CHECK(r.verdict == Verdict::NonZero);
    CHECK(!r.witness.empty());
    CHECK(equals_zero(parse("1/(1+x) + x/(1+x) - 1")).verdict == Verdict::ZeroSymbolic);
}
