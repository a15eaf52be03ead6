#include "doctest.h"
#include "rsym/calculus.hpp"
#include "rsym/errors.hpp"
#include "rsym/geometry.hpp"
#include "rsym/parse.hpp"
#include "rsym/random.hpp"
#include "rsym/zero.hpp"

using namespace rsym;

namespace {

bool zero(const Expr& e) { return is_zero_verdict(equals_zero(e).verdict); }

MetricFamily sphere2() {
    Chart c{{sym("th"), sym("ph")}, sym("t")};
    MetricFamily m(c);
    m.set(1, 1, pow(sin(sym("th")), Rational(2)));
    return m;
}

MetricFamily conformal2() {
    Chart c = Chart::standard(2);
    Expr u = parse("u(x1,x2,t)");
    MetricFamily m(c, {{"u", {sym("x1"), sym("x2"), sym("t")}}});
    m.set(0, 0, exp(u));
    m.set(1, 1, exp(u));
    return m;
}

}  // namespace

TEST_CASE("inverse metric") {
    Chart c = Chart::standard(2);
    MetricFamily m(c);
    Expr psi = parse("psi(x1,x2,t)");
    m.set(0, 0, pow(psi, Rational(-2)));
    m.set(1, 1, pow(psi, Rational(-2)));
    Matrix inv = inverse_metric(m);
    CHECK(inv[0][0] == pow(psi, Rational(2)));
    CHECK(inv[0][1].is_zero());

    MetricFamily g = MetricFamily::generic(c);
    Matrix gi = inverse_metric(g);
    Expr det = parse("g11(x1,x2,t)*g22(x1,x2,t) - g12(x1,x2,t)^2");
    CHECK(zero(gi[0][0] - parse("g22(x1,x2,t)") / det));
    CHECK(zero(gi[0][1] + parse("g12(x1,x2,t)") / det));
    Matrix gm = g.matrix();
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            Expr s = gm[i][0] * gi[0][j] + gm[i][1] * gi[1][j] - Expr(i == j ? 1 : 0);
            CHECK(equals_zero(s).verdict == Verdict::ZeroSymbolic);
        }

    MetricFamily bad(c);
    bad.set(0, 0, Expr(0));
    CHECK_THROWS_AS(inverse_metric(bad), SingularMetricError);
}

TEST_CASE("christoffel symbols") {
    MetricFamily flat(Chart::standard(3));
    for (const auto& a : christoffel_lower(flat))
        for (const auto& b : a)
            for (const auto& c : b) CHECK(c.is_zero());
    Tensor3 G = christoffel_lower(sphere2());
    Expr th = sym("th");
    CHECK(G[0][1][1] == -(sin(th) * cos(th)));
    CHECK(G[1][0][1] == sin(th) * cos(th));
    CHECK(G[1][1][0] == sin(th) * cos(th));
    Tensor3 C = christoffel_lower(conformal2());
    CHECK(C[0][0][0] == parse("1/2*exp(u(x1,x2,t))*D(u(x1,x2,t),x1)"));
}

TEST_CASE("ricci tensor") {
    MetricFamily flat(Chart::standard(2));
    for (const auto& row : ricci(flat))
        for (const auto& e : row) CHECK(e.is_zero());
    MetricFamily s2 = sphere2();
    Matrix r = ricci(s2);
    CHECK(zero(r[0][0] - Expr(1)));
    CHECK(zero(r[1][1] - pow(sin(sym("th")), Rational(2))));
    CHECK(r[0][1].is_zero());
    Matrix ro = ricci_oracle(s2);
    CHECK(zero(ro[1][1] - pow(sin(sym("th")), Rational(2))));

    Matrix rc = ricci(conformal2());
    Expr lap = parse("D(u(x1,x2,t),x1,2) + D(u(x1,x2,t),x2,2)");
    CHECK(rc[0][0] == Expr(Rational(-1, 2)) * lap);
    CHECK(rc[1][1] == Expr(Rational(-1, 2)) * lap);
    CHECK(rc[0][1].is_zero());

    // Round S^3: Ric = 2g.
    Chart c3{{sym("a"), sym("b"), sym("c")}, sym("t")};
    MetricFamily s3(c3);
    Expr sa2 = pow(sin(sym("a")), Rational(2));
    s3.set(1, 1, sa2);
    s3.set(2, 2, sa2 * pow(sin(sym("b")), Rational(2)));
    Matrix r3 = ricci(s3);
    Matrix r3o = ricci_oracle(s3);
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) {
            CHECK(zero(r3[i][j] - Expr(2) * s3.at(i, j)));
            CHECK(zero(r3o[i][j] - Expr(2) * s3.at(i, j)));
        }
}

TEST_CASE("ricci agrees with the Riemann contraction on random metrics") {
    ExprGenerator gen(17, {sym("x1"), sym("x2")});
    for (int k = 0; k < 5; ++k) {
        MetricFamily m = random_rational_metric(gen, Chart::standard(2));
        Matrix a = ricci(m), b = ricci_oracle(m);
        for (std::size_t i = 0; i < 2; ++i)
            for (std::size_t j = i; j < 2; ++j) CHECK(zero(a[i][j] - b[i][j]));
    }
    // Generic symbolic 2D metric.
    MetricFamily g = MetricFamily::generic(Chart::standard(2));
    Matrix a = ricci(g), b = ricci_oracle(g);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = i; j < 2; ++j) {
            CHECK(a[i][j] == a[j][i]);
            CHECK(zero(a[i][j] - b[i][j]));
        }
}

TEST_CASE("scale invariance of ricci") {
    ExprGenerator gen(5, {sym("x1"), sym("x2")});
    MetricFamily m = random_rational_metric(gen, Chart::standard(2));
    MetricFamily cm = m;
    Expr c = sym("c");
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = i; j < 2; ++j) cm.set(i, j, c * m.at(i, j));
    Matrix a = ricci(m), b = ricci(cm);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(zero(a[i][j] - b[i][j]));
}

TEST_CASE("hessian and laplacian") {
    MetricFamily flat(Chart::standard(2));
    Expr x = sym("x1");
    Matrix h = hessian(flat, x * x);
    CHECK(h[0][0] == Expr(2));
    CHECK(h[1][1].is_zero());
    CHECK(laplacian(flat, x * x) == Expr(2));
    Expr th = sym("th");
    CHECK(zero(laplacian(sphere2(), cos(th)) + Expr(2) * cos(th)));

    // Conformal base 1/psi^2 δ: displayed Hessian of phi.
    Chart c = Chart::standard(2);
    MetricFamily b(c);
    Expr psi = parse("psi(x1,x2,t)"), phi = parse("phi(x1,x2,t)");
    b.set(0, 0, pow(psi, Rational(-2)));
    b.set(1, 1, pow(psi, Rational(-2)));
    Matrix hp = hessian(b, phi);
    Expr dot = diff(psi, c.coords[0]) * diff(phi, c.coords[0]) + diff(psi, c.coords[1]) * diff(phi, c.coords[1]);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = 0; j < 2; ++j) {
            Expr xi = c.coords[i], xj = c.coords[j];
            Expr expect = diff(diff(phi, xi), xj) +
                          (diff(psi, xi) * diff(phi, xj) + diff(psi, xj) * diff(phi, xi)) / psi -
                          (i == j ? dot / psi : Expr(0));
            CHECK(zero(hp[i][j] - expect));
        }
}

TEST_CASE("warped product ricci matches explicit coordinates") {
    // B = (r) line with metric 1/psi^2, fiber round S^2 with warp phi.
    Expr r = sym("r"), a = sym("a"), b = sym("b"), t = sym("t");
    Expr psi = Expr::function("psi", {r, t}), phi = Expr::function("phi", {r, t});
    MetricFamily full(Chart{{r, a, b}, t});
    full.set(0, 0, pow(psi, Rational(-2)));
    full.set(1, 1, pow(phi, Rational(2)));
    full.set(2, 2, pow(phi, Rational(2)) * pow(sin(a), Rational(2)));
    Matrix ric = ricci(full);

    MetricFamily base(Chart{{r}, t});
    base.set(0, 0, pow(psi, Rational(-2)));
    WarpedRicci w = warped_ricci(base, {{phi, Expr(2), Expr(1)}});
    CHECK(zero(ric[0][0] - w.base[0][0]));
    CHECK(zero(ric[1][1] - w.fiber_coeff[0]));
    CHECK(zero(ric[2][2] - w.fiber_coeff[0] * pow(sin(a), Rational(2))));
}
