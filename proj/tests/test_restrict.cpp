#include <algorithm>

#include "doctest.h"
#include "rsym/geometry.hpp"
#include "rsym/parse.hpp"
#include "rsym/restrict.hpp"

using namespace rsym;

namespace {

bool zero(const Expr& e) { return is_zero_verdict(equals_zero(e).verdict); }

bool contains_constraint(const std::vector<Expr>& cs, const Expr& c) {
    return std::any_of(cs.begin(), cs.end(), [&](const Expr& e) { return zero(e - c) || zero(e + c); });
}

}  // namespace

TEST_CASE("conformal 2d restriction gives Cauchy-Riemann constraints") {
    RestrictionResult r = restrict_ansatz(make_ansatz("conformal2d"));
    REQUIRE(r.constraints.size() == 2);
    CHECK(contains_constraint(r.constraints, parse("D(xi1(x1,x2),x1) - D(xi2(x1,x2),x2)")));
    CHECK(contains_constraint(r.constraints, parse("D(xi1(x1,x2),x2) + D(xi2(x1,x2),x1)")));
    REQUIRE(r.Q.size() == 1);
    Expr expect = parse(
        "-(xi1(x1,x2)*D(u(x1,x2,t),x1) + xi2(x1,x2)*D(u(x1,x2,t),x2) + (c1 + c2*t)*D(u(x1,x2,t),t) - c2 + "
        "2*D(xi1(x1,x2),x1))");
    CHECK(equals_zero(r.Q[0] - expect).verdict == Verdict::ZeroSymbolic);
    CHECK(r.restricted.eta[0] == parse("c2 - 2*D(xi1(x1,x2),x1)"));
}

TEST_CASE("restricted characteristic agrees with substituting the generic one") {
    Ansatz a = make_ansatz("conformal2d");
    FlowSystem f = make_flow_system(MetricFamily::generic(Chart::standard(2)));
    Expr x1 = sym("x1"), x2 = sym("x2"), c1 = sym("c1"), c2 = sym("c2");
    std::vector<Expr> xi{x1 * x1 - x2 * x2, sin(x1) * x2};
    Generator Xi = theorem1_xi(f, xi);
    std::vector<Expr> eta;
    for (std::size_t k = 0; k < Xi.eta.size(); ++k) eta.push_back(c2 * f.rules.fields()[k] + Xi.eta[k]);
    Generator X = metric_generator(f, c1 + c2 * sym("t"), xi, eta);
    std::vector<Expr> Q = characteristic(X);
    Bindings b;
    for (std::size_t k = 0; k < 3; ++k) {
        std::size_t i = k == 2 ? 1 : 0, j = k == 0 ? 0 : 1;
        b.emplace_back(f.metric.at(i, j), a.metric.at(i, j));
    }
    Matrix QM = restricted_metric_characteristic(a, xi, c1, c2);
    CHECK(zero(substitute(Q[0], b) - QM[0][0]));
    CHECK(zero(substitute(Q[1], b) - QM[0][1]));
    CHECK(zero(substitute(Q[2], b) - QM[1][1]));
}

TEST_CASE("constraint soundness on the conformal flow") {
    RestrictionResult r = restrict_ansatz(make_ansatz("conformal2d"));
    PdeSystem s = conformal2d_system();
    Expr x1 = sym("x1"), x2 = sym("x2");
    auto pick = [&](const Expr& a, const Expr& b) {
        return instantiate(r.restricted, {{r.xi[0], a}, {r.xi[1], b}, {sym("c1"), Expr()}, {sym("c2"), Expr()}});
    };
    auto good = verify_restricted_algebra({pick(x1, x2), pick(x1 * x1 - x2 * x2, Expr(2) * x1 * x2)}, s);
    CHECK(good[0].symmetry);
    CHECK(good[1].symmetry);
    auto bad = verify_restricted_algebra({pick(x2, x1)}, s);
    CHECK_FALSE(bad[0].symmetry);
    CHECK(bad[0].witness.has_value());
    // The whole restricted algebra with unknown ξ fails: constraints matter.
    CHECK_FALSE(verify_restricted_algebra({r.restricted}, s)[0].symmetry);
}

TEST_CASE("lifting the restriction reproduces the metric characteristic") {
    Ansatz a = make_ansatz("conformal2d");
    RestrictionResult r = restrict_ansatz(a);
    Expr x1 = sym("x1"), x2 = sym("x2");
    std::vector<Expr> xi{x1 * x1 - x2 * x2, Expr(2) * x1 * x2};
    Bindings b{{r.xi[0], xi[0]}, {r.xi[1], xi[1]}};
    Expr Qu = substitute(r.Q[0], b);
    Matrix QM = restricted_metric_characteristic(a, xi, r.c1, r.c2);
    CHECK(zero(QM[0][0] - exp(a.fields[0]) * Qu));
    CHECK(zero(QM[1][1] - exp(a.fields[0]) * Qu));
    CHECK(zero(QM[0][1]));
}

TEST_CASE("warped restriction kills the fiber components") {
    RestrictionResult r = restrict_ansatz(make_ansatz("warped_einstein_fiber", 2, 2));
    CHECK(r.xi[2].is_zero());
    CHECK(r.xi[3].is_zero());
    CHECK(r.xi[0] == parse("xi1(x1,x2)"));
    CHECK(contains_constraint(r.constraints, parse("D(xi1(x1,x2),x1) - D(xi2(x1,x2),x2)")));
    CHECK(contains_constraint(r.constraints, parse("D(xi1(x1,x2),x2) + D(xi2(x1,x2),x1)")));
    Expr psi = parse("psi(x1,x2,t)"), phi = parse("phi(x1,x2,t)");
    CHECK(r.restricted.eta[0] == parse("-1/2*c2*psi(x1,x2,t) + psi(x1,x2,t)*D(xi1(x1,x2),x1)"));
    CHECK(r.restricted.eta[1] == parse("1/2*c2*phi(x1,x2,t)"));

    // A flat fiber keeps its own isometries and a free scaling of phi.
    RestrictionResult e = restrict_ansatz(make_ansatz("warped_euclidean_fiber", 1, 2));
    CHECK_FALSE(e.xi[1].is_zero());
    CHECK_FALSE(e.constraints.empty());
}

TEST_CASE("doubly-warped restriction") {
    RestrictionResult r = restrict_ansatz(make_ansatz("doubly_warped"));
    for (std::size_t s = 1; s < r.xi.size(); ++s) CHECK(r.xi[s].is_zero());
    CHECK(r.restricted.eta[0] == parse("1/2*c2*chi(x,t) - chi(x,t)*D(xi1(x),x)"));
    CHECK(r.restricted.eta[1] == parse("1/2*c2*phi(x,t)"));
    CHECK(r.restricted.eta[2] == parse("1/2*c2*psi(x,t)"));
    PdeSystem s = doubly_warped_system(Expr(2), Expr(3));
    for (const auto& v : verify_restricted_algebra(doubly_warped_generators(s, sin(sym("x")) + sym("x")), s))
        CHECK(v.symmetry);
}

TEST_CASE("family systems agree with the warped Ricci formula") {
    Expr x = sym("x"), t = sym("t"), m = sym("m"), mu = sym("mu");
    PdeSystem w = warped_system(m, mu);
    Expr psi = w.fields[0], phi = w.fields[1];
    MetricFamily base(Chart{{x}, t});
    base.set(0, 0, pow(psi, Rational(-2)));
    WarpedRicci wr = warped_ricci(base, {{phi, m, mu}});
    CHECK(zero(diff(pow(psi, Rational(-2)), t) + Expr(2) * wr.base[0][0] + Expr(2) * w.residuals[0]));
    CHECK(zero(diff(phi * phi, t) + Expr(2) * wr.fiber_coeff[0] + Expr(2) * w.residuals[1]));

    Expr p = sym("p"), q = sym("q");
    PdeSystem d = doubly_warped_system(p, q);
    Expr chi = d.fields[0], f = d.fields[1], h = d.fields[2];
    MetricFamily b2(Chart{{x}, t});
    b2.set(0, 0, chi * chi);
    WarpedRicci dr = warped_ricci(b2, {{f, p, p - Expr(1)}, {h, q, q - Expr(1)}});
    CHECK(zero(diff(chi * chi, t) + Expr(2) * dr.base[0][0] - Expr(2) * d.residuals[0]));
    CHECK(zero(diff(f * f, t) + Expr(2) * dr.fiber_coeff[0] - Expr(2) * d.residuals[1]));
    CHECK(zero(diff(h * h, t) + Expr(2) * dr.fiber_coeff[1] - Expr(2) * d.residuals[2]));

    // Two-dimensional base: the display against the engine.
    Expr x1 = sym("x1"), x2 = sym("x2");
    Expr P = parse("psi(x1,x2,t)"), F = parse("phi(x1,x2,t)");
    MetricFamily b3(Chart{{x1, x2}, t});
    b3.set(0, 0, pow(P, Rational(-2)));
    b3.set(1, 1, pow(P, Rational(-2)));
    WarpedRicci er = warped_ricci(b3, {{F, m, mu}});
    WarpedDisplay disp = warped_display({x1, x2}, P, F, m, mu);
    for (std::size_t i = 0; i < 2; ++i)
        for (std::size_t j = i; j < 2; ++j) CHECK(zero(er.base[i][j] - disp.base[i][j]));
    CHECK(zero(er.fiber_coeff[0] - disp.fiber));
}

TEST_CASE("restricted theorem audits") {
    AuditReport einstein = audit_warped_theorem(false);
    REQUIRE(einstein.candidates.size() == 3);
    CHECK(einstein.candidates[0].holds());
    CHECK(einstein.candidates[2].holds());
    AuditReport flat = audit_warped_theorem(true);
    CHECK(flat.candidates[0].holds());
    AuditReport conf = audit_conformal_corollary();
    CHECK(conf.candidates[0].holds());
    AuditReport dw = audit_doubly_warped();
    CHECK(dw.candidates[0].holds());
    CHECK_FALSE(dw.candidates[1].holds());
}

TEST_CASE("phi scaling separates flat and Einstein fibers") {
    for (bool flat : {true, false}) {
        PdeSystem s = warped_system(Expr(3), flat ? Expr() : Expr(2));
        Generator X3 = system_generator(s, {Expr(), Expr()}, {Expr(), s.fields[1]}, "phi d/dphi");
        SymmetryVerdict v = verify_restricted_algebra({X3}, s)[0];
        CHECK(v.symmetry == flat);
        if (!flat) CHECK(v.witness.has_value());
    }
}

TEST_CASE("vacuum Einstein symmetries") {
    RestrictionResult r = restrict_ansatz(make_ansatz("einstein_static", 2));
    CHECK(r.constraints.empty());
    CHECK(r.restricted.indep.size() == 2);  // no time direction survives
    Expr x1 = sym("x1"), x2 = sym("x2"), x3 = sym("x3");
    for (const auto& z : check_einstein_static(2, {x1 * x2, sin(x1)}, Expr(3))) CHECK(is_zero_verdict(z.verdict));
    for (const auto& z : check_einstein_static(3, {x2, -x1 + x3, x1 * x1}, Expr(1))) CHECK(is_zero_verdict(z.verdict));
}
