#include "doctest.h"
#include "rsym/eval.hpp"
#include "rsym/parse.hpp"
#include "rsym/reduce.hpp"

using namespace rsym;

namespace {

bool sym_zero(const Expr& e) { return equals_zero(e).verdict == Verdict::ZeroSymbolic; }
bool zero(const Expr& e) { return is_zero_verdict(equals_zero(e).verdict); }

}  // namespace

TEST_CASE("invariant surface conditions of the warped scaling generator") {
    PdeSystem s = warped_system(sym("m"), sym("mu"));
    auto Q = invariant_surface_conditions(scaling_generator(s, sym("k")));
    REQUIRE(Q.size() == 2);
    // Q = η − ξ^t u_t, so the ψ condition is the negative of kψ + (1+2kt)ψ_t.
    CHECK(sym_zero(Q[0] + parse("k*psi(x,t) + (1+2*k*t)*D(psi(x,t),t)")));
    CHECK(sym_zero(Q[1] - parse("k*phi(x,t) - (1+2*k*t)*D(phi(x,t),t)")));
}

TEST_CASE("invariant surface conditions of the doubly-warped scaling generator") {
    PdeSystem s = doubly_warped_system(sym("p"), sym("q"));
    auto Q = invariant_surface_conditions(scaling_generator(s, sym("k")));
    REQUIRE(Q.size() == 3);
    CHECK(sym_zero(Q[0] - parse("k*chi(x,t) - (1+2*t*k)*D(chi(x,t),t)")));
    CHECK(sym_zero(Q[1] - parse("k*phi(x,t) - (1+2*k*t)*D(phi(x,t),t)")));
    CHECK(sym_zero(Q[2] - parse("k*psi(x,t) - (1+2*k*t)*D(psi(x,t),t)")));
}

TEST_CASE("time translation gives the static conditions") {
    PdeSystem s = warped_system(sym("m"), sym("mu"));
    Generator X = scaling_generator(s, sym("k"));
    X.xi[0] = Expr(1);
    X.eta = {Expr(), Expr()};
    auto Q = invariant_surface_conditions(X);
    CHECK(Q[0] == -diff(s.fields[0], s.time));
    CHECK(Q[1] == -diff(s.fields[1], s.time));
}

TEST_CASE("similarity substitution solves the invariant surface conditions") {
    Expr k = sym("k");
    for (const PdeSystem& s : {warped_system(sym("m"), sym("mu")), doubly_warped_system(sym("p"), sym("q")),
                               warped_system_n(2, sym("m"), sym("mu"))}) {
        Bindings b = similarity_substitution(s, k);
        for (const auto& q : invariant_surface_conditions(scaling_generator(s, k)))
            CHECK(sym_zero(substitute(q, b)));
    }
    PdeSystem w = warped_system(sym("m"), sym("mu"));
    Bindings b = similarity_substitution(w, k);
    CHECK(b[0].second == parse("(1+2*k*t)^(-1/2)*F(x)"));
    PdeSystem dw = doubly_warped_system(sym("p"), sym("q"));
    CHECK(similarity_substitution(dw, k)[0].second == parse("(1+2*k*t)^(1/2)*F(x)"));
    CHECK_THROWS_AS(similarity_substitution(w, Expr(0)), std::invalid_argument);
}

TEST_CASE("reduction consistency: substituted PDE equals the reduced system") {
    Expr k = sym("k");
    SUBCASE("warped, n = 2") {
        PdeSystem s = warped_system_n(2, sym("m"), sym("mu"));
        ReducedSystem r = reduced_system("warped_general_n", {{"n", Expr(2)}});
        Bindings b = similarity_substitution(s, k);
        REQUIRE(r.residuals.size() == s.residuals.size());
        for (std::size_t i = 0; i < s.residuals.size(); ++i) {
            Expr sub = substitute(s.residuals[i], b);
            CHECK_FALSE(depends_on(r.residuals[i], s.time));
            CHECK(zero(sub - r.residuals[i]));
        }
    }
    SUBCASE("doubly warped") {
        PdeSystem s = doubly_warped_system(sym("p"), sym("q"));
        ReducedSystem r = reduced_system("doubly_warped");
        Bindings b = similarity_substitution(s, k);
        for (std::size_t i = 0; i < 3; ++i) CHECK(zero(substitute(s.residuals[i], b) - r.residuals[i]));
    }
}

TEST_CASE("the displayed one-dimensional warped system") {
    ReducedSystem r = reduced_system("warped_1d_sphere_fiber");
    CHECK(r.params.at("mu") == parse("m - 1"));
    CHECK(sym_zero(r.residuals[0] - parse("k/F(x)^2 - m/G(x)*(D(G(x),x,2) + D(F(x),x)*D(G(x),x)/F(x))")));
    CHECK(sym_zero(r.residuals[1] -
                   parse("k*G(x)^2 - (-(m-1) + k/m*G(x)^2 + (m-1)*F(x)^2*D(G(x),x)^2)")));
    CHECK_THROWS_AS(reduced_system("warped_1d_sphere_fiber", {{"m", Expr(0)}}), std::invalid_argument);
    CHECK_THROWS_AS(reduced_system("doubly_warped", {{"p", Expr(1)}}), std::invalid_argument);
    CHECK_THROWS_AS(reduced_system("doubly_warped", {{"q", Expr(1)}}), std::invalid_argument);
    CHECK_THROWS_AS(reduced_system("nope"), std::invalid_argument);
}

TEST_CASE("general warped reduction with n = 1 degenerates to the 1D system") {
    Expr m = sym("m");
    ReducedSystem g = reduced_system("warped_general_n", {{"n", Expr(1)}, {"mu", m - Expr(1)}});
    ReducedSystem w = reduced_system("warped_1d_sphere_fiber");
    REQUIRE(g.residuals.size() == 2);
    Expr r1 = w.residuals[0], r2 = w.residuals[1];
    CHECK(sym_zero(g.residuals[0] + r1));
    // The displayed second equation already uses the first to remove G_xx.
    Expr F = w.unknowns[0], G = w.unknowns[1];
    CHECK(zero(g.residuals[1] + r2 + G * G * F * F / m * r1));
}

TEST_CASE("arc-length rewrite takes the reduced systems to their s-forms") {
    Expr x = sym("x"), s = sym("s");
    SUBCASE("doubly warped, ds/dx = F") {
        ReducedSystem r = reduced_system("doubly_warped");
        Expr F = r.unknowns[0];
        std::vector<Expr> GH{r.unknowns[1], r.unknowns[2]};
        Expr Gs = r.arc_unknowns[0], Hs = r.arc_unknowns[1];
        std::vector<Expr> mult{F * F, Gs * Gs, Hs * Hs};
        for (std::size_t i = 0; i < 3; ++i) {
            Expr t = arc_length_transform(r.residuals[i], x, GH, s, F);
            CHECK(zero(t - mult[i] * r.arc_residuals[i]));
        }
    }
    SUBCASE("warped, ds/dx = 1/F") {
        ReducedSystem r = reduced_system("warped_1d_sphere_fiber");
        Expr F = r.unknowns[0];
        Expr t1 = arc_length_transform(r.residuals[0], x, {r.unknowns[1]}, s, Expr(1) / F);
        Expr t2 = arc_length_transform(r.residuals[1], x, {r.unknowns[1]}, s, Expr(1) / F);
        CHECK(zero(t1 - r.arc_residuals[0] / (F * F)));
        CHECK(sym_zero(t2 - r.arc_residuals[1]));
    }
}

TEST_CASE("strip_common_power") {
    Expr F = parse("F(x)");
    Expr e = parse("k*F(x)^(-2) + D(F(x),x)*F(x)^(-3)");
    CHECK(strip_common_power(e, F) == parse("k*F(x) + D(F(x),x)"));
    CHECK(strip_common_power(parse("x + 1"), F) == parse("x + 1"));
}

TEST_CASE("first integral of the sphere-fiber system") {
    ReducedSystem r = reduced_system("warped_1d_sphere_fiber");
    Expr m = sym("m"), k = sym("k");
    Expr F = r.unknowns[0], G = r.unknowns[1], x = sym("x");
    Expr FGx = F * diff(G, x);
    CHECK(sym_zero(r.residuals[1] + (m - Expr(1)) * (FGx * FGx - k / m * G * G - Expr(1))));
    // The library profiles satisfy G'^2 = (K/m) G^2 + 1.
    for (const char* name : {"warped_hyperbolic", "warped_spherical"}) {
        const ClosedFormSolution& sol = closed_form(name);
        Expr g = sol.profiles[0];
        Expr gp = diff(g, sol.s);
        CHECK(sym_zero(gp * gp - (sol.K / m * g * g + Expr(1))));
    }
}

TEST_CASE("closed-form library verifies symbolically") {
    REQUIRE(closed_form_library().size() == 5);
    for (const auto& sol : closed_form_library()) {
        CAPTURE(sol.name);
        ClosedFormVerdict v = verify_closed_form(sol);
        CHECK(v.weakest() == Verdict::ZeroSymbolic);
        CHECK(!v.reduced.empty());
        CHECK(!v.invariant.empty());
        CHECK(!v.flow.empty());
    }
    CHECK_THROWS_AS(closed_form("nope"), std::invalid_argument);
}

TEST_CASE("first arc-length equation for the sin/cos pair") {
    const ClosedFormSolution& sol = closed_form("dw_sincos");
    ReducedSystem r = reduced_system("doubly_warped", {{"k", sol.K}});
    Expr e = substitute(r.arc_residuals[0], {{r.arc_unknowns[0], sol.profiles[0]}, {r.arc_unknowns[1], sol.profiles[1]}});
    CHECK(sym_zero(e));
}

TEST_CASE("amplitude identities") {
    Expr p = sym("p"), q = sym("q");
    const ClosedFormSolution& sc = closed_form("dw_sincos");
    Expr G = sc.profiles[0], H = sc.profiles[1];
    CHECK(sym_zero(G * G + H * H - (p + q) / (-sc.K)));
    Expr amp = substitute(G, {{sc.s, Expr()}});
    CHECK(amp.is_zero());
    for (const char* name : {"dw_sinsin", "dw_sinhsinh"}) {
        const ClosedFormSolution& sol = closed_form(name);
        Expr g = sol.profiles[0], h = sol.profiles[1];
        CHECK(sym_zero(g * g * (q - Expr(1)) - h * h * (p - Expr(1))));
    }
}

TEST_CASE("specialized solutions and metric pieces") {
    ClosedFormSolution sol = specialize(closed_form("warped_hyperbolic"), {{"m", Expr(2)}, {"k", Expr(1)}});
    CHECK(sol.K == Expr(1));
    CHECK(sol.profiles[0] == parse("2^(1/2)*sinh(2^(-1/2)*s)"));
    CHECK(sol.time_factor() == parse("1 + 2*t"));
    CHECK(verify_closed_form(sol).weakest() == Verdict::ZeroSymbolic);
    SolutionMetric sm = solution_metric(sol);
    REQUIRE(sm.fibers.size() == 1);
    CHECK(sm.fibers[0].dim == Expr(2));
    CHECK(sm.fibers[0].mu == Expr(1));
    FlowPieces fp = solution_flow_pieces(sol);
    REQUIRE(fp.lhs.size() == 2);
    // Hyperbolic space: Ric = −(m−1)/m·g, so ∂_t g_ss = 2 · (1/2) = 1.
    CHECK(fp.lhs[0] == Expr(2));
    CHECK(sym_zero(fp.rhs[0] - Expr(2)));
    CHECK_THROWS_AS(specialize(closed_form("dw_sincos"), {{"k", Expr(-1)}}), std::invalid_argument);

    ClosedFormSolution dw = specialize(closed_form("dw_sinsin"), {{"p", Expr(3)}, {"q", Expr(2)}, {"k", Expr(1)}});
    CHECK(verify_closed_form(dw).weakest() == Verdict::ZeroSymbolic);
    CHECK(dw.metric_str().find("g_S^3") != std::string::npos);
}
