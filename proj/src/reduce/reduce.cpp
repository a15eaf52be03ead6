#include "rsym/reduce.hpp"

#include <algorithm>
#include <stdexcept>

#include "rsym/geometry.hpp"
#include "rsym/print.hpp"

namespace rsym {

std::vector<Expr> invariant_surface_conditions(const Generator& X) { return characteristic(X); }

namespace {

bool is_warped(const PdeSystem& s) { return s.name == "warped"; }
bool is_doubly(const PdeSystem& s) { return s.name == "doubly_warped"; }

Generator bare_generator(const PdeSystem& s) {
    Generator X;
    X.indep.push_back(s.time);
    for (const auto& x : s.coords) X.indep.push_back(x);
    X.xi.assign(X.indep.size(), Expr());
    X.dep = s.fields;
    X.eta.assign(s.fields.size(), Expr());
    return X;
}

}  // namespace

Generator scaling_generator(const PdeSystem& s, const Expr& k) {
    Generator X = bare_generator(s);
    X.xi[0] = Expr(1) + Expr(2) * k * s.time;
    if (is_warped(s)) {
        X.eta = {-(k * s.fields[0]), k * s.fields[1]};
    } else if (is_doubly(s)) {
        X.eta = {k * s.fields[0], k * s.fields[1], k * s.fields[2]};
    } else {
        throw std::invalid_argument("no scaling generator for " + s.name);
    }
    X.label = "scaling";
    return X;
}

std::vector<Expr> profile_functions(const PdeSystem& s) {
    static const char* names[] = {"F", "G", "H"};
    std::vector<Expr> out;
    for (std::size_t i = 0; i < s.fields.size() && i < 3; ++i) out.push_back(Expr::function(names[i], s.coords));
    return out;
}

Bindings similarity_substitution(const PdeSystem& s, const Expr& k) {
    if (k.is_zero()) throw std::invalid_argument("similarity reduction needs k != 0");
    Expr tau = Expr(1) + Expr(2) * k * s.time;
    std::vector<Expr> P = profile_functions(s);
    Expr up = pow(tau, Rational(1, 2)), down = pow(tau, Rational(-1, 2));
    if (is_warped(s)) return {{s.fields[0], down * P[0]}, {s.fields[1], up * P[1]}};
    if (is_doubly(s)) return {{s.fields[0], up * P[0]}, {s.fields[1], up * P[1]}, {s.fields[2], up * P[2]}};
    throw std::invalid_argument("no similarity substitution for " + s.name);
}

PdeSystem warped_system_n(std::size_t n, const Expr& m, const Expr& mu) {
    std::vector<Expr> coords;
    if (n == 1) {
        coords.push_back(sym("x"));
    } else {
        for (std::size_t i = 1; i <= n; ++i) coords.push_back(sym("x" + std::to_string(i)));
    }
    Expr t = sym("t");
    std::vector<Expr> args = coords;
    args.push_back(t);
    Expr psi = Expr::function("psi", args), phi = Expr::function("phi", args);
    WarpedDisplay d = warped_display(coords, psi, phi, m, mu);
    PdeSystem s{"warped", coords, t, {psi, phi}, {}};
    Expr lhs = diff(psi, t) * pow(psi, Rational(-3));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) s.residuals.push_back((i == j ? lhs : Expr()) - d.base[i][j]);
    s.residuals.push_back(-(phi * diff(phi, t)) - d.fiber);
    return s;
}

// ---------------------------------------------------------------------------
// Reduced systems

namespace {

Expr param(const Params& p, const std::string& name) {
    auto it = p.find(name);
    return it == p.end() ? sym(name) : it->second;
}

void require_at_least(const Expr& v, std::int64_t lo, const std::string& name) {
    if (!v.is_number()) return;
    Rational q = v.number();
    if (q.den() != 1 || q.num() < lo)
        throw std::invalid_argument(name + " must be an integer >= " + std::to_string(lo) + ", got " + q.str());
}

Expr d(const Expr& f, const Expr& x, int k = 1) { return diff(f, x, k); }

}  // namespace

const std::vector<std::string>& reduced_family_names() {
    static const std::vector<std::string> names{"warped_general_n", "warped_1d_sphere_fiber", "doubly_warped"};
    return names;
}

ReducedSystem reduced_system(const std::string& family, const Params& params) {
    ReducedSystem r;
    r.family = family;
    Expr k = param(params, "k");
    r.params["k"] = k;
    Expr one(1);
    if (family == "warped_general_n") {
        auto it = params.find("n");
        Expr nv = it == params.end() ? Expr(2) : it->second;
        if (!nv.is_number()) throw std::invalid_argument("n must be a number");
        require_at_least(nv, 1, "n");
        Expr m = param(params, "m"), mu = param(params, "mu");
        require_at_least(m, 1, "m");
        r.params["n"] = nv;
        r.params["m"] = m;
        r.params["mu"] = mu;
        std::size_t n = static_cast<std::size_t>(nv.number().num());
        PdeSystem s = warped_system_n(n, m, mu);
        r.indep = s.coords;
        r.unknowns = profile_functions(s);
        Expr F = r.unknowns[0], G = r.unknowns[1];
        WarpedDisplay disp = warped_display(s.coords, F, G, m, mu);
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j)
                r.residuals.push_back((i == j ? -(k / (F * F)) : Expr()) - disp.base[i][j]);
        r.residuals.push_back(-(k * G * G) - disp.fiber);
        return r;
    }
    if (family == "warped_1d_sphere_fiber") {
        Expr m = param(params, "m");
        require_at_least(m, 1, "m");
        Expr mu = m - one;
        r.params["m"] = m;
        r.params["mu"] = mu;
        Expr x = sym("x"), s = sym("s");
        Expr F = Expr::function("F", {x}), G = Expr::function("G", {x});
        r.indep = {x};
        r.unknowns = {F, G};
        r.residuals = {k / (F * F) - m / G * (d(G, x, 2) + d(F, x) * d(G, x) / F),
                       k * G * G - (-mu + k / m * G * G + (m - one) * F * F * d(G, x) * d(G, x))};
        Expr Gs = Expr::function("G", {s});
        r.arc_var = s;
        r.arc_unknowns = {Gs};
        r.arc_residuals = {k - m * d(Gs, s, 2) / Gs, k * Gs * Gs + mu - k / m * Gs * Gs - (m - one) * d(Gs, s) * d(Gs, s)};
        return r;
    }
    if (family == "doubly_warped") {
        Expr p = param(params, "p"), q = param(params, "q");
        require_at_least(p, 2, "p");
        require_at_least(q, 2, "q");
        r.params["p"] = p;
        r.params["q"] = q;
        Expr x = sym("x"), s = sym("s");
        Expr F = Expr::function("F", {x}), G = Expr::function("G", {x}), H = Expr::function("H", {x});
        r.indep = {x};
        r.unknowns = {F, G, H};
        Expr Fx = d(F, x), Gx = d(G, x), Hx = d(H, x), Gxx = d(G, x, 2), Hxx = d(H, x, 2);
        r.residuals = {
            k * F * F - (p / G * (Gxx - Gx * Fx / F) + q / H * (Hxx - Hx * Fx / F)),
            k * G * G - (-(p - one) + pow(G / F, Rational(2)) * (Gxx / G - Gx * Fx / (F * G) +
                                                                  (p - one) * pow(Gx / G, Rational(2)) +
                                                                  q * Gx * Hx / (G * H))),
            k * H * H - (-(q - one) + pow(H / F, Rational(2)) * (Hxx / H - Hx * Fx / (F * H) +
                                                                  (q - one) * pow(Hx / H, Rational(2)) +
                                                                  p * Gx * Hx / (G * H)))};
        Expr Gs = Expr::function("G", {s}), Hs = Expr::function("H", {s});
        Expr G1 = d(Gs, s), H1 = d(Hs, s);
        r.arc_var = s;
        r.arc_unknowns = {Gs, Hs};
        r.arc_residuals = {
            k - (p * d(Gs, s, 2) / Gs + q * d(Hs, s, 2) / Hs),
            k - (d(Gs, s, 2) / Gs + (p - one) * (G1 * G1 - one) / (Gs * Gs) + q * G1 * H1 / (Gs * Hs)),
            k - (d(Hs, s, 2) / Hs + (q - one) * (H1 * H1 - one) / (Hs * Hs) + p * G1 * H1 / (Gs * Hs))};
        return r;
    }
    throw std::invalid_argument("unknown reduced family: " + family);
}

Expr arc_length_transform(const Expr& e, const Expr& x, const std::vector<Expr>& unknowns, const Expr& s,
                          const Expr& density) {
    Expr S = Expr::function("S_arc", {x});
    Bindings lift;
    for (const auto& u : unknowns) lift.emplace_back(u, Expr::function(u.node().name, {S}));
    Expr lifted = substitute(e, lift);
    int top = 0;
    for (const auto& a : free_atoms(lifted))
        if (a.kind() == Kind::Jet && a.node().name == "S_arc") top = std::max(top, jet_total_order(a));
    Bindings chain;
    Expr v = density;
    for (int j = 1; j <= top; ++j) {
        chain.emplace_back(diff(S, x, j), v);
        v = diff(v, x);
    }
    return substitute(substitute(lifted, chain), {{S, s}});
}

Expr strip_common_power(const Expr& e, const Expr& f) {
    auto terms = terms_of(e);
    if (terms.empty()) return e;
    Rational low;
    bool first = true;
    for (const auto& t : terms) {
        Rational ex(0);
        for (const auto& fac : term_view(t).factors)
            if (fac.base == f) ex = fac.exp;
        if (first || ex < low) low = ex;
        first = false;
    }
    return low == Rational(0) ? e : e * pow(f, -low);
}

// ---------------------------------------------------------------------------
// Closed forms

Expr ClosedFormSolution::time_factor() const { return Expr(1) + Expr(2) * K * t; }

std::string ClosedFormSolution::metric_str() const {
    std::string tf = "(" + to_string(time_factor()) + ")";
    std::string out = tf + "*(ds^2 + (" + to_string(profiles[0]) + ")^2 g_S^" +
                      (family == "doubly_warped" ? to_string(params.at("p")) : to_string(params.at("m")));
    if (profiles.size() > 1) out += " + (" + to_string(profiles[1]) + ")^2 g_S^" + to_string(params.at("q"));
    return out + ")";
}

const std::vector<ClosedFormSolution>& closed_form_library() {
    static const std::vector<ClosedFormSolution> lib = [] {
        Expr s = sym("s"), t = sym("t"), k = sym("k"), m = sym("m"), p = sym("p"), q = sym("q");
        Expr k2 = k * k, one(1);
        std::vector<ClosedFormSolution> out;
        Expr wa = sqrt(m / k2), ww = sqrt(k2 / m);
        out.push_back({"warped_hyperbolic", "warped_1d_sphere_fiber", s, t, k, k2, {wa * sinh(ww * s)}, {{"m", m}},
                       "k != 0, m >= 2, s > 0, 1 + 2k^2 t > 0"});
        out.push_back({"warped_spherical", "warped_1d_sphere_fiber", s, t, k, -k2, {wa * sin(ww * s)}, {{"m", m}},
                       "k != 0, m >= 2, 0 < sqrt(k^2/m) s < pi, 1 - 2k^2 t > 0"});
        Expr om = sqrt(k2 / (p + q));
        Expr amp = sqrt((p + q) / k2);
        Expr common = sqrt(p + q) / (k * sqrt(p + q - one));
        Expr ap = sqrt(p - one) * common, aq = sqrt(q - one) * common;
        Params pq{{"p", p}, {"q", q}};
        out.push_back({"dw_sincos", "doubly_warped", s, t, k, -k2, {amp * sin(om * s), amp * cos(om * s)}, pq,
                       "k != 0, p, q >= 2, 0 < omega s < pi/2, 1 - 2k^2 t > 0"});
        out.push_back({"dw_sinsin", "doubly_warped", s, t, k, -k2, {ap * sin(om * s), aq * sin(om * s)}, pq,
                       "k != 0, p, q >= 2, 0 < omega s < pi, 1 - 2k^2 t > 0"});
        out.push_back({"dw_sinhsinh", "doubly_warped", s, t, k, k2, {ap * sinh(om * s), aq * sinh(om * s)}, pq,
                       "k != 0, p, q >= 2, s > 0, 1 + 2k^2 t > 0"});
        return out;
    }();
    return lib;
}

const ClosedFormSolution& closed_form(const std::string& name) {
    for (const auto& s : closed_form_library())
        if (s.name == name) return s;
    throw std::invalid_argument("unknown solution: " + name);
}

ClosedFormSolution specialize(const ClosedFormSolution& sol, const Params& values) {
    Bindings b;
    for (const auto& [name, v] : values) {
        if (name == "k" && v.is_number() && !(v.number() > Rational(0)))
            throw std::invalid_argument("k must be positive (the sign lives in the solution branch)");
        if ((name == "p" || name == "q") && !sol.params.count(name)) continue;
        if (name == "m" && !sol.params.count(name)) continue;
        b.emplace_back(sym(name), v);
    }
    ClosedFormSolution out = sol;
    out.K = substitute(sol.K, b);
    for (auto& p : out.profiles) p = substitute(p, b);
    for (auto& [name, v] : out.params) v = substitute(v, b);
    if (values.count("k")) out.k = values.at("k");
    return out;
}

SolutionMetric solution_metric(const ClosedFormSolution& sol) {
    Expr tau = sol.time_factor();
    Expr r = sqrt(tau);
    SolutionMetric m{tau, {}};
    Expr one(1);
    if (sol.family == "doubly_warped") {
        Expr p = sol.params.at("p"), q = sol.params.at("q");
        m.fibers.push_back({r * sol.profiles[0], p, p - one});
        m.fibers.push_back({r * sol.profiles[1], q, q - one});
    } else {
        Expr mm = sol.params.at("m");
        m.fibers.push_back({r * sol.profiles[0], mm, mm - one});
    }
    return m;
}

FlowPieces solution_flow_pieces(const ClosedFormSolution& sol) {
    SolutionMetric sm = solution_metric(sol);
    MetricFamily base(Chart{{sol.s}, sol.t});
    base.set(0, 0, sm.base);
    WarpedRicci wr = warped_ricci(base, sm.fibers);
    FlowPieces fp;
    fp.lhs.push_back(diff(sm.base, sol.t));
    fp.rhs.push_back(Expr(-2) * wr.base[0][0]);
    for (std::size_t a = 0; a < sm.fibers.size(); ++a) {
        const Expr& w = sm.fibers[a].warp;
        fp.lhs.push_back(diff(w * w, sol.t));
        fp.rhs.push_back(Expr(-2) * wr.fiber_coeff[a]);
    }
    return fp;
}

Verdict ClosedFormVerdict::weakest() const {
    Verdict w = Verdict::ZeroSymbolic;
    for (const auto* list : {&reduced, &invariant, &pde, &flow})
        for (const auto& z : *list) {
            if (z.verdict == Verdict::NonZero) return Verdict::NonZero;
            if (z.verdict == Verdict::ZeroProbabilistic) w = Verdict::ZeroProbabilistic;
        }
    return w;
}

ClosedFormVerdict verify_closed_form(const ClosedFormSolution& sol, const ZeroOptions& opts) {
    ClosedFormVerdict v;
    Params rp = sol.params;
    rp["k"] = sol.K;
    ReducedSystem rs = reduced_system(sol.family, rp);
    Bindings prof;
    for (std::size_t i = 0; i < rs.arc_unknowns.size(); ++i) prof.emplace_back(rs.arc_unknowns[i], sol.profiles[i]);
    for (const auto& r : rs.arc_residuals) v.reduced.push_back(equals_zero(substitute(r, prof), opts));

    // Fields over (x, t) with x the arc-length coordinate.
    bool doubly = sol.family == "doubly_warped";
    Expr one(1);
    PdeSystem sys = doubly ? doubly_warped_system(sol.params.at("p"), sol.params.at("q"))
                           : warped_system(sol.params.at("m"), sol.params.at("m") - one);
    Expr x = sys.coords[0];
    Bindings to_x{{sol.s, x}};
    Expr tau = Expr(1) + Expr(2) * sol.K * sys.time;
    Expr up = pow(tau, Rational(1, 2));
    Bindings fields;
    if (doubly) {
        fields = {{sys.fields[0], up},
                  {sys.fields[1], up * substitute(sol.profiles[0], to_x)},
                  {sys.fields[2], up * substitute(sol.profiles[1], to_x)}};
    } else {
        fields = {{sys.fields[0], pow(tau, Rational(-1, 2))}, {sys.fields[1], up * substitute(sol.profiles[0], to_x)}};
    }
    // Invariance is a property of the similarity form, so test it on generic profiles.
    Bindings generic = similarity_substitution(sys, sol.K);
    for (const auto& q : invariant_surface_conditions(scaling_generator(sys, sol.K)))
        v.invariant.push_back(equals_zero(substitute(q, generic), opts));
    for (const auto& r : sys.residuals) v.pde.push_back(equals_zero(substitute(r, fields), opts));

    FlowPieces fp = solution_flow_pieces(sol);
    for (std::size_t i = 0; i < fp.lhs.size(); ++i) v.flow.push_back(equals_zero(fp.lhs[i] - fp.rhs[i], opts));
    return v;
}

}  // namespace rsym
