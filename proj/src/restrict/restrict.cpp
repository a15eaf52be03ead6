#include "rsym/restrict.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

#include "rsym/zero.hpp"

namespace rsym {

namespace {

std::vector<Expr> coord_list(const std::string& prefix, std::size_t n) {
    std::vector<Expr> out;
    if (n == 1 && prefix == "x") return {sym("x")};
    for (std::size_t i = 1; i <= n; ++i) out.push_back(sym(prefix + std::to_string(i)));
    return out;
}

std::vector<Expr> concat(std::vector<Expr> a, const std::vector<Expr>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

// Symmetric matrix of unknown functions name<k><l>(args).
std::vector<std::vector<Expr>> fiber_functions(const std::string& name, std::size_t m, const std::vector<Expr>& args,
                                               std::vector<Expr>& all) {
    std::vector<std::vector<Expr>> out(m, std::vector<Expr>(m));
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = k; l < m; ++l) {
            Expr f = Expr::function(name + std::to_string(k + 1) + std::to_string(l + 1), args);
            out[k][l] = out[l][k] = f;
            all.push_back(f);
        }
    return out;
}

Ansatz warped(const std::string& name, std::size_t n, std::size_t m, bool euclidean) {
    std::vector<Expr> x = coord_list("x", n), y = coord_list("y", m);
    Chart c{concat(x, y), sym("t")};
    std::vector<Expr> args = concat(x, {c.time});
    Expr psi = Expr::function("psi", args), phi = Expr::function("phi", args);
    Ansatz a{name, MetricFamily(c, {{"psi", args}, {"phi", args}}), {psi, phi}, {}};
    for (std::size_t i = 0; i < n; ++i) a.metric.set(i, i, pow(psi, Rational(-2)));
    std::vector<std::vector<Expr>> gc;
    if (!euclidean) gc = fiber_functions("gc", m, y, a.fiber);
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t l = k; l < m; ++l) {
            Expr base = euclidean ? Expr(k == l ? 1 : 0) : gc[k][l];
            a.metric.set(n + k, n + l, pow(phi, Rational(2)) * base);
        }
    return a;
}

}  // namespace

const std::vector<std::string>& ansatz_names() {
    static const std::vector<std::string> names{"conformal2d",           "conformal_rn",
                                                "einstein_static",       "warped_einstein_fiber",
                                                "warped_euclidean_fiber", "doubly_warped"};
    return names;
}

Ansatz make_ansatz(const std::string& name, std::size_t n, std::size_t m) {
    if (n == 0) throw std::invalid_argument("base dimension must be positive");
    if (name == "conformal2d") {
        Chart c = Chart::standard(2);
        Expr u = Expr::function("u", {c.coords[0], c.coords[1], c.time});
        Ansatz a{name, MetricFamily(c, {{"u", u.node().args}}), {u}, {}};
        a.metric.set(0, 0, exp(u));
        a.metric.set(1, 1, exp(u));
        return a;
    }
    if (name == "conformal_rn") {
        Chart c{coord_list("x", n), sym("t")};
        Expr psi = Expr::function("psi", concat(c.coords, {c.time}));
        Ansatz a{name, MetricFamily(c, {{"psi", psi.node().args}}), {psi}, {}};
        for (std::size_t i = 0; i < n; ++i) a.metric.set(i, i, pow(psi, Rational(-2)));
        return a;
    }
    if (name == "einstein_static") {
        Chart c{coord_list("x", n), sym("t")};
        std::vector<FieldDecl> decls;
        std::vector<Expr> calls;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                decls.push_back({"g" + std::to_string(i + 1) + std::to_string(j + 1), c.coords});
                calls.push_back(decls.back().call());
            }
        Ansatz a{name, MetricFamily(c, decls), calls, {}};
        std::size_t k = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) a.metric.set(i, j, calls[k++]);
        return a;
    }
    if (name == "warped_einstein_fiber") return warped(name, n, m, false);
    if (name == "warped_euclidean_fiber") return warped(name, n, m, true);
    if (name == "doubly_warped") {
        std::size_t p = n < 2 ? 2 : n, q = m < 2 ? 2 : m;
        Expr x = sym("x"), t = sym("t");
        std::vector<Expr> y = coord_list("y", p), z = coord_list("z", q);
        Chart c{concat(concat({x}, y), z), t};
        std::vector<Expr> args{x, t};
        Expr chi = Expr::function("chi", args), phi = Expr::function("phi", args), psi = Expr::function("psi", args);
        Ansatz a{name, MetricFamily(c, {{"chi", args}, {"phi", args}, {"psi", args}}), {chi, phi, psi}, {}};
        a.metric.set(0, 0, pow(chi, Rational(2)));
        auto ga = fiber_functions("ga", p, y, a.fiber);
        auto gb = fiber_functions("gb", q, z, a.fiber);
        for (std::size_t k = 0; k < p; ++k)
            for (std::size_t l = k; l < p; ++l) a.metric.set(1 + k, 1 + l, pow(phi, Rational(2)) * ga[k][l]);
        for (std::size_t k = 0; k < q; ++k)
            for (std::size_t l = k; l < q; ++l)
                a.metric.set(1 + p + k, 1 + p + l, pow(psi, Rational(2)) * gb[k][l]);
        return a;
    }
    throw std::invalid_argument("unknown ansatz: " + name);
}

Matrix restricted_metric_characteristic(const Ansatz& a, const std::vector<Expr>& xi, const Expr& c1,
                                        const Expr& c2) {
    const MetricFamily& g = a.metric;
    std::size_t n = g.dim();
    const auto& x = g.chart().coords;
    const Expr& t = g.chart().time;
    Matrix out = zero_matrix(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            std::vector<Expr> parts{c2 * g.at(i, j), -((c1 + c2 * t) * diff(g.at(i, j), t))};
            for (std::size_t s = 0; s < n; ++s) {
                parts.push_back(-(g.at(s, i) * diff(xi[s], x[j])));
                parts.push_back(-(g.at(s, j) * diff(xi[s], x[i])));
                parts.push_back(-(xi[s] * diff(g.at(i, j), x[s])));
            }
            out[i][j] = out[j][i] = add(parts);
        }
    return out;
}

namespace {

bool mentions(const Expr& e, const std::set<std::string>& names) {
    for (const auto& a : free_atoms(e))
        if (a.kind() == Kind::Jet && names.count(a.node().name)) return true;
    return false;
}

// Coefficients of e grouped by products of factors that involve the given
// unknown functions; each coefficient must vanish on its own.
std::vector<Expr> split_by_fields(const Expr& e, const std::set<std::string>& names) {
    Expr cleared = clear_denominators(e, 20000);
    std::map<Expr, std::vector<Expr>, ExprLess> groups;
    for (const auto& term : terms_of(cleared)) {
        TermView v = term_view(term);
        std::vector<Factor> dep, rest;
        for (const auto& f : v.factors) (mentions(f.base, names) ? dep : rest).push_back(f);
        groups[make_term(Rational(1), dep)].push_back(make_term(v.coef, rest));
    }
    std::vector<Expr> out;
    for (auto& [key, parts] : groups) {
        Expr c = add(parts);
        if (!c.is_zero()) out.push_back(c);
    }
    return out;
}

Expr normalize(const Expr& c) {
    auto ts = terms_of(c);
    Rational lead = term_view(ts.front()).coef;
    return Expr(Rational(1) / lead) * c;
}

void push_unique(std::vector<Expr>& out, const Expr& c) {
    Expr n = normalize(c);
    for (const auto& e : out)
        if (e == n) return;
    out.push_back(n);
}

// The unknown ξ component a single-term constraint pins down, with its
// replacement: ξ = 0, or ξ without the argument it cannot depend on.
std::optional<std::pair<Expr, Expr>> elimination(const Expr& c, const std::vector<Expr>& xi) {
    if (terms_of(c).size() != 1) return std::nullopt;
    TermView v = term_view(c);
    if (v.factors.size() != 1 || v.factors[0].exp != Rational(1)) return std::nullopt;
    const Expr& j = v.factors[0].base;
    if (j.kind() != Kind::Jet) return std::nullopt;
    for (const auto& f : xi) {
        if (f.kind() != Kind::Jet || f.node().name != j.node().name || f.node().args != j.node().args) continue;
        int order = jet_total_order(j);
        if (order == 0) return std::make_pair(f, Expr());
        if (order != 1) return std::nullopt;
        const Node& n = j.node();
        std::vector<Expr> args;
        for (std::size_t i = 0; i < n.args.size(); ++i)
            if (n.orders[i] == 0) args.push_back(n.args[i]);
        return std::make_pair(f, args.empty() ? Expr::function(n.name + "_c", {}) : Expr::function(n.name, args));
    }
    return std::nullopt;
}

}  // namespace

RestrictionResult restrict_ansatz(const Ansatz& a) {
    const MetricFamily& g = a.metric;
    std::size_t n = g.dim(), m = a.fields.size();
    const auto& coords = g.chart().coords;
    const Expr& t = g.chart().time;
    std::vector<std::string> field_names;
    for (const auto& u : a.fields) field_names.push_back(u.node().name);
    std::set<std::string> matched(field_names.begin(), field_names.end());
    for (const auto& f : a.fiber) matched.insert(f.node().name);

    // Jacobian ∂g_ab/∂u_k over stored entries.
    std::vector<std::pair<std::size_t, std::size_t>> rows;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) rows.emplace_back(i, j);
    std::vector<std::vector<Expr>> J(rows.size(), std::vector<Expr>(m));
    for (std::size_t r = 0; r < rows.size(); ++r)
        for (std::size_t k = 0; k < m; ++k)
            J[r][k] = diff_partial(g.at(rows[r].first, rows[r].second), a.fields[k], field_names);
    // One pivot row per field that involves that field alone.
    std::vector<std::size_t> pivot(m, rows.size());
    for (std::size_t k = 0; k < m; ++k)
        for (std::size_t r = 0; r < rows.size() && pivot[k] == rows.size(); ++r) {
            bool alone = !J[r][k].is_zero() && equals_zero(J[r][k]).verdict == Verdict::NonZero;
            for (std::size_t l = 0; l < m && alone; ++l)
                if (l != k && !J[r][l].is_zero()) alone = false;
            if (alone) pivot[k] = r;
        }
    for (std::size_t k = 0; k < m; ++k)
        if (pivot[k] == rows.size())
            throw std::invalid_argument(a.name + ": no entry determines " + a.fields[k].str() +
                                        " alone (rank condition fails)");

    RestrictionResult res;
    res.c1 = sym("c1");
    res.c2 = sym("c2");
    std::vector<Expr> xi;
    for (std::size_t s = 0; s < n; ++s) xi.push_back(Expr::function("xi" + std::to_string(s + 1), coords));
    std::vector<Expr> original = xi;

    // Variables the fields actually depend on.
    std::vector<Expr> kept;
    auto used = [&](const Expr& v) {
        for (const auto& u : a.fields)
            if (std::find(u.node().args.begin(), u.node().args.end(), v) != u.node().args.end()) return true;
        return false;
    };
    if (used(t)) kept.push_back(t);
    for (const auto& x : coords)
        if (used(x)) kept.push_back(x);

    for (int round = 0; round < 64; ++round) {
        Matrix QM = restricted_metric_characteristic(a, xi, res.c1, res.c2);
        std::vector<Expr> Q(m);
        for (std::size_t k = 0; k < m; ++k) {
            auto [i, j] = rows[pivot[k]];
            Q[k] = QM[i][j] / J[pivot[k]][k];
        }
        std::vector<Expr> constraints;
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (std::find(pivot.begin(), pivot.end(), r) != pivot.end()) continue;
            std::vector<Expr> parts{QM[rows[r].first][rows[r].second]};
            for (std::size_t k = 0; k < m; ++k)
                if (!J[r][k].is_zero()) parts.push_back(-(J[r][k] * Q[k]));
            for (const auto& c : split_by_fields(add(parts), matched)) push_unique(constraints, c);
        }
        // Q_k involves only the field jets and the variables u_k depends on.
        std::set<std::string> fiber_names;
        for (const auto& f : a.fiber) fiber_names.insert(f.node().name);
        for (std::size_t k = 0; k < m; ++k) {
            std::vector<Expr> keep, drop;
            for (const auto& term : terms_of(Q[k])) (mentions(term, fiber_names) ? drop : keep).push_back(term);
            for (const auto& c : split_by_fields(add(drop), matched)) push_unique(constraints, c);
            Q[k] = add(keep);
            const auto& args = a.fields[k].node().args;
            for (const auto& v : concat(coords, {t}))
                if (std::find(args.begin(), args.end(), v) == args.end())
                    for (const auto& c : split_by_fields(diff(Q[k], v), matched)) push_unique(constraints, c);
        }
        Bindings step;
        for (const auto& c : constraints) {
            if (c == res.c1 || c == res.c2) {
                step.emplace_back(c, Expr());
                continue;
            }
            if (auto e = elimination(c, xi)) {
                bool fresh = true;
                for (const auto& b : step)
                    if (b.first == e->first) fresh = false;
                if (fresh) step.push_back(*e);
            }
        }
        if (step.empty()) {
            res.constraints = constraints;
            res.Q = Q;
            break;
        }
        for (const auto& [key, value] : step) {
            if (key == res.c1) res.c1 = value;
            else if (key == res.c2) res.c2 = value;
            for (auto& x : xi)
                if (x == key) x = value;
        }
        if (round == 63) throw std::runtime_error(a.name + ": constraint elimination did not settle");
    }
    res.xi = xi;
    for (std::size_t s = 0; s < n; ++s)
        if (xi[s] != original[s]) res.eliminated.emplace_back(original[s], xi[s]);

    Generator& X = res.restricted;
    X.label = a.name;
    X.dep = a.fields;
    for (const auto& v : kept) {
        X.indep.push_back(v);
        if (v == t) {
            X.xi.push_back(res.c1 + res.c2 * t);
        } else {
            auto it = std::find(coords.begin(), coords.end(), v);
            X.xi.push_back(xi[static_cast<std::size_t>(it - coords.begin())]);
        }
    }
    for (std::size_t k = 0; k < m; ++k) {
        std::vector<Expr> parts{res.Q[k]};
        for (std::size_t i = 0; i < X.indep.size(); ++i) parts.push_back(X.xi[i] * diff(a.fields[k], X.indep[i]));
        X.eta.push_back(add(parts));
    }
    return res;
}

Generator instantiate(const Generator& X, const Bindings& b) {
    Generator out = X;
    for (auto& c : out.xi) c = substitute(c, b);
    for (auto& c : out.eta) c = substitute(c, b);
    return out;
}

Generator system_generator(const PdeSystem& s, std::vector<Expr> xi, std::vector<Expr> eta, std::string label) {
    Generator X;
    X.indep = concat({s.time}, s.coords);
    X.dep = s.fields;
    if (xi.size() != X.indep.size() || eta.size() != X.dep.size())
        throw std::invalid_argument("generator component count does not match " + s.name);
    X.xi = std::move(xi);
    X.eta = std::move(eta);
    X.label = std::move(label);
    return X;
}

std::vector<SymmetryVerdict> verify_restricted_algebra(const std::vector<Generator>& claimed, const PdeSystem& s,
                                                       const ZeroOptions& opts) {
    EvolutionSystem sys = to_evolution(s);
    std::vector<SymmetryVerdict> out;
    for (const auto& X : claimed) out.push_back(check_symmetry(X, sys, s.residuals, opts));
    return out;
}

bool AuditCandidate::holds() const {
    return std::all_of(verdicts.begin(), verdicts.end(), [](const SymmetryVerdict& v) { return v.symmetry; });
}

namespace {

void run(AuditCandidate& c, const PdeSystem& s) { c.verdicts = verify_restricted_algebra(c.generators, s); }

}  // namespace

AuditReport audit_warped_theorem(bool euclidean_fiber, const Expr& m) {
    Expr mu = euclidean_fiber ? Expr() : m - Expr(1);
    PdeSystem s = warped_system(m, mu);
    Expr t = s.time, x = s.coords[0], psi = s.fields[0], phi = s.fields[1];
    Expr xi = x * x + sin(x), dxi = diff(xi, x);
    Expr half(Rational(1, 2));
    AuditReport r;
    r.theorem = euclidean_fiber ? "warped product, flat fiber" : "warped product, Einstein fiber";

    AuditCandidate statement{"statement", {}, {}};
    statement.generators.push_back(system_generator(s, {1, Expr()}, {Expr(), Expr()}, "X1 = d/dt"));
    statement.generators.push_back(
        system_generator(s, {t, Expr()}, {-(half * psi), half * phi}, "X2 = t d/dt - psi/2 d/dpsi + phi/2 d/dphi"));
    statement.generators.push_back(system_generator(s, {Expr(), xi}, {psi * dxi, Expr()}, "xi d/dx + psi xi' d/dpsi"));
    if (euclidean_fiber) statement.generators.push_back(system_generator(s, {Expr(), Expr()}, {Expr(), phi}, "phi d/dphi"));

    AuditCandidate proof{"proof display", {}, {}};
    proof.generators.push_back(system_generator(s, {1, Expr()}, {Expr(), Expr()}, "c1: d/dt"));
    proof.generators.push_back(
        system_generator(s, {Expr(2) * t, Expr()}, {-psi, Expr(1)}, "c2: 2t d/dt - psi d/dpsi + d/dphi"));
    proof.generators.push_back(system_generator(s, {Expr(), xi}, {psi * dxi, Expr()}, "xi d/dx + psi xi' d/dpsi"));
    if (euclidean_fiber) proof.generators.push_back(system_generator(s, {Expr(), Expr()}, {Expr(), phi}, "c3: phi d/dphi"));

    // The same ansatz pushed through the restriction engine (unknown ξ, c1, c2).
    AuditCandidate engine{"restriction", {}, {}};
    RestrictionResult rr =
        restrict_ansatz(make_ansatz(euclidean_fiber ? "warped_euclidean_fiber" : "warped_einstein_fiber", 1, 2));
    engine.generators.push_back(rr.restricted);

    run(statement, s);
    run(proof, s);
    run(engine, s);
    r.candidates = {statement, proof, engine};
    return r;
}

AuditReport audit_conformal_corollary() {
    PdeSystem s = conformal_rn_system();
    Expr t = s.time, x1 = s.coords[0], x2 = s.coords[1], psi = s.fields[0];
    Expr xi1 = x1 * x1 - x2 * x2, xi2 = Expr(2) * x1 * x2;
    Expr d1 = diff(xi1, x1), d2 = diff(xi2, x2);
    AuditReport r;
    r.theorem = "conformal flow on R^2";
    auto base = [&](AuditCandidate& c) {
        c.generators.push_back(system_generator(s, {1, Expr(), Expr()}, {Expr()}, "X1 = d/dt"));
        c.generators.push_back(
            system_generator(s, {t, Expr(), Expr()}, {-(Expr(Rational(1, 2)) * psi)}, "X2 = t d/dt - psi/2 d/dpsi"));
    };
    AuditCandidate single{"psi d_k xi^k, one k", {}, {}}, summed{"psi div xi", {}, {}};
    base(single);
    base(summed);
    single.generators.push_back(system_generator(s, {Expr(), xi1, xi2}, {psi * d1}, "xi + psi d1 xi1 d/dpsi"));
    summed.generators.push_back(
        system_generator(s, {Expr(), xi1, xi2}, {psi * (d1 + d2)}, "xi + psi (d1 xi1 + d2 xi2) d/dpsi"));
    run(single, s);
    run(summed, s);
    r.candidates = {single, summed};
    return r;
}

std::vector<Generator> doubly_warped_generators(const PdeSystem& s, const Expr& xi) {
    Expr t = s.time, x = s.coords[0];
    const auto& u = s.fields;
    return {system_generator(s, {1, Expr()}, {Expr(), Expr(), Expr()}, "X1 = d/dt"),
            system_generator(s, {Expr(2) * t, Expr()}, {u[0], u[1], u[2]},
                             "X2 = 2t d/dt + chi d/dchi + phi d/dphi + psi d/dpsi"),
            system_generator(s, {Expr(), xi}, {-(u[0] * diff(xi, x)), Expr(), Expr()},
                             "X3 = xi d/dx - chi xi' d/dchi")};
}

AuditReport audit_doubly_warped(const Expr& p, const Expr& q) {
    PdeSystem s = doubly_warped_system(p, q);
    Expr x = s.coords[0];
    Expr xi = x * x + sin(x);
    AuditReport r;
    r.theorem = "doubly-warped product";
    AuditCandidate statement{"statement", doubly_warped_generators(s, xi), {}};
    AuditCandidate proof{"proof Q_chi", {}, {}};
    proof.generators.push_back(system_generator(s, {Expr(), xi}, {-(Expr(Rational(1, 2)) * s.fields[0] * diff(xi, x)),
                                                                   Expr(), Expr()},
                                                "xi d/dx - chi xi'/2 d/dchi"));
    run(statement, s);
    run(proof, s);
    r.candidates = {statement, proof};
    return r;
}

std::vector<ZeroResult> check_einstein_static(std::size_t n, const std::vector<Expr>& xi, const Expr& c,
                                              const ZeroOptions& opts) {
    Ansatz a = make_ansatz("einstein_static", n);
    const auto& x = a.metric.chart().coords;
    if (xi.size() != n) throw std::invalid_argument("need one ξ component per coordinate");
    Matrix ric = ricci(a.metric);
    Generator X;
    X.indep = x;
    X.xi = xi;
    X.dep = a.fields;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            std::vector<Expr> parts{c * a.metric.at(i, j)};
            for (std::size_t k = 0; k < n; ++k) {
                parts.push_back(a.metric.at(k, i) * diff(xi[k], x[j]));
                parts.push_back(a.metric.at(k, j) * diff(xi[k], x[i]));
            }
            X.eta.push_back(-add(parts));
        }
    std::vector<Expr> Q = characteristic(X);
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) slots.emplace_back(i, j);
    std::vector<ZeroResult> out(slots.size());
    std::vector<std::string> errors(slots.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < slots.size(); ++k) {
      try {
        auto [a1, b1] = slots[k];
        std::vector<Expr> parts{apply_prolonged_generic(X, Q, ric[a1][b1])};
        for (std::size_t s = 0; s < n; ++s) {
            parts.push_back(ric[s][b1] * diff(xi[s], x[a1]));
            parts.push_back(ric[a1][s] * diff(xi[s], x[b1]));
        }
        out[k] = equals_zero(add(parts), opts);
      } catch (const std::exception& e) {
        errors[k] = e.what();
      }
    }
    for (const auto& e : errors)
        if (!e.empty()) throw std::runtime_error(e);
    return out;
}

}  // namespace rsym
