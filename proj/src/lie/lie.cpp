#include "rsym/lie.hpp"

#include <algorithm>
#include <stdexcept>

#include "rsym/calculus.hpp"

namespace rsym {

std::vector<std::string> Generator::dep_names() const {
    std::vector<std::string> out;
    for (const auto& u : dep) out.push_back(u.node().name);
    return out;
}

const Expr& Generator::component(const Expr& var) const {
    for (std::size_t i = 0; i < indep.size(); ++i)
        if (indep[i] == var) return xi[i];
    for (std::size_t k = 0; k < dep.size(); ++k)
        if (dep[k] == var) return eta[k];
    throw std::invalid_argument("generator has no component on " + var.str());
}

Generator metric_generator(const FlowSystem& f, Expr xi_t, std::vector<Expr> xi, std::vector<Expr> eta,
                           std::string label) {
    std::size_t n = f.metric.dim();
    if (xi.size() != n || eta.size() != n * (n + 1) / 2) throw std::invalid_argument("generator component count");
    Generator g;
    g.indep.push_back(f.metric.chart().time);
    for (const auto& x : f.metric.chart().coords) g.indep.push_back(x);
    g.xi.push_back(std::move(xi_t));
    for (auto& c : xi) g.xi.push_back(std::move(c));
    g.dep = f.rules.fields();
    g.eta = std::move(eta);
    g.label = std::move(label);
    return g;
}

std::vector<Expr> characteristic(const Generator& X) {
    std::vector<Expr> out;
    for (std::size_t k = 0; k < X.dep.size(); ++k) {
        std::vector<Expr> parts{X.eta[k]};
        for (std::size_t i = 0; i < X.indep.size(); ++i) {
            if (X.xi[i].is_zero()) continue;
            Expr du = diff(X.dep[k], X.indep[i]);
            if (!du.is_zero()) parts.push_back(-(X.xi[i] * du));
        }
        out.push_back(add(parts));
    }
    return out;
}

namespace {

int dep_index(const Generator& X, const Expr& jet) {
    if (jet.kind() != Kind::Jet) return -1;
    for (std::size_t k = 0; k < X.dep.size(); ++k)
        if (X.dep[k].node().name == jet.node().name && X.dep[k].node().args == jet.node().args)
            return static_cast<int>(k);
    return -1;
}

// Σ_i ξ^i D_i(jet)
Expr transport(const Generator& X, const Expr& jet) {
    std::vector<Expr> parts;
    for (std::size_t i = 0; i < X.indep.size(); ++i) {
        if (X.xi[i].is_zero()) continue;
        Expr d = diff(jet, X.indep[i]);
        if (!d.is_zero()) parts.push_back(X.xi[i] * d);
    }
    return add(parts);
}

}  // namespace

Expr prolongation_coefficient(const Generator& X, const std::vector<Expr>& Q, const Expr& jet) {
    int k = dep_index(X, jet);
    if (k < 0) throw std::invalid_argument("not a jet of a dependent variable: " + jet.str());
    if (jet_total_order(jet) == 0) return X.eta[static_cast<std::size_t>(k)];
    const Node& n = jet.node();
    Expr dq = Q[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < n.args.size(); ++i)
        if (n.orders[i] > 0) dq = diff(dq, n.args[i], n.orders[i]);
    return dq + transport(X, jet);
}

ProlongedGenerator prolong2(const Generator& X, const FlowSystem& f) {
    std::size_t n = f.metric.dim();
    const auto& x = f.metric.chart().coords;
    const Expr& t = f.metric.chart().time;
    ProlongedGenerator P;
    P.base = X;
    P.Q = characteristic(X);
    std::size_t m = X.dep.size();
    P.first.assign(m, std::vector<Expr>(n));
    P.time.assign(m, Expr());
    P.second.assign(m, std::vector<std::vector<Expr>>(n, std::vector<Expr>(n)));
    for (std::size_t k = 0; k < m; ++k) {
        const Expr& u = X.dep[k];
        P.time[k] = diff(P.Q[k], t) + transport(X, jet_derivative(u, {t}));
        for (std::size_t a = 0; a < n; ++a) {
            Expr dq = diff(P.Q[k], x[a]);
            P.first[k][a] = dq + transport(X, jet_derivative(u, {x[a]}));
            for (std::size_t b = a; b < n; ++b) {
                Expr v = diff(dq, x[b]) + transport(X, jet_derivative(u, {x[a], x[b]}));
                P.second[k][a][b] = v;
                P.second[k][b][a] = v;
            }
        }
    }
    return P;
}

namespace {

std::size_t upper_index(std::size_t n, std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return i * n - i * (i - 1) / 2 + (j - i);
}

}  // namespace

Matrix apply_prolonged(const ProlongedGenerator& PX, const FlowSystem& f) {
    std::size_t n = f.metric.dim();
    const auto& x = f.metric.chart().coords;
    const Matrix& gi = f.inv;
    const Tensor3& G = f.gamma;
    auto idx = [n](std::size_t i, std::size_t j) { return upper_index(n, i, j); };
    auto eta = [&](std::size_t a, std::size_t b) -> const Expr& { return PX.base.eta[idx(a, b)]; };
    auto eta1 = [&](std::size_t a, std::size_t b, std::size_t c) -> const Expr& { return PX.first[idx(a, b)][c]; };
    auto eta2 = [&](std::size_t a, std::size_t b, std::size_t c, std::size_t d) -> const Expr& {
        return PX.second[idx(a, b)][c][d];
    };
    auto ddg = [&](std::size_t c, std::size_t d, std::size_t a, std::size_t b) {
        return jet_derivative(f.metric.at(a, b), {x[c], x[d]});
    };
    auto prod = [](const Expr& a, const Expr& b) { return a.is_zero() || b.is_zero() ? Expr() : a * b; };

    // η^{γδ} = Σ g^{γa} g^{δb} η_ab
    Matrix eta_up = zero_matrix(n);
    for (std::size_t g = 0; g < n; ++g)
        for (std::size_t d = g; d < n; ++d) {
            std::vector<Expr> parts;
            for (std::size_t a = 0; a < n; ++a)
                for (std::size_t b = 0; b < n; ++b)
                    if (!gi[g][a].is_zero() && !gi[d][b].is_zero() && !eta(a, b).is_zero())
                        parts.push_back(gi[g][a] * gi[d][b] * eta(a, b));
            eta_up[g][d] = eta_up[d][g] = add(parts);
        }
    // δΓ_{τγα} = ½(η_{τγ,α} + η_{τα,γ} − η_{γα,τ})
    Tensor3 dG(n, zero_matrix(n));
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t g = 0; g < n; ++g)
            for (std::size_t a = g; a < n; ++a)
                dG[t][g][a] = dG[t][a][g] = Expr(Rational(1, 2)) * (eta1(t, g, a) + eta1(t, a, g) - eta1(g, a, t));

    Matrix out = zero_matrix(n);
    Rational half(1, 2);
    for (std::size_t al = 0; al < n; ++al)
        for (std::size_t be = al; be < n; ++be) {
            std::vector<Expr> parts;
            parts.push_back(Expr(half) * PX.time[idx(al, be)]);
            for (std::size_t g = 0; g < n; ++g)
                for (std::size_t d = 0; d < n; ++d) {
                    // ½ η^{γδ}{∂γ∂δ g_αβ + ∂α∂β g_γδ − ∂δ∂β g_γα − ∂γ∂α g_δβ}
                    if (!eta_up[g][d].is_zero()) {
                        Expr br = ddg(g, d, al, be) + ddg(al, be, g, d) - ddg(d, be, g, al) - ddg(g, al, d, be);
                        parts.push_back(Expr(half) * eta_up[g][d] * br);
                    }
                    // ½ g^{γδ}{−η_{αβγδ} − η_{γδαβ} + η_{γαδβ} + η_{δβγα}}
                    if (!gi[g][d].is_zero()) {
                        Expr br = -eta2(al, be, g, d) - eta2(g, d, al, be) + eta2(g, al, d, be) + eta2(d, be, g, al);
                        parts.push_back(Expr(half) * gi[g][d] * br);
                    }
                    for (std::size_t t = 0; t < n; ++t)
                        for (std::size_t r = 0; r < n; ++r) {
                            // −{Γ_{τγα}Γ_{ρδβ} − Γ_{τγδ}Γ_{ραβ}}{g^{γδ}η^{τρ} + g^{τρ}η^{γδ}}
                            Expr quad = prod(G[t][g][al], G[r][d][be]) - prod(G[t][g][d], G[r][al][be]);
                            Expr w = prod(gi[g][d], eta_up[t][r]) + prod(gi[t][r], eta_up[g][d]);
                            if (!quad.is_zero() && !w.is_zero()) parts.push_back(-(quad * w));
                            // g^{γδ}g^{τρ}{δΓ_{τγα}Γ_{ρδβ} + δΓ_{ρδβ}Γ_{τγα} − δΓ_{τγδ}Γ_{ραβ} − δΓ_{ραβ}Γ_{τγδ}}
                            Expr gg = prod(gi[g][d], gi[t][r]);
                            if (gg.is_zero()) continue;
                            Expr var = prod(dG[t][g][al], G[r][d][be]) + prod(dG[r][d][be], G[t][g][al]) -
                                       prod(dG[t][g][d], G[r][al][be]) - prod(dG[r][al][be], G[t][g][d]);
                            if (!var.is_zero()) parts.push_back(gg * var);
                        }
                }
            Expr v = Expr(2) * add(parts);
            out[al][be] = out[be][al] = v;
        }
    return out;
}

Expr apply_prolonged_generic(const Generator& X, const std::vector<Expr>& Q, const Expr& residual) {
    std::vector<std::string> deps = X.dep_names();
    std::vector<Expr> parts;
    for (const auto& atom : free_atoms(residual)) {
        if (dep_index(X, atom) < 0) continue;
        Expr coef = prolongation_coefficient(X, Q, atom);
        if (coef.is_zero()) continue;
        Expr d = diff_partial(residual, atom, deps);
        if (!d.is_zero()) parts.push_back(coef * d);
    }
    for (std::size_t i = 0; i < X.indep.size(); ++i) {
        if (X.xi[i].is_zero()) continue;
        Expr d = diff_partial(residual, X.indep[i], deps);
        if (!d.is_zero()) parts.push_back(X.xi[i] * d);
    }
    return add(parts);
}

// ---------------------------------------------------------------------------
// Symmetry checks

namespace {

SymmetryVerdict summarize(std::vector<EntryVerdict> entries) {
    SymmetryVerdict v;
    for (const auto& e : entries) {
        if (e.zero.verdict == Verdict::NonZero) {
            v.symmetry = false;
            if (!v.witness) v.witness = e;
        } else if (e.zero.verdict == Verdict::ZeroProbabilistic && v.strength == Verdict::ZeroSymbolic) {
            v.strength = Verdict::ZeroProbabilistic;
        }
    }
    if (!v.symmetry) v.strength = Verdict::NonZero;
    v.entries = std::move(entries);
    return v;
}

}  // namespace

SymmetryVerdict check_symmetry(const Generator& X, const FlowSystem& f, const ZeroOptions& opts) {
    ProlongedGenerator P = prolong2(X, f);
    Matrix L = apply_prolonged(P, f);
    std::size_t n = f.metric.dim();
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) slots.emplace_back(i, j);
    std::vector<EntryVerdict> entries(slots.size());
    std::vector<std::string> errors(slots.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t s = 0; s < slots.size(); ++s) {
        try {
            auto [i, j] = slots[s];
            Expr v = f.rules.on_shell(L[i][j]);
            EntryVerdict ev;
            ev.row = i;
            ev.col = j;
            ev.zero = equals_zero(v, opts);
            if (ev.zero.verdict == Verdict::NonZero) ev.value = v;
            entries[s] = std::move(ev);
        } catch (const std::exception& e) {
            errors[s] = e.what();
        }
    }
    for (const auto& e : errors)
        if (!e.empty()) throw std::runtime_error(e);
    return summarize(std::move(entries));
}

SymmetryVerdict check_symmetry(const Generator& X, const EvolutionSystem& sys, const std::vector<Expr>& residuals,
                               const ZeroOptions& opts) {
    std::vector<Expr> Q = characteristic(X);
    std::vector<EntryVerdict> entries(residuals.size());
    std::vector<std::string> errors(residuals.size());
#pragma omp parallel for schedule(dynamic)
    for (std::size_t k = 0; k < residuals.size(); ++k) {
        try {
            Expr v = sys.on_shell(apply_prolonged_generic(X, Q, residuals[k]));
            EntryVerdict ev;
            ev.row = k;
            ev.col = k;
            ev.zero = equals_zero(v, opts);
            if (ev.zero.verdict == Verdict::NonZero) ev.value = v;
            entries[k] = std::move(ev);
        } catch (const std::exception& e) {
            errors[k] = e.what();
        }
    }
    for (const auto& e : errors)
        if (!e.empty()) throw std::runtime_error(e);
    return summarize(std::move(entries));
}

// ---------------------------------------------------------------------------
// Theorem family

Generator theorem1_x1(const FlowSystem& f) {
    std::size_t n = f.metric.dim();
    return metric_generator(f, Expr(1), std::vector<Expr>(n), std::vector<Expr>(n * (n + 1) / 2), "X1");
}

Generator theorem1_x2(const FlowSystem& f) {
    std::size_t n = f.metric.dim();
    return metric_generator(f, f.metric.chart().time, std::vector<Expr>(n), f.rules.fields(), "X2");
}

Generator theorem1_xi(const FlowSystem& f, const std::vector<Expr>& xi) {
    std::size_t n = f.metric.dim();
    const auto& x = f.metric.chart().coords;
    if (xi.size() != n) throw std::invalid_argument("need one ξ component per coordinate");
    for (const auto& c : xi) {
        if (depends_on(c, f.metric.chart().time)) throw std::invalid_argument("ξ must not depend on t: " + c.str());
        for (const auto& a : free_atoms(c))
            if (a.kind() == Kind::Jet)
                for (const auto& g : f.rules.fields())
                    if (a.node().name == g.node().name)
                        throw std::invalid_argument("ξ must not depend on the metric: " + c.str());
    }
    std::vector<Expr> eta;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            std::vector<Expr> parts;
            for (std::size_t k = 0; k < n; ++k) {
                Expr dj = diff(xi[k], x[j]), di = diff(xi[k], x[i]);
                if (!dj.is_zero()) parts.push_back(f.metric.at(k, i) * dj);
                if (!di.is_zero()) parts.push_back(f.metric.at(k, j) * di);
            }
            eta.push_back(-add(parts));
        }
    std::string label = "X[";
    for (std::size_t k = 0; k < n; ++k) label += (k ? ", " : "") + xi[k].str();
    label += "]";
    return metric_generator(f, Expr(), xi, eta, label);
}

std::vector<Generator> theorem1_generators(const FlowSystem& f, const std::vector<std::vector<Expr>>& xis) {
    std::vector<Generator> out{theorem1_x1(f), theorem1_x2(f)};
    for (const auto& xi : xis) out.push_back(theorem1_xi(f, xi));
    return out;
}

// ---------------------------------------------------------------------------
// Brackets

namespace {

Expr act(const Generator& X, const Expr& h, const std::vector<std::string>& deps) {
    std::vector<Expr> parts;
    for (std::size_t i = 0; i < X.indep.size(); ++i)
        if (!X.xi[i].is_zero()) parts.push_back(X.xi[i] * diff_partial(h, X.indep[i], deps));
    for (std::size_t k = 0; k < X.dep.size(); ++k)
        if (!X.eta[k].is_zero()) parts.push_back(X.eta[k] * diff_partial(h, X.dep[k], deps));
    return add(parts);
}

}  // namespace

Generator commutator(const Generator& X, const Generator& Y) {
    if (X.indep != Y.indep || X.dep != Y.dep) throw std::invalid_argument("generators act on different variables");
    std::vector<std::string> deps = X.dep_names();
    Generator Z;
    Z.indep = X.indep;
    Z.dep = X.dep;
    for (std::size_t i = 0; i < X.indep.size(); ++i) Z.xi.push_back(act(X, Y.xi[i], deps) - act(Y, X.xi[i], deps));
    for (std::size_t k = 0; k < X.dep.size(); ++k) Z.eta.push_back(act(X, Y.eta[k], deps) - act(Y, X.eta[k], deps));
    Z.label = "[" + X.label + ", " + Y.label + "]";
    return Z;
}

bool same_generator(const Generator& X, const Generator& Y) {
    if (X.indep != Y.indep || X.dep != Y.dep) return false;
    for (std::size_t i = 0; i < X.xi.size(); ++i)
        if (X.xi[i] != Y.xi[i]) return false;
    for (std::size_t k = 0; k < X.eta.size(); ++k)
        if (X.eta[k] != Y.eta[k]) return false;
    return true;
}

// ---------------------------------------------------------------------------
// Determining system

Generator generic_metric_generator(const FlowSystem& f) {
    std::size_t n = f.metric.dim();
    std::vector<Expr> args{f.metric.chart().time};
    for (const auto& x : f.metric.chart().coords) args.push_back(x);
    for (const auto& g : f.rules.fields()) args.push_back(g);
    std::vector<Expr> xi, eta;
    for (std::size_t i = 0; i < n; ++i) xi.push_back(Expr::function("xi" + std::to_string(i + 1), args));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            eta.push_back(Expr::function("eta" + std::to_string(i + 1) + std::to_string(j + 1), args));
    return metric_generator(f, Expr::function("xi_t", args), xi, eta, "generic");
}

std::string monomial_family(const MonomialKey& key, const Expr& time) {
    int first = 0, second = 0, tfirst = 0, tmixed = 0;
    for (const auto& [jet, mult] : key) {
        int ot = jet_order_in(jet, time);
        int total = jet_total_order(jet);
        int* slot = nullptr;
        if (ot == 0) {
            slot = total == 1 ? &first : &second;
        } else {
            slot = total == 1 ? &tfirst : &tmixed;
        }
        *slot += mult;
    }
    std::string out;
    auto emit = [&out](int count, const char* name) {
        for (int i = 0; i < count; ++i) {
            if (!out.empty()) out += ' ';
            out += name;
        }
    };
    emit(tfirst, "∂_t g");
    emit(tmixed, "∂_t∂g");
    emit(first, "∂g");
    emit(second, "∂∂g");
    if (out.empty()) return "no-derivative terms";
    return out + " terms";
}

DeterminingSystem determining_monomial_system(const FlowSystem& f, bool on_shell) {
    DeterminingSystem ds;
    ds.generic = generic_metric_generator(f);
    ProlongedGenerator P = prolong2(ds.generic, f);
    Matrix L = apply_prolonged(P, f);
    std::size_t n = f.metric.dim();
    std::vector<std::string> names = f.rules.field_names();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Expr e = on_shell ? f.rules.on_shell(L[i][j]) : L[i][j];
            std::vector<Expr> jets;
            for (const auto& a : free_atoms(e))
                if (a.kind() == Kind::Jet && jet_total_order(a) > 0 &&
                    std::find(names.begin(), names.end(), a.node().name) != names.end() && is_coordinate_jet(a))
                    jets.push_back(a);
            for (auto& [key, coef] : collect_monomials(e, jets))
                ds.equations.push_back(
                    DeterminingEquation{key, coef, monomial_family(key, f.metric.chart().time) + " (" +
                                                       std::to_string(i + 1) + std::to_string(j + 1) + ")"});
        }
    return ds;
}

Expr specialize(const Expr& coefficient, const Generator& generic, const Generator& concrete) {
    Bindings b;
    for (std::size_t i = 0; i < generic.xi.size(); ++i) b.emplace_back(generic.xi[i], concrete.xi[i]);
    for (std::size_t k = 0; k < generic.eta.size(); ++k) b.emplace_back(generic.eta[k], concrete.eta[k]);
    return substitute(coefficient, b);
}

}  // namespace rsym
