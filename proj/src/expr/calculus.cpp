#include "rsym/calculus.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

#include "rsym/errors.hpp"

namespace rsym {

namespace {

class Differentiator {
public:
    Differentiator(const Expr& var, const std::vector<std::string>& dependent) : var_(var), dependent_(dependent) {
        if (var.kind() == Kind::Jet) dependent_.push_back(var.node().name);
        if (var.kind() != Kind::Symbol && var.kind() != Kind::Jet)
            throw std::invalid_argument("cannot differentiate with respect to " + var.str());
    }

    Expr operator()(const Expr& e) {
        auto it = memo_.find(&e.node());
        if (it != memo_.end()) return it->second;
        Expr r = compute(e);
        memo_.emplace(&e.node(), r);
        keep_.push_back(e);
        return r;
    }

private:
    bool is_dependent(const std::string& name) const {
        return std::find(dependent_.begin(), dependent_.end(), name) != dependent_.end();
    }

    // d/dvar of base^q.
    Expr power_rule(const Expr& base, const Rational& q) {
        Expr db = (*this)(base);
        if (db.is_zero()) return Expr();
        return Expr(q) * pow(base, q - Rational(1)) * db;
    }

    Expr compute(const Expr& e) {
        const Node& n = e.node();
        switch (n.kind) {
            case Kind::Number: return Expr();
            case Kind::Symbol: return e == var_ ? Expr(1) : Expr();
            case Kind::Jet: {
                if (e == var_) return Expr(1);
                if (is_dependent(n.name)) return Expr();
                std::vector<Expr> parts;
                for (std::size_t i = 0; i < n.args.size(); ++i) {
                    Expr da = (*this)(n.args[i]);
                    if (!da.is_zero()) parts.push_back(da * jet_raise(e, i));
                }
                return add(parts);
            }
            case Kind::Func: {
                const Expr& a = n.args[0];
                Expr da = (*this)(a);
                if (da.is_zero()) return Expr();
                switch (n.fn) {
                    case Fn::Sin: return cos(a) * da;
                    case Fn::Cos: return -(sin(a) * da);
                    case Fn::Sinh: return cosh(a) * da;
                    case Fn::Cosh: return sinh(a) * da;
                    case Fn::Exp: return e * da;
                    case Fn::Log: return da * pow(a, Rational(-1));
                }
                return Expr();
            }
            case Kind::Pow: return power_rule(n.args[0], n.value);
            case Kind::Mul: {
                std::vector<Expr> parts;
                for (std::size_t j = 0; j < n.factors.size(); ++j) {
                    Expr db = (*this)(n.factors[j].base);
                    if (db.is_zero()) continue;
                    std::vector<Factor> fs = n.factors;
                    fs[j].exp = fs[j].exp - Rational(1);
                    parts.push_back(make_term(n.value * n.factors[j].exp, std::move(fs)) * db);
                }
                return add(parts);
            }
            case Kind::Add: {
                std::vector<Expr> parts;
                parts.reserve(n.args.size());
                for (const auto& t : n.args) parts.push_back((*this)(t));
                return add(parts);
            }
        }
        return Expr();
    }

    Expr var_;
    std::vector<std::string> dependent_;
    std::unordered_map<const Node*, Expr> memo_;
    std::vector<Expr> keep_;
};

}  // namespace

Expr diff_partial(const Expr& e, const Expr& var, const std::vector<std::string>& dependent) {
    Differentiator d(var, dependent);
    return d(e);
}

Expr diff(const Expr& e, const Expr& s, int order) {
    if (s.kind() != Kind::Symbol) throw std::invalid_argument("diff needs a symbol, got " + s.str());
    Expr out = e;
    for (int k = 0; k < order && !out.is_zero(); ++k) out = diff_partial(out, s, {});
    return out;
}

// ---------------------------------------------------------------------------
// Substitution

namespace {

struct OrdersHash {
    std::size_t operator()(const std::vector<int>& v) const {
        std::size_t h = 0;
        for (int x : v) h = h * 31 + static_cast<std::size_t>(x);
        return h;
    }
};

class Substituter {
public:
    explicit Substituter(const Bindings& bindings) {
        for (const auto& [k, v] : bindings) {
            if (k.kind() != Kind::Symbol && k.kind() != Kind::Jet)
                throw std::invalid_argument("substitution key must be a symbol or jet: " + k.str());
            if (!exact_.emplace(k, v).second) throw InconsistentBindingError("key bound twice: " + k.str());
            if (k.kind() == Kind::Jet && jet_total_order(k) == 0) {
                const Node& n = k.node();
                Entry en;
                en.formal = n.args;
                en.replacement = v;
                for (const auto& a : n.args)
                    if (a.kind() == Kind::Jet) en.dependent.push_back(a.node().name);
                if (!functions_.emplace(n.name, std::move(en)).second)
                    throw InconsistentBindingError("function bound twice: " + n.name);
            }
        }
    }

    Expr operator()(const Expr& e) {
        auto it = memo_.find(&e.node());
        if (it != memo_.end()) return it->second;
        Expr r = compute(e);
        memo_.emplace(&e.node(), r);
        keep_.push_back(e);
        return r;
    }

private:
    struct Entry {
        std::vector<Expr> formal;
        Expr replacement;
        std::vector<std::string> dependent;
        std::unordered_map<std::vector<int>, Expr, OrdersHash> derivatives;
    };

    Expr derivative_of(Entry& en, const std::vector<int>& orders) {
        auto it = en.derivatives.find(orders);
        if (it != en.derivatives.end()) return it->second;
        Expr out = en.replacement;
        for (std::size_t i = 0; i < orders.size(); ++i)
            for (int k = 0; k < orders[i] && !out.is_zero(); ++k)
                out = diff_partial(out, en.formal[i], en.dependent);
        en.derivatives.emplace(orders, out);
        return out;
    }

    Expr compute(const Expr& e) {
        auto hit = exact_.find(e);
        if (hit != exact_.end()) return hit->second;
        const Node& n = e.node();
        switch (n.kind) {
            case Kind::Number:
            case Kind::Symbol: return e;
            case Kind::Jet: {
                std::vector<Expr> args;
                args.reserve(n.args.size());
                bool changed = false;
                for (const auto& a : n.args) {
                    args.push_back((*this)(a));
                    changed = changed || !args.back().same(a);
                }
                auto fit = functions_.find(n.name);
                if (fit != functions_.end() && fit->second.formal.size() == n.args.size()) {
                    Entry& en = fit->second;
                    Expr d = derivative_of(en, n.orders);
                    Bindings plug;
                    for (std::size_t i = 0; i < args.size(); ++i)
                        if (args[i] != en.formal[i]) plug.emplace_back(en.formal[i], args[i]);
                    if (plug.empty()) return d;
                    return substitute(d, plug);
                }
                if (!changed) return e;
                return Expr::jet(n.name, std::move(args), n.orders);
            }
            case Kind::Func: {
                Expr a = (*this)(n.args[0]);
                if (a.same(n.args[0])) return e;
                return apply(n.fn, a);
            }
            case Kind::Pow: {
                Expr b = (*this)(n.args[0]);
                if (b.same(n.args[0])) return e;
                return pow(b, n.value);
            }
            case Kind::Mul: {
                Expr out(n.value);
                bool changed = false;
                std::vector<Expr> parts;
                parts.reserve(n.factors.size());
                for (const auto& f : n.factors) {
                    Expr b = (*this)(f.base);
                    changed = changed || !b.same(f.base);
                    parts.push_back(f.exp.is_one() ? b : pow(b, f.exp));
                }
                if (!changed) return e;
                for (const auto& p : parts) out = out * p;
                return out;
            }
            case Kind::Add: {
                std::vector<Expr> parts;
                parts.reserve(n.args.size());
                bool changed = false;
                for (const auto& t : n.args) {
                    parts.push_back((*this)(t));
                    changed = changed || !parts.back().same(t);
                }
                if (!changed) return e;
                return add(parts);
            }
        }
        return e;
    }

    std::unordered_map<Expr, Expr, ExprHash> exact_;
    std::unordered_map<std::string, Entry> functions_;
    std::unordered_map<const Node*, Expr> memo_;
    std::vector<Expr> keep_;
};

}  // namespace

Expr substitute(const Expr& e, const Bindings& bindings) {
    if (bindings.empty()) return e;
    Substituter s(bindings);
    return s(e);
}

}  // namespace rsym
