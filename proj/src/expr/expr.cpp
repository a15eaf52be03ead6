#include "rsym/expr.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <functional>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace rsym {

namespace {

std::size_t mix(std::size_t h, std::size_t v) {
    return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

struct NodeFactory {
    static Expr wrap(Node&& n) { return Expr(std::make_shared<const Node>(std::move(n))); }

    static Expr number(const Rational& q) {
        Node n;
        n.kind = Kind::Number;
        n.value = q;
        n.hash = mix(11, q.hash());
        return wrap(std::move(n));
    }
    static Expr symbol(std::string name) {
        Node n;
        n.kind = Kind::Symbol;
        n.hash = mix(23, std::hash<std::string>{}(name));
        n.name = std::move(name);
        return wrap(std::move(n));
    }
    static Expr jet(std::string name, std::vector<Expr> args, std::vector<int> orders) {
        Node n;
        n.kind = Kind::Jet;
        std::size_t h = mix(37, std::hash<std::string>{}(name));
        for (const auto& a : args) h = mix(h, a.hash());
        for (int o : orders) h = mix(h, static_cast<std::size_t>(o) + 1);
        n.hash = h;
        n.name = std::move(name);
        n.args = std::move(args);
        n.orders = std::move(orders);
        return wrap(std::move(n));
    }
    static Expr func(Fn f, Expr arg) {
        Node n;
        n.kind = Kind::Func;
        n.fn = f;
        n.hash = mix(mix(41, static_cast<std::size_t>(f)), arg.hash());
        n.args = {std::move(arg)};
        return wrap(std::move(n));
    }
    static Expr power(Expr base, const Rational& q) {
        Node n;
        n.kind = Kind::Pow;
        n.value = q;
        n.hash = mix(mix(53, base.hash()), q.hash());
        n.args = {std::move(base)};
        return wrap(std::move(n));
    }
    static Expr product(const Rational& coef, std::vector<Factor> fs) {
        Node n;
        n.kind = Kind::Mul;
        n.value = coef;
        std::size_t h = mix(67, coef.hash());
        for (const auto& f : fs) h = mix(mix(h, f.base.hash()), f.exp.hash());
        n.hash = h;
        n.factors = std::move(fs);
        return wrap(std::move(n));
    }
    static Expr sum(std::vector<Expr> terms) {
        Node n;
        n.kind = Kind::Add;
        std::size_t h = 79;
        for (const auto& t : terms) h = mix(h, t.hash());
        n.hash = h;
        n.args = std::move(terms);
        return wrap(std::move(n));
    }
};

namespace {

const Expr& zero_expr() {
    static const Expr z = NodeFactory::number(Rational(0));
    return z;
}
const Expr& one_expr() {
    static const Expr o = NodeFactory::number(Rational(1));
    return o;
}

}  // namespace

// ---------------------------------------------------------------------------
// Expr basics

Expr::Expr() : node_(zero_expr().node_) {}
Expr::Expr(std::int64_t v) : Expr(Rational(v)) {}
Expr::Expr(const Rational& q) {
    if (q.is_zero()) {
        node_ = zero_expr().node_;
    } else if (q.is_one()) {
        node_ = one_expr().node_;
    } else {
        node_ = NodeFactory::number(q).node_;
    }
}

Expr Expr::symbol(std::string name) {
    if (name.empty()) throw std::invalid_argument("empty symbol name");
    return NodeFactory::symbol(std::move(name));
}

Expr Expr::function(std::string name, std::vector<Expr> args) {
    std::vector<int> orders(args.size(), 0);
    return NodeFactory::jet(std::move(name), std::move(args), std::move(orders));
}

Expr Expr::jet(std::string name, std::vector<Expr> args, std::vector<int> orders) {
    if (orders.empty()) orders.assign(args.size(), 0);
    if (orders.size() != args.size()) throw std::invalid_argument("jet order list does not match arguments");
    for (int o : orders)
        if (o < 0) throw std::invalid_argument("negative derivative order");
    return NodeFactory::jet(std::move(name), std::move(args), std::move(orders));
}

Kind Expr::kind() const { return node_->kind; }
std::size_t Expr::hash() const { return node_->hash; }
bool Expr::is_zero() const { return node_->kind == Kind::Number && node_->value.is_zero(); }
bool Expr::is_one() const { return node_->kind == Kind::Number && node_->value.is_one(); }
const Rational& Expr::number() const {
    if (node_->kind != Kind::Number) throw std::logic_error("not a number");
    return node_->value;
}

std::string_view fn_name(Fn f) {
    switch (f) {
        case Fn::Sin: return "sin";
        case Fn::Cos: return "cos";
        case Fn::Sinh: return "sinh";
        case Fn::Cosh: return "cosh";
        case Fn::Exp: return "exp";
        case Fn::Log: return "log";
    }
    return "?";
}

std::optional<Fn> fn_from_name(std::string_view name) {
    if (name == "sin") return Fn::Sin;
    if (name == "cos") return Fn::Cos;
    if (name == "sinh") return Fn::Sinh;
    if (name == "cosh") return Fn::Cosh;
    if (name == "exp") return Fn::Exp;
    if (name == "log") return Fn::Log;
    return std::nullopt;
}

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    if (a.node_->hash != b.node_->hash) return false;
    return compare(a, b) == 0;
}

// ---------------------------------------------------------------------------
// Ordering

namespace {

int cmp_rational(const Rational& a, const Rational& b) {
    if (a == b) return 0;
    return a < b ? -1 : 1;
}

int compare_factor_lists(const std::vector<Factor>& a, const std::vector<Factor>& b) {
    std::size_t n = std::min(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        int c = compare(a[i].base, b[i].base);
        if (c != 0) return c;
        // Higher powers first.
        if (a[i].exp != b[i].exp) return a[i].exp > b[i].exp ? -1 : 1;
    }
    if (a.size() != b.size()) return a.size() > b.size() ? -1 : 1;
    return 0;
}

}  // namespace

int compare(const Expr& a, const Expr& b) {
    if (a.same(b)) return 0;
    const Node& x = a.node();
    const Node& y = b.node();
    if (x.kind != y.kind) return static_cast<int>(x.kind) < static_cast<int>(y.kind) ? -1 : 1;
    switch (x.kind) {
        case Kind::Number: return cmp_rational(x.value, y.value);
        case Kind::Symbol: return x.name.compare(y.name) < 0 ? -1 : (x.name == y.name ? 0 : 1);
        case Kind::Jet: {
            if (x.name != y.name) return x.name < y.name ? -1 : 1;
            int ox = 0, oy = 0;
            for (int o : x.orders) ox += o;
            for (int o : y.orders) oy += o;
            if (ox != oy) return ox < oy ? -1 : 1;
            if (x.args.size() != y.args.size()) return x.args.size() < y.args.size() ? -1 : 1;
            for (std::size_t i = 0; i < x.args.size(); ++i) {
                int c = compare(x.args[i], y.args[i]);
                if (c != 0) return c;
            }
            for (std::size_t i = 0; i < x.orders.size(); ++i)
                if (x.orders[i] != y.orders[i]) return x.orders[i] > y.orders[i] ? -1 : 1;
            return 0;
        }
        case Kind::Func:
            if (x.fn != y.fn) return static_cast<int>(x.fn) < static_cast<int>(y.fn) ? -1 : 1;
            return compare(x.args[0], y.args[0]);
        case Kind::Pow: {
            int c = compare(x.args[0], y.args[0]);
            if (c != 0) return c;
            return cmp_rational(x.value, y.value);
        }
        case Kind::Mul: {
            int c = compare_factor_lists(x.factors, y.factors);
            if (c != 0) return c;
            return cmp_rational(x.value, y.value);
        }
        case Kind::Add: {
            std::size_t n = std::min(x.args.size(), y.args.size());
            for (std::size_t i = 0; i < n; ++i) {
                int c = compare(x.args[i], y.args[i]);
                if (c != 0) return c;
            }
            if (x.args.size() != y.args.size()) return x.args.size() < y.args.size() ? -1 : 1;
            return 0;
        }
    }
    return 0;
}

// ---------------------------------------------------------------------------
// Terms

TermView term_view(const Expr& e) {
    const Node& n = e.node();
    switch (n.kind) {
        case Kind::Number: return {n.value, {}};
        case Kind::Mul: return {n.value, n.factors};
        case Kind::Pow: return {Rational(1), {Factor{n.args[0], n.value}}};
        case Kind::Add: throw std::logic_error("term_view of a sum");
        default: return {Rational(1), {Factor{e, Rational(1)}}};
    }
}

std::vector<Expr> terms_of(const Expr& e) {
    if (e.kind() == Kind::Add) return e.node().args;
    if (e.is_zero()) return {};
    return {e};
}

namespace {

// Builds a term node from already-normalized parts.
Expr build_term_node(const Rational& coef, std::vector<Factor> fs) {
    if (coef.is_zero()) return Expr();
    if (fs.empty()) return Expr(coef);
    if (coef.is_one() && fs.size() == 1) {
        if (fs[0].exp.is_one()) return fs[0].base;
        return NodeFactory::power(fs[0].base, fs[0].exp);
    }
    return NodeFactory::product(coef, std::move(fs));
}

int compare_terms(const TermView& a, const TermView& b) {
    int c = compare_factor_lists(a.factors, b.factors);
    if (c != 0) return c;
    return cmp_rational(a.coef, b.coef);
}

bool factor_less(const Factor& a, const Factor& b) { return compare(a.base, b.base) < 0; }

struct FactorsHash {
    std::size_t operator()(const std::vector<Factor>& v) const {
        std::size_t h = 97;
        for (const auto& f : v) h = mix(mix(h, f.base.hash()), f.exp.hash());
        return h;
    }
};

// Accumulates terms keyed by their factor list.
class Collector {
public:
    void add_term(const Rational& coef, std::vector<Factor> fs) {
        if (coef.is_zero()) return;
        auto [it, inserted] = map_.try_emplace(std::move(fs), coef);
        if (!inserted) it->second += coef;
    }
    void add(const Expr& e) {
        if (e.kind() == Kind::Add) {
            for (const auto& t : e.node().args) add(t);
            return;
        }
        if (e.is_zero()) return;
        TermView v = term_view(e);
        add_term(v.coef, std::move(v.factors));
    }
    Expr build() {
        std::vector<TermView> terms;
        terms.reserve(map_.size());
        for (auto& [fs, c] : map_)
            if (!c.is_zero()) terms.push_back(TermView{c, fs});
        if (terms.empty()) return Expr();
        if (terms.size() == 1) return build_term_node(terms[0].coef, std::move(terms[0].factors));
        std::sort(terms.begin(), terms.end(), [](const TermView& a, const TermView& b) { return compare_terms(a, b) < 0; });
        std::vector<Expr> out;
        out.reserve(terms.size());
        for (auto& t : terms) out.push_back(build_term_node(t.coef, std::move(t.factors)));
        return NodeFactory::sum(std::move(out));
    }

private:
    std::unordered_map<std::vector<Factor>, Rational, FactorsHash> map_;
};

Expr scale(const Expr& e, const Rational& q) {
    if (q.is_zero()) return Expr();
    if (q.is_one()) return e;
    if (e.kind() == Kind::Add) {
        std::vector<Expr> out;
        out.reserve(e.node().args.size());
        for (const auto& t : e.node().args) {
            TermView v = term_view(t);
            out.push_back(build_term_node(v.coef * q, std::move(v.factors)));
        }
        return NodeFactory::sum(std::move(out));
    }
    TermView v = term_view(e);
    return build_term_node(v.coef * q, std::move(v.factors));
}

bool leading_negative(const Expr& e) {
    if (e.kind() == Kind::Add) return leading_negative(e.node().args[0]);
    if (e.kind() == Kind::Number) return e.number().is_negative();
    if (e.kind() == Kind::Mul) return e.node().value.is_negative();
    return false;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
    std::int64_t q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

// Exact integer k-th root if it exists.
std::optional<std::int64_t> exact_root(std::int64_t v, std::int64_t k) {
    if (v < 0) return std::nullopt;
    if (v < 2) return v;
    auto try_root = [&](std::int64_t r) -> bool {
        __int128 p = 1;
        for (std::int64_t i = 0; i < k; ++i) {
            p *= r;
            if (p > v) return false;
        }
        return p == v;
    };
    double approx = std::pow(static_cast<double>(v), 1.0 / static_cast<double>(k));
    auto r = static_cast<std::int64_t>(std::llround(approx));
    for (std::int64_t c = std::max<std::int64_t>(0, r - 2); c <= r + 2; ++c)
        if (try_root(c)) return c;
    return std::nullopt;
}

// c^e for rational c, e: folds what is exact into coef and appends an
// irreducible radical factor when needed.
void numeric_power(const Rational& c, const Rational& e, Rational& coef, std::vector<Factor>& out) {
    if (e.is_integer()) {
        if (c.is_zero() && e.is_negative()) throw std::domain_error("division by zero");
        coef *= c.pow(e.num());
        return;
    }
    if (c.is_zero()) {
        if (e.is_negative()) throw std::domain_error("division by zero");
        coef = Rational(0);
        return;
    }
    if (c.is_negative()) {
        out.push_back(Factor{Expr(c), e});
        return;
    }
    std::int64_t whole = floor_div(e.num(), e.den());
    Rational frac = e - Rational(whole);
    coef *= c.pow(whole);
    if (c.is_one()) return;
    if (frac.den() == 2) {
        // sqrt(n/d) = sqrt(n*d)/d with the square part of n*d extracted.
        __int128 prod = static_cast<__int128>(c.num()) * c.den();
        if (prod > static_cast<__int128>(1) << 62) {
            out.push_back(Factor{Expr(c), frac});
            return;
        }
        auto rest = static_cast<std::int64_t>(prod);
        std::int64_t outside = 1;
        for (std::int64_t p = 2; p * p <= rest; ++p) {
            while (rest % (p * p) == 0) {
                rest /= p * p;
                outside *= p;
            }
        }
        coef *= Rational(outside, c.den());
        if (rest > 1) out.push_back(Factor{Expr(Rational(rest)), Rational(1, 2)});
        return;
    }
    auto rn = exact_root(c.num(), frac.den());
    auto rd = exact_root(c.den(), frac.den());
    if (rn && rd) {
        coef *= Rational(*rn, *rd).pow(frac.num());
        return;
    }
    out.push_back(Factor{Expr(c), frac});
}

Expr mul_terms(const Expr& a, const Expr& b);

// Full normalization of a coefficient and a factor list.
Expr normalize_term(Rational coef, std::vector<Factor> fs) {
    if (coef.is_zero()) return Expr();
    std::sort(fs.begin(), fs.end(), factor_less);
    std::vector<Factor> merged;
    merged.reserve(fs.size());
    for (auto& f : fs) {
        if (!merged.empty() && merged.back().base == f.base) {
            merged.back().exp += f.exp;
        } else {
            merged.push_back(std::move(f));
        }
    }
    std::vector<Factor> out;
    out.reserve(merged.size());
    std::vector<Expr> extra;
    std::vector<Expr> exp_args;
    for (auto& f : merged) {
        if (f.exp.is_zero()) continue;
        const Node& b = f.base.node();
        switch (b.kind) {
            case Kind::Number: numeric_power(b.value, f.exp, coef, out); break;
            case Kind::Func:
                if (b.fn == Fn::Exp) {
                    exp_args.push_back(scale(b.args[0], f.exp));
                } else if ((b.fn == Fn::Cos || b.fn == Fn::Cosh) && f.exp.is_integer() && (f.exp.num() >= 2 || f.exp.num() <= -2)) {
                    std::int64_t k = f.exp.num();
                    if (k % 2 != 0) out.push_back(Factor{f.base, Rational(k % 2)});
                    Expr partner = apply(b.fn == Fn::Cos ? Fn::Sin : Fn::Sinh, b.args[0]);
                    Expr sq = pow(partner, Rational(2));
                    Expr base = b.fn == Fn::Cos ? Expr(1) - sq : Expr(1) + sq;
                    extra.push_back(pow(base, Rational(k / 2)));
                } else {
                    out.push_back(std::move(f));
                }
                break;
            case Kind::Add:
                if (f.exp.is_integer() && f.exp.num() > 0) {
                    extra.push_back(pow(f.base, f.exp));
                } else {
                    out.push_back(std::move(f));
                }
                break;
            case Kind::Mul:
            case Kind::Pow: extra.push_back(pow(f.base, f.exp)); break;
            default: out.push_back(std::move(f)); break;
        }
        if (coef.is_zero()) return Expr();
    }
    if (!exp_args.empty()) {
        Expr ex = apply(Fn::Exp, add(exp_args));
        if (ex.kind() == Kind::Func && ex.node().fn == Fn::Exp) {
            out.push_back(Factor{ex, Rational(1)});
        } else {
            extra.push_back(ex);
        }
    }
    std::sort(out.begin(), out.end(), factor_less);
    Expr core = build_term_node(coef, std::move(out));
    for (const auto& x : extra) core = core * x;
    return core;
}

// Product of two non-sum terms.
Expr mul_terms(const Expr& a, const Expr& b) {
    TermView x = term_view(a);
    TermView y = term_view(b);
    std::vector<Factor> fs;
    fs.reserve(x.factors.size() + y.factors.size());
    bool needs_normalize = false;
    int exps = 0;
    std::size_t i = 0, j = 0;
    while (i < x.factors.size() || j < y.factors.size()) {
        if (j == y.factors.size()) {
            fs.push_back(x.factors[i++]);
        } else if (i == x.factors.size()) {
            fs.push_back(y.factors[j++]);
        } else {
            int c = compare(x.factors[i].base, y.factors[j].base);
            if (c < 0) {
                fs.push_back(x.factors[i++]);
            } else if (c > 0) {
                fs.push_back(y.factors[j++]);
            } else {
                needs_normalize = true;
                fs.push_back(x.factors[i++]);
                fs.push_back(y.factors[j++]);
            }
        }
        const Node& last = fs.back().base.node();
        if (last.kind == Kind::Func && last.fn == Fn::Exp && ++exps > 1) needs_normalize = true;
    }
    Rational coef = x.coef * y.coef;
    if (needs_normalize) return normalize_term(coef, std::move(fs));
    return build_term_node(coef, std::move(fs));
}

}  // namespace

Expr make_term(const Rational& coef, std::vector<Factor> factors) { return normalize_term(coef, std::move(factors)); }

// ---------------------------------------------------------------------------
// Arithmetic

Expr add(const std::vector<Expr>& terms) {
    std::vector<const Expr*> nonzero;
    for (const auto& t : terms)
        if (!t.is_zero()) nonzero.push_back(&t);
    if (nonzero.empty()) return Expr();
    if (nonzero.size() == 1) return *nonzero[0];
    Collector c;
    for (const auto* t : nonzero) c.add(*t);
    return c.build();
}

Expr operator+(const Expr& a, const Expr& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.is_number() && b.is_number()) return Expr(a.number() + b.number());
    Collector c;
    c.add(a);
    c.add(b);
    return c.build();
}

Expr operator-(const Expr& a) { return scale(a, Rational(-1)); }
Expr operator-(const Expr& a, const Expr& b) { return a + (-b); }

Expr operator*(const Expr& a, const Expr& b) {
    if (a.is_zero() || b.is_zero()) return Expr();
    if (a.is_number()) return scale(b, a.number());
    if (b.is_number()) return scale(a, b.number());
    bool sa = a.kind() == Kind::Add, sb = b.kind() == Kind::Add;
    if (!sa && !sb) return mul_terms(a, b);
    thread_local bool merging = false;
    if (sa != sb && !merging) {
        // A sum meeting a power of itself: merge exponents before expanding.
        const Expr& sum = sa ? a : b;
        const Expr& term = sa ? b : a;
        TermView tv = term_view(term);
        bool has_sum_factor = false;
        for (const auto& f : tv.factors) has_sum_factor = has_sum_factor || f.base.kind() == Kind::Add;
        if (has_sum_factor) {
            merging = true;
            Expr inv;
            try {
                inv = pow(sum, Rational(-1));
            } catch (...) {
                merging = false;
                throw;
            }
            merging = false;
            TermView iv = inv.kind() == Kind::Add ? TermView{} : term_view(inv);
            int sums = 0;
            bool shared = false;
            for (const auto& g : iv.factors) {
                if (g.base.kind() != Kind::Add) continue;
                ++sums;
                for (const auto& f : tv.factors)
                    shared = shared || (g.exp == Rational(-1) && g.base == f.base && !((f.exp + Rational(1)).is_integer() && f.exp + Rational(1) > Rational(0)));
            }
            if (shared && sums == 1) {
                std::vector<Factor> fs = tv.factors;
                for (const auto& g : iv.factors) fs.push_back(Factor{g.base, -g.exp});
                return normalize_term(tv.coef / iv.coef, std::move(fs));
            }
        }
    }
    const auto& ta = sa ? a.node().args : std::vector<Expr>{a};
    const auto& tb = sb ? b.node().args : std::vector<Expr>{b};
    Collector c;
    for (const auto& x : ta)
        for (const auto& y : tb) c.add(mul_terms(x, y));
    return c.build();
}

Expr operator/(const Expr& a, const Expr& b) {
    if (b.is_zero()) throw std::domain_error("division by zero");
    return a * pow(b, Rational(-1));
}

Expr& operator+=(Expr& a, const Expr& b) { return a = a + b; }
Expr& operator-=(Expr& a, const Expr& b) { return a = a - b; }
Expr& operator*=(Expr& a, const Expr& b) { return a = a * b; }

Expr pow(const Expr& base, const Rational& q) {
    if (q.is_zero()) return Expr(1);
    if (q.is_one()) return base;
    const Node& b = base.node();
    switch (b.kind) {
        case Kind::Number: return normalize_term(Rational(1), {Factor{base, q}});
        case Kind::Pow: return pow(b.args[0], b.value * q);
        case Kind::Mul: {
            std::vector<Factor> fs;
            fs.reserve(b.factors.size() + 1);
            Rational coef(1);
            if (!b.value.is_one()) fs.push_back(Factor{Expr(b.value), q});
            for (const auto& f : b.factors) fs.push_back(Factor{f.base, f.exp * q});
            return normalize_term(coef, std::move(fs));
        }
        case Kind::Add: {
            if (q.is_integer() && q.num() > 0) {
                Expr result(1), p = base;
                std::int64_t k = q.num();
                while (k > 0) {
                    if (k & 1) result = result * p;
                    k >>= 1;
                    if (k > 0) p = p * p;
                }
                return result;
            }
            // Pull out the common content so that equal bases compare equal.
            const auto& ts = b.args;
            std::vector<TermView> views;
            views.reserve(ts.size());
            for (const auto& t : ts) views.push_back(term_view(t));
            std::int64_t g = 0, l = 1;
            for (const auto& v : views) {
                g = std::gcd(g, v.coef.num() < 0 ? -v.coef.num() : v.coef.num());
                l = std::lcm(l, v.coef.den());
            }
            Rational content(g, l);
            if (q.is_integer() && views[0].coef.is_negative()) content = -content;
            std::vector<Factor> common;
            for (const auto& f : views[0].factors) {
                Rational mn = f.exp;
                bool everywhere = true;
                for (std::size_t i = 1; i < views.size() && everywhere; ++i) {
                    auto it = std::find_if(views[i].factors.begin(), views[i].factors.end(),
                                           [&](const Factor& o) { return o.base == f.base; });
                    if (it == views[i].factors.end()) {
                        everywhere = false;
                    } else {
                        mn = std::min(mn, it->exp);
                    }
                }
                const Node& fb = f.base.node();
                bool liftable = !(fb.kind == Kind::Func && (fb.fn == Fn::Exp || fb.fn == Fn::Cos || fb.fn == Fn::Cosh));
                if (everywhere && liftable) common.push_back(Factor{f.base, mn});
            }
            Expr inner = base;
            if (!content.is_one() || !common.empty()) {
                std::vector<Factor> inv;
                inv.reserve(common.size());
                for (const auto& f : common) inv.push_back(Factor{f.base, -f.exp});
                inner = base * normalize_term(Rational(1) / content, std::move(inv));
            }
            std::vector<Factor> outer;
            for (const auto& f : common) outer.push_back(Factor{f.base, f.exp * q});
            Expr head = normalize_term(Rational(1), {Factor{Expr(content), q}});
            Expr lifted = outer.empty() ? Expr(1) : normalize_term(Rational(1), std::move(outer));
            if (inner.kind() != Kind::Add) return head * lifted * pow(inner, q);
            return head * lifted * NodeFactory::power(inner, q);
        }
        case Kind::Func:
            if (b.fn == Fn::Exp) return apply(Fn::Exp, scale(b.args[0], q));
            return normalize_term(Rational(1), {Factor{base, q}});
        default: return normalize_term(Rational(1), {Factor{base, q}});
    }
}

Expr pow(const Expr& base, const Expr& exponent) {
    if (!exponent.is_number()) throw std::invalid_argument("exponent must be a rational number: " + exponent.str());
    return pow(base, exponent.number());
}

Expr sqrt(const Expr& e) { return pow(e, Rational(1, 2)); }

Expr apply(Fn f, const Expr& arg) {
    switch (f) {
        case Fn::Sin:
            if (arg.is_zero()) return Expr();
            if (leading_negative(arg)) return -NodeFactory::func(f, -arg);
            break;
        case Fn::Sinh:
            if (arg.is_zero()) return Expr();
            if (leading_negative(arg)) return -NodeFactory::func(f, -arg);
            break;
        case Fn::Cos:
        case Fn::Cosh:
            if (arg.is_zero()) return Expr(1);
            if (leading_negative(arg)) return NodeFactory::func(f, -arg);
            break;
        case Fn::Exp:
            if (arg.is_zero()) return Expr(1);
            if (arg.kind() == Kind::Func && arg.node().fn == Fn::Log) return arg.node().args[0];
            break;
        case Fn::Log:
            if (arg.is_one()) return Expr();
            if (arg.kind() == Kind::Func && arg.node().fn == Fn::Exp) return arg.node().args[0];
            break;
    }
    return NodeFactory::func(f, arg);
}

// ---------------------------------------------------------------------------
// Rebuild / traversal

Expr simplify(const Expr& e) {
    const Node& n = e.node();
    switch (n.kind) {
        case Kind::Number:
        case Kind::Symbol: return e;
        case Kind::Jet: {
            std::vector<Expr> args;
            args.reserve(n.args.size());
            for (const auto& a : n.args) args.push_back(simplify(a));
            return Expr::jet(n.name, std::move(args), n.orders);
        }
        case Kind::Func: return apply(n.fn, simplify(n.args[0]));
        case Kind::Pow: return pow(simplify(n.args[0]), n.value);
        case Kind::Mul: {
            Expr out(n.value);
            for (const auto& f : n.factors) out = out * pow(simplify(f.base), f.exp);
            return out;
        }
        case Kind::Add: {
            std::vector<Expr> ts;
            ts.reserve(n.args.size());
            for (const auto& t : n.args) ts.push_back(simplify(t));
            return add(ts);
        }
    }
    return e;
}

std::size_t term_count(const Expr& e) {
    const Node& n = e.node();
    std::size_t c = 1;
    for (const auto& a : n.args) c += term_count(a);
    for (const auto& f : n.factors) c += term_count(f.base);
    return c;
}

bool is_jet(const Expr& e) { return e.kind() == Kind::Jet; }

bool is_coordinate_jet(const Expr& e) {
    if (e.kind() != Kind::Jet) return false;
    for (const auto& a : e.node().args)
        if (a.kind() != Kind::Symbol) return false;
    return true;
}

Expr jet_base(const Expr& e) {
    if (e.kind() != Kind::Jet) throw std::invalid_argument("not a jet: " + e.str());
    return Expr::function(e.node().name, e.node().args);
}

int jet_total_order(const Expr& e) {
    if (e.kind() != Kind::Jet) return 0;
    int s = 0;
    for (int o : e.node().orders) s += o;
    return s;
}

int jet_order_in(const Expr& e, const Expr& arg) {
    if (e.kind() != Kind::Jet) return 0;
    const Node& n = e.node();
    for (std::size_t i = 0; i < n.args.size(); ++i)
        if (n.args[i] == arg) return n.orders[i];
    return 0;
}

Expr jet_raise(const Expr& e, std::size_t pos, int by) {
    const Node& n = e.node();
    if (n.kind != Kind::Jet || pos >= n.args.size()) throw std::invalid_argument("bad jet position");
    std::vector<int> orders = n.orders;
    orders[pos] += by;
    return Expr::jet(n.name, n.args, std::move(orders));
}

Expr jet_derivative(const Expr& fn, const std::vector<Expr>& vars) {
    Expr out = fn;
    for (const auto& v : vars) {
        const auto& args = out.node().args;
        auto it = std::find(args.begin(), args.end(), v);
        if (it == args.end()) throw std::invalid_argument(v.str() + " is not an argument of " + fn.str());
        out = jet_raise(out, static_cast<std::size_t>(it - args.begin()));
    }
    return out;
}

namespace {

void collect_atoms(const Expr& e, std::set<Expr, ExprLess>& out, std::unordered_set<const Node*>& seen,
                   bool symbols_only) {
    const Node& n = e.node();
    if (!seen.insert(&n).second) return;
    switch (n.kind) {
        case Kind::Number: return;
        case Kind::Symbol: out.insert(e); return;
        case Kind::Jet:
            if (!symbols_only) out.insert(e);
            for (const auto& a : n.args) collect_atoms(a, out, seen, symbols_only);
            return;
        default:
            for (const auto& a : n.args) collect_atoms(a, out, seen, symbols_only);
            for (const auto& f : n.factors) collect_atoms(f.base, out, seen, symbols_only);
    }
}

bool contains(const Expr& e, const Expr& atom, std::unordered_set<const Node*>& seen) {
    if (e == atom) return true;
    const Node& n = e.node();
    if (!seen.insert(&n).second) return false;
    for (const auto& a : n.args)
        if (contains(a, atom, seen)) return true;
    for (const auto& f : n.factors)
        if (contains(f.base, atom, seen)) return true;
    return false;
}

}  // namespace

std::vector<Expr> free_atoms(const Expr& e) {
    std::set<Expr, ExprLess> out;
    std::unordered_set<const Node*> seen;
    collect_atoms(e, out, seen, false);
    return {out.begin(), out.end()};
}

std::vector<Expr> free_symbols(const Expr& e) {
    std::set<Expr, ExprLess> out;
    std::unordered_set<const Node*> seen;
    collect_atoms(e, out, seen, true);
    return {out.begin(), out.end()};
}

bool depends_on(const Expr& e, const Expr& atom) {
    std::unordered_set<const Node*> seen;
    return contains(e, atom, seen);
}

}  // namespace rsym
