#include "rsym/print.hpp"

#include <sstream>

namespace rsym {

namespace {

void print(std::ostream& os, const Expr& e);

bool atomic_base(const Expr& e) {
    switch (e.kind()) {
        case Kind::Symbol:
        case Kind::Jet:
        case Kind::Func: return true;
        case Kind::Number: return e.number().is_integer() && !e.number().is_negative();
        default: return false;
    }
}

void print_factor(std::ostream& os, const Factor& f) {
    if (atomic_base(f.base)) {
        print(os, f.base);
    } else {
        os << '(';
        print(os, f.base);
        os << ')';
    }
    if (f.exp.is_one()) return;
    if (f.exp.is_integer() && !f.exp.is_negative()) {
        os << '^' << f.exp.str();
    } else {
        os << "^(" << f.exp.str() << ')';
    }
}

// Prints a single term; `drop_sign` prints |coef| for use after " - ".
void print_term(std::ostream& os, const Expr& t, bool drop_sign) {
    TermView v = term_view(t);
    Rational c = drop_sign && v.coef.is_negative() ? -v.coef : v.coef;
    if (v.factors.empty()) {
        os << c.str();
        return;
    }
    if (c == Rational(-1)) {
        os << '-';
    } else if (!c.is_one()) {
        os << c.str() << '*';
    }
    for (std::size_t i = 0; i < v.factors.size(); ++i) {
        if (i) os << '*';
        print_factor(os, v.factors[i]);
    }
}

void print_args(std::ostream& os, const std::vector<Expr>& args) {
    os << '(';
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (i) os << ',';
        print(os, args[i]);
    }
    os << ')';
}

void print_jet(std::ostream& os, const Node& n) {
    std::ostringstream inner;
    inner << n.name;
    print_args(inner, n.args);
    std::string s = inner.str();
    for (std::size_t i = 0; i < n.args.size(); ++i) {
        if (n.orders[i] == 0) continue;
        std::ostringstream wrap;
        wrap << "D(" << s << ", ";
        print(wrap, n.args[i]);
        if (n.orders[i] > 1) wrap << ", " << n.orders[i];
        wrap << ')';
        s = wrap.str();
    }
    os << s;
}

void print(std::ostream& os, const Expr& e) {
    const Node& n = e.node();
    switch (n.kind) {
        case Kind::Number: os << n.value.str(); return;
        case Kind::Symbol: os << n.name; return;
        case Kind::Jet: print_jet(os, n); return;
        case Kind::Func:
            os << fn_name(n.fn) << '(';
            print(os, n.args[0]);
            os << ')';
            return;
        case Kind::Pow:
        case Kind::Mul: print_term(os, e, false); return;
        case Kind::Add:
            for (std::size_t i = 0; i < n.args.size(); ++i) {
                const Expr& t = n.args[i];
                bool neg = term_view(t).coef.is_negative();
                if (i == 0) {
                    print_term(os, t, false);
                } else {
                    os << (neg ? " - " : " + ");
                    print_term(os, t, true);
                }
            }
            return;
    }
}

// LaTeX

std::string latex_name(const std::string& name) {
    std::string out;
    for (char c : name) {
        if (c == '_') {
            out += "\\_";
        } else {
            out += c;
        }
    }
    return name.size() == 1 ? out : "\\mathrm{" + out + "}";
}

void latex(std::ostream& os, const Expr& e);

void latex_rational(std::ostream& os, const Rational& q) {
    if (q.is_integer()) {
        os << q.num();
    } else {
        if (q.is_negative()) os << '-';
        os << "\\frac{" << (q.num() < 0 ? -q.num() : q.num()) << "}{" << q.den() << '}';
    }
}

void latex_factor(std::ostream& os, const Factor& f) {
    bool paren = !atomic_base(f.base);
    if (paren) os << "\\left(";
    latex(os, f.base);
    if (paren) os << "\\right)";
    if (f.exp.is_one()) return;
    os << "^{" << f.exp.str() << '}';
}

void latex_term(std::ostream& os, const Expr& t, bool drop_sign) {
    TermView v = term_view(t);
    Rational c = drop_sign && v.coef.is_negative() ? -v.coef : v.coef;
    if (v.factors.empty()) {
        latex_rational(os, c);
        return;
    }
    if (c == Rational(-1)) {
        os << '-';
    } else if (!c.is_one()) {
        latex_rational(os, c);
        os << ' ';
    }
    for (std::size_t i = 0; i < v.factors.size(); ++i) {
        if (i) os << " \\, ";
        latex_factor(os, v.factors[i]);
    }
}

void latex(std::ostream& os, const Expr& e) {
    const Node& n = e.node();
    switch (n.kind) {
        case Kind::Number: latex_rational(os, n.value); return;
        case Kind::Symbol: os << latex_name(n.name); return;
        case Kind::Jet: {
            int total = jet_total_order(e);
            if (total > 0) {
                os << "\\partial_{";
                bool first = true;
                for (std::size_t i = 0; i < n.args.size(); ++i) {
                    for (int k = 0; k < n.orders[i]; ++k) {
                        if (!first) os << ' ';
                        first = false;
                        latex(os, n.args[i]);
                    }
                }
                os << "} ";
            }
            os << latex_name(n.name);
            if (!is_coordinate_jet(e)) {
                os << "\\left(";
                for (std::size_t i = 0; i < n.args.size(); ++i) {
                    if (i) os << ", ";
                    latex(os, n.args[i]);
                }
                os << "\\right)";
            }
            return;
        }
        case Kind::Func:
            os << '\\' << fn_name(n.fn) << "\\left(";
            latex(os, n.args[0]);
            os << "\\right)";
            return;
        case Kind::Pow:
        case Kind::Mul: latex_term(os, e, false); return;
        case Kind::Add:
            for (std::size_t i = 0; i < n.args.size(); ++i) {
                const Expr& t = n.args[i];
                bool neg = term_view(t).coef.is_negative();
                if (i == 0) {
                    latex_term(os, t, false);
                } else {
                    os << (neg ? " - " : " + ");
                    latex_term(os, t, true);
                }
            }
            return;
    }
}

}  // namespace

std::string to_string(const Expr& e) {
    std::ostringstream os;
    print(os, e);
    return os.str();
}

std::string to_latex(const Expr& e) {
    std::ostringstream os;
    latex(os, e);
    return os.str();
}

std::string Expr::str() const { return to_string(*this); }

}  // namespace rsym
