#include "rsym/eval.hpp"

#include <cmath>

#include "rsym/errors.hpp"

namespace rsym {

namespace {

class Evaluator {
public:
    explicit Evaluator(const Assignment& a) : a_(a) {}

    double operator()(const Expr& e) {
        const Node& n = e.node();
        if (n.kind == Kind::Add || n.kind == Kind::Func || n.kind == Kind::Pow) {
            auto it = memo_.find(&n);
            if (it != memo_.end()) return it->second;
            double v = compute(e);
            memo_.emplace(&n, v);
            return v;
        }
        return compute(e);
    }

private:
    static double checked(double v, const char* what) {
        if (!std::isfinite(v)) throw DomainError(std::string("non-finite value in ") + what);
        return v;
    }

    static double power(double b, const Rational& q) {
        if (q.is_integer()) {
            if (b == 0.0 && q.is_negative()) throw DomainError("division by zero");
            return std::pow(b, static_cast<double>(q.num()));
        }
        if (b < 0.0) throw DomainError("fractional power of a negative value");
        if (b == 0.0 && q.is_negative()) throw DomainError("division by zero");
        if (q == Rational(1, 2)) return std::sqrt(b);
        if (q == Rational(-1, 2)) return 1.0 / std::sqrt(b);
        return std::pow(b, q.to_double());
    }

    double lookup(const Expr& e) const {
        auto it = a_.find(e);
        if (it == a_.end()) throw UnboundSymbolError("unbound: " + e.str());
        return it->second;
    }

    double compute(const Expr& e) {
        const Node& n = e.node();
        switch (n.kind) {
            case Kind::Number: return n.value.to_double();
            case Kind::Symbol:
            case Kind::Jet: return lookup(e);
            case Kind::Func: {
                double x = (*this)(n.args[0]);
                switch (n.fn) {
                    case Fn::Sin: return std::sin(x);
                    case Fn::Cos: return std::cos(x);
                    case Fn::Sinh: return checked(std::sinh(x), "sinh");
                    case Fn::Cosh: return checked(std::cosh(x), "cosh");
                    case Fn::Exp: return checked(std::exp(x), "exp");
                    case Fn::Log:
                        if (x <= 0.0) throw DomainError("log of a nonpositive value");
                        return std::log(x);
                }
                return 0.0;
            }
            case Kind::Pow: return checked(power((*this)(n.args[0]), n.value), "power");
            case Kind::Mul: {
                double v = n.value.to_double();
                for (const auto& f : n.factors) v *= power((*this)(f.base), f.exp);
                return checked(v, "product");
            }
            case Kind::Add: {
                double v = 0.0;
                for (const auto& t : n.args) v += (*this)(t);
                return checked(v, "sum");
            }
        }
        return 0.0;
    }

    const Assignment& a_;
    std::unordered_map<const Node*, double> memo_;
};

}  // namespace

double eval_numeric(const Expr& e, const Assignment& a) {
    Evaluator ev(a);
    return ev(e);
}

double eval_with_scale(const Expr& e, const Assignment& a, double& scale) {
    Evaluator ev(a);
    double total = 0.0;
    for (const auto& t : terms_of(e)) {
        double v = ev(t);
        total += v;
        scale += std::fabs(v);
    }
    return total;
}

}  // namespace rsym
