#pragma once

// Immutable symbolic expressions kept in a canonical expanded form.
//
// Every constructor and arithmetic operator returns a canonical value:
// sums are flat and collected, products are flat with merged exponents,
// positive integer powers of sums are expanded, and a small rewrite set
// (cos^2 -> 1 - sin^2, cosh^2 -> 1 + sinh^2, exp merging, odd/even argument
// signs) is applied. Two canonical expressions are equal iff they are
// structurally identical.
//
// Symbols are treated as positive reals when powers are merged, so
// (x^2)^(1/2) == x.

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rsym/rational.hpp"

namespace rsym {

enum class Kind : std::uint8_t { Number, Symbol, Jet, Func, Pow, Mul, Add };
enum class Fn : std::uint8_t { Sin, Cos, Sinh, Cosh, Exp, Log };

std::string_view fn_name(Fn f);
std::optional<Fn> fn_from_name(std::string_view name);

struct Node;

class Expr {
public:
    Expr();  // zero
    Expr(std::int64_t v);  // NOLINT(implicit)
    Expr(int v) : Expr(static_cast<std::int64_t>(v)) {}  // NOLINT(implicit)
    Expr(const Rational& q);  // NOLINT(implicit)

    static Expr symbol(std::string name);
    // Unknown function u(args...) - a jet coordinate of order zero.
    static Expr function(std::string name, std::vector<Expr> args);
    // Partial derivative of an unknown function: orders[i] counts derivatives
    // with respect to argument position i.
    static Expr jet(std::string name, std::vector<Expr> args, std::vector<int> orders);

    Kind kind() const;
    const Node& node() const { return *node_; }
    std::size_t hash() const;
    bool same(const Expr& o) const { return node_ == o.node_; }

    bool is_number() const { return kind() == Kind::Number; }
    bool is_zero() const;
    bool is_one() const;
    // Value of a Number node.
    const Rational& number() const;

    std::string str() const;

    friend bool operator==(const Expr& a, const Expr& b);
    friend bool operator!=(const Expr& a, const Expr& b) { return !(a == b); }

private:
    explicit Expr(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
    std::shared_ptr<const Node> node_;
    friend struct NodeFactory;
};

struct Factor {
    Expr base;
    Rational exp;
    friend bool operator==(const Factor& a, const Factor& b) { return a.exp == b.exp && a.base == b.base; }
};

struct Node {
    Kind kind = Kind::Number;
    Fn fn = Fn::Sin;
    std::size_t hash = 0;
    Rational value;               // Number value, Mul coefficient, Pow exponent
    std::string name;             // Symbol / Jet
    std::vector<Expr> args;       // Jet arguments; Func/Pow: args[0]; Add: terms
    std::vector<int> orders;      // Jet derivative counts per argument position
    std::vector<Factor> factors;  // Mul
};

// Total order on canonical expressions; 0 iff structurally equal.
int compare(const Expr& a, const Expr& b);

struct ExprHash {
    std::size_t operator()(const Expr& e) const { return e.hash(); }
};
struct ExprLess {
    bool operator()(const Expr& a, const Expr& b) const { return compare(a, b) < 0; }
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);
Expr operator*(const Expr& a, const Expr& b);
Expr operator/(const Expr& a, const Expr& b);
Expr& operator+=(Expr& a, const Expr& b);
Expr& operator-=(Expr& a, const Expr& b);
Expr& operator*=(Expr& a, const Expr& b);

Expr pow(const Expr& base, const Rational& exponent);
// Exponent must simplify to a rational number; throws std::invalid_argument otherwise.
Expr pow(const Expr& base, const Expr& exponent);
Expr sqrt(const Expr& e);
Expr apply(Fn f, const Expr& arg);
inline Expr sin(const Expr& e) { return apply(Fn::Sin, e); }
inline Expr cos(const Expr& e) { return apply(Fn::Cos, e); }
inline Expr sinh(const Expr& e) { return apply(Fn::Sinh, e); }
inline Expr cosh(const Expr& e) { return apply(Fn::Cosh, e); }
inline Expr exp(const Expr& e) { return apply(Fn::Exp, e); }
inline Expr log(const Expr& e) { return apply(Fn::Log, e); }

// Sum of many expressions; cheaper than folding operator+.
Expr add(const std::vector<Expr>& terms);

// Rebuilds the expression bottom-up through the canonicalizing constructors.
// Idempotent; canonical inputs come back unchanged.
Expr simplify(const Expr& e);

// Terms of a sum (or the expression itself as a single term; empty for zero).
std::vector<Expr> terms_of(const Expr& e);

// Numeric coefficient and the remaining factors of a single (non-sum) term.
struct TermView {
    Rational coef;
    std::vector<Factor> factors;
};
TermView term_view(const Expr& e);
Expr make_term(const Rational& coef, std::vector<Factor> factors);

// Number of nodes reachable (with sharing counted repeatedly); for budgets.
std::size_t term_count(const Expr& e);

// Jet helpers.
bool is_jet(const Expr& e);
// A coordinate jet is an unknown function whose arguments are all symbols
// (a dependent variable of the independent variables) or one of its derivatives.
bool is_coordinate_jet(const Expr& e);
// Same unknown function with all derivative orders reset to zero.
Expr jet_base(const Expr& e);
int jet_total_order(const Expr& e);
// Order of differentiation with respect to the argument equal to `arg`
// (0 when it is not an argument).
int jet_order_in(const Expr& e, const Expr& arg);
// Raise the order at argument position `pos` by `by`.
Expr jet_raise(const Expr& e, std::size_t pos, int by = 1);

// Builds D(u, v1, v2, ...) for a coordinate jet u(x...) by argument name.
Expr jet_derivative(const Expr& fn, const std::vector<Expr>& vars);

// Free atoms (symbols and jets) appearing anywhere, in canonical order.
std::vector<Expr> free_atoms(const Expr& e);
std::vector<Expr> free_symbols(const Expr& e);
bool depends_on(const Expr& e, const Expr& atom);

inline Expr sym(std::string name) { return Expr::symbol(std::move(name)); }
inline Expr num(std::int64_t n, std::int64_t d = 1) { return Expr(Rational(n, d)); }

}  // namespace rsym
