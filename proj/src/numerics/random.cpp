#include "rsym/random.hpp"

namespace rsym {

ExprGenerator::ExprGenerator(std::uint64_t seed, std::vector<Expr> symbols)
    : rng_(seed), symbols_(std::move(symbols)) {}

Rational ExprGenerator::small_rational() {
    std::uniform_int_distribution<int> n(-5, 5), d(1, 4);
    int a = n(rng_);
    if (a == 0) a = 1;
    return Rational(a, d(rng_));
}

Expr ExprGenerator::leaf() {
    std::uniform_int_distribution<std::size_t> pick(0, symbols_.size());
    std::size_t k = pick(rng_);
    if (k == symbols_.size()) return Expr(small_rational());
    return symbols_[k];
}

Expr ExprGenerator::positive(int depth) {
    std::uniform_int_distribution<int> op(0, depth <= 0 ? 1 : 5);
    std::uniform_int_distribution<std::size_t> pick(0, symbols_.size() - 1);
    std::uniform_int_distribution<int> c(1, 4);
    switch (op(rng_)) {
        case 0: return symbols_[pick(rng_)];
        case 1: return Expr(Rational(c(rng_), 2)) + symbols_[pick(rng_)];
        case 2: return exp(Expr(Rational(1, 2)) * smooth(depth - 1));
        case 3: return cosh(smooth(depth - 1));
        case 4: return positive(depth - 1) + positive(depth - 1);
        default: return positive(depth - 1) * positive(depth - 1);
    }
}

Expr ExprGenerator::smooth(int depth) {
    if (depth <= 0) return leaf();
    std::uniform_int_distribution<int> op(0, 9);
    switch (op(rng_)) {
        case 0:
        case 1: return smooth(depth - 1) + smooth(depth - 1);
        case 2:
        case 3: return smooth(depth - 1) * smooth(depth - 1);
        case 4: {
            static const Rational qs[] = {Rational(2), Rational(3), Rational(-1), Rational(1, 2), Rational(-1, 2),
                                          Rational(3, 2)};
            std::uniform_int_distribution<int> k(0, 5);
            Rational q = qs[k(rng_)];
            if (q == Rational(2) || q == Rational(3)) return pow(smooth(depth - 1), q);
            return pow(positive(depth - 1), q);
        }
        case 5: return sin(smooth(depth - 1));
        case 6: return cos(smooth(depth - 1));
        case 7: return sinh(Expr(Rational(1, 2)) * smooth(depth - 1));
        case 8: return log(positive(depth - 1));
        default: return exp(Expr(Rational(1, 3)) * smooth(depth - 1));
    }
}

Expr ExprGenerator::polynomial(int degree, int terms) {
    std::uniform_int_distribution<int> deg(0, degree);
    std::uniform_int_distribution<std::size_t> pick(0, symbols_.size() - 1);
    std::vector<Expr> parts;
    for (int k = 0; k < terms; ++k) {
        Expr t(small_rational());
        int d = deg(rng_);
        for (int i = 0; i < d; ++i) t = t * symbols_[pick(rng_)];
        parts.push_back(t);
    }
    return add(parts);
}

MetricFamily random_rational_metric(ExprGenerator& gen, const Chart& chart) {
    MetricFamily m(chart);
    std::size_t n = chart.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Expr p = gen.polynomial(2, 3);
            m.set(i, j, i == j ? Expr(Rational(6)) + p : Expr(Rational(1, 3)) * p);
        }
    return m;
}

}  // namespace rsym
