#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "rsym/expr.hpp"
#include "rsym/geometry.hpp"

namespace rsym {

// Deterministic generators for property tests and oracle corpora.
class ExprGenerator {
public:
    explicit ExprGenerator(std::uint64_t seed, std::vector<Expr> symbols);

    // Random smooth expression over the symbols: sums, products, small
    // integer and half-integer powers of positive bases, sin/cos/sinh/cosh/exp,
    // and log of positive arguments. Smooth on [0.2, 1.7]^n.
    Expr smooth(int depth);
    // Random polynomial with small rational coefficients.
    Expr polynomial(int degree, int terms);
    Rational small_rational();

    std::mt19937_64& rng() { return rng_; }

private:
    Expr positive(int depth);
    Expr leaf();

    std::mt19937_64 rng_;
    std::vector<Expr> symbols_;
};

// Metric with rational polynomial entries, diagonally dominant on the unit box.
MetricFamily random_rational_metric(ExprGenerator& gen, const Chart& chart);

}  // namespace rsym
