#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "rsym/expr.hpp"

namespace rsym {

enum class Verdict { ZeroSymbolic, ZeroProbabilistic, NonZero };

std::string_view verdict_name(Verdict v);
inline bool is_zero_verdict(Verdict v) { return v != Verdict::NonZero; }

struct ZeroOptions {
    int probes = 8;
    int max_attempts = 32;
    std::uint64_t seed = 0x5eed2024;
    double lo = 0.2;
    double hi = 1.7;
    double tolerance = 1e-9;
    // Largest estimated term count allowed when clearing sum denominators.
    std::size_t clear_budget = 20000;
};

struct ZeroResult {
    Verdict verdict = Verdict::ZeroSymbolic;
    // Probe point where the expression was nonzero (NonZero only).
    std::vector<std::pair<Expr, double>> witness;
    double value = 0.0;
    std::string note;
};

// Symbolic zero after canonicalization (optionally after multiplying out
// denominators that are powers of sums), else a seeded probabilistic test
// with relative tolerance tolerance·max(1, Σ|terms|).
ZeroResult equals_zero(const Expr& e, const ZeroOptions& opts = {});

// Multiplies e by the powers of sums needed to make every such exponent
// nonnegative. Returns e unchanged when the estimated size exceeds budget.
Expr clear_denominators(const Expr& e, std::size_t budget);

}  // namespace rsym
