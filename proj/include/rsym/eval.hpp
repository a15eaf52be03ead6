#pragma once

#include <unordered_map>

#include "rsym/expr.hpp"

namespace rsym {

// Values for symbols and jet coordinates.
using Assignment = std::unordered_map<Expr, double, ExprHash>;

// IEEE evaluation. Throws UnboundSymbolError for a missing symbol or jet and
// DomainError for log of a nonpositive value, fractional powers of negatives,
// division by zero, or a non-finite result.
double eval_numeric(const Expr& e, const Assignment& a);

// Evaluates each top-level term; returns the sum and accumulates Σ|term|.
double eval_with_scale(const Expr& e, const Assignment& a, double& scale);

}  // namespace rsym
