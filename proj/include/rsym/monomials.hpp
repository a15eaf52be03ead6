#pragma once

#include <map>
#include <utility>
#include <vector>

#include "rsym/expr.hpp"

namespace rsym {

// Multiset of jet coordinates with multiplicities, canonically ordered.
using MonomialKey = std::vector<std::pair<Expr, int>>;

struct MonomialKeyLess {
    bool operator()(const MonomialKey& a, const MonomialKey& b) const;
};

using MonomialMap = std::map<MonomialKey, Expr, MonomialKeyLess>;

// Splits e = Σ coefficient·monomial over the given jet variables.
// Throws NonPolynomialError when a jet variable appears with a non-natural
// exponent or inside another function or power of a sum.
MonomialMap collect_monomials(const Expr& e, const std::vector<Expr>& jet_vars);

Expr monomial_expr(const MonomialKey& key);
std::string monomial_str(const MonomialKey& key);

}  // namespace rsym
