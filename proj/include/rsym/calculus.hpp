#pragma once

#include <string>
#include <utility>
#include <vector>

#include "rsym/expr.hpp"

namespace rsym {

// Total derivative in the symbol s. Unknown functions differentiate through
// every argument by the chain rule; a function whose arguments do not mention
// s differentiates to zero.
Expr diff(const Expr& e, const Expr& s, int order = 1);

// Partial derivative in jet space. Jets of the functions named in `dependent`
// (and of var's own function when var is a jet) are independent coordinates;
// every other unknown function is differentiated through its arguments.
// With `dependent` empty and var a symbol this is the total derivative.
Expr diff_partial(const Expr& e, const Expr& var, const std::vector<std::string>& dependent);

using Bindings = std::vector<std::pair<Expr, Expr>>;

// Simultaneous substitution. Keys are symbols, jets, or unknown-function
// calls; binding an unknown function f(x,...) to an expression also replaces
// every derivative of f by the matching derivative of that expression.
// Throws InconsistentBindingError when a key appears twice.
Expr substitute(const Expr& e, const Bindings& bindings);

}  // namespace rsym
