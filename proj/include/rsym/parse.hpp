#pragma once

#include <string_view>

#include "rsym/expr.hpp"

namespace rsym {

// Parses the expression grammar:
//   identifiers [A-Za-z_][A-Za-z0-9_]*, integers and decimals (exact),
//   + - * / ^ (^ binds tightest and is right-associative), parentheses,
//   builtins sin cos sinh cosh exp log sqrt, unknown-function calls u(x,t),
//   D(e, v) and D(e, v, k).
// D applied to an unknown function with v one of its arguments is the partial
// derivative in that slot; otherwise it is the total derivative in symbol v.
// Throws ParseError on malformed input.
Expr parse(std::string_view text);

}  // namespace rsym
