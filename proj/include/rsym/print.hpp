#pragma once

#include <string>

#include "rsym/expr.hpp"

namespace rsym {

// Text form in the input grammar; parse(to_string(e)) == e.
std::string to_string(const Expr& e);

// LaTeX math-mode form (no surrounding $).
std::string to_latex(const Expr& e);

}  // namespace rsym
