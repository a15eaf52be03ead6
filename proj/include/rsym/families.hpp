#pragma once

// Ricci flow written out for the metric families used by restriction and
// reduction: each system has one residual per field, linear in that field's
// time derivative.

#include <string>
#include <vector>

#include "rsym/flow.hpp"

namespace rsym {

struct PdeSystem {
    std::string name;
    std::vector<Expr> coords;
    Expr time;
    std::vector<Expr> fields;
    std::vector<Expr> residuals;
};

// Solves residual k for ∂_t u_k. Throws std::invalid_argument when a residual
// is not linear in its own time derivative or mentions another one.
EvolutionSystem to_evolution(const PdeSystem& s, int eager_order = 1);

// e^u (dx1² + dx2²): e^u u_t − Δu.
PdeSystem conformal2d_system();
// ψ^{-2}(dx1² + dx2²), the two-dimensional conformal flow on R².
PdeSystem conformal_rn_system();
// ψ^{-2}dx² + φ² g_can on a line base with an m-dimensional Einstein fiber
// (Ric = μ g_can), written as in the displayed warped system with n = 1.
PdeSystem warped_system(const Expr& m, const Expr& mu);
// χ² dx² + φ² g_{S^p} + ψ² g_{S^q}.
PdeSystem doubly_warped_system(const Expr& p, const Expr& q);

// Right-hand sides of the displayed warped system on an n-dimensional
// conformally flat base for arbitrary ψ, φ over coords: base[i][j] is the
// expression equal to ψ_t/ψ³ δ_ij, fiber the one equal to −φφ_t.
struct WarpedDisplay {
    Matrix base;
    Expr fiber;
};
WarpedDisplay warped_display(const std::vector<Expr>& coords, const Expr& psi, const Expr& phi, const Expr& m,
                             const Expr& mu);

}  // namespace rsym
