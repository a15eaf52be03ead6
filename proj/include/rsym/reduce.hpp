#pragma once

// Symmetry reduction of the warped and doubly-warped flows by the scaling
// generator (1 + 2kt)∂_t + ..., the reduced ODE systems, and the library of
// closed-form invariant solutions.

#include <map>
#include <string>
#include <vector>

#include "rsym/calculus.hpp"
#include "rsym/families.hpp"
#include "rsym/lie.hpp"
#include "rsym/zero.hpp"

namespace rsym {

using Params = std::map<std::string, Expr>;

// Q_u = 0 for each field of the generator.
std::vector<Expr> invariant_surface_conditions(const Generator& X);

// (1 + 2kt)∂_t − kψ∂_ψ + kφ∂_φ on the warped system, or
// (1 + 2kt)∂_t + kχ∂_χ + kφ∂_φ + kψ∂_ψ on the doubly-warped one.
Generator scaling_generator(const PdeSystem& s, const Expr& k);

// ψ → F/√(1+2kt), φ → √(1+2kt) G (warped) or χ, φ, ψ → √(1+2kt){F, G, H}.
// Throws std::invalid_argument for k = 0.
Bindings similarity_substitution(const PdeSystem& s, const Expr& k);

// Profile functions F, G[, H] of the system's coordinates.
std::vector<Expr> profile_functions(const PdeSystem& s);

// The warped flow on an n-dimensional conformally flat base with one
// residual per stored base entry and one for the fiber.
PdeSystem warped_system_n(std::size_t n, const Expr& m, const Expr& mu);

struct ReducedSystem {
    std::string family;
    std::vector<Expr> indep;
    std::vector<Expr> unknowns;
    std::vector<Expr> residuals;
    // Arc-length form in s (empty for warped_general_n).
    Expr arc_var;
    std::vector<Expr> arc_unknowns;
    std::vector<Expr> arc_residuals;
    Params params;
};

// Families warped_general_n (params n, m, mu, k), warped_1d_sphere_fiber
// (m, k; μ = m − 1) and doubly_warped (p, q, k). Missing parameters default to
// symbols; numeric ones are range-checked (n ≥ 1, m ≥ 1, p ≥ 2, q ≥ 2).
ReducedSystem reduced_system(const std::string& family, const Params& params = {});
const std::vector<std::string>& reduced_family_names();

// Rewrites e in unknowns u(x) as functions of s with ds/dx = density(x),
// keeping F(x) jets: u^{(j)}(x) → d^j/dx^j u(s(x)).
Expr arc_length_transform(const Expr& e, const Expr& x, const std::vector<Expr>& unknowns, const Expr& s,
                          const Expr& density);

// Strips the largest common power of f (a function call) from the terms of e.
Expr strip_common_power(const Expr& e, const Expr& f);

struct ClosedFormSolution {
    std::string name;
    std::string family;           // warped_1d_sphere_fiber or doubly_warped
    Expr s, t, k;                 // k > 0
    Expr K;                       // reduction parameter, ±k²
    std::vector<Expr> profiles;   // G(s)[, H(s)]
    Params params;                // m or p, q
    std::string domain;

    Expr time_factor() const;     // 1 + 2Kt
    // Metric line element as text.
    std::string metric_str() const;
};

const std::vector<ClosedFormSolution>& closed_form_library();
const ClosedFormSolution& closed_form(const std::string& name);
// Replaces the parameter symbols (m, p, q, k) by the given values.
ClosedFormSolution specialize(const ClosedFormSolution& sol, const Params& values);

// Metric components in (s, t): base g_ss and the fiber warps (coefficients of
// the unit-sphere metrics), with their dimensions.
struct SolutionMetric {
    Expr base;
    std::vector<WarpedFactor> fibers;
};
SolutionMetric solution_metric(const ClosedFormSolution& sol);
// ∂_t g + 2 Ric pieces from the warped-product formula, not yet combined:
// lhs[i] = ∂_t of component i, rhs[i] = −2 Ric component i.
struct FlowPieces {
    std::vector<Expr> lhs, rhs;
};
FlowPieces solution_flow_pieces(const ClosedFormSolution& sol);

struct ClosedFormVerdict {
    std::vector<ZeroResult> reduced;    // arc-length system
    std::vector<ZeroResult> invariant;  // invariant surface conditions
    std::vector<ZeroResult> pde;        // the displayed flow system in (s, t)
    std::vector<ZeroResult> flow;       // ∂_t g + 2 Ric from the geometry engine
    Verdict weakest() const;
};
ClosedFormVerdict verify_closed_form(const ClosedFormSolution& sol, const ZeroOptions& opts = {});

}  // namespace rsym
