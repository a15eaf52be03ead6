#pragma once

// Point-symmetry generators X = Σ ξ^i ∂/∂x^i + Σ η_k ∂/∂u_k, their prolongation
// to jets, and the linearized symmetry condition.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "rsym/flow.hpp"
#include "rsym/monomials.hpp"
#include "rsym/zero.hpp"

namespace rsym {

struct Generator {
    std::vector<Expr> indep;  // independent variables (time first for flows)
    std::vector<Expr> xi;     // ξ per independent variable
    std::vector<Expr> dep;    // dependent variables as base calls u_k(x,...,t)
    std::vector<Expr> eta;    // η per dependent variable
    std::string label;

    std::vector<std::string> dep_names() const;
    // Component acting on the given variable (independent or dependent).
    const Expr& component(const Expr& var) const;
};

// Generator on (t, x, g_ab) for a flow system; eta in upper-triangular order.
Generator metric_generator(const FlowSystem& f, Expr xi_t, std::vector<Expr> xi, std::vector<Expr> eta,
                           std::string label = {});

// Q_k = η_k − Σ_i ξ^i D_i u_k.
std::vector<Expr> characteristic(const Generator& X);

// Coefficient of the prolonged generator on a jet of a dependent variable:
// η^J = D_J Q_k + Σ_i ξ^i D_i(u_J).
Expr prolongation_coefficient(const Generator& X, const std::vector<Expr>& Q, const Expr& jet);

// Second prolongation on the metric jets: first[k][κ] for ∂_κ g, time[k] for
// ∂_t g, second[k][κ][λ] for ∂_κ∂_λ g; k runs over the stored entries.
struct ProlongedGenerator {
    Generator base;
    std::vector<Expr> Q;
    std::vector<std::vector<Expr>> first;
    std::vector<Expr> time;
    std::vector<std::vector<std::vector<Expr>>> second;
};

ProlongedGenerator prolong2(const Generator& X, const FlowSystem& f);

// pr X(E_{αβ}) for E = ∂_t g + 2 Ric assembled from η-coefficients,
// Christoffel symbols and inverse metrics (twice X^{(2)}(R + ½∂_t g)).
Matrix apply_prolonged(const ProlongedGenerator& PX, const FlowSystem& f);

// pr X applied to arbitrary residuals by the chain rule over every jet that
// occurs, plus explicit dependence on the independent variables.
Expr apply_prolonged_generic(const Generator& X, const std::vector<Expr>& Q, const Expr& residual);

struct EntryVerdict {
    std::size_t row = 0, col = 0;
    ZeroResult zero;
    Expr value;  // on-shell entry (kept only when nonzero)
};

struct SymmetryVerdict {
    bool symmetry = true;
    Verdict strength = Verdict::ZeroSymbolic;  // weakest zero verdict over entries
    std::vector<EntryVerdict> entries;
    std::optional<EntryVerdict> witness;
};

// apply_prolonged → on_shell → equals_zero per entry (entries checked in parallel).
SymmetryVerdict check_symmetry(const Generator& X, const FlowSystem& f, const ZeroOptions& opts = {});

// Symmetry check for an evolution system given by residuals (one per field,
// u_t − F): pr X(residual) on-shell must vanish.
SymmetryVerdict check_symmetry(const Generator& X, const EvolutionSystem& sys, const std::vector<Expr>& residuals,
                               const ZeroOptions& opts = {});

// X_1 = ∂_t, X_2 = t∂_t + Σ g_ij ∂_{g_ij}, and X_ξ = Σ ξ^k ∂_k − Σ (g_ki ∂_j ξ^k + g_kj ∂_i ξ^k) ∂_{g_ij}.
Generator theorem1_x1(const FlowSystem& f);
Generator theorem1_x2(const FlowSystem& f);
Generator theorem1_xi(const FlowSystem& f, const std::vector<Expr>& xi);
std::vector<Generator> theorem1_generators(const FlowSystem& f, const std::vector<std::vector<Expr>>& xis);

// Lie bracket on (indep, dep)-space; both generators must share variables.
Generator commutator(const Generator& X, const Generator& Y);
// Componentwise canonical equality.
bool same_generator(const Generator& X, const Generator& Y);

struct DeterminingEquation {
    MonomialKey key;
    Expr coefficient;
    std::string family;
};

struct DeterminingSystem {
    std::vector<DeterminingEquation> equations;
    Generator generic;
};

// Generic generator with ξ^t, ξ^i, η_ab unknown functions of (t, x, g).
Generator generic_metric_generator(const FlowSystem& f);

// Linearized condition for the generic generator, optionally on-shell,
// collected by monomials in the metric jets left after substitution.
DeterminingSystem determining_monomial_system(const FlowSystem& f, bool on_shell = true);

// Substitutes a concrete generator for the unknown components of the generic one.
Expr specialize(const Expr& coefficient, const Generator& generic, const Generator& concrete);

// Monomial family label such as "∂g ∂∂g terms".
std::string monomial_family(const MonomialKey& key, const Expr& time);

}  // namespace rsym
