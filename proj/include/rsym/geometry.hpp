#pragma once

// Coordinate tensor calculus on a chart (x^1..x^n) with a time parameter t.

#include <string>
#include <vector>

#include "rsym/expr.hpp"

namespace rsym {

struct Chart {
    std::vector<Expr> coords;
    Expr time;

    std::size_t dim() const { return coords.size(); }
    // Chart with coordinates x1..xn and time t.
    static Chart standard(std::size_t n, const std::string& prefix = "x", const std::string& time = "t");
};

struct FieldDecl {
    std::string name;
    std::vector<Expr> args;
    Expr call() const { return Expr::function(name, args); }
};

using Matrix = std::vector<std::vector<Expr>>;
using Tensor3 = std::vector<Matrix>;

Matrix zero_matrix(std::size_t n);

class MetricFamily {
public:
    MetricFamily(Chart chart, std::vector<FieldDecl> fields = {});

    // g_ij = g<i><j>(x1..xn, t) for i <= j, every entry an unknown function.
    static MetricFamily generic(const Chart& chart, const std::string& prefix = "g");

    std::size_t dim() const { return chart_.dim(); }
    const Chart& chart() const { return chart_; }
    const std::vector<FieldDecl>& fields() const { return fields_; }

    // Symmetric access; only i <= j is stored.
    const Expr& at(std::size_t i, std::size_t j) const;
    void set(std::size_t i, std::size_t j, Expr e);
    Matrix matrix() const;

    // Unknown functions whose jets are the dependent variables.
    std::vector<std::string> dependent_names() const;
    // Base calls of the dependent variables, in declaration order.
    std::vector<Expr> dependent_calls() const;

private:
    std::size_t index(std::size_t i, std::size_t j) const;

    Chart chart_;
    std::vector<FieldDecl> fields_;
    std::vector<Expr> entries_;
};

Expr determinant(const Matrix& m);
// Inverse by cofactors, using the block structure of zero off-diagonal
// entries. Throws SingularMetricError when the determinant vanishes.
Matrix inverse(const Matrix& m);
Matrix inverse_metric(const MetricFamily& m);

// Γ_{τγα} = ½(∂_α g_{τγ} + ∂_γ g_{τα} − ∂_τ g_{γα}); indexed [τ][γ][α].
Tensor3 christoffel_lower(const MetricFamily& m);
// Γ^k_{ij} = g^{kτ} Γ_{τij}; indexed [k][i][j].
Tensor3 christoffel_upper(const Tensor3& lower, const Matrix& inv);

// R_{αβ} from second derivatives of g plus g^{γδ}g^{τρ}(ΓΓ − ΓΓ) terms.
Matrix ricci(const MetricFamily& m);
Matrix ricci(const MetricFamily& m, const Matrix& inv, const Tensor3& lower);
// R_{σν} = R^ρ_{σρν} with R^ρ_{σμν} built from Γ^k_{ij} and its derivatives.
Matrix ricci_oracle(const MetricFamily& m);

Matrix hessian(const MetricFamily& m, const Expr& f);
Expr laplacian(const MetricFamily& m, const Expr& f);
// g^{ij} ∂_i f ∂_j h.
Expr gradient_dot(const MetricFamily& m, const Expr& f, const Expr& h);

// Multiply-warped product B ×_{f_1} F_1 × ... with Einstein fibers
// Ric_{F_a} = μ_a g_{F_a} of dimension d_a.
struct WarpedFactor {
    Expr warp;  // f_a on the base
    Expr dim;   // d_a
    Expr mu;    // μ_a
};

struct WarpedRicci {
    Matrix base;                    // Ric restricted to the base
    std::vector<Expr> fiber_coeff;  // Ric|_{F_a} = fiber_coeff[a] · g_{F_a}
};

// Ric_B − Σ d_a/f_a Hess f_a on the base and
// μ_a − f_a Δf_a − (d_a − 1)|∇f_a|² − f_a Σ_{b≠a} d_b ⟨∇f_a, ∇f_b⟩/f_b on F_a.
WarpedRicci warped_ricci(const MetricFamily& base, const std::vector<WarpedFactor>& factors);

}  // namespace rsym
