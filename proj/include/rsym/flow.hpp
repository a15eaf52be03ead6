#pragma once

#include <unordered_map>
#include <vector>

#include "rsym/geometry.hpp"

namespace rsym {

// E_{αβ} = ∂_t g_{αβ} + 2 R_{αβ}.
Matrix flow_residual(const MetricFamily& m);

// First-order-in-time system u_k,t = F_k with F_k free of time derivatives.
// Rules ∂_K∂_t u_k → D_K F_k are precomputed for spatial orders up to
// eager_order and built on demand above that.
class EvolutionSystem {
public:
    EvolutionSystem(std::vector<Expr> coords, Expr time, std::vector<Expr> fields, std::vector<Expr> rhs,
                    int eager_order = 1);

    const std::vector<Expr>& coords() const { return coords_; }
    const Expr& time() const { return time_; }
    const std::vector<Expr>& fields() const { return fields_; }
    const std::vector<Expr>& rhs() const { return rhs_; }
    std::vector<std::string> field_names() const;

    // Replaces every covered time-derivative jet; throws RuleSetError for
    // jets with two or more time derivatives.
    Expr on_shell(const Expr& e) const;

    // Right-hand side for a jet of a field with exactly one time derivative.
    Expr rule_for(const Expr& jet) const;

private:
    int field_index(const Expr& jet) const;

    std::vector<Expr> coords_;
    Expr time_;
    std::vector<Expr> fields_;
    std::vector<Expr> rhs_;
    std::unordered_map<Expr, Expr, ExprHash> rules_;
};

// The Ricci flow of a metric whose entries are its dependent variables
// (MetricFamily::generic): ∂_t g_ab → −2 R_ab.
struct FlowSystem {
    MetricFamily metric;
    Matrix inv;
    Tensor3 gamma;  // Γ_{τγα}
    Matrix ricci;
    Matrix residual;
    EvolutionSystem rules;
};

FlowSystem make_flow_system(const MetricFamily& generic_metric, int eager_order = 1);

inline Expr on_shell(const Expr& e, const FlowSystem& f) { return f.rules.on_shell(e); }

}  // namespace rsym
