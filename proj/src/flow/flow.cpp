#include "rsym/flow.hpp"

#include <algorithm>
#include <stdexcept>

#include "rsym/calculus.hpp"
#include "rsym/errors.hpp"

namespace rsym {

Matrix flow_residual(const MetricFamily& m) {
    Matrix r = ricci(m);
    const Expr& t = m.chart().time;
    std::size_t n = m.dim();
    Matrix out = zero_matrix(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) out[i][j] = out[j][i] = diff(m.at(i, j), t) + Expr(2) * r[i][j];
    return out;
}

namespace {

void spatial_indices(std::size_t n, int order, std::vector<int>& cur, std::vector<std::vector<int>>& out) {
    if (order == 0) {
        out.push_back(cur);
        return;
    }
    std::size_t start = cur.empty() ? 0 : static_cast<std::size_t>(cur.back());
    for (std::size_t i = start; i < n; ++i) {
        cur.push_back(static_cast<int>(i));
        spatial_indices(n, order - 1, cur, out);
        cur.pop_back();
    }
}

}  // namespace

EvolutionSystem::EvolutionSystem(std::vector<Expr> coords, Expr time, std::vector<Expr> fields, std::vector<Expr> rhs,
                                 int eager_order)
    : coords_(std::move(coords)), time_(std::move(time)), fields_(std::move(fields)), rhs_(std::move(rhs)) {
    if (fields_.size() != rhs_.size()) throw std::invalid_argument("one right-hand side per field required");
    for (std::size_t k = 0; k < fields_.size(); ++k) {
        const Expr& u = fields_[k];
        if (!is_coordinate_jet(u) || jet_total_order(u) != 0) throw std::invalid_argument("field must be u(x,...,t)");
        Expr ut = jet_derivative(u, {time_});
        // Spatial coordinates the field depends on.
        std::vector<Expr> xs;
        for (const auto& x : coords_)
            if (jet_order_in(u, x) == 0 && std::find(u.node().args.begin(), u.node().args.end(), x) != u.node().args.end())
                xs.push_back(x);
        for (int order = 0; order <= eager_order; ++order) {
            std::vector<std::vector<int>> idx;
            std::vector<int> cur;
            spatial_indices(xs.size(), order, cur, idx);
            for (const auto& mi : idx) {
                Expr jet = ut, value = rhs_[k];
                for (int i : mi) {
                    jet = jet_derivative(jet, {xs[static_cast<std::size_t>(i)]});
                    value = diff(value, xs[static_cast<std::size_t>(i)]);
                }
                rules_.emplace(jet, value);
            }
        }
    }
}

std::vector<std::string> EvolutionSystem::field_names() const {
    std::vector<std::string> out;
    for (const auto& f : fields_) out.push_back(f.node().name);
    return out;
}

int EvolutionSystem::field_index(const Expr& jet) const {
    if (jet.kind() != Kind::Jet) return -1;
    for (std::size_t k = 0; k < fields_.size(); ++k)
        if (fields_[k].node().name == jet.node().name && fields_[k].node().args == jet.node().args)
            return static_cast<int>(k);
    return -1;
}

Expr EvolutionSystem::rule_for(const Expr& jet) const {
    auto it = rules_.find(jet);
    if (it != rules_.end()) return it->second;
    int k = field_index(jet);
    if (k < 0 || jet_order_in(jet, time_) != 1) throw RuleSetError("no on-shell rule for " + jet.str());
    const Node& n = jet.node();
    Expr value = rhs_[static_cast<std::size_t>(k)];
    for (std::size_t i = 0; i < n.args.size(); ++i)
        if (n.args[i] != time_) value = diff(value, n.args[i], n.orders[i]);
    return value;
}

Expr EvolutionSystem::on_shell(const Expr& e) const {
    Bindings b;
    for (const auto& atom : free_atoms(e)) {
        if (field_index(atom) < 0) continue;
        int ot = jet_order_in(atom, time_);
        if (ot == 0) continue;
        if (ot > 1) throw RuleSetError("rule set does not cover " + atom.str());
        b.emplace_back(atom, rule_for(atom));
    }
    return substitute(e, b);
}

FlowSystem make_flow_system(const MetricFamily& m, int eager_order) {
    std::size_t n = m.dim();
    std::vector<Expr> fields, rhs;
    Matrix inv = inverse_metric(m);
    Tensor3 gamma = christoffel_lower(m);
    Matrix ric = ricci(m, inv, gamma);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            const Expr& g = m.at(i, j);
            if (!is_coordinate_jet(g) || jet_total_order(g) != 0)
                throw std::invalid_argument("flow system needs unknown-function metric entries");
            fields.push_back(g);
            rhs.push_back(Expr(-2) * ric[i][j]);
        }
    Matrix residual = zero_matrix(n);
    const Expr& t = m.chart().time;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            residual[i][j] = residual[j][i] = diff(m.at(i, j), t) + Expr(2) * ric[i][j];
    EvolutionSystem rules(m.chart().coords, t, fields, rhs, eager_order);
    return FlowSystem{m, std::move(inv), std::move(gamma), std::move(ric), std::move(residual), std::move(rules)};
}

}  // namespace rsym
