#include "rsym/families.hpp"

#include <stdexcept>

#include "rsym/calculus.hpp"
#include "rsym/monomials.hpp"

namespace rsym {

EvolutionSystem to_evolution(const PdeSystem& s, int eager_order) {
    if (s.residuals.size() != s.fields.size()) throw std::invalid_argument(s.name + ": one residual per field");
    std::vector<Expr> time_jets, rhs;
    for (const auto& u : s.fields) time_jets.push_back(jet_derivative(u, {s.time}));
    for (std::size_t k = 0; k < s.fields.size(); ++k) {
        MonomialMap mm = collect_monomials(s.residuals[k], time_jets);
        Expr lin, rest;
        for (const auto& [key, coef] : mm) {
            if (key.empty()) {
                rest = coef;
            } else if (key.size() == 1 && key[0].first == time_jets[k] && key[0].second == 1) {
                lin = coef;
            } else {
                throw std::invalid_argument(s.name + ": residual " + std::to_string(k + 1) +
                                            " is not linear in its own time derivative");
            }
        }
        if (lin.is_zero()) throw std::invalid_argument(s.name + ": residual lacks " + time_jets[k].str());
        rhs.push_back(-(rest / lin));
    }
    return EvolutionSystem(s.coords, s.time, s.fields, rhs, eager_order);
}

PdeSystem conformal2d_system() {
    Chart c = Chart::standard(2);
    Expr u = Expr::function("u", {c.coords[0], c.coords[1], c.time});
    MetricFamily m(c, {{"u", u.node().args}});
    m.set(0, 0, exp(u));
    m.set(1, 1, exp(u));
    return {"conformal2d", c.coords, c.time, {u}, {flow_residual(m)[0][0]}};
}

PdeSystem conformal_rn_system() {
    Chart c = Chart::standard(2);
    Expr psi = Expr::function("psi", {c.coords[0], c.coords[1], c.time});
    MetricFamily m(c, {{"psi", psi.node().args}});
    m.set(0, 0, pow(psi, Rational(-2)));
    m.set(1, 1, pow(psi, Rational(-2)));
    return {"conformal_rn", c.coords, c.time, {psi}, {flow_residual(m)[0][0]}};
}

WarpedDisplay warped_display(const std::vector<Expr>& coords, const Expr& psi, const Expr& phi, const Expr& m,
                             const Expr& mu) {
    std::size_t n = coords.size();
    Expr nn(static_cast<std::int64_t>(n));
    std::vector<Expr> dpsi, dphi;
    for (const auto& x : coords) {
        dpsi.push_back(diff(psi, x));
        dphi.push_back(diff(phi, x));
    }
    std::vector<Expr> lpsi, lphi, gpsi, gmix, gphi;
    for (std::size_t i = 0; i < n; ++i) {
        lpsi.push_back(diff(dpsi[i], coords[i]));
        lphi.push_back(diff(dphi[i], coords[i]));
        gpsi.push_back(dpsi[i] * dpsi[i]);
        gmix.push_back(dpsi[i] * dphi[i]);
        gphi.push_back(dphi[i] * dphi[i]);
    }
    Expr lap_psi = add(lpsi), lap_phi = add(lphi), grad_psi = add(gpsi), mix = add(gmix), grad_phi = add(gphi);
    WarpedDisplay d;
    d.base = zero_matrix(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            Expr delta(i == j ? 1 : 0);
            Expr v = (nn - Expr(2)) * diff(dpsi[i], coords[j]) / psi +
                     (lap_psi / psi - (nn - Expr(1)) * grad_psi / (psi * psi)) * delta -
                     m / phi *
                         (diff(dphi[i], coords[j]) + (dpsi[i] * dphi[j] + dpsi[j] * dphi[i]) / psi - mix / psi * delta);
            d.base[i][j] = d.base[j][i] = v;
        }
    d.fiber = mu - phi * psi * psi * (lap_phi - (nn - Expr(2)) * mix / psi) - (m - Expr(1)) * psi * psi * grad_phi;
    return d;
}

PdeSystem warped_system(const Expr& m, const Expr& mu) {
    Expr x = sym("x"), t = sym("t");
    Expr psi = Expr::function("psi", {x, t}), phi = Expr::function("phi", {x, t});
    WarpedDisplay d = warped_display({x}, psi, phi, m, mu);
    Expr r1 = diff(psi, t) * pow(psi, Rational(-3)) - d.base[0][0];
    Expr r2 = -(phi * diff(phi, t)) - d.fiber;
    return {"warped", {x}, t, {psi, phi}, {r1, r2}};
}

PdeSystem doubly_warped_system(const Expr& p, const Expr& q) {
    Expr x = sym("x"), t = sym("t");
    Expr chi = Expr::function("chi", {x, t}), phi = Expr::function("phi", {x, t}), psi = Expr::function("psi", {x, t});
    Expr cx = diff(chi, x), fx = diff(phi, x), sx = diff(psi, x);
    Expr fxx = diff(fx, x), sxx = diff(sx, x);
    Expr one(1);
    Expr r1 = chi * diff(chi, t) - (p / phi * (fxx - fx * cx / chi) + q / psi * (sxx - sx * cx / chi));
    Expr r2 = phi * diff(phi, t) -
              (-(p - one) + phi * phi / (chi * chi) *
                                (one / phi * (fxx - fx * cx / chi) + (p - one) * pow(fx / phi, Rational(2)) +
                                 q * fx * sx / (phi * psi)));
    Expr r3 = psi * diff(psi, t) -
              (-(q - one) + psi * psi / (chi * chi) *
                                (one / psi * (sxx - sx * cx / chi) + (q - one) * pow(sx / psi, Rational(2)) +
                                 p * fx * sx / (psi * phi)));
    return {"doubly_warped", {x}, t, {chi, phi, psi}, {r1, r2, r3}};
}

}  // namespace rsym
