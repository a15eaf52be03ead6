#include "rsym/geometry.hpp"

#include <numeric>
#include <set>
#include <stdexcept>

#include "rsym/calculus.hpp"
#include "rsym/errors.hpp"
#include "rsym/zero.hpp"

namespace rsym {

Chart Chart::standard(std::size_t n, const std::string& prefix, const std::string& time) {
    Chart c;
    for (std::size_t i = 1; i <= n; ++i) c.coords.push_back(sym(prefix + std::to_string(i)));
    c.time = sym(time);
    return c;
}

Matrix zero_matrix(std::size_t n) { return Matrix(n, std::vector<Expr>(n)); }

MetricFamily::MetricFamily(Chart chart, std::vector<FieldDecl> fields)
    : chart_(std::move(chart)), fields_(std::move(fields)) {
    std::set<std::string> names;
    for (const auto& c : chart_.coords) {
        if (c.kind() != Kind::Symbol) throw std::invalid_argument("chart coordinate must be a symbol");
        if (!names.insert(c.node().name).second) throw std::invalid_argument("repeated coordinate " + c.str());
    }
    if (names.count(chart_.time.node().name)) throw std::invalid_argument("time symbol is also a coordinate");
    std::size_t n = dim();
    entries_.assign(n * (n + 1) / 2, Expr());
    for (std::size_t i = 0; i < n; ++i) entries_[index(i, i)] = Expr(1);
}

MetricFamily MetricFamily::generic(const Chart& chart, const std::string& prefix) {
    std::vector<Expr> args = chart.coords;
    args.push_back(chart.time);
    std::vector<FieldDecl> fields;
    std::size_t n = chart.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            fields.push_back(FieldDecl{prefix + std::to_string(i + 1) + std::to_string(j + 1), args});
    MetricFamily m(chart, fields);
    std::size_t k = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) m.set(i, j, fields[k++].call());
    return m;
}

std::size_t MetricFamily::index(std::size_t i, std::size_t j) const {
    if (i > j) std::swap(i, j);
    std::size_t n = dim();
    if (j >= n) throw std::out_of_range("metric index out of range");
    return i * n - i * (i - 1) / 2 + (j - i);
}

const Expr& MetricFamily::at(std::size_t i, std::size_t j) const { return entries_[index(i, j)]; }
void MetricFamily::set(std::size_t i, std::size_t j, Expr e) { entries_[index(i, j)] = std::move(e); }

Matrix MetricFamily::matrix() const {
    std::size_t n = dim();
    Matrix m = zero_matrix(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) m[i][j] = at(i, j);
    return m;
}

std::vector<std::string> MetricFamily::dependent_names() const {
    std::vector<std::string> out;
    for (const auto& f : fields_) out.push_back(f.name);
    return out;
}

std::vector<Expr> MetricFamily::dependent_calls() const {
    std::vector<Expr> out;
    for (const auto& f : fields_) out.push_back(f.call());
    return out;
}

// ---------------------------------------------------------------------------
// Linear algebra

namespace {

Matrix minor_of(const Matrix& m, std::size_t r, std::size_t c) {
    Matrix out;
    for (std::size_t i = 0; i < m.size(); ++i) {
        if (i == r) continue;
        std::vector<Expr> row;
        for (std::size_t j = 0; j < m.size(); ++j)
            if (j != c) row.push_back(m[i][j]);
        out.push_back(std::move(row));
    }
    return out;
}

// Index groups connected through nonzero off-diagonal entries.
std::vector<std::vector<std::size_t>> blocks_of(const Matrix& m) {
    std::size_t n = m.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (!m[i][j].is_zero() || !m[j][i].is_zero()) parent[find(i)] = find(j);
    std::vector<std::vector<std::size_t>> groups;
    std::vector<int> slot(n, -1);
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t r = find(i);
        if (slot[r] < 0) {
            slot[r] = static_cast<int>(groups.size());
            groups.emplace_back();
        }
        groups[static_cast<std::size_t>(slot[r])].push_back(i);
    }
    return groups;
}

Matrix dense_inverse(const Matrix& m) {
    std::size_t n = m.size();
    if (n == 1) {
        if (equals_zero(m[0][0]).verdict != Verdict::NonZero) throw SingularMetricError("singular metric");
        return {{pow(m[0][0], Rational(-1))}};
    }
    Expr det = determinant(m);
    if (equals_zero(det).verdict != Verdict::NonZero) throw SingularMetricError("singular metric: determinant is zero");
    Expr inv_det = pow(det, Rational(-1));
    Matrix out = zero_matrix(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Expr cof = determinant(minor_of(m, j, i));
            if ((i + j) % 2 == 1) cof = -cof;
            out[i][j] = cof * inv_det;
        }
    return out;
}

}  // namespace

Expr determinant(const Matrix& m) {
    std::size_t n = m.size();
    if (n == 0) return Expr(1);
    if (n == 1) return m[0][0];
    if (n == 2) return m[0][0] * m[1][1] - m[0][1] * m[1][0];
    std::vector<Expr> parts;
    for (std::size_t j = 0; j < n; ++j) {
        if (m[0][j].is_zero()) continue;
        Expr term = m[0][j] * determinant(minor_of(m, 0, j));
        parts.push_back(j % 2 == 0 ? term : -term);
    }
    return add(parts);
}

Matrix inverse(const Matrix& m) {
    std::size_t n = m.size();
    Matrix out = zero_matrix(n);
    for (const auto& g : blocks_of(m)) {
        Matrix sub;
        for (std::size_t i : g) {
            std::vector<Expr> row;
            for (std::size_t j : g) row.push_back(m[i][j]);
            sub.push_back(std::move(row));
        }
        Matrix inv = dense_inverse(sub);
        for (std::size_t a = 0; a < g.size(); ++a)
            for (std::size_t b = 0; b < g.size(); ++b) out[g[a]][g[b]] = inv[a][b];
    }
    return out;
}

Matrix inverse_metric(const MetricFamily& m) { return inverse(m.matrix()); }

// ---------------------------------------------------------------------------
// Curvature

Tensor3 christoffel_lower(const MetricFamily& m) {
    std::size_t n = m.dim();
    const auto& x = m.chart().coords;
    // dg[c][i][j] = ∂_c g_ij
    Tensor3 dg(n, zero_matrix(n));
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) dg[c][i][j] = dg[c][j][i] = diff(m.at(i, j), x[c]);
    Tensor3 out(n, zero_matrix(n));
    Rational half(1, 2);
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t g = 0; g < n; ++g)
            for (std::size_t a = g; a < n; ++a) {
                Expr v = Expr(half) * (dg[a][t][g] + dg[g][t][a] - dg[t][g][a]);
                out[t][g][a] = v;
                out[t][a][g] = v;
            }
    return out;
}

Tensor3 christoffel_upper(const Tensor3& lower, const Matrix& inv) {
    std::size_t n = inv.size();
    Tensor3 out(n, zero_matrix(n));
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i; j < n; ++j) {
                std::vector<Expr> parts;
                for (std::size_t t = 0; t < n; ++t)
                    if (!inv[k][t].is_zero() && !lower[t][i][j].is_zero()) parts.push_back(inv[k][t] * lower[t][i][j]);
                out[k][i][j] = out[k][j][i] = add(parts);
            }
    return out;
}

Matrix ricci(const MetricFamily& m) {
    Matrix inv = inverse_metric(m);
    return ricci(m, inv, christoffel_lower(m));
}

Matrix ricci(const MetricFamily& m, const Matrix& inv, const Tensor3& lower) {
    std::size_t n = m.dim();
    const auto& x = m.chart().coords;
    // ddg[c][d] = ∂_c∂_d applied to each stored entry.
    std::vector<std::vector<Matrix>> ddg(n, std::vector<Matrix>(n, zero_matrix(n)));
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t d = c; d < n; ++d)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) {
                    Expr v = diff(diff(m.at(i, j), x[c]), x[d]);
                    ddg[c][d][i][j] = ddg[c][d][j][i] = ddg[d][c][i][j] = ddg[d][c][j][i] = v;
                }
    // up[τ][δ][β] = g^{τρ} Γ_{ρδβ}
    Tensor3 up(n, zero_matrix(n));
    for (std::size_t t = 0; t < n; ++t)
        for (std::size_t d = 0; d < n; ++d)
            for (std::size_t b = d; b < n; ++b) {
                std::vector<Expr> parts;
                for (std::size_t r = 0; r < n; ++r)
                    if (!inv[t][r].is_zero() && !lower[r][d][b].is_zero()) parts.push_back(inv[t][r] * lower[r][d][b]);
                up[t][d][b] = up[t][b][d] = add(parts);
            }
    Matrix out = zero_matrix(n);
    Rational half(1, 2);
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a; b < n; ++b) {
            std::vector<Expr> parts;
            for (std::size_t g = 0; g < n; ++g)
                for (std::size_t d = 0; d < n; ++d) {
                    if (inv[g][d].is_zero()) continue;
                    Expr second = ddg[g][d][a][b] + ddg[a][b][g][d] - ddg[b][d][a][g] - ddg[a][g][d][b];
                    std::vector<Expr> quad;
                    for (std::size_t t = 0; t < n; ++t) {
                        if (!lower[t][g][a].is_zero() && !up[t][d][b].is_zero()) quad.push_back(lower[t][g][a] * up[t][d][b]);
                        if (!lower[t][g][d].is_zero() && !up[t][a][b].is_zero()) quad.push_back(-(lower[t][g][d] * up[t][a][b]));
                    }
                    Expr inner = Expr(-half) * second + add(quad);
                    if (!inner.is_zero()) parts.push_back(inv[g][d] * inner);
                }
            out[a][b] = out[b][a] = add(parts);
        }
    return out;
}

Matrix ricci_oracle(const MetricFamily& m) {
    std::size_t n = m.dim();
    const auto& x = m.chart().coords;
    Matrix inv = inverse_metric(m);
    Tensor3 G = christoffel_upper(christoffel_lower(m), inv);
    // dG[c][k][i][j] = ∂_c Γ^k_{ij}
    std::vector<Tensor3> dG(n, Tensor3(n, zero_matrix(n)));
    for (std::size_t c = 0; c < n; ++c)
        for (std::size_t k = 0; k < n; ++k)
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) dG[c][k][i][j] = dG[c][k][j][i] = diff(G[k][i][j], x[c]);
    // R_{σν} = Σ_ρ R^ρ_{σρν}
    //        = ∂_ρ Γ^ρ_{νσ} − ∂_ν Γ^ρ_{ρσ} + Γ^ρ_{ρλ}Γ^λ_{νσ} − Γ^ρ_{νλ}Γ^λ_{ρσ}
    Matrix out = zero_matrix(n);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t v = s; v < n; ++v) {
            std::vector<Expr> parts;
            for (std::size_t r = 0; r < n; ++r) {
                parts.push_back(dG[r][r][v][s]);
                parts.push_back(-dG[v][r][r][s]);
                for (std::size_t l = 0; l < n; ++l) {
                    if (!G[r][r][l].is_zero() && !G[l][v][s].is_zero()) parts.push_back(G[r][r][l] * G[l][v][s]);
                    if (!G[r][v][l].is_zero() && !G[l][r][s].is_zero()) parts.push_back(-(G[r][v][l] * G[l][r][s]));
                }
            }
            out[s][v] = out[v][s] = add(parts);
        }
    return out;
}

Matrix hessian(const MetricFamily& m, const Expr& f) {
    std::size_t n = m.dim();
    const auto& x = m.chart().coords;
    Tensor3 G = christoffel_upper(christoffel_lower(m), inverse_metric(m));
    std::vector<Expr> df(n);
    for (std::size_t k = 0; k < n; ++k) df[k] = diff(f, x[k]);
    Matrix out = zero_matrix(n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            std::vector<Expr> parts{diff(df[i], x[j])};
            for (std::size_t k = 0; k < n; ++k)
                if (!G[k][i][j].is_zero() && !df[k].is_zero()) parts.push_back(-(G[k][i][j] * df[k]));
            out[i][j] = out[j][i] = add(parts);
        }
    return out;
}

Expr laplacian(const MetricFamily& m, const Expr& f) {
    Matrix inv = inverse_metric(m);
    Matrix h = hessian(m, f);
    std::vector<Expr> parts;
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            if (!inv[i][j].is_zero() && !h[i][j].is_zero()) parts.push_back(inv[i][j] * h[i][j]);
    return add(parts);
}

Expr gradient_dot(const MetricFamily& m, const Expr& f, const Expr& h) {
    Matrix inv = inverse_metric(m);
    const auto& x = m.chart().coords;
    std::vector<Expr> parts;
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j)
            if (!inv[i][j].is_zero()) parts.push_back(inv[i][j] * diff(f, x[i]) * diff(h, x[j]));
    return add(parts);
}

WarpedRicci warped_ricci(const MetricFamily& base, const std::vector<WarpedFactor>& factors) {
    WarpedRicci out;
    out.base = ricci(base);
    std::size_t n = base.dim();
    for (const auto& fa : factors) {
        Matrix h = hessian(base, fa.warp);
        Expr c = fa.dim * pow(fa.warp, Rational(-1));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) out.base[i][j] = out.base[i][j] - c * h[i][j];
    }
    for (std::size_t a = 0; a < factors.size(); ++a) {
        const auto& fa = factors[a];
        Expr coeff = fa.mu - fa.warp * laplacian(base, fa.warp) -
                     (fa.dim - Expr(1)) * gradient_dot(base, fa.warp, fa.warp);
        for (std::size_t b = 0; b < factors.size(); ++b) {
            if (b == a) continue;
            const auto& fb = factors[b];
            coeff = coeff - fa.warp * fb.dim * gradient_dot(base, fa.warp, fb.warp) * pow(fb.warp, Rational(-1));
        }
        out.fiber_coeff.push_back(coeff);
    }
    return out;
}

}  // namespace rsym
