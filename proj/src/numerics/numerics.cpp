#include "rsym/numerics.hpp"

#include <cmath>
#include <exception>
#include <random>
#include <stdexcept>

#include "rsym/errors.hpp"
#include "rsym/flow.hpp"
#include "rsym/monomials.hpp"
#include "rsym/parse.hpp"
#include "rsym/print.hpp"
#include "rsym/random.hpp"

namespace rsym {

double Grid::s_at(int i) const { return s_count <= 1 ? s_lo : s_lo + (s_hi - s_lo) * i / (s_count - 1); }
double Grid::t_at(int j) const { return t_count <= 1 ? t_lo : t_lo + (t_hi - t_lo) * j / (t_count - 1); }

Grid canonical_grid() { return Grid{}; }

GridProblem grid_problem(const ClosedFormSolution& sol) {
    FlowPieces fp = solution_flow_pieces(sol);
    GridProblem p{sol.name, sol.s, sol.t, fp.lhs, fp.rhs, {sol.time_factor()}};
    for (const auto& f : sol.profiles) p.guards.push_back(f);
    return p;
}

GridProblem grid_problem(const MetricFamily& g, const std::string& name) {
    if (g.dim() == 0) throw std::invalid_argument("empty chart");
    Matrix ric = ricci(g);
    GridProblem p{name, g.chart().coords[0], g.chart().time, {}, {}, {determinant(g.matrix())}};
    for (std::size_t i = 0; i < g.dim(); ++i)
        for (std::size_t j = i; j < g.dim(); ++j) {
            p.lhs.push_back(diff(g.at(i, j), g.chart().time));
            p.rhs.push_back(Expr(-2) * ric[i][j]);
        }
    return p;
}

namespace {

Assignment base_assignment(const Grid& grid) {
    Assignment a;
    for (const auto& [name, v] : grid.fixed) a[sym(name)] = v;
    return a;
}

struct PointResult {
    double value = 0.0;
    std::size_t component = 0;
};

PointResult eval_point(const GridProblem& p, const Grid& grid, Assignment& a, double s, double t) {
    a[p.s] = s;
    a[p.t] = t;
    for (const auto& g : p.guards) {
        double v = eval_numeric(g, a);
        if (std::fabs(v) < grid.exclusion)
            throw DomainError(p.name + ": grid point (" + std::to_string(s) + ", " + std::to_string(t) +
                              ") lies within the exclusion radius of a singular set");
    }
    PointResult best;
    for (std::size_t c = 0; c < p.lhs.size(); ++c) {
        double d = std::fabs(eval_numeric(p.lhs[c], a) - eval_numeric(p.rhs[c], a));
        if (std::isnan(d)) throw DomainError(p.name + ": residual is NaN");
        if (d > best.value || c == 0) best = {d, c};
    }
    return best;
}

GridReport make_report(const GridProblem& p, const Grid& grid) {
    GridReport r;
    r.solution = p.name;
    r.grid = grid;
    r.points = static_cast<std::size_t>(grid.s_count) * static_cast<std::size_t>(grid.t_count);
    return r;
}

void check_grid(const Grid& g) {
    if (g.s_count < 1 || g.t_count < 1) throw std::invalid_argument("grid counts must be positive");
    if (!(g.s_lo <= g.s_hi) || !(g.t_lo <= g.t_hi)) throw std::invalid_argument("grid ranges are reversed");
}

}  // namespace

GridReport grid_residual_serial(const GridProblem& p, const Grid& grid) {
    check_grid(grid);
    GridReport r = make_report(p, grid);
    Assignment a = base_assignment(grid);
    for (int i = 0; i < grid.s_count; ++i)
        for (int j = 0; j < grid.t_count; ++j) {
            double s = grid.s_at(i), t = grid.t_at(j);
            PointResult pr = eval_point(p, grid, a, s, t);
            if (pr.value > r.max_abs || (i == 0 && j == 0)) {
                r.max_abs = pr.value;
                r.argmax_s = s;
                r.argmax_t = t;
                r.component = pr.component;
            }
        }
    return r;
}

GridReport grid_residual_omp(const GridProblem& p, const Grid& grid) {
    check_grid(grid);
    GridReport r = make_report(p, grid);
    const long total = static_cast<long>(grid.s_count) * grid.t_count;
    std::vector<PointResult> results(static_cast<std::size_t>(total));
    std::exception_ptr error;
#pragma omp parallel
    {
        Assignment a = base_assignment(grid);
#pragma omp for schedule(static)
        for (long idx = 0; idx < total; ++idx) {
            try {
                int i = static_cast<int>(idx / grid.t_count), j = static_cast<int>(idx % grid.t_count);
                results[static_cast<std::size_t>(idx)] = eval_point(p, grid, a, grid.s_at(i), grid.t_at(j));
            } catch (...) {
#pragma omp critical(rsym_grid_error)
                if (!error) error = std::current_exception();
            }
        }
    }
    if (error) std::rethrow_exception(error);
    // Same scan order as the serial loop, so ties resolve identically.
    for (long idx = 0; idx < total; ++idx) {
        const PointResult& pr = results[static_cast<std::size_t>(idx)];
        if (pr.value > r.max_abs || idx == 0) {
            int i = static_cast<int>(idx / grid.t_count), j = static_cast<int>(idx % grid.t_count);
            r.max_abs = pr.value;
            r.argmax_s = grid.s_at(i);
            r.argmax_t = grid.t_at(j);
            r.component = pr.component;
        }
    }
    return r;
}

GridReport grid_residual(const ClosedFormSolution& sol, const Grid& grid) {
    return grid_residual(grid_problem(sol), grid);
}

nlohmann::json to_json(const Grid& g) {
    nlohmann::json j{{"s", {g.s_lo, g.s_hi, g.s_count}},
                     {"t", {g.t_lo, g.t_hi, g.t_count}},
                     {"exclusion", g.exclusion}};
    if (!g.fixed.empty()) j["fixed"] = g.fixed;
    return j;
}

nlohmann::json to_json(const GridReport& r) {
    return {{"solution", r.solution},
            {"grid", to_json(r.grid)},
            {"max_abs", r.max_abs},
            {"argmax", {{"s", r.argmax_s}, {"t", r.argmax_t}, {"component", r.component}}},
            {"seed", r.seed}};
}

double FdReport::pass_rate() const {
    std::size_t trials = 0, passed = 0;
    for (const auto& v : per_variable) {
        trials += v.trials;
        passed += v.passed;
    }
    return trials == 0 ? 1.0 : static_cast<double>(passed) / static_cast<double>(trials);
}

namespace {

// One sample: false when the point is outside the expression's domain.
bool fd_trial(const Expr& e, const Expr& d, const Expr& v, Assignment& a, const FdOptions& o, double& err) {
    double x = a.at(v);
    double val, fp, fm;
    try {
        val = eval_numeric(d, a);
        a[v] = x + o.h;
        fp = eval_numeric(e, a);
        a[v] = x - o.h;
        fm = eval_numeric(e, a);
    } catch (const DomainError&) {
        a[v] = x;
        return false;
    }
    a[v] = x;
    double fd = (fp - fm) / (2 * o.h);
    err = std::fabs(fd - val) / std::max(std::fabs(val), 1.0);
    return true;
}

void record(FdVariableReport& rep, bool sampled, double err, const FdOptions& o) {
    if (!sampled) {
        ++rep.skipped;
        return;
    }
    ++rep.trials;
    if (err < o.tolerance) ++rep.passed;
    rep.worst = std::max(rep.worst, err);
}

}  // namespace

FdReport fd_cross_check(const Expr& e, const std::vector<Expr>& vars, std::size_t trials, const FdOptions& opts) {
    FdReport r;
    r.seed = opts.seed;
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> dist(opts.lo, opts.hi);
    std::vector<Expr> atoms = free_atoms(e);
    for (const auto& v : vars) {
        FdVariableReport rep;
        rep.variable = v.str();
        Expr d = diff(e, v);
        for (std::size_t k = 0; k < trials; ++k) {
            Assignment a;
            for (const auto& atom : atoms) a[atom] = dist(rng);
            a[v] = dist(rng);
            double err = 0.0;
            bool sampled = fd_trial(e, d, v, a, opts, err);
            record(rep, sampled, err, opts);
        }
        r.per_variable.push_back(rep);
    }
    return r;
}

FdReport fd_corpus_check(std::size_t count, const FdOptions& opts) {
    std::vector<Expr> vars{sym("x"), sym("y")};
    ExprGenerator gen(opts.seed, vars);
    std::uniform_real_distribution<double> dist(opts.lo, opts.hi);
    FdReport r;
    r.seed = opts.seed;
    for (const auto& v : vars) r.per_variable.push_back({v.str(), 0, 0, 0, 0.0});
    for (std::size_t k = 0; k < count; ++k) {
        Expr e = gen.smooth(3);
        Assignment a;
        for (const auto& v : vars) a[v] = dist(gen.rng());
        for (std::size_t i = 0; i < vars.size(); ++i) {
            double err = 0.0;
            bool sampled = fd_trial(e, diff(e, vars[i]), vars[i], a, opts, err);
            record(r.per_variable[i], sampled, err, opts);
        }
    }
    return r;
}

nlohmann::json to_json(const FdReport& r) {
    nlohmann::json vars = nlohmann::json::array();
    for (const auto& v : r.per_variable)
        vars.push_back({{"variable", v.variable},
                        {"trials", v.trials},
                        {"passed", v.passed},
                        {"skipped", v.skipped},
                        {"worst_rel_error", v.worst}});
    return {{"variables", vars}, {"pass_rate", r.pass_rate()}, {"seed", r.seed}};
}

}  // namespace rsym

namespace rsym {

namespace {

template <class Gen, class Check>
PropertyReport sweep(const std::string& name, std::size_t count, Gen&& gen, Check&& check) {
    PropertyReport r;
    r.property = name;
    for (std::size_t k = 0; k < count; ++k) {
        Expr e = gen();
        ++r.cases;
        bool ok = false;
        try {
            ok = check(e);
        } catch (const std::exception&) {
            ok = false;
        }
        if (ok) {
            ++r.passed;
        } else if (r.first_failure.empty()) {
            r.first_failure = to_string(e);
        }
    }
    return r;
}

std::vector<Expr> xy() { return {sym("x"), sym("y")}; }

}  // namespace

PropertyReport check_simplify_idempotent(std::size_t count, std::uint64_t seed) {
    ExprGenerator gen(seed, xy());
    return sweep("simplify idempotent", count, [&] { return gen.smooth(3); },
                 [](const Expr& e) {
                     Expr once = simplify(e);
                     return simplify(once) == once && once == e;
                 });
}

PropertyReport check_monomial_reconstruction(std::size_t count, std::uint64_t seed) {
    std::vector<Expr> coords{sym("x1"), sym("x2")};
    std::vector<Expr> args{coords[0], coords[1], sym("t")};
    std::vector<Expr> jets;
    for (const char* g : {"g11", "g12", "g22"}) {
        Expr f = Expr::function(g, args);
        jets.push_back(diff(f, coords[0]));
        jets.push_back(diff(f, coords[1]));
        jets.push_back(diff(f, coords[0], 2));
    }
    ExprGenerator gen(seed, {coords[0], coords[1], Expr::function("g11", args), Expr::function("xi1", coords)});
    std::uniform_int_distribution<std::size_t> pick(0, jets.size() - 1);
    std::uniform_int_distribution<int> nterms(1, 5), nfac(0, 3);
    auto make = [&] {
        std::vector<Expr> terms;
        int n = nterms(gen.rng());
        for (int i = 0; i < n; ++i) {
            Expr term = gen.smooth(2);
            int f = nfac(gen.rng());
            for (int j = 0; j < f; ++j) term = term * jets[pick(gen.rng())];
            terms.push_back(term);
        }
        return add(terms);
    };
    return sweep("monomial reconstruction", count, make, [&](const Expr& e) {
        Expr sum;
        for (const auto& [key, coeff] : collect_monomials(e, jets)) sum += coeff * monomial_expr(key);
        return equals_zero(sum - e).verdict == Verdict::ZeroSymbolic;
    });
}

PropertyReport check_product_rule(std::size_t count, std::uint64_t seed) {
    ExprGenerator gen(seed, xy());
    Expr x = sym("x");
    return sweep("product rule", count, [&] { return gen.smooth(2); },
                 [&](const Expr& a) {
                     Expr b = gen.smooth(2);
                     return equals_zero(diff(a * b, x) - a * diff(b, x) - b * diff(a, x)).verdict ==
                            Verdict::ZeroSymbolic;
                 });
}

PropertyReport check_clairaut(std::size_t count, std::uint64_t seed) {
    ExprGenerator gen(seed, xy());
    Expr x = sym("x"), y = sym("y");
    return sweep("Clairaut", count, [&] { return gen.smooth(3); },
                 [&](const Expr& e) {
                     Expr a = diff(diff(e, x), y), b = diff(diff(e, y), x);
                     // No polynomial gcd in the canonical form, so quotients may
                     // need their denominators cleared to meet.
                     return a == b || equals_zero(a - b).verdict == Verdict::ZeroSymbolic;
                 });
}

PropertyReport check_print_roundtrip(std::size_t count, std::uint64_t seed) {
    ExprGenerator gen(seed, xy());
    return sweep("print/parse round trip", count, [&] { return gen.smooth(3); },
                 [](const Expr& e) { return parse(to_string(e)) == e; });
}

}  // namespace rsym
