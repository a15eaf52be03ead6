#pragma once

// Floating-point checks: analytic flow residuals on (s, t) grids and
// central-difference cross-checks of symbolic derivatives.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "json.hpp"
#include "rsym/eval.hpp"
#include "rsym/geometry.hpp"
#include "rsym/reduce.hpp"

namespace rsym {

struct Grid {
    double s_lo = 0.2, s_hi = 2.0;
    int s_count = 50;
    double t_lo = 0.0, t_hi = 0.4;
    int t_count = 20;
    // Points where a time factor or a denominator is closer to zero than
    // this are a domain violation.
    double exclusion = 1e-3;
    // Values for any other symbols (extra coordinates, parameters).
    std::map<std::string, double> fixed;

    double s_at(int i) const;
    double t_at(int j) const;
};

struct GridReport {
    std::string solution;
    Grid grid;
    double max_abs = 0.0;
    double argmax_s = 0.0, argmax_t = 0.0;
    std::size_t component = 0;
    std::size_t points = 0;
    std::uint64_t seed = 0;
};

// Residual components as lhs − rhs pairs over the symbols s and t, with the
// expressions whose magnitude must stay above grid.exclusion.
struct GridProblem {
    std::string name;
    Expr s, t;
    std::vector<Expr> lhs, rhs;
    std::vector<Expr> guards;
};

GridProblem grid_problem(const ClosedFormSolution& sol);
// Static or time-dependent metric on a one-dimensional chart, or a chart whose
// remaining coordinates are fixed by the grid.
GridProblem grid_problem(const MetricFamily& g, const std::string& name = "metric");

GridReport grid_residual_serial(const GridProblem& p, const Grid& grid);
GridReport grid_residual_omp(const GridProblem& p, const Grid& grid);
inline GridReport grid_residual(const GridProblem& p, const Grid& grid) { return grid_residual_omp(p, grid); }
// sol must carry numeric parameters (see specialize).
GridReport grid_residual(const ClosedFormSolution& sol, const Grid& grid);

// The solution's canonical grid: s ∈ [0.2, 2], t ∈ [0, 0.4], 50 × 20.
Grid canonical_grid();

nlohmann::json to_json(const Grid& g);
nlohmann::json to_json(const GridReport& r);

struct FdVariableReport {
    std::string variable;
    std::size_t trials = 0;
    std::size_t passed = 0;
    std::size_t skipped = 0;  // domain errors at the sample point
    double worst = 0.0;
};

struct FdReport {
    std::vector<FdVariableReport> per_variable;
    std::uint64_t seed = 0;
    double pass_rate() const;
};

struct FdOptions {
    double h = 1e-5;
    double tolerance = 1e-6;
    double lo = 0.2, hi = 1.7;
    std::uint64_t seed = 0xfd0c4ec;
};

// |fd − d| / max(|d|, 1) per trial, with fd the central difference of e and
// d the symbolic derivative, at random points of [lo, hi]^vars.
FdReport fd_cross_check(const Expr& e, const std::vector<Expr>& vars, std::size_t trials, const FdOptions& opts = {});

// One trial per variable on each of `count` generated smooth expressions.
FdReport fd_corpus_check(std::size_t count, const FdOptions& opts = {});

nlohmann::json to_json(const FdReport& r);

// Seeded property sweeps over generated expressions; failures keep the first
// offending expression as text.
struct PropertyReport {
    std::string property;
    std::size_t cases = 0;
    std::size_t passed = 0;
    std::string first_failure;
    bool ok() const { return passed == cases; }
};

PropertyReport check_simplify_idempotent(std::size_t count, std::uint64_t seed);
PropertyReport check_monomial_reconstruction(std::size_t count, std::uint64_t seed);
PropertyReport check_product_rule(std::size_t count, std::uint64_t seed);
PropertyReport check_clairaut(std::size_t count, std::uint64_t seed);
PropertyReport check_print_roundtrip(std::size_t count, std::uint64_t seed);

}  // namespace rsym
