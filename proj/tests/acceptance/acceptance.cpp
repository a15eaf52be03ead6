// Runs the ten acceptance criteria and prints one PASS/FAIL line each.
// Exit status is the number of failing criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "json.hpp"
#include "rsym/calculus.hpp"
#include "rsym/geometry.hpp"
#include "rsym/lie.hpp"
#include "rsym/numerics.hpp"
#include "rsym/parse.hpp"
#include "rsym/print.hpp"
#include "rsym/random.hpp"
#include "rsym/reduce.hpp"
#include "rsym/restrict.hpp"

using namespace rsym;

namespace {

constexpr double kGridTolerance = 1e-10;
constexpr double kFdPassRate = 0.99;
constexpr std::size_t kSweep = 1000;

std::string data(const std::string& name) { return std::string(RSYM_DATA_DIR) + "/" + name; }

bool zero(const Expr& e) { return is_zero_verdict(equals_zero(e).verdict); }

// One-line detail per criterion; failures are appended to it.
struct Outcome {
    bool ok = true;
    std::ostringstream detail;
    void fail(const std::string& why) {
        if (ok) detail << " FAILED: ";
        else detail << "; ";
        detail << why;
        ok = false;
    }
};

std::vector<Expr> monomials(const std::vector<Expr>& xs, int degree) {
    std::vector<Expr> out{Expr(1)};
    std::vector<Expr> layer{Expr(1)};
    for (int d = 1; d <= degree; ++d) {
        std::vector<Expr> next;
        for (std::size_t i = 0; i < xs.size(); ++i)
            for (const auto& m : layer) {
                Expr c = m * xs[i];
                bool dup = false;
                for (const auto& n : next) dup = dup || n == c;
                if (!dup) next.push_back(c);
            }
        out.insert(out.end(), next.begin(), next.end());
        layer = next;
    }
    return out;
}

// ξ = monomial · e_i over every monomial of degree ≤ `degree` and every i.
std::vector<std::vector<Expr>> basis_fields(std::size_t n, int degree) {
    std::vector<Expr> xs;
    for (std::size_t i = 0; i < n; ++i) xs.push_back(sym("x" + std::to_string(i + 1)));
    std::vector<std::vector<Expr>> out;
    for (const auto& m : monomials(xs, degree))
        for (std::size_t i = 0; i < n; ++i) {
            std::vector<Expr> xi(n);
            xi[i] = m;
            out.push_back(xi);
        }
    return out;
}

void theorem_suite(Outcome& o, std::size_t n, int degree) {
    FlowSystem f = make_flow_system(MetricFamily::generic(Chart::standard(n)));
    auto fields = basis_fields(n, degree);
    std::vector<Generator> gens{theorem1_x1(f), theorem1_x2(f)};
    for (const auto& xi : fields) gens.push_back(theorem1_xi(f, xi));
    std::size_t entries = 0, probabilistic = 0;
    for (const auto& X : gens) {
        SymmetryVerdict v = check_symmetry(X, f);
        for (const auto& e : v.entries) {
            ++entries;
            if (e.zero.verdict == Verdict::ZeroProbabilistic) ++probabilistic;
        }
        if (!v.symmetry) o.fail(X.label + " is not a symmetry");
    }
    o.detail << fields.size() << " basis fields + X1, X2; " << entries << " entries (" << probabilistic
             << " probabilistic)";
}

void criterion1(Outcome& o) { theorem_suite(o, 2, 2); }
void criterion2(Outcome& o) { theorem_suite(o, 3, 1); }

void criterion3(Outcome& o) {
    std::ostringstream out, err;
    int code = cli::run({"restrict", "--ansatz", "conformal2d", "--format", "json"}, out, err);
    if (code != 0) return o.fail("restrict exited " + std::to_string(code));
    auto j = nlohmann::json::parse(out.str());
    std::vector<Expr> cs;
    for (const auto& c : j["constraints"]) cs.push_back(parse(c.get<std::string>()));
    std::vector<Expr> cr{parse("D(xi1(x1,x2),x1) - D(xi2(x1,x2),x2)"), parse("D(xi1(x1,x2),x2) + D(xi2(x1,x2),x1)")};
    if (cs.size() != 2) o.fail("expected 2 constraints, got " + std::to_string(cs.size()));
    for (const auto& c : cr) {
        bool found = false;
        for (const auto& e : cs) found = found || zero(e - c) || zero(e + c);
        if (!found) o.fail("missing constraint " + to_string(c));
    }
    Expr paper_Q = parse(
        "-(xi1(x1,x2)*D(u(x1,x2,t),x1) + xi2(x1,x2)*D(u(x1,x2,t),x2) + (c1 + c2*t)*D(u(x1,x2,t),t) - c2 + "
        "2*D(xi1(x1,x2),x1))");
    if (!zero(parse(j["Q"]["u"].get<std::string>()) - paper_Q)) o.fail("Q differs from the displayed form");

    RestrictionResult r = restrict_ansatz(make_ansatz("conformal2d"));
    PdeSystem s = conformal2d_system();
    Expr x1 = sym("x1"), x2 = sym("x2");
    auto pick = [&](const Expr& a, const Expr& b) {
        return instantiate(r.restricted, {{r.xi[0], a}, {r.xi[1], b}, {sym("c1"), Expr()}, {sym("c2"), Expr()}});
    };
    auto v = verify_restricted_algebra({pick(x1, x2), pick(x2, x1)}, s);
    if (!v[0].symmetry) o.fail("xi = (x1, x2) rejected");
    if (v[1].symmetry) o.fail("xi = (x2, x1) accepted");
    if (!v[1].witness) o.fail("xi = (x2, x1) has no witness");
    else o.detail << "CR pair and Q match; (x2,x1) witness value " << v[1].witness->zero.value;
}

void criterion4(Outcome& o) {
    std::size_t disagreements = 0, total = 0;
    for (auto [n, count, seed] : {std::tuple<std::size_t, int, std::uint64_t>{2, 50, 20240601},
                                  std::tuple<std::size_t, int, std::uint64_t>{3, 20, 20240602}}) {
        Chart c = Chart::standard(n);
        ExprGenerator gen(seed, c.coords);
        for (int k = 0; k < count; ++k) {
            MetricFamily m = random_rational_metric(gen, c);
            Matrix a = ricci(m), b = ricci_oracle(m);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) {
                    ++total;
                    if (!zero(a[i][j] - b[i][j])) ++disagreements;
                }
        }
    }
    o.detail << total << " entries over 70 metrics, " << disagreements << " disagreements";
    if (disagreements) o.fail("oracle disagreement");
}

void criterion5(Outcome& o) {
    for (const auto& sol : closed_form_library())
        if (verify_closed_form(sol).weakest() != Verdict::ZeroSymbolic) o.fail(sol.name + " not ZeroSymbolic");
    struct Case {
        const char* name;
        std::map<std::string, Expr> params;
    };
    std::vector<Case> cases;
    for (const char* w : {"warped_hyperbolic", "warped_spherical"})
        for (int m : {2, 3}) cases.push_back({w, {{"m", Expr(m)}, {"k", Expr(1)}}});
    for (const char* d : {"dw_sincos", "dw_sinsin", "dw_sinhsinh"})
        for (auto [p, q] : {std::pair{2, 2}, std::pair{3, 2}})
            cases.push_back({d, {{"p", Expr(p)}, {"q", Expr(q)}, {"k", Expr(1)}}});
    double worst = 0;
    for (const auto& c : cases) {
        GridReport r = grid_residual(specialize(closed_form(c.name), c.params), canonical_grid());
        worst = std::max(worst, r.max_abs);
        if (!(r.max_abs < kGridTolerance)) o.fail(std::string(c.name) + " grid max_abs " + std::to_string(r.max_abs));
    }
    char buf[96];
    std::snprintf(buf, sizeof buf, "5 solutions symbolic, %zu grids, worst max_abs %.3g < %g", cases.size(), worst,
                  kGridTolerance);
    o.detail << buf;
}

void criterion6(Outcome& o) {
    const ClosedFormSolution& sol = closed_form("dw_sincos");
    ReducedSystem r = reduced_system("doubly_warped", {{"k", sol.K}});
    Bindings b{{r.arc_unknowns[0], sol.profiles[0]}, {r.arc_unknowns[1], sol.profiles[1]}};
    for (std::size_t i = 0; i < r.arc_residuals.size(); ++i)
        if (equals_zero(substitute(r.arc_residuals[i], b)).verdict != Verdict::ZeroSymbolic)
            o.fail("arc residual " + std::to_string(i + 1) + " not symbolically zero");
    Expr G = sol.profiles[0], H = sol.profiles[1];
    if (equals_zero(G * G + H * H - (sym("p") + sym("q")) / (-sol.K)).verdict != Verdict::ZeroSymbolic)
        o.fail("amplitude identity");
    o.detail << r.arc_residuals.size() << " arc residuals and G^2 + H^2 = (p+q)/(-K) symbolic";
}

// [ξ, ζ]^i = ξ^j ∂_j ζ^i − ζ^j ∂_j ξ^i.
std::vector<Expr> vector_bracket(const std::vector<Expr>& a, const std::vector<Expr>& b, const std::vector<Expr>& xs) {
    std::vector<Expr> out(a.size());
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < xs.size(); ++j) out[i] = out[i] + a[j] * diff(b[i], xs[j]) - b[j] * diff(a[i], xs[j]);
    return out;
}

void criterion7(Outcome& o) {
    FlowSystem f = make_flow_system(MetricFamily::generic(Chart::standard(2)));
    Generator X1 = theorem1_x1(f), X2 = theorem1_x2(f);
    Generator null = metric_generator(f, Expr(), {Expr(), Expr()}, {Expr(), Expr(), Expr()});
    if (!same_generator(commutator(X1, X2), X1)) o.fail("[X1,X2] != X1");
    std::vector<Expr> xs = f.metric.chart().coords;
    ExprGenerator gen(777, xs);
    for (int k = 0; k < 3; ++k) {
        std::vector<Expr> a{gen.polynomial(2, 3), gen.polynomial(2, 3)};
        std::vector<Expr> b{gen.polynomial(2, 3), gen.polynomial(2, 3)};
        Generator A = theorem1_xi(f, a), B = theorem1_xi(f, b);
        if (!same_generator(commutator(X1, A), null)) o.fail("[X1,X_xi] != 0");
        if (!same_generator(commutator(A, B), theorem1_xi(f, vector_bracket(a, b, xs))))
            o.fail("[X_xi,X_zeta] != X_[xi,zeta] for pair " + std::to_string(k));
    }
    o.detail << "[X1,X2]=X1, [X1,X_xi]=0, 3 seeded pairs";
}

void print_audit(std::ostream& os, const AuditReport& r) {
    os << "    audit " << r.theorem << "\n";
    for (const auto& c : r.candidates) {
        os << "      " << (c.holds() ? "verifies " : "fails    ") << c.label;
        for (std::size_t i = 0; i < c.verdicts.size(); ++i)
            if (!c.verdicts[i].symmetry) os << " [" << c.generators[i].label << " not a symmetry]";
        os << "\n";
    }
}

void criterion8(Outcome& o, std::ostream& report) {
    PdeSystem s = doubly_warped_system(sym("p"), sym("q"));
    auto gens = doubly_warped_generators(s, parse("xi(x)"));
    auto v = verify_restricted_algebra(gens, s);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!v[i].symmetry) o.fail("doubly-warped generator " + gens[i].label);
    for (bool flat : {false, true}) {
        AuditReport a = audit_warped_theorem(flat);
        if (a.candidates.empty()) o.fail("empty audit");
        print_audit(report, a);
    }
    print_audit(report, audit_conformal_corollary());
    print_audit(report, audit_doubly_warped());
    o.detail << gens.size() << " doubly-warped generators verify; audit report below";
}

void criterion9(Outcome& o) {
    FdReport fd = fd_corpus_check(kSweep);
    if (fd.pass_rate() < kFdPassRate) o.fail("fd pass rate " + std::to_string(fd.pass_rate()));
    for (const PropertyReport& p :
         {check_simplify_idempotent(kSweep, 101), check_monomial_reconstruction(kSweep, 202)})
        if (!p.ok()) o.fail(p.property + ": " + p.first_failure);
    char buf[96];
    std::snprintf(buf, sizeof buf, "fd pass rate %.4f >= %.2f; idempotence and reconstruction %zu/%zu",
                  fd.pass_rate(), kFdPassRate, kSweep, kSweep);
    o.detail << buf;
}

void criterion10(Outcome& o) {
    FlowSystem f = make_flow_system(MetricFamily::generic(Chart::standard(2)));
    SymmetryVerdict t = check_symmetry(metric_generator(f, sym("t"), {Expr(), Expr()}, {Expr(), Expr(), Expr()}), f);
    if (t.symmetry || !t.witness || t.witness->zero.verdict != Verdict::NonZero) o.fail("t d/dt not rejected");

    Expr m = Expr(2);
    PdeSystem w = warped_system(m, m - Expr(1));
    Generator X3 = system_generator(w, {Expr(), Expr()}, {Expr(), w.fields[1]}, "phi d/dphi");
    SymmetryVerdict p = verify_restricted_algebra({X3}, w)[0];
    if (p.symmetry || !p.witness) o.fail("phi d/dphi not rejected");

    std::ostringstream out, err;
    int c1 = cli::run({"check-symmetry", data("generic2.json"), "--generator", data("t_dt.json")}, out, err);
    int c2 = cli::run({"check-symmetry", data("warped_einstein.json"), "--generator", data("phi_dphi.json")}, out, err);
    if (c1 != cli::Failed || c2 != cli::Failed)
        o.fail("cli exit codes " + std::to_string(c1) + ", " + std::to_string(c2));
    if (o.ok)
        o.detail << "t d/dt witness value " << t.witness->zero.value << ", phi d/dphi witness value "
                 << p.witness->zero.value << ", cli exit " << c1 << " and " << c2;
}

}  // namespace

int main() {
    std::ostringstream audit;
    std::vector<std::pair<std::string, std::function<void(Outcome&)>>> criteria{
        {"theorem generators, n = 2, degree <= 2", criterion1},
        {"theorem generators, n = 3, degree <= 1", criterion2},
        {"conformal 2d restriction", criterion3},
        {"ricci vs oracle on random metrics", criterion4},
        {"closed-form solutions", criterion5},
        {"sin/cos arc-length identities", criterion6},
        {"bracket table", criterion7},
        {"restricted theorem audits", [&](Outcome& o) { criterion8(o, audit); }},
        {"kernel health", criterion9},
        {"falsification", criterion10},
    };
    int failures = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        auto start = std::chrono::steady_clock::now();
        try {
            criteria[i].second(o);
        } catch (const std::exception& e) {
            o.fail(std::string("exception: ") + e.what());
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (!o.ok) ++failures;
        char head[64];
        std::snprintf(head, sizeof head, "[%s] %2zu ", o.ok ? "PASS" : "FAIL", i + 1);
        std::cout << head << criteria[i].first << " (" << std::fixed;
        std::cout.precision(1);
        std::cout << secs << " s): " << o.detail.str() << std::endl;
        std::cout.unsetf(std::ios::fixed);
        std::cout.precision(6);
        if (i == 7) std::cout << audit.str();
    }
    std::cout << (criteria.size() - failures) << "/" << criteria.size() << " criteria pass\n";
    return failures;
}
