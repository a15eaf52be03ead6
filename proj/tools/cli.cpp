#include "cli.hpp"

#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "rsym/errors.hpp"
#include "rsym/flow.hpp"
#include "rsym/geometry.hpp"
#include "rsym/lie.hpp"
#include "rsym/numerics.hpp"
#include "rsym/parse.hpp"
#include "rsym/print.hpp"
#include "rsym/reduce.hpp"
#include "rsym/restrict.hpp"

namespace rsym::cli {

using nlohmann::json;

namespace {

// Malformed files, schemas or flag values.
struct InputFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Output

class Emitter {
public:
    explicit Emitter(std::string format) : format_(std::move(format)) {}

    json& doc() { return doc_; }

    void expr(json& slot, const std::string& text_label, const std::string& latex_label, const Expr& e) {
        slot = to_string(e);
        lines_.push_back({text_label, latex_label, to_string(e), to_latex(e), true});
    }
    void note(const std::string& label, const std::string& value) { lines_.push_back({label, "", value, "", false}); }

    void render(std::ostream& os) const {
        if (format_ == "json") {
            os << doc_.dump(2) << "\n";
        } else if (format_ == "latex") {
            os << "\\begin{align*}\n";
            for (const auto& l : lines_)
                if (l.math) os << "  " << l.latex_label << " &= " << l.latex << " \\\\\n";
            os << "\\end{align*}\n";
            for (const auto& l : lines_)
                if (!l.math) os << "% " << l.text_label << ": " << l.text << "\n";
        } else {
            for (const auto& l : lines_) os << l.text_label << (l.math ? " = " : ": ") << l.text << "\n";
        }
    }

private:
    struct Line {
        std::string text_label, latex_label, text, latex;
        bool math;
    };
    std::string format_;
    json doc_ = json::object();
    std::vector<Line> lines_;
};

std::string idx(std::size_t i) { return std::to_string(i + 1); }
std::string pair_key(std::size_t i, std::size_t j) { return idx(i) + "," + idx(j); }

json witness_json(const ZeroResult& z) {
    json w = json::object();
    for (const auto& [atom, v] : z.witness) w[to_string(atom)] = v;
    return w;
}

std::string witness_text(const ZeroResult& z) {
    std::ostringstream os;
    bool first = true;
    if (z.witness.empty()) {
        os << "every point (value " << z.value << ")";
        first = false;
    }
    for (const auto& [atom, v] : z.witness) {
        os << (first ? "" : ", ") << to_string(atom) << "=" << v;
        first = false;
    }
    if (!z.note.empty()) os << (first ? "" : "; ") << z.note;
    return os.str();
}

// ---------------------------------------------------------------------------
// Input

json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputFailure("cannot open " + path);
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputFailure(path + ": " + e.what());
    }
}

Expr parse_field(const json& j, const std::string& what) {
    if (j.is_number_integer()) return Expr(static_cast<std::int64_t>(j.get<long long>()));
    if (!j.is_string()) throw InputFailure(what + " must be an expression string");
    try {
        return parse(j.get<std::string>());
    } catch (const ParseError& e) {
        throw InputFailure(what + ": " + e.what());
    }
}

struct Spec {
    MetricFamily metric{Chart{}};
    bool generic = false;
    std::optional<std::string> ansatz;
    json fiber;
};

// "i,j" with 1-based indices.
std::pair<std::size_t, std::size_t> parse_pair(const std::string& key, std::size_t n) {
    auto comma = key.find(',');
    if (comma == std::string::npos) throw InputFailure("metric key '" + key + "' is not of the form i,j");
    try {
        long i = std::stol(key.substr(0, comma)), j = std::stol(key.substr(comma + 1));
        if (i < 1 || j < 1 || static_cast<std::size_t>(i) > n || static_cast<std::size_t>(j) > n)
            throw InputFailure("metric key '" + key + "' out of range");
        return {static_cast<std::size_t>(std::min(i, j) - 1), static_cast<std::size_t>(std::max(i, j) - 1)};
    } catch (const std::logic_error&) {
        throw InputFailure("metric key '" + key + "' is not of the form i,j");
    }
}

Spec read_spec(const std::string& path) {
    json j = read_json_file(path);
    if (!j.is_object()) throw InputFailure(path + ": top level must be an object");
    Spec s;
    if (j.contains("ansatz")) s.ansatz = j["ansatz"].get<std::string>();
    if (j.contains("fiber")) s.fiber = j["fiber"];
    if (!j.contains("chart")) {
        if (!s.ansatz) throw InputFailure(path + ": missing chart");
        return s;
    }
    const json& c = j["chart"];
    if (!c.contains("coords") || !c["coords"].is_array() || c["coords"].empty())
        throw InputFailure(path + ": chart.coords must be a nonempty array");
    Chart chart;
    for (const auto& x : c["coords"]) chart.coords.push_back(sym(x.get<std::string>()));
    chart.time = sym(c.value("time", std::string("t")));
    std::size_t n = chart.dim();
    if (!j.contains("metric") || (j["metric"].is_string() && j["metric"] == "generic")) {
        s.metric = MetricFamily::generic(chart);
        s.generic = true;
        return s;
    }
    std::vector<FieldDecl> fields;
    for (const auto& f : j.value("fields", json::array())) {
        FieldDecl d;
        d.name = f.at("name").get<std::string>();
        for (const auto& a : f.at("args")) d.args.push_back(sym(a.get<std::string>()));
        fields.push_back(d);
    }
    s.metric = MetricFamily(chart, fields);
    if (!j["metric"].is_object()) throw InputFailure(path + ": metric must be an object or \"generic\"");
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t k = i; k < n; ++k) s.metric.set(i, k, Expr());
    for (const auto& [key, val] : j["metric"].items()) {
        auto [a, b] = parse_pair(key, n);
        s.metric.set(a, b, parse_field(val, "metric entry " + key));
    }
    return s;
}

std::optional<PdeSystem> spec_system(const Spec& s) {
    if (!s.ansatz) return std::nullopt;
    const std::string& a = *s.ansatz;
    if (a == "conformal2d") return conformal2d_system();
    if (a == "conformal_rn") return conformal_rn_system();
    if (a == "warped") {
        Expr m = s.fiber.contains("dimension") ? parse_field(s.fiber["dimension"], "fiber.dimension") : sym("m");
        Expr mu = s.fiber.contains("einstein_constant") ? parse_field(s.fiber["einstein_constant"], "fiber.einstein_constant")
                                                        : m - Expr(1);
        return warped_system(m, mu);
    }
    if (a == "doubly_warped") {
        Expr p = sym("p"), q = sym("q");
        if (s.fiber.contains("dimension")) {
            const json& d = s.fiber["dimension"];
            if (!d.is_array() || d.size() != 2) throw InputFailure("doubly_warped fiber.dimension must be [p, q]");
            p = parse_field(d[0], "fiber.dimension[0]");
            q = parse_field(d[1], "fiber.dimension[1]");
        }
        return doubly_warped_system(p, q);
    }
    throw InputFailure("unknown ansatz system '" + a + "' (conformal2d, conformal_rn, warped, doubly_warped)");
}

// Bare field names in generator expressions stand for their full calls.
Bindings field_shorthand(const std::vector<Expr>& fields) {
    Bindings b;
    for (const auto& f : fields) b.emplace_back(sym(f.node().name), f);
    return b;
}

struct GeneratorContext {
    std::vector<Expr> indep;  // time first
    std::vector<Expr> dep;
    std::vector<std::string> dep_keys;  // "i,j" for metrics, field names for systems
};

GeneratorContext metric_context(const FlowSystem& f) {
    GeneratorContext c;
    c.indep.push_back(f.metric.chart().time);
    for (const auto& x : f.metric.chart().coords) c.indep.push_back(x);
    c.dep = f.rules.fields();
    std::size_t n = f.metric.dim();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) c.dep_keys.push_back(pair_key(i, j));
    return c;
}

GeneratorContext system_context(const PdeSystem& s) {
    GeneratorContext c;
    c.indep.push_back(s.time);
    for (const auto& x : s.coords) c.indep.push_back(x);
    c.dep = s.fields;
    for (const auto& u : s.fields) c.dep_keys.push_back(u.node().name);
    return c;
}

Generator read_generator(const json& j, const GeneratorContext& c, const std::string& where) {
    if (!j.is_object()) throw InputFailure(where + ": generator must be an object");
    Bindings shorthand = field_shorthand(c.dep);
    auto field = [&](const json& v, const std::string& what) { return substitute(parse_field(v, where + ": " + what), shorthand); };
    Generator g;
    g.indep = c.indep;
    g.dep = c.dep;
    g.label = j.value("label", std::string());
    g.xi.push_back(j.contains("xi_t") ? field(j["xi_t"], "xi_t") : Expr());
    std::size_t n = c.indep.size() - 1;
    json xi = j.value("xi", json::array());
    if (!xi.is_array() || (xi.size() != n && !xi.empty()))
        throw InputFailure(where + ": xi must list " + std::to_string(n) + " components");
    for (std::size_t i = 0; i < n; ++i) g.xi.push_back(xi.empty() ? Expr() : field(xi[i], "xi[" + std::to_string(i) + "]"));
    g.eta.assign(c.dep.size(), Expr());
    json eta = j.value("eta", json::object());
    if (!eta.is_object()) throw InputFailure(where + ": eta must be an object");
    for (const auto& [key, val] : eta.items()) {
        std::string k = key;
        // Metric keys are symmetric.
        if (auto comma = k.find(','); comma != std::string::npos) {
            std::string swapped = k.substr(comma + 1) + "," + k.substr(0, comma);
            if (std::find(c.dep_keys.begin(), c.dep_keys.end(), k) == c.dep_keys.end()) k = swapped;
        }
        auto it = std::find(c.dep_keys.begin(), c.dep_keys.end(), k);
        if (it == c.dep_keys.end()) throw InputFailure(where + ": unknown eta component '" + key + "'");
        g.eta[static_cast<std::size_t>(it - c.dep_keys.begin())] = field(val, "eta " + key);
    }
    return g;
}

std::vector<Generator> read_generators(const std::string& path, const GeneratorContext& c) {
    json j = read_json_file(path);
    json list = j.is_array() ? j : (j.contains("generators") ? j["generators"] : json::array({j}));
    std::vector<Generator> out;
    for (std::size_t i = 0; i < list.size(); ++i) {
        Generator g = read_generator(list[i], c, path);
        if (g.label.empty()) g.label = list.size() == 1 ? "X" : "X" + std::to_string(i + 1);
        out.push_back(std::move(g));
    }
    return out;
}

Params parse_params(const std::string& text) {
    Params p;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        auto eq = item.find('=');
        if (eq == std::string::npos) throw InputFailure("parameter '" + item + "' is not name=value");
        try {
            p[item.substr(0, eq)] = parse(item.substr(eq + 1));
        } catch (const ParseError& e) {
            throw InputFailure("parameter '" + item + "': " + e.what());
        }
    }
    return p;
}

Grid parse_grid(const std::string& text) {
    Grid g = canonical_grid();
    if (text.empty()) return g;
    std::vector<double> v;
    std::stringstream ss(text);
    std::string item;
    try {
        while (std::getline(ss, item, ',')) v.push_back(std::stod(item));
    } catch (const std::logic_error&) {
        throw InputFailure("grid must be s_lo,s_hi,s_count,t_lo,t_hi,t_count");
    }
    if (v.size() != 6) throw InputFailure("grid must be s_lo,s_hi,s_count,t_lo,t_hi,t_count");
    g.s_lo = v[0];
    g.s_hi = v[1];
    g.s_count = static_cast<int>(v[2]);
    g.t_lo = v[3];
    g.t_hi = v[4];
    g.t_count = static_cast<int>(v[5]);
    return g;
}

// ---------------------------------------------------------------------------
// Commands

int cmd_christoffel(const Spec& s, Emitter& em) {
    Tensor3 G = christoffel_lower(s.metric);
    std::size_t n = s.metric.dim();
    json& out = em.doc()["christoffel"];
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            for (std::size_t c = b; c < n; ++c) {
                std::string k = idx(a) + "," + idx(b) + "," + idx(c);
                em.expr(out[k], "Gamma_" + idx(a) + idx(b) + idx(c), "\\Gamma_{" + idx(a) + idx(b) + idx(c) + "}",
                        G[a][b][c]);
            }
    return Ok;
}

int cmd_ricci(const Spec& s, Emitter& em) {
    Matrix R = ricci(s.metric);
    json& out = em.doc()["ricci"];
    for (std::size_t i = 0; i < s.metric.dim(); ++i)
        for (std::size_t j = i; j < s.metric.dim(); ++j)
            em.expr(out[pair_key(i, j)], "R_" + idx(i) + idx(j), "R_{" + idx(i) + idx(j) + "}", R[i][j]);
    return Ok;
}

int cmd_flow_residual(const Spec& s, Emitter& em, const ZeroOptions& zo) {
    Matrix E = flow_residual(s.metric);
    json& out = em.doc()["residual"];
    json& ver = em.doc()["verdicts"];
    bool all_zero = true;
    for (std::size_t i = 0; i < s.metric.dim(); ++i)
        for (std::size_t j = i; j < s.metric.dim(); ++j) {
            std::string k = pair_key(i, j);
            em.expr(out[k], "E_" + idx(i) + idx(j), "E_{" + idx(i) + idx(j) + "}", E[i][j]);
            ZeroResult z = equals_zero(E[i][j], zo);
            ver[k] = std::string(verdict_name(z.verdict));
            em.note("E_" + idx(i) + idx(j), std::string(verdict_name(z.verdict)));
            if (z.verdict == Verdict::NonZero) {
                all_zero = false;
                em.doc()["witness"][k] = witness_json(z);
                em.note("witness E_" + idx(i) + idx(j), witness_text(z));
            }
        }
    em.doc()["solves_flow"] = all_zero;
    return all_zero ? Ok : Failed;
}

json verdict_json(const SymmetryVerdict& v, const std::string& label, const std::vector<std::string>& entry_names) {
    json j{{"label", label}, {"symmetry", v.symmetry}, {"strength", std::string(verdict_name(v.strength))}};
    if (v.witness) {
        const EntryVerdict& w = *v.witness;
        j["witness"] = {{"entry", w.row < entry_names.size() ? entry_names[w.row] : pair_key(w.row, w.col)},
                        {"point", witness_json(w.zero)},
                        {"value", w.zero.value},
                        {"expression", to_string(w.value)}};
        if (!w.zero.note.empty()) j["witness"]["note"] = w.zero.note;
    }
    return j;
}

int report_symmetry(const std::vector<Generator>& gens, const std::vector<SymmetryVerdict>& verdicts,
                    const std::vector<std::string>& entry_names, Emitter& em) {
    json& list = em.doc()["generators"];
    list = json::array();
    bool all = true;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        const SymmetryVerdict& v = verdicts[i];
        json j = verdict_json(v, gens[i].label, entry_names);
        list.push_back(j);
        if (v.symmetry) {
            em.note(gens[i].label, "symmetry (" + std::string(verdict_name(v.strength)) + ")");
        } else {
            all = false;
            std::string at = j["witness"]["entry"].get<std::string>();
            em.note(gens[i].label, "not a symmetry; entry " + at + " nonzero at " + witness_text(v.witness->zero));
        }
    }
    return all ? Ok : Failed;
}

int cmd_check_symmetry(const Spec& s, const std::string& genfile, Emitter& em, const ZeroOptions& zo) {
    if (auto sys = spec_system(s)) {
        GeneratorContext c = system_context(*sys);
        std::vector<Generator> gens = read_generators(genfile, c);
        std::vector<SymmetryVerdict> verdicts = verify_restricted_algebra(gens, *sys, zo);
        em.doc()["system"] = sys->name;
        std::vector<std::string> names;
        for (const auto& u : sys->fields) names.push_back("residual " + u.node().name);
        return report_symmetry(gens, verdicts, names, em);
    }
    if (!s.generic)
        throw InputFailure("check-symmetry needs \"metric\": \"generic\" or a named ansatz system");
    FlowSystem f = make_flow_system(s.metric);
    std::vector<Generator> gens = read_generators(genfile, metric_context(f));
    std::vector<SymmetryVerdict> verdicts;
    for (const auto& g : gens) verdicts.push_back(check_symmetry(g, f, zo));
    em.doc()["system"] = "ricci_flow_n" + std::to_string(s.metric.dim());
    return report_symmetry(gens, verdicts, {}, em);
}

void emit_generator(const Generator& g, const std::vector<std::string>& dep_keys, json& slot, Emitter& em,
                    const std::string& prefix) {
    em.expr(slot["xi_t"], prefix + "xi_t", "\\xi^t", g.xi[0]);
    slot["xi"] = json::array();
    for (std::size_t i = 1; i < g.xi.size(); ++i) {
        json e;
        em.expr(e, prefix + "xi_" + to_string(g.indep[i]), "\\xi^{" + to_latex(g.indep[i]) + "}", g.xi[i]);
        slot["xi"].push_back(e);
    }
    for (std::size_t k = 0; k < g.eta.size(); ++k)
        em.expr(slot["eta"][dep_keys[k]], prefix + "eta_" + dep_keys[k], "\\eta_{" + dep_keys[k] + "}", g.eta[k]);
}

int cmd_restrict(const std::string& name, std::size_t n, std::size_t m, Emitter& em) {
    Ansatz a = make_ansatz(name, n, m);
    RestrictionResult r = restrict_ansatz(a);
    em.doc()["ansatz"] = name;
    json& cs = em.doc()["constraints"];
    cs = json::array();
    for (std::size_t i = 0; i < r.constraints.size(); ++i) {
        json e;
        em.expr(e, "constraint " + idx(i), "C_{" + idx(i) + "}", r.constraints[i]);
        cs.push_back(e);
    }
    for (std::size_t k = 0; k < r.Q.size(); ++k) {
        std::string f = a.fields[k].node().name;
        em.expr(em.doc()["Q"][f], "Q_" + f, "Q_{" + f + "}", r.Q[k]);
    }
    for (const auto& [lhs, rhs] : r.eliminated)
        em.expr(em.doc()["eliminated"][to_string(lhs)], "eliminated " + to_string(lhs), to_latex(lhs), rhs);
    std::vector<std::string> keys;
    for (const auto& u : r.restricted.dep) keys.push_back(u.node().name);
    emit_generator(r.restricted, keys, em.doc()["generator"], em, "");
    return Ok;
}

int cmd_reduce(const std::string& family, const Params& params, Emitter& em) {
    ReducedSystem r = reduced_system(family, params);
    em.doc()["family"] = family;
    for (const auto& [k, v] : r.params) em.doc()["params"][k] = to_string(v);
    json& res = em.doc()["residuals"];
    res = json::array();
    for (std::size_t i = 0; i < r.residuals.size(); ++i) {
        json e;
        em.expr(e, "r" + idx(i), "r_{" + idx(i) + "}", r.residuals[i]);
        res.push_back(e);
    }
    if (!r.arc_residuals.empty()) {
        json& arc = em.doc()["arc_length"]["residuals"];
        arc = json::array();
        em.doc()["arc_length"]["variable"] = to_string(r.arc_var);
        for (std::size_t i = 0; i < r.arc_residuals.size(); ++i) {
            json e;
            em.expr(e, "a" + idx(i), "a_{" + idx(i) + "}", r.arc_residuals[i]);
            arc.push_back(e);
        }
    }
    return Ok;
}

Params default_solution_params(const ClosedFormSolution& sol) {
    if (sol.family == "doubly_warped") return {{"p", Expr(2)}, {"q", Expr(2)}, {"k", Expr(1)}};
    return {{"m", Expr(2)}, {"k", Expr(1)}};
}

int cmd_verify_solution(const std::string& name, const Params& params, const Grid& grid, Emitter& em,
                        const ZeroOptions& zo) {
    const ClosedFormSolution& sol = closed_form(name);
    ClosedFormVerdict v = verify_closed_form(sol, zo);
    Params values = default_solution_params(sol);
    for (const auto& [k, val] : params) values[k] = val;
    ClosedFormSolution concrete = specialize(sol, values);
    GridReport r = grid_residual(concrete, grid);
    const double tol = 1e-10;
    bool sym_ok = v.weakest() == Verdict::ZeroSymbolic;
    bool num_ok = r.max_abs < tol;
    json& d = em.doc();
    d["solution"] = name;
    d["symbolic"] = std::string(verdict_name(v.weakest()));
    d["numeric_max_abs"] = r.max_abs;
    d["numeric_tolerance"] = tol;
    d["grid_report"] = to_json(r);
    for (const auto& [k, val] : values) d["params"][k] = to_string(val);
    em.note("solution", name);
    em.note("metric", sol.metric_str());
    em.note("domain", sol.domain);
    auto verdicts = [](const std::vector<ZeroResult>& zs) {
        json a = json::array();
        for (const auto& z : zs) a.push_back(std::string(verdict_name(z.verdict)));
        return a;
    };
    d["checks"] = {{"reduced", verdicts(v.reduced)},
                   {"invariant", verdicts(v.invariant)},
                   {"pde", verdicts(v.pde)},
                   {"flow", verdicts(v.flow)}};
    em.note("symbolic", std::string(verdict_name(v.weakest())));
    std::ostringstream os;
    os.precision(3);
    os << std::scientific << r.max_abs << " at (s, t) = (" << r.argmax_s << ", " << r.argmax_t << ")";
    em.note("numeric max |residual|", os.str());
    d["verified"] = sym_ok && num_ok;
    return sym_ok && num_ok ? Ok : Failed;
}

int cmd_bracket(const std::string& a, const std::string& b, const std::optional<std::string>& spec_path, Emitter& em) {
    Spec s;
    if (spec_path) {
        s = read_spec(*spec_path);
    } else {
        s.metric = MetricFamily::generic(Chart::standard(2));
        s.generic = true;
    }
    GeneratorContext c;
    if (auto sys = spec_system(s)) {
        c = system_context(*sys);
    } else {
        if (!s.generic) throw InputFailure("bracket needs a generic metric or a named ansatz system");
        c = metric_context(make_flow_system(s.metric));
    }
    std::vector<Generator> X = read_generators(a, c), Y = read_generators(b, c);
    if (X.size() != 1 || Y.size() != 1) throw InputFailure("bracket takes one generator per file");
    Generator Z = commutator(X[0], Y[0]);
    em.doc()["bracket"]["label"] = Z.label;
    emit_generator(Z, c.dep_keys, em.doc()["bracket"], em, "");
    return Ok;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lie symmetry analysis of the Ricci flow"};
    app.require_subcommand(1);
    std::string format = "text";
    std::uint64_t seed = ZeroOptions{}.seed;
    app.add_option("--format", format, "text, json or latex")
        ->check(CLI::IsMember({"text", "json", "latex"}))
        ->capture_default_str();
    app.add_option("--seed", seed, "seed for probabilistic zero tests")->capture_default_str();

    std::string spec, genfile, genfile2, ansatz, family, params, name, grid;
    std::optional<std::string> bracket_spec;
    std::size_t n = 2, m = 2;

    auto* c_chr = app.add_subcommand("christoffel", "lower Christoffel symbols Γ_{τγα}");
    c_chr->add_option("spec", spec)->required();
    auto* c_ric = app.add_subcommand("ricci", "Ricci tensor");
    c_ric->add_option("spec", spec)->required();
    auto* c_flow = app.add_subcommand("flow-residual", "∂_t g + 2 Ric with zero verdicts");
    c_flow->add_option("spec", spec)->required();
    auto* c_sym = app.add_subcommand("check-symmetry", "linearized symmetry condition on-shell");
    c_sym->add_option("spec", spec)->required();
    c_sym->add_option("--generator", genfile)->required();
    auto* c_res = app.add_subcommand("restrict", "restricted symmetry algebra of an ansatz");
    c_res->add_option("--ansatz", ansatz)->required();
    c_res->add_option("--n", n, "base dimension")->capture_default_str();
    c_res->add_option("--m", m, "fiber dimension")->capture_default_str();
    auto* c_red = app.add_subcommand("reduce", "reduced ODE system");
    c_red->add_option("--family", family)->required();
    c_red->add_option("--params", params, "name=value,...");
    auto* c_ver = app.add_subcommand("verify-solution", "symbolic and grid verification of a closed form");
    c_ver->add_option("--name", name)->required();
    c_ver->add_option("--params", params, "numeric values for the grid, name=value,...");
    c_ver->add_option("--grid", grid, "s_lo,s_hi,s_count,t_lo,t_hi,t_count");
    auto* c_br = app.add_subcommand("bracket", "commutator of two generators");
    c_br->add_option("a", genfile)->required();
    c_br->add_option("b", genfile2)->required();
    c_br->add_option("--spec", bracket_spec, "metric or ansatz spec (default: generic n = 2)");
    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    std::vector<std::string> rev(args.rbegin(), args.rend());
    try {
        app.parse(rev);
    } catch (const CLI::CallForHelp& e) {
        out << app.help();
        return Ok;
    } catch (const CLI::CallForAllHelp& e) {
        out << app.help("", CLI::AppFormatMode::All);
        return Ok;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return InputError;
    }

    ZeroOptions zo;
    zo.seed = seed;
    Emitter em(format);
    int code = Ok;
    try {
        if (c_chr->parsed()) {
            code = cmd_christoffel(read_spec(spec), em);
        } else if (c_ric->parsed()) {
            code = cmd_ricci(read_spec(spec), em);
        } else if (c_flow->parsed()) {
            code = cmd_flow_residual(read_spec(spec), em, zo);
        } else if (c_sym->parsed()) {
            code = cmd_check_symmetry(read_spec(spec), genfile, em, zo);
        } else if (c_res->parsed()) {
            code = cmd_restrict(ansatz, n, m, em);
        } else if (c_red->parsed()) {
            code = cmd_reduce(family, parse_params(params), em);
        } else if (c_ver->parsed()) {
            code = cmd_verify_solution(name, parse_params(params), parse_grid(grid), em, zo);
        } else if (c_br->parsed()) {
            code = cmd_bracket(genfile, genfile2, bracket_spec, em);
        }
    } catch (const InputFailure& e) {
        err << "error: " << e.what() << "\n";
        return InputError;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return InputError;
    } catch (const json::exception& e) {
        err << "error: malformed input: " << e.what() << "\n";
        return InputError;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return InputError;
    } catch (const SingularMetricError& e) {
        err << "error: " << e.what() << "\n";
        return InputError;
    } catch (const DomainError& e) {
        err << "error: " << e.what() << "\n";
        return InputError;
    } catch (const UnboundSymbolError& e) {
        err << "error: " << e.what() << "\n";
        return InputError;
    }
    em.render(out);
    return code;
}

}  // namespace rsym::cli
