#include "rsym/zero.hpp"

#include <cmath>
#include <random>
#include <unordered_map>

#include "rsym/errors.hpp"
#include "rsym/eval.hpp"

namespace rsym {

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::ZeroSymbolic: return "zero";
        case Verdict::ZeroProbabilistic: return "zero-probabilistic";
        case Verdict::NonZero: return "nonzero";
    }
    return "?";
}

Expr clear_denominators(const Expr& e, std::size_t budget) {
    std::vector<Expr> terms = terms_of(e);
    if (terms.size() < 2) return e;
    std::unordered_map<Expr, Rational, ExprHash> need;
    std::vector<Expr> order;
    for (const auto& t : terms) {
        for (const auto& f : term_view(t).factors) {
            if (f.base.kind() != Kind::Add || !f.exp.is_negative()) continue;
            auto [it, fresh] = need.try_emplace(f.base, f.exp);
            if (fresh) {
                order.push_back(f.base);
            } else if (f.exp < it->second) {
                it->second = f.exp;
            }
        }
    }
    if (need.empty()) return e;
    double estimate = static_cast<double>(terms.size());
    std::vector<Factor> mult;
    for (const auto& b : order) {
        Rational q = -need.at(b);
        // Exact power when it makes every exponent of b whole, else round up.
        bool exact = true;
        for (const auto& t : terms)
            for (const auto& f : term_view(t).factors)
                if (f.base == b && !(f.exp + q).is_integer()) exact = false;
        std::int64_t whole = (q.num() + q.den() - 1) / q.den();
        Rational use = exact || q.is_integer() ? q : Rational(whole);
        estimate *= std::pow(static_cast<double>(terms_of(b).size()), use.to_double());
        mult.push_back(Factor{b, use});
    }
    if (estimate > static_cast<double>(budget)) return e;
    std::vector<Expr> out;
    out.reserve(terms.size());
    for (const auto& t : terms) {
        TermView v = term_view(t);
        v.factors.insert(v.factors.end(), mult.begin(), mult.end());
        out.push_back(make_term(v.coef, std::move(v.factors)));
    }
    return add(out);
}

ZeroResult equals_zero(const Expr& e, const ZeroOptions& opts) {
    ZeroResult r;
    if (e.is_zero()) return r;
    Expr cleared = clear_denominators(e, opts.clear_budget);
    if (cleared.is_zero()) return r;

    std::vector<Expr> atoms = free_atoms(e);
    std::mt19937_64 rng(opts.seed);
    std::uniform_real_distribution<double> dist(opts.lo, opts.hi);
    int accepted = 0;
    int attempts = 0;
    while (accepted < opts.probes) {
        if (attempts >= opts.max_attempts) {
            r.verdict = Verdict::NonZero;
            r.note = "indeterminate: domain errors at every probe after " + std::to_string(attempts) + " attempts";
            return r;
        }
        ++attempts;
        Assignment a;
        std::vector<std::pair<Expr, double>> point;
        point.reserve(atoms.size());
        for (const auto& atom : atoms) {
            double v = dist(rng);
            a.emplace(atom, v);
            point.emplace_back(atom, v);
        }
        double scale = 0.0, value = 0.0;
        try {
            value = eval_with_scale(e, a, scale);
        } catch (const DomainError&) {
            continue;
        }
        ++accepted;
        if (!(std::fabs(value) < opts.tolerance * std::max(1.0, scale))) {
            r.verdict = Verdict::NonZero;
            r.witness = std::move(point);
            r.value = value;
            return r;
        }
    }
    r.verdict = Verdict::ZeroProbabilistic;
    return r;
}

}  // namespace rsym
