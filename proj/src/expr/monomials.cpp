#include "rsym/monomials.hpp"

#include <unordered_map>
#include <unordered_set>

#include "rsym/errors.hpp"

namespace rsym {

bool MonomialKeyLess::operator()(const MonomialKey& a, const MonomialKey& b) const {
    if (a.size() != b.size()) return a.size() < b.size();
    for (std::size_t i = 0; i < a.size(); ++i) {
        int c = compare(a[i].first, b[i].first);
        if (c != 0) return c < 0;
        if (a[i].second != b[i].second) return a[i].second < b[i].second;
    }
    return false;
}

namespace {

class JetScanner {
public:
    explicit JetScanner(const std::vector<Expr>& vars) : vars_(vars.begin(), vars.end()) {}

    bool is_var(const Expr& e) const { return vars_.count(e) > 0; }

    bool mentions(const Expr& e) {
        const Node* key = &e.node();
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;
        bool r = false;
        if (is_var(e)) {
            r = true;
        } else {
            const Node& n = e.node();
            for (const auto& a : n.args)
                if ((r = mentions(a))) break;
            if (!r)
                for (const auto& f : n.factors)
                    if ((r = mentions(f.base))) break;
        }
        memo_.emplace(key, r);
        return r;
    }

private:
    std::unordered_set<Expr, ExprHash> vars_;
    std::unordered_map<const Node*, bool> memo_;
};

}  // namespace

MonomialMap collect_monomials(const Expr& e, const std::vector<Expr>& jet_vars) {
    JetScanner scan(jet_vars);
    std::map<MonomialKey, std::vector<Expr>, MonomialKeyLess> parts;
    for (const auto& t : terms_of(e)) {
        TermView v = term_view(t);
        MonomialKey key;
        std::vector<Factor> rest;
        for (auto& f : v.factors) {
            if (scan.is_var(f.base)) {
                if (!f.exp.is_integer() || f.exp.is_negative())
                    throw NonPolynomialError("non-polynomial power of " + f.base.str());
                key.emplace_back(f.base, static_cast<int>(f.exp.num()));
            } else if (scan.mentions(f.base)) {
                throw NonPolynomialError("jet variable inside " + f.base.str());
            } else {
                rest.push_back(std::move(f));
            }
        }
        parts[key].push_back(make_term(v.coef, std::move(rest)));
    }
    MonomialMap out;
    for (auto& [k, v] : parts) {
        Expr c = add(v);
        if (!c.is_zero()) out.emplace(k, c);
    }
    return out;
}

Expr monomial_expr(const MonomialKey& key) {
    std::vector<Factor> fs;
    for (const auto& [b, k] : key) fs.push_back(Factor{b, Rational(k)});
    return make_term(Rational(1), std::move(fs));
}

std::string monomial_str(const MonomialKey& key) {
    if (key.empty()) return "1";
    return monomial_expr(key).str();
}

}  // namespace rsym
