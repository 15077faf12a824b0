#include "torsor/scheme.hpp"

#include <algorithm>

namespace torsor {

static bool is_reserved(const std::string& v) { return v == "pi" || (!v.empty() && v[0] == '@'); }

AffineAlgebra::AffineAlgebra(BaseRing base, uint32_t p, std::vector<std::string> vars,
                             std::vector<MultiPoly> relations,
                             std::vector<std::pair<std::string, MultiPoly>> inverted)
    : base_(base), p_(p), vars_(std::move(vars)), relations_(std::move(relations)),
      inverted_(std::move(inverted)) {
    for (auto& v : vars_)
        if (is_reserved(v)) throw std::invalid_argument("reserved variable name: " + v);
    for (auto it = relations_.begin(); it != relations_.end();)
        it = it->is_zero() ? relations_.erase(it) : std::next(it);
    for (const auto& r : relations_) {
        for (const auto& [m, c] : r.terms()) {
            for (const auto& [v, e] : m.exponents())
                if (std::find(vars_.begin(), vars_.end(), v) == vars_.end())
                    throw UndeclaredVariable(v);
            if (base_ == BaseRing::over_R) {
                if (c.valuation() < 0)
                    throw NegativeValuation("over-R relation has coefficient " + c.str() +
                                            " with negative valuation");
                if (!c.den().is_one())
                    throw NegativeValuation("over-R relation has denominator coefficient " +
                                            c.str());
            } else if (base_ == BaseRing::over_k) {
                if (!c.den().is_one() || c.num().degree() > 0)
                    throw std::invalid_argument("over-k relation has pi in coefficient " + c.str());
            }
        }
    }
}

IdealPresentation AffineAlgebra::ideal() const {
    return IdealPresentation(relations_, vars_, MonomialOrder::degrevlex(vars_));
}

std::vector<std::string> AffineAlgebra::model_vars() const {
    std::vector<std::string> mv = vars_;
    mv.push_back("pi");
    return mv;
}

IdealPresentation AffineAlgebra::model_ideal() const {
    if (base_ == BaseRing::over_K)
        throw std::invalid_argument("model ideal requires an over-R presentation");
    std::vector<MultiPoly> gens;
    for (const auto& r : relations_) gens.push_back(r.to_model_ring());
    auto mv = model_vars();
    return IdealPresentation(std::move(gens), mv, MonomialOrder::degrevlex(mv));
}

CoeffScalar evaluate_at(const MultiPoly& f, const Section& x, uint32_t p) {
    CoeffScalar r(p);
    for (const auto& [m, c] : f.terms()) {
        CoeffScalar t = c;
        for (const auto& [v, e] : m.exponents()) t = t * x.at(v, p).pow(e);
        r = r + t;
    }
    return r;
}

void validate_section(const AffineAlgebra& A, const Section& x) {
    for (const auto& [v, c] : x.assignments) {
        if (std::find(A.vars().begin(), A.vars().end(), v) == A.vars().end())
            throw SectionInvalid("assignment to unknown variable " + v);
        if (c.valuation() < 0)
            throw SectionInvalid("assignment " + v + " = " + c.str() +
                                 " has negative valuation");
    }
    for (const auto& r : A.relations())
        if (!evaluate_at(r, x, A.p()).is_zero())
            throw SectionInvalid("relation " + r.str() + " does not vanish at the section");
    for (const auto& [name, f] : A.inverted())
        if (evaluate_at(f, x, A.p()).valuation() != 0)
            throw SectionInvalid("inverted element " + f.str() +
                                 " is not a unit at the section");
}

AffineAlgebra generic_fiber(const AffineAlgebra& A) {
    if (A.base() != BaseRing::over_R)
        throw std::invalid_argument("generic fiber requires an over-R presentation");
    return AffineAlgebra(BaseRing::over_K, A.p(), A.vars(), A.relations(), A.inverted());
}

static MultiPoly coefficient_residue(const MultiPoly& f, uint32_t p) {
    MultiPoly r(p);
    for (const auto& [m, c] : f.terms())
        r.add_term(m, CoeffScalar::integer(p, c.residue().value()));
    return r;
}

FiberResult special_fiber(const AffineAlgebra& A) {
    if (A.base() != BaseRing::over_R)
        throw std::invalid_argument("special fiber requires an over-R presentation");
    FiberResult out{AffineAlgebra(BaseRing::over_k, A.p(), A.vars(), {}), false};
    std::vector<MultiPoly> rels;
    for (const auto& r : A.relations()) rels.push_back(coefficient_residue(r, A.p()));
    std::vector<std::pair<std::string, MultiPoly>> inv;
    for (const auto& [name, f] : A.inverted()) inv.emplace_back(name, coefficient_residue(f, A.p()));
    out.fiber = AffineAlgebra(BaseRing::over_k, A.p(), A.vars(), std::move(rels), std::move(inv));
    out.naive = !A.flat_certified();
    return out;
}

bool is_pi_saturated(const AffineAlgebra& A) {
    IdealPresentation I = A.model_ideal();
    IdealPresentation Q = ideal_quotient(I, MultiPoly::var(A.p(), "pi"));
    return ideal_equal(I, Q);
}

AffineAlgebra flat_closure(const AffineAlgebra& A) {
    if (A.base() != BaseRing::over_R)
        throw std::invalid_argument("flat closure requires an over-R presentation");
    IdealPresentation S = saturate(A.model_ideal(), MultiPoly::var(A.p(), "pi"));
    std::vector<MultiPoly> rels;
    for (const auto& g : S.groebner_basis()) rels.push_back(g.from_model_ring());
    return AffineAlgebra(BaseRing::over_R, A.p(), A.vars(), std::move(rels), A.inverted())
        .certified_flat();
}

static std::string fresh_name(std::string base, const std::vector<std::string>& taken) {
    while (std::find(taken.begin(), taken.end(), base) != taken.end()) base += "'";
    return base;
}

BlowupResult neron_blowup(const AffineAlgebra& X, const Section& x, int e,
                          const std::map<std::string, std::string>& rename) {
    if (X.base() != BaseRing::over_R)
        throw std::invalid_argument("Neron blow-up requires an over-R presentation");
    if (e < 0) throw std::invalid_argument("blow-up exponent must be >= 0");
    validate_section(X, x);
    AffineAlgebra flat = X;
    if (!flat.flat_certified()) {
        if (!is_pi_saturated(X)) throw NotFlat("blow-up center on a non-flat presentation");
        flat = X.certified_flat();
    }
    BlowupTrace trace;
    trace.center = x;
    trace.steps = e;
    if (e == 0) return {flat, trace};

    uint32_t p = X.p();
    std::vector<std::string> vars = X.vars();
    std::map<std::string, MultiPoly> sub;
    std::vector<MultiPoly> rels;
    for (const auto& t : X.vars()) {
        auto it = rename.find(t);
        std::string tn = fresh_name(it == rename.end() ? t + "'" : it->second, vars);
        vars.push_back(tn);
        trace.substitutions.emplace_back(t, tn);
        // t = pi^e t' + x(t)
        sub[t] = MultiPoly::var(p, tn) * CoeffScalar::pi_power(p, e) +
                 MultiPoly::constant(x.at(t, p));
        rels.push_back(MultiPoly::var(p, tn) * CoeffScalar::pi_power(p, e) -
                       (MultiPoly::var(p, t) - MultiPoly::constant(x.at(t, p))));
    }
    for (const auto& u : X.relations()) {
        auto [nu, m] = u.substitute(sub).pi_normalize();
        trace.normalization_exponents.push_back(m);
        rels.push_back(std::move(nu));
    }
    AffineAlgebra blown(BaseRing::over_R, p, vars, std::move(rels), X.inverted());
    return {flat_closure(blown), trace};
}

Section section_lifts(const Section& x, const BlowupResult& blown) {
    const int e = blown.trace.steps;
    Section lift = x;
    uint32_t p = blown.algebra.p();
    for (const auto& [t, tn] : blown.trace.substitutions) {
        CoeffScalar delta = x.at(t, p) - blown.trace.center.at(t, p);
        if (!delta.is_zero() && delta.valuation() < e)
            throw DoesNotFactor("section value " + t + " = " + x.at(t, p).str() +
                                " does not specialize into the blow-up center");
        lift.assignments[tn] = delta * CoeffScalar::pi_power(p, -e);
    }
    validate_section(blown.algebra, lift);
    return lift;
}

bool is_finite_over(const AffineAlgebra& F, const std::vector<std::string>& base_vars) {
    if (F.base() != BaseRing::over_k)
        throw std::invalid_argument("finiteness certificate runs over k");
    std::vector<std::string> fiber_vars;
    for (const auto& v : F.vars())
        if (std::find(base_vars.begin(), base_vars.end(), v) == base_vars.end())
            fiber_vars.push_back(v);
    if (fiber_vars.empty()) return true;
    IdealPresentation I(F.relations(), F.vars(), MonomialOrder::block(fiber_vars, base_vars));
    const auto& G = I.groebner_basis();
    for (const auto& v : fiber_vars) {
        bool found = false;
        for (const auto& g : G) {
            Monomial lm = g.leading(I.order()).first;
            if (lm.degree(v) > 0 && lm.exponents().size() == 1) {
                found = true;
                break;
            }
        }
        if (!found) return false;
    }
    return true;
}

PinnedElimination eliminate_pinned(std::vector<MultiPoly> relations,
                                   std::vector<std::string> vars,
                                   const std::vector<std::string>& candidates) {
    std::map<std::string, MultiPoly> assignments;
    for (;;) {
        bool changed = false;
        for (const auto& v : candidates) {
            if (std::find(vars.begin(), vars.end(), v) == vars.end()) continue;
            for (size_t i = 0; i < relations.size(); ++i) {
                const MultiPoly& r = relations[i];
                CoeffScalar c = r.coeff(Monomial::var(v));
                if (c.is_zero() || c.valuation() != 0) continue;
                MultiPoly rest = r - MultiPoly::term(c, Monomial::var(v));
                if (rest.uses_variable(v)) continue;
                // v is pinned: v = -rest / c
                std::map<std::string, MultiPoly> sub;
                sub[v] = -rest * c.inv();
                std::vector<MultiPoly> next;
                for (size_t j = 0; j < relations.size(); ++j) {
                    if (j == i) continue;
                    MultiPoly s = relations[j].substitute(sub);
                    if (!s.is_zero()) next.push_back(std::move(s));
                }
                relations = std::move(next);
                for (auto& [w, g] : assignments) g = g.substitute(sub);
                assignments[v] = sub[v];
                vars.erase(std::find(vars.begin(), vars.end(), v));
                changed = true;
                break;
            }
            if (changed) break;
        }
        if (!changed) return {relations, vars, assignments};
    }
}

}  // namespace torsor
