#include "torsor/groebner.hpp"

#include <algorithm>
#include <deque>

namespace torsor {

GroebnerLimits& groebner_limits() {
    static GroebnerLimits limits;
    return limits;
}

uint32_t IdealPresentation::p() const {
    if (!gens_.empty()) return gens_.front().p();
    return 2;
}

namespace {

// one full reduction of f modulo the set G (not necessarily a basis)
MultiPoly reduce_full(const MultiPoly& f, const std::vector<MultiPoly>& G,
                      const MonomialOrder& ord) {
    const int cap = groebner_limits().degree_cap;
    MultiPoly rem(f.p());
    MultiPoly h = f;
    while (!h.is_zero()) {
        if (h.total_degree() > cap)
            throw ResourceLimit("degree cap exceeded during reduction");
        auto [hm, hc] = h.leading(ord);
        bool reduced = false;
        for (const auto& g : G) {
            if (g.is_zero()) continue;
            auto [gm, gc] = g.leading(ord);
            auto q = hm.divide(gm);
            if (!q) continue;
            h = h - g * MultiPoly::term(hc / gc, *q);
            reduced = true;
            break;
        }
        if (!reduced) {
            rem.add_term(hm, hc);
            h = h - MultiPoly::term(hc, hm);
        }
    }
    return rem;
}

MultiPoly s_poly(const MultiPoly& f, const MultiPoly& g, const MonomialOrder& ord) {
    auto [fm, fc] = f.leading(ord);
    auto [gm, gc] = g.leading(ord);
    Monomial l = Monomial::lcm(fm, gm);
    return f * MultiPoly::term(fc.inv(), *l.divide(fm)) -
           g * MultiPoly::term(gc.inv(), *l.divide(gm));
}

std::vector<MultiPoly> interreduce(std::vector<MultiPoly> G, const MonomialOrder& ord) {
    // drop redundant leading terms, then tail-reduce and make monic
    for (;;) {
        bool changed = false;
        for (size_t i = 0; i < G.size(); ++i) {
            if (G[i].is_zero()) continue;
            auto [mi, ci] = G[i].leading(ord);
            for (size_t j = 0; j < G.size(); ++j) {
                if (i == j || G[j].is_zero()) continue;
                auto [mj, cj] = G[j].leading(ord);
                if (mi.divide(mj)) {
                    G[i] = MultiPoly(G[i].p());
                    changed = true;
                    break;
                }
            }
        }
        if (!changed) break;
    }
    std::vector<MultiPoly> out;
    for (size_t i = 0; i < G.size(); ++i) {
        if (G[i].is_zero()) continue;
        std::vector<MultiPoly> others;
        for (size_t j = 0; j < G.size(); ++j)
            if (j != i && !G[j].is_zero()) others.push_back(G[j]);
        MultiPoly r = others.empty() ? G[i] : reduce_full(G[i], others, ord);
        if (r.is_zero()) continue;
        auto [m, c] = r.leading(ord);
        out.push_back(r * c.inv());
    }
    // deterministic final ordering: ascending leading monomial
    std::sort(out.begin(), out.end(), [&](const MultiPoly& a, const MultiPoly& b) {
        int c = ord.compare(a.leading(ord).first, b.leading(ord).first);
        if (c) return c < 0;
        return a < b;
    });
    return out;
}

std::vector<MultiPoly> buchberger(const std::vector<MultiPoly>& gens, const MonomialOrder& ord) {
    std::vector<MultiPoly> G;
    for (const auto& g : gens)
        if (!g.is_zero()) G.push_back(g);
    if (G.empty()) return G;

    struct Pair {
        size_t i, j;
        int lcm_deg;
    };
    auto make_pairs = [&](size_t upto) {
        std::vector<Pair> pairs;
        for (size_t i = 0; i < upto; ++i)
            for (size_t j = i + 1; j < upto; ++j) {
                Monomial l =
                    Monomial::lcm(G[i].leading(ord).first, G[j].leading(ord).first);
                pairs.push_back({i, j, l.total_degree()});
            }
        return pairs;
    };

    std::deque<Pair> queue;
    {
        auto pairs = make_pairs(G.size());
        std::sort(pairs.begin(), pairs.end(), [](const Pair& a, const Pair& b) {
            return std::tie(a.lcm_deg, a.i, a.j) < std::tie(b.lcm_deg, b.i, b.j);
        });
        queue.assign(pairs.begin(), pairs.end());
    }

    const size_t basis_cap = groebner_limits().basis_cap;
    while (!queue.empty()) {
        Pair pr = queue.front();
        queue.pop_front();
        const MultiPoly &f = G[pr.i], &g = G[pr.j];
        // coprime-leading-terms criterion
        if (f.leading(ord).first.coprime_with(g.leading(ord).first)) continue;
        MultiPoly r = reduce_full(s_poly(f, g, ord), G, ord);
        if (r.is_zero()) continue;
        G.push_back(r);
        if (G.size() > basis_cap) throw ResourceLimit("basis size cap exceeded");
        size_t n = G.size() - 1;
        std::vector<Pair> fresh;
        for (size_t i = 0; i < n; ++i) {
            Monomial l = Monomial::lcm(G[i].leading(ord).first, G[n].leading(ord).first);
            fresh.push_back({i, n, l.total_degree()});
        }
        std::sort(fresh.begin(), fresh.end(), [](const Pair& a, const Pair& b) {
            return std::tie(a.lcm_deg, a.i, a.j) < std::tie(b.lcm_deg, b.i, b.j);
        });
        // keep the queue roughly degree-ordered
        for (auto& pp : fresh) {
            auto it = std::find_if(queue.begin(), queue.end(),
                                   [&](const Pair& q) { return q.lcm_deg > pp.lcm_deg; });
            queue.insert(it, pp);
        }
    }
    return interreduce(std::move(G), ord);
}

}  // namespace

const std::vector<MultiPoly>& IdealPresentation::groebner_basis() const {
    if (!basis_) basis_ = buchberger(gens_, order_);
    return *basis_;
}

MultiPoly normal_form(const MultiPoly& f, const IdealPresentation& I) {
    const auto& G = I.groebner_basis();
    if (G.empty()) return f;
    return reduce_full(f, G, I.order());
}

bool ideal_contains(const IdealPresentation& I, const MultiPoly& f) {
    return normal_form(f, I).is_zero();
}

bool ideal_equal(const IdealPresentation& I, const IdealPresentation& J) {
    for (const auto& g : J.generators())
        if (!ideal_contains(I, g)) return false;
    for (const auto& g : I.generators())
        if (!ideal_contains(J, g)) return false;
    return true;
}

MultiPoly divide_exact(const MultiPoly& h, const MultiPoly& f, const MonomialOrder& ord) {
    MultiPoly q(h.p());
    MultiPoly r = h;
    auto [fm, fc] = f.leading(ord);
    while (!r.is_zero()) {
        auto [rm, rc] = r.leading(ord);
        auto m = rm.divide(fm);
        if (!m) throw std::logic_error("divide_exact: not divisible");
        MultiPoly t = MultiPoly::term(rc / fc, *m);
        q = q + t;
        r = r - f * t;
    }
    return q;
}

static std::string fresh_var(const std::vector<std::string>& vars, const std::string& base) {
    std::string v = base;
    while (std::find(vars.begin(), vars.end(), v) != vars.end()) v += "_";
    return v;
}

IdealPresentation eliminate(const IdealPresentation& I, const std::vector<std::string>& drop) {
    std::vector<std::string> keep;
    for (auto& v : I.ambient())
        if (std::find(drop.begin(), drop.end(), v) == drop.end()) keep.push_back(v);
    if (drop.empty()) return I;
    IdealPresentation blocked = I.with_order(MonomialOrder::block(drop, keep));
    std::vector<MultiPoly> kept;
    for (const auto& g : blocked.groebner_basis()) {
        bool free = true;
        for (auto& [m, c] : g.terms())
            if (m.contains_any(drop)) {
                free = false;
                break;
            }
        if (free) kept.push_back(g);
    }
    return IdealPresentation(std::move(kept), keep, MonomialOrder::degrevlex(keep));
}

IdealPresentation saturate(const IdealPresentation& I, const MultiPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("saturation by zero");
    std::string tau = fresh_var(I.ambient(), "@t");
    std::vector<std::string> vars = I.ambient();
    vars.insert(vars.begin(), tau);
    std::vector<MultiPoly> gens = I.generators();
    gens.push_back(f * MultiPoly::var(f.p(), tau) -
                   MultiPoly::constant(CoeffScalar::one(f.p())));
    IdealPresentation J(std::move(gens), vars, MonomialOrder::block({tau}, I.ambient()));
    IdealPresentation elim = eliminate(J, {tau});
    return IdealPresentation(elim.generators(), I.ambient(), I.order());
}

IdealPresentation ideal_quotient(const IdealPresentation& I, const MultiPoly& f) {
    if (f.is_zero()) throw std::invalid_argument("quotient by zero");
    if (f.is_constant())
        return I;  // unit in the coefficient field
    std::string tau = fresh_var(I.ambient(), "@t");
    std::vector<std::string> vars = I.ambient();
    vars.insert(vars.begin(), tau);
    MultiPoly t = MultiPoly::var(f.p(), tau);
    MultiPoly one = MultiPoly::constant(CoeffScalar::one(f.p()));
    std::vector<MultiPoly> gens;
    for (const auto& g : I.generators()) gens.push_back(g * t);
    gens.push_back(f * (one - t));
    IdealPresentation J(std::move(gens), vars, MonomialOrder::block({tau}, I.ambient()));
    IdealPresentation inter = eliminate(J, {tau});  // I cap <f>
    std::vector<MultiPoly> quot;
    MonomialOrder ord = MonomialOrder::degrevlex(I.ambient());
    for (const auto& g : inter.generators()) quot.push_back(divide_exact(g, f, ord));
    return IdealPresentation(std::move(quot), I.ambient(), I.order());
}

}  // namespace torsor
