#pragma once

// Shared test helpers: a deterministic RNG, random polynomial
// generators, and a brute-force ideal-membership oracle that searches
// bounded-degree cofactor combinations by exact linear algebra.  The
// oracle is independent of the Groebner engine on purpose.

#include <cstdint>
#include <map>
#include <vector>

#include "torsor/groebner.hpp"
#include "torsor/poly.hpp"

namespace torsor_test {

using torsor::CoeffScalar;
using torsor::Monomial;
using torsor::MultiPoly;

class Rng {
public:
    explicit Rng(uint64_t seed) : s_(seed ? seed : 0x9e3779b97f4a7c15ULL) {}
    uint64_t next() {
        s_ ^= s_ << 13;
        s_ ^= s_ >> 7;
        s_ ^= s_ << 17;
        return s_;
    }
    uint32_t below(uint32_t n) { return static_cast<uint32_t>(next() % n); }

private:
    uint64_t s_;
};

// random polynomial in `vars` with total degree <= deg; coefficients are
// integers mod p times pi^{0..pi_deg}
inline MultiPoly random_poly(Rng& rng, const std::vector<std::string>& vars, uint32_t p, int deg,
                             int terms, int pi_deg = 0) {
    MultiPoly f(p);
    for (int t = 0; t < terms; ++t) {
        Monomial m;
        int budget = deg;
        for (auto& v : vars) {
            int e = static_cast<int>(rng.below(budget + 1));
            if (e) m = m * Monomial::var(v, e);
            budget -= e;
            if (!budget) break;
        }
        CoeffScalar c = CoeffScalar::integer(p, 1 + rng.below(p - 1 ? p - 1 : 1));
        if (pi_deg > 0) c = c * CoeffScalar::pi_power(p, rng.below(pi_deg + 1));
        f.add_term(m, c);
    }
    return f;
}

// All monomials in `vars` of total degree <= deg.
inline void enumerate_monomials(const std::vector<std::string>& vars, size_t idx, int deg,
                                Monomial cur, std::vector<Monomial>& out) {
    if (idx == vars.size()) {
        out.push_back(cur);
        return;
    }
    for (int e = 0; e <= deg; ++e)
        enumerate_monomials(vars, idx + 1, deg - e,
                            e ? cur * Monomial::var(vars[idx], e) : cur, out);
}

// Row-echelon accumulator for sparse polynomials over K, keyed by a
// fixed monomial enumeration.
class LinearSpan {
public:
    // returns true if f was already in the span (reduces to zero)
    bool insert(MultiPoly f) {
        f = reduce(std::move(f));
        if (f.is_zero()) return true;
        auto lead = f.terms().rbegin();  // storage order suffices as pivot choice
        Monomial pivot = lead->first;
        f = f * lead->second.inv();
        rows_[pivot] = std::move(f);
        return false;
    }
    bool contains(MultiPoly f) { return reduce(std::move(f)).is_zero(); }

private:
    MultiPoly reduce(MultiPoly f) {
        for (;;) {
            bool hit = false;
            for (auto it = f.terms().rbegin(); it != f.terms().rend(); ++it) {
                auto row = rows_.find(it->first);
                if (row != rows_.end()) {
                    f = f - row->second * it->second;
                    hit = true;
                    break;
                }
            }
            if (!hit) return f;
        }
    }
    std::map<Monomial, MultiPoly> rows_;
};

// Membership by brute force: f in <gens> iff f is a K-linear
// combination of {m * g} with deg(m * g) <= degree_bound.
inline bool member_oracle(const MultiPoly& f, const std::vector<MultiPoly>& gens,
                          const std::vector<std::string>& vars, int degree_bound) {
    LinearSpan span;
    std::vector<Monomial> mons;
    enumerate_monomials(vars, 0, degree_bound, Monomial(), mons);
    for (const auto& g : gens) {
        if (g.is_zero()) continue;
        for (const auto& m : mons) {
            MultiPoly prod = g * MultiPoly::term(CoeffScalar::one(g.p()), m);
            if (prod.total_degree() <= degree_bound) span.insert(prod);
        }
    }
    return span.contains(f);
}

}  // namespace torsor_test
