#pragma once

// Multivariate polynomials over K = F_p(pi) with named variables,
// monomial orders and pi-content normalization.  A polynomial does not
// know which ring it lives in; ambient variable lists belong to the
// ideal presentations and algebra presentations that own it.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "torsor/coeff.hpp"

namespace torsor {

struct ZeroPolynomial : std::runtime_error {
    ZeroPolynomial() : std::runtime_error("zero polynomial") {}
};
struct ExponentOverflow : std::runtime_error {
    ExponentOverflow() : std::runtime_error("exponent exceeds 2^16") {}
};
struct UndeclaredVariable : std::runtime_error {
    explicit UndeclaredVariable(const std::string& v)
        : std::runtime_error("undeclared variable: " + v) {}
};

constexpr int kMaxExponent = 1 << 16;

// Exponent map, zero exponents never stored.
class Monomial {
public:
    Monomial() = default;

    static Monomial var(const std::string& name, int e = 1) {
        Monomial m;
        if (e != 0) m.e_[name] = e;
        return m;
    }

    bool is_one() const { return e_.empty(); }
    int degree(const std::string& v) const {
        auto it = e_.find(v);
        return it == e_.end() ? 0 : it->second;
    }
    int total_degree() const {
        int d = 0;
        for (auto& [v, e] : e_) d += e;
        return d;
    }
    const std::map<std::string, int>& exponents() const { return e_; }
    bool contains_any(const std::vector<std::string>& vars) const;

    Monomial operator*(const Monomial& o) const {
        Monomial r = *this;
        for (auto& [v, e] : o.e_) {
            int ne = r.e_[v] + e;
            if (ne >= kMaxExponent) throw ExponentOverflow();
            if (ne == 0)
                r.e_.erase(v);
            else
                r.e_[v] = ne;
        }
        return r;
    }
    // componentwise division; nullopt when not divisible
    std::optional<Monomial> divide(const Monomial& o) const {
        Monomial r = *this;
        for (auto& [v, e] : o.e_) {
            int ne = r.degree(v) - e;
            if (ne < 0) return std::nullopt;
            if (ne == 0)
                r.e_.erase(v);
            else
                r.e_[v] = ne;
        }
        return r;
    }
    static Monomial lcm(const Monomial& a, const Monomial& b) {
        Monomial r = a;
        for (auto& [v, e] : b.e_)
            if (r.degree(v) < e) r.e_[v] = e;
        return r;
    }
    bool coprime_with(const Monomial& o) const {
        for (auto& [v, e] : o.e_)
            if (e_.count(v)) return false;
        return true;
    }

    bool operator==(const Monomial& o) const { return e_ == o.e_; }
    bool operator!=(const Monomial& o) const { return !(*this == o); }
    bool operator<(const Monomial& o) const { return e_ < o.e_; }  // storage order only

private:
    std::map<std::string, int> e_;
};

// Total order on monomials: degrevlex, lex, or a two-block elimination
// order (front variables dominate, degrevlex inside each block).
class MonomialOrder {
public:
    enum class Kind { degrevlex, lex, block };

    // Variable position = priority: earlier in `vars` means greater.
    static MonomialOrder degrevlex(std::vector<std::string> vars) {
        return MonomialOrder(Kind::degrevlex, std::move(vars), {});
    }
    static MonomialOrder lex(std::vector<std::string> vars) {
        return MonomialOrder(Kind::lex, std::move(vars), {});
    }
    static MonomialOrder block(std::vector<std::string> front, std::vector<std::string> back) {
        return MonomialOrder(Kind::block, std::move(back), std::move(front));
    }

    Kind kind() const { return kind_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<std::string>& front() const { return front_; }

    // all variables, front block first
    std::vector<std::string> all_vars() const {
        std::vector<std::string> r = front_;
        r.insert(r.end(), vars_.begin(), vars_.end());
        return r;
    }

    // <0, 0, >0 like strcmp; positive when a greater
    int compare(const Monomial& a, const Monomial& b) const;

private:
    MonomialOrder(Kind k, std::vector<std::string> vars, std::vector<std::string> front)
        : kind_(k), vars_(std::move(vars)), front_(std::move(front)) {}

    static int degrevlex_cmp(const Monomial& a, const Monomial& b,
                             const std::vector<std::string>& vars);
    static int lex_cmp(const Monomial& a, const Monomial& b, const std::vector<std::string>& vars);

    Kind kind_;
    std::vector<std::string> vars_;   // back block for Kind::block
    std::vector<std::string> front_;  // only for Kind::block
};

// Sparse polynomial: nonzero coefficients only, canonical term map.
class MultiPoly {
public:
    MultiPoly() : p_(2) {}
    explicit MultiPoly(uint32_t p) : p_(p) {}

    static MultiPoly constant(CoeffScalar c) {
        MultiPoly f(c.p());
        if (!c.is_zero()) f.t_[Monomial()] = std::move(c);
        return f;
    }
    static MultiPoly var(uint32_t p, const std::string& name, int e = 1) {
        MultiPoly f(p);
        f.t_[Monomial::var(name, e)] = CoeffScalar::one(p);
        return f;
    }
    static MultiPoly term(CoeffScalar c, Monomial m) {
        MultiPoly f(c.p());
        if (!c.is_zero()) f.t_[std::move(m)] = std::move(c);
        return f;
    }

    uint32_t p() const { return p_; }
    bool is_zero() const { return t_.empty(); }
    size_t term_count() const { return t_.size(); }
    const std::map<Monomial, CoeffScalar>& terms() const { return t_; }
    CoeffScalar coeff(const Monomial& m) const {
        auto it = t_.find(m);
        return it == t_.end() ? CoeffScalar(p_) : it->second;
    }
    bool is_constant() const { return t_.empty() || (t_.size() == 1 && t_.begin()->first.is_one()); }
    CoeffScalar constant_value() const { return coeff(Monomial()); }
    int total_degree() const {
        int d = 0;
        for (auto& [m, c] : t_) d = std::max(d, m.total_degree());
        return d;
    }
    std::vector<std::string> variables() const;
    bool uses_variable(const std::string& v) const;

    MultiPoly operator+(const MultiPoly& o) const;
    MultiPoly operator-(const MultiPoly& o) const;
    MultiPoly operator-() const;
    MultiPoly operator*(const MultiPoly& o) const;
    MultiPoly operator*(const CoeffScalar& c) const;
    MultiPoly pow(int e) const;

    bool operator==(const MultiPoly& o) const { return p_ == o.p_ && t_ == o.t_; }
    bool operator!=(const MultiPoly& o) const { return !(*this == o); }
    bool operator<(const MultiPoly& o) const { return t_ < o.t_; }

    // simultaneous substitution variable -> polynomial
    MultiPoly substitute(const std::map<std::string, MultiPoly>& bindings) const;

    // minimum pi-valuation over all coefficients; kValInfinity for 0
    int min_coeff_valuation() const;
    // f / pi^m with m = min coefficient valuation; returns (normalized, m)
    std::pair<MultiPoly, int> pi_normalize() const;
    MultiPoly scale_pi(int k) const { return *this * CoeffScalar::pi_power(p_, k); }

    // K-regime <-> R-model-ring conversions.  to_model moves pi from the
    // coefficients into an honest variable named "pi"; pure pi-power
    // denominators are cleared first, any other denominator is rejected.
    MultiPoly to_model_ring() const;
    // substitute the variable "pi" back into the coefficients
    MultiPoly from_model_ring() const;
    // set pi = 0 (model-ring polynomial, i.e. coefficients constant)
    MultiPoly reduce_mod_pi() const;

    // leading term w.r.t. an order (poly must be nonzero)
    std::pair<Monomial, CoeffScalar> leading(const MonomialOrder& ord) const;

    std::string str() const;  // canonical: descending degrevlex over own variables

    void add_term(const Monomial& m, const CoeffScalar& c) {
        auto it = t_.find(m);
        if (it == t_.end()) {
            if (!c.is_zero()) t_[m] = c;
            return;
        }
        CoeffScalar s = it->second + c;
        if (s.is_zero())
            t_.erase(it);
        else
            it->second = std::move(s);
    }

private:
    uint32_t p_;
    std::map<Monomial, CoeffScalar> t_;
};

// Parse the expression grammar: identifiers, `pi`, integer literals,
// + - * / ^ and parentheses.  All identifiers must be declared.
struct SyntaxError : std::runtime_error {
    SyntaxError(const std::string& what, size_t pos)
        : std::runtime_error(what + " at position " + std::to_string(pos)), position(pos) {}
    size_t position;
};

MultiPoly parse_poly(const std::string& text, const std::vector<std::string>& declared_vars,
                     uint32_t p);

}  // namespace torsor
