#include "torsor/poly.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace torsor {

// ---------------------------------------------------------------- coeff str

std::string PiPoly::str() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        uint32_t v = c_[i];
        if (!v) continue;
        if (!first) os << " + ";
        first = false;
        if (i == 0) {
            os << v;
        } else {
            if (v != 1) os << v << "*";
            os << "pi";
            if (i != 1) os << "^" << i;
        }
    }
    return os.str();
}

std::string CoeffScalar::str() const {
    if (is_zero()) return "0";
    std::string n = num_.str();
    if (den_.is_one()) return n;
    std::string d = den_.str();
    std::string r = num_.degree() > 0 && num_.str().find(' ') != std::string::npos ? "(" + n + ")" : n;
    std::string rd = den_.degree() > 0 && d.find(' ') != std::string::npos ? "(" + d + ")" : d;
    return r + "/" + rd;
}

// ---------------------------------------------------------------- monomial

bool Monomial::contains_any(const std::vector<std::string>& vars) const {
    for (auto& v : vars)
        if (e_.count(v)) return true;
    return false;
}

int MonomialOrder::degrevlex_cmp(const Monomial& a, const Monomial& b,
                                 const std::vector<std::string>& vars) {
    int da = 0, db = 0;
    for (auto& v : vars) {
        da += a.degree(v);
        db += b.degree(v);
    }
    if (da != db) return da < db ? -1 : 1;
    // reverse lexicographic: scan from the least variable; the monomial
    // with the larger exponent there is the smaller one
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
        int ea = a.degree(*it), eb = b.degree(*it);
        if (ea != eb) return ea > eb ? -1 : 1;
    }
    return 0;
}

int MonomialOrder::lex_cmp(const Monomial& a, const Monomial& b,
                           const std::vector<std::string>& vars) {
    for (auto& v : vars) {
        int ea = a.degree(v), eb = b.degree(v);
        if (ea != eb) return ea < eb ? -1 : 1;
    }
    return 0;
}

int MonomialOrder::compare(const Monomial& a, const Monomial& b) const {
    switch (kind_) {
        case Kind::degrevlex:
            return degrevlex_cmp(a, b, vars_);
        case Kind::lex:
            return lex_cmp(a, b, vars_);
        case Kind::block: {
            int c = degrevlex_cmp(a, b, front_);
            if (c) return c;
            return degrevlex_cmp(a, b, vars_);
        }
    }
    return 0;
}

// ---------------------------------------------------------------- multipoly

std::vector<std::string> MultiPoly::variables() const {
    std::vector<std::string> r;
    for (auto& [m, c] : t_)
        for (auto& [v, e] : m.exponents())
            if (std::find(r.begin(), r.end(), v) == r.end()) r.push_back(v);
    std::sort(r.begin(), r.end());
    return r;
}

bool MultiPoly::uses_variable(const std::string& v) const {
    for (auto& [m, c] : t_)
        if (m.degree(v) > 0) return true;
    return false;
}

MultiPoly MultiPoly::operator+(const MultiPoly& o) const {
    MultiPoly r = *this;
    for (auto& [m, c] : o.t_) r.add_term(m, c);
    return r;
}

MultiPoly MultiPoly::operator-(const MultiPoly& o) const {
    MultiPoly r = *this;
    for (auto& [m, c] : o.t_) r.add_term(m, -c);
    return r;
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r(p_);
    for (auto& [m, c] : t_) r.t_[m] = -c;
    return r;
}

MultiPoly MultiPoly::operator*(const MultiPoly& o) const {
    MultiPoly r(p_);
    for (auto& [m1, c1] : t_)
        for (auto& [m2, c2] : o.t_) r.add_term(m1 * m2, c1 * c2);
    return r;
}

MultiPoly MultiPoly::operator*(const CoeffScalar& c) const {
    MultiPoly r(p_);
    if (c.is_zero()) return r;
    for (auto& [m, cc] : t_) r.t_[m] = cc * c;
    return r;
}

MultiPoly MultiPoly::pow(int e) const {
    if (e < 0) throw std::invalid_argument("negative power of a polynomial");
    MultiPoly r = constant(CoeffScalar::one(p_));
    MultiPoly base = *this;
    while (e) {
        if (e & 1) r = r * base;
        base = base * base;
        e >>= 1;
    }
    return r;
}

MultiPoly MultiPoly::substitute(const std::map<std::string, MultiPoly>& bindings) const {
    MultiPoly r(p_);
    for (auto& [m, c] : t_) {
        MultiPoly term = constant(c);
        for (auto& [v, e] : m.exponents()) {
            auto it = bindings.find(v);
            if (it == bindings.end())
                term = term * MultiPoly::var(p_, v, e);
            else
                term = term * it->second.pow(e);
        }
        r = r + term;
    }
    return r;
}

int MultiPoly::min_coeff_valuation() const {
    int m = kValInfinity;
    for (auto& [mon, c] : t_) m = std::min(m, c.valuation());
    return m;
}

std::pair<MultiPoly, int> MultiPoly::pi_normalize() const {
    if (is_zero()) throw ZeroPolynomial();
    int m = min_coeff_valuation();
    return {scale_pi(-m), m};
}

MultiPoly MultiPoly::to_model_ring() const {
    // clear pure pi-power denominators, then fold pi into a variable
    int m = std::min(0, min_coeff_valuation());
    MultiPoly cleared = scale_pi(-m);
    MultiPoly r(p_);
    for (auto& [mon, c] : cleared.t_) {
        if (!c.den().is_one())
            throw NegativeValuation("model-side coefficient has a non-pi-power denominator: " +
                                    c.str());
        const PiPoly& n = c.num();
        for (int i = 0; i <= n.degree(); ++i) {
            PrimeField ci = n.coeff(i);
            if (ci.is_zero()) continue;
            Monomial mm = mon * Monomial::var("pi", i);
            r.add_term(mm, CoeffScalar::integer(p_, ci.value()));
        }
    }
    return r;
}

MultiPoly MultiPoly::from_model_ring() const {
    std::map<std::string, MultiPoly> b;
    b["pi"] = MultiPoly::constant(CoeffScalar::pi_power(p_, 1));
    return substitute(b);
}

MultiPoly MultiPoly::reduce_mod_pi() const {
    MultiPoly r(p_);
    for (auto& [m, c] : t_)
        if (m.degree("pi") == 0) r.add_term(m, c);
    return r;
}

std::pair<Monomial, CoeffScalar> MultiPoly::leading(const MonomialOrder& ord) const {
    if (is_zero()) throw ZeroPolynomial();
    auto best = t_.begin();
    for (auto it = std::next(t_.begin()); it != t_.end(); ++it)
        if (ord.compare(it->first, best->first) > 0) best = it;
    return {best->first, best->second};
}

std::string MultiPoly::str() const {
    if (is_zero()) return "0";
    MonomialOrder ord = MonomialOrder::degrevlex(variables());
    std::vector<const std::pair<const Monomial, CoeffScalar>*> terms;
    for (auto& t : t_) terms.push_back(&t);
    std::sort(terms.begin(), terms.end(),
              [&](auto* a, auto* b) { return ord.compare(a->first, b->first) > 0; });
    std::ostringstream os;
    bool first = true;
    for (auto* t : terms) {
        if (!first) os << " + ";
        first = false;
        const CoeffScalar& c = t->second;
        std::string cs = c.str();
        bool needs_paren = cs.find(' ') != std::string::npos || cs.find('/') != std::string::npos;
        if (t->first.is_one()) {
            os << (needs_paren ? "(" + cs + ")" : cs);
        } else {
            if (!c.is_one()) os << (needs_paren ? "(" + cs + ")" : cs) << "*";
            bool fv = true;
            for (auto& [v, e] : t->first.exponents()) {
                if (!fv) os << "*";
                fv = false;
                os << v;
                if (e != 1) os << "^" << e;
            }
        }
    }
    return os.str();
}

// ---------------------------------------------------------------- parser

namespace {

struct Parser {
    const std::string& s;
    size_t pos = 0;
    const std::vector<std::string>& vars;
    uint32_t p;

    void skip() {
        while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
    }
    bool eat(char c) {
        skip();
        if (pos < s.size() && s[pos] == c) {
            ++pos;
            return true;
        }
        return false;
    }
    char peek() {
        skip();
        return pos < s.size() ? s[pos] : '\0';
    }

    MultiPoly expr() {
        MultiPoly r = term();
        for (;;) {
            if (eat('+'))
                r = r + term();
            else if (eat('-'))
                r = r - term();
            else
                return r;
        }
    }

    MultiPoly term() {
        MultiPoly r = factor();
        for (;;) {
            if (eat('*')) {
                r = r * factor();
            } else if (eat('/')) {
                MultiPoly d = factor();
                if (!d.is_constant() || d.is_zero())
                    throw SyntaxError("division only by nonzero scalars", pos);
                r = r * d.constant_value().inv();
            } else {
                return r;
            }
        }
    }

    MultiPoly factor() {
        if (eat('-')) return -factor();
        if (eat('+')) return factor();
        MultiPoly base = atom();
        if (eat('^')) {
            int e = exponent();
            if (e < 0) {
                if (!base.is_constant() || base.is_zero())
                    throw SyntaxError("negative exponent on a non-scalar", pos);
                return MultiPoly::constant(base.constant_value().pow(e));
            }
            return base.pow(e);
        }
        return base;
    }

    int exponent() {
        skip();
        bool paren = eat('(');
        int sign = 1;
        if (eat('-')) sign = -1;
        skip();
        size_t start = pos;
        while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
        if (pos == start) throw SyntaxError("expected integer exponent", pos);
        long v = std::stol(s.substr(start, pos - start));
        if (v >= kMaxExponent) throw ExponentOverflow();
        if (paren && !eat(')')) throw SyntaxError("expected ')'", pos);
        return static_cast<int>(sign * v);
    }

    MultiPoly atom() {
        skip();
        if (eat('(')) {
            MultiPoly r = expr();
            if (!eat(')')) throw SyntaxError("expected ')'", pos);
            return r;
        }
        if (pos >= s.size()) throw SyntaxError("unexpected end of input", pos);
        char c = s[pos];
        if (std::isdigit(static_cast<unsigned char>(c))) {
            size_t start = pos;
            while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
            long v = std::stol(s.substr(start, pos - start));
            return MultiPoly::constant(CoeffScalar::integer(p, v));
        }
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            size_t start = pos;
            while (pos < s.size() &&
                   (std::isalnum(static_cast<unsigned char>(s[pos])) || s[pos] == '_' ||
                    s[pos] == '.' || s[pos] == '\''))
                ++pos;
            std::string name = s.substr(start, pos - start);
            // `pi` is the scalar uniformizer unless explicitly declared as
            // a variable (the R-model-ring regime)
            if (name == "pi" && std::find(vars.begin(), vars.end(), "pi") == vars.end())
                return MultiPoly::constant(CoeffScalar::pi_power(p, 1));
            if (std::find(vars.begin(), vars.end(), name) == vars.end())
                throw UndeclaredVariable(name);
            return MultiPoly::var(p, name);
        }
        throw SyntaxError(std::string("unexpected character '") + c + "'", pos);
    }
};

}  // namespace

MultiPoly parse_poly(const std::string& text, const std::vector<std::string>& declared_vars,
                     uint32_t p) {
    Parser parser{text, 0, declared_vars, p};
    MultiPoly r = parser.expr();
    parser.skip();
    if (parser.pos != text.size())
        throw SyntaxError("trailing input", parser.pos);
    return r;
}

}  // namespace torsor
