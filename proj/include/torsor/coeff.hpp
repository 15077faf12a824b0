#pragma once

// Exact arithmetic in K = F_p(pi), the fraction field of R = F_p[pi]
// localized at (pi).  Elements carry their pi-adic valuation; the DVR R
// is the subring of elements with valuation >= 0 and the residue field
// is F_p, reached by evaluating at pi = 0.

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace torsor {

struct DivisionByZero : std::runtime_error {
    DivisionByZero() : std::runtime_error("division by zero") {}
};
struct NegativeValuation : std::runtime_error {
    explicit NegativeValuation(const std::string& what) : std::runtime_error(what) {}
};

inline bool is_prime(uint32_t n) {
    if (n < 2) return false;
    for (uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// Element of the prime field F_p, 2 <= p <= 97.
class PrimeField {
public:
    PrimeField() : p_(2), v_(0) {}
    PrimeField(uint32_t p, int64_t v) : p_(p) {
        if (!is_prime(p) || p > 97) throw std::invalid_argument("modulus must be prime, <= 97");
        int64_t r = v % static_cast<int64_t>(p);
        v_ = static_cast<uint32_t>(r < 0 ? r + p : r);
    }

    uint32_t p() const { return p_; }
    uint32_t value() const { return v_; }
    bool is_zero() const { return v_ == 0; }

    PrimeField operator+(PrimeField o) const { chk(o); return raw(p_, (v_ + o.v_) % p_); }
    PrimeField operator-(PrimeField o) const { chk(o); return raw(p_, (v_ + p_ - o.v_) % p_); }
    PrimeField operator-() const { return raw(p_, v_ == 0 ? 0 : p_ - v_); }
    PrimeField operator*(PrimeField o) const {
        chk(o);
        return raw(p_, static_cast<uint32_t>((uint64_t(v_) * o.v_) % p_));
    }
    PrimeField inv() const {
        if (v_ == 0) throw DivisionByZero();
        // Fermat: v^(p-2) mod p
        uint64_t base = v_, acc = 1;
        for (uint32_t e = p_ - 2; e; e >>= 1) {
            if (e & 1) acc = acc * base % p_;
            base = base * base % p_;
        }
        return raw(p_, static_cast<uint32_t>(acc));
    }
    PrimeField operator/(PrimeField o) const { return *this * o.inv(); }

    bool operator==(const PrimeField& o) const { return p_ == o.p_ && v_ == o.v_; }
    bool operator!=(const PrimeField& o) const { return !(*this == o); }

private:
    static PrimeField raw(uint32_t p, uint32_t v) {
        PrimeField f;
        f.p_ = p;
        f.v_ = v;
        return f;
    }
    void chk(const PrimeField& o) const {
        if (p_ != o.p_) throw std::invalid_argument("mixed prime moduli");
    }
    uint32_t p_;
    uint32_t v_;
};

// Univariate polynomial in pi over F_p, dense ascending coefficients.
class PiPoly {
public:
    PiPoly() : p_(2) {}
    explicit PiPoly(uint32_t p) : p_(p) {}
    PiPoly(uint32_t p, std::vector<uint32_t> coeffs) : p_(p), c_(std::move(coeffs)) { trim(); }

    static PiPoly constant(uint32_t p, int64_t v) {
        PrimeField f(p, v);
        return f.is_zero() ? PiPoly(p) : PiPoly(p, {f.value()});
    }
    static PiPoly pi_power(uint32_t p, unsigned k) {
        std::vector<uint32_t> c(k + 1, 0);
        c[k] = 1;
        return PiPoly(p, std::move(c));
    }

    uint32_t p() const { return p_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    // pi-adic order; -1 for the zero polynomial
    int ord() const {
        for (size_t i = 0; i < c_.size(); ++i)
            if (c_[i]) return static_cast<int>(i);
        return -1;
    }
    PrimeField coeff(size_t i) const { return PrimeField(p_, i < c_.size() ? c_[i] : 0); }
    PrimeField lead() const { return coeff(c_.size() - 1); }
    PrimeField at_zero() const { return coeff(0); }
    bool is_one() const { return c_.size() == 1 && c_[0] == 1; }

    PiPoly operator+(const PiPoly& o) const {
        PiPoly r(p_);
        r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
        for (size_t i = 0; i < r.c_.size(); ++i)
            r.c_[i] = ((i < c_.size() ? c_[i] : 0) + (i < o.c_.size() ? o.c_[i] : 0)) % p_;
        r.trim();
        return r;
    }
    PiPoly operator-(const PiPoly& o) const {
        PiPoly r(p_);
        r.c_.resize(std::max(c_.size(), o.c_.size()), 0);
        for (size_t i = 0; i < r.c_.size(); ++i)
            r.c_[i] = ((i < c_.size() ? c_[i] : 0) + p_ - (i < o.c_.size() ? o.c_[i] : 0)) % p_;
        r.trim();
        return r;
    }
    PiPoly operator-() const {
        PiPoly r = *this;
        for (auto& v : r.c_) v = v ? p_ - v : 0;
        return r;
    }
    PiPoly operator*(const PiPoly& o) const {
        if (is_zero() || o.is_zero()) return PiPoly(p_);
        PiPoly r(p_);
        r.c_.assign(c_.size() + o.c_.size() - 1, 0);
        for (size_t i = 0; i < c_.size(); ++i) {
            if (!c_[i]) continue;
            for (size_t j = 0; j < o.c_.size(); ++j)
                r.c_[i + j] = static_cast<uint32_t>((r.c_[i + j] + uint64_t(c_[i]) * o.c_[j]) % p_);
        }
        r.trim();
        return r;
    }

    // Euclidean division, divisor nonzero.
    std::pair<PiPoly, PiPoly> divmod(const PiPoly& d) const {
        if (d.is_zero()) throw DivisionByZero();
        PiPoly rem = *this, quo(p_);
        quo.c_.assign(c_.size(), 0);
        PrimeField dl = d.lead();
        while (!rem.is_zero() && rem.degree() >= d.degree()) {
            int shift = rem.degree() - d.degree();
            PrimeField q = rem.lead() / dl;
            quo.c_[shift] = (quo.c_[shift] + q.value()) % p_;
            PiPoly sub = d * pi_power(p_, shift);
            for (auto& v : sub.c_) v = static_cast<uint32_t>(uint64_t(v) * q.value() % p_);
            rem = rem - sub;
        }
        quo.trim();
        return {quo, rem};
    }

    PiPoly monic() const {
        if (is_zero()) return *this;
        PrimeField li = lead().inv();
        PiPoly r = *this;
        for (auto& v : r.c_) v = static_cast<uint32_t>(uint64_t(v) * li.value() % p_);
        return r;
    }

    static PiPoly gcd(PiPoly a, PiPoly b) {
        while (!b.is_zero()) {
            PiPoly r = a.divmod(b).second;
            a = b;
            b = r;
        }
        return a.monic();
    }

    bool operator==(const PiPoly& o) const { return p_ == o.p_ && c_ == o.c_; }
    bool operator!=(const PiPoly& o) const { return !(*this == o); }
    bool operator<(const PiPoly& o) const { return c_ < o.c_; }

    std::string str() const;

private:
    void trim() {
        for (auto& v : c_) v %= p_;
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
    uint32_t p_;
    std::vector<uint32_t> c_;
};

constexpr int kValInfinity = std::numeric_limits<int>::max();

// Element of K = F_p(pi) as a reduced fraction num/den with den monic,
// gcd(num, den) = 1.  Canonical: equal field elements have identical
// representations.
class CoeffScalar {
public:
    CoeffScalar() : num_(2), den_(PiPoly::constant(2, 1)) {}
    explicit CoeffScalar(uint32_t p) : num_(p), den_(PiPoly::constant(p, 1)) {}
    CoeffScalar(PiPoly num, PiPoly den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

    static CoeffScalar integer(uint32_t p, int64_t v) {
        return CoeffScalar(PiPoly::constant(p, v), PiPoly::constant(p, 1));
    }
    static CoeffScalar one(uint32_t p) { return integer(p, 1); }
    static CoeffScalar pi_power(uint32_t p, int k) {
        if (k >= 0) return CoeffScalar(PiPoly::pi_power(p, k), PiPoly::constant(p, 1));
        return CoeffScalar(PiPoly::constant(p, 1), PiPoly::pi_power(p, -k));
    }

    uint32_t p() const { return num_.p(); }
    const PiPoly& num() const { return num_; }
    const PiPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_one() const { return num_.is_one() && den_.is_one(); }

    int valuation() const {
        if (is_zero()) return kValInfinity;
        return num_.ord() - den_.ord();
    }

    // value of the reduced fraction at pi = 0; requires valuation >= 0
    PrimeField residue() const {
        if (is_zero()) return PrimeField(p(), 0);
        if (valuation() < 0) throw NegativeValuation("residue of element with negative valuation");
        return num_.at_zero() / den_.at_zero();
    }

    CoeffScalar operator+(const CoeffScalar& o) const {
        return CoeffScalar(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
    }
    CoeffScalar operator-(const CoeffScalar& o) const {
        return CoeffScalar(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
    }
    CoeffScalar operator-() const { return CoeffScalar(-num_, den_); }
    CoeffScalar operator*(const CoeffScalar& o) const {
        return CoeffScalar(num_ * o.num_, den_ * o.den_);
    }
    CoeffScalar inv() const {
        if (is_zero()) throw DivisionByZero();
        return CoeffScalar(den_, num_);
    }
    CoeffScalar operator/(const CoeffScalar& o) const { return *this * o.inv(); }
    CoeffScalar pow(int e) const {
        CoeffScalar base = e < 0 ? inv() : *this;
        unsigned k = e < 0 ? -e : e;
        CoeffScalar r = one(p());
        while (k) {
            if (k & 1) r = r * base;
            base = base * base;
            k >>= 1;
        }
        return r;
    }

    bool operator==(const CoeffScalar& o) const { return num_ == o.num_ && den_ == o.den_; }
    bool operator!=(const CoeffScalar& o) const { return !(*this == o); }
    bool operator<(const CoeffScalar& o) const {
        if (num_ != o.num_) return num_ < o.num_;
        return den_ < o.den_;
    }

    std::string str() const;

private:
    void normalize() {
        if (den_.is_zero()) throw DivisionByZero();
        if (num_.is_zero()) {
            den_ = PiPoly::constant(p(), 1);
            return;
        }
        PiPoly g = PiPoly::gcd(num_, den_);
        num_ = num_.divmod(g).first;
        den_ = den_.divmod(g).first;
        PrimeField li = den_.lead().inv();
        num_ = num_ * PiPoly(p(), {li.value()});
        den_ = den_.monic();
    }
    PiPoly num_;
    PiPoly den_;
};

}  // namespace torsor
