#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"
#include "torsor/coeff.hpp"

using namespace torsor;

static CoeffScalar parse_scalar(const std::string& s, uint32_t p) {
    MultiPoly f = parse_poly(s, {}, p);
    return f.constant_value();
}

TEST_CASE("valuation of monomials and zero") {
    CHECK(CoeffScalar::pi_power(2, 3).valuation() == 3);
    CHECK(CoeffScalar(2).valuation() == kValInfinity);
    CHECK(CoeffScalar::pi_power(3, -2).valuation() == -2);
}

TEST_CASE("valuation cancels common pi factors") {
    // (pi^2 + pi^3)/(1 + pi) over F_2 reduces to pi^2
    CoeffScalar f = parse_scalar("(pi^2 + pi^3)/(1 + pi)", 2);
    CHECK(f.valuation() == 2);
    CHECK(f == CoeffScalar::pi_power(2, 2));
}

TEST_CASE("residue") {
    CHECK(CoeffScalar::pi_power(2, 1).residue().value() == 0);
    CHECK(parse_scalar("1/(1+pi)", 2).residue().value() == 1);
    CHECK_THROWS_AS(parse_scalar("(1+pi)/pi", 2).residue(), NegativeValuation);
}

TEST_CASE("field arithmetic") {
    uint32_t p = 2;
    CoeffScalar pi = CoeffScalar::pi_power(p, 1);
    CHECK((pi * pi.inv()).is_one());
    CoeffScalar u = parse_scalar("1+pi", p);
    CHECK((u + u).is_zero());
    CHECK((u.inv() * u).is_one());
    CHECK_THROWS_AS(CoeffScalar(p).inv(), DivisionByZero);
}

TEST_CASE("valuation is additive, ultrametric on sums") {
    torsor_test::Rng rng(42);
    for (int i = 0; i < 200; ++i) {
        uint32_t p = i % 2 ? 2 : 5;
        auto rnd = [&]() {
            PiPoly num(p, {1 + rng.below(p - 1), rng.below(p), rng.below(p)});
            PiPoly den(p, {1 + rng.below(p - 1), rng.below(p)});
            int shift = static_cast<int>(rng.below(7)) - 3;
            return CoeffScalar(num, den) * CoeffScalar::pi_power(p, shift);
        };
        CoeffScalar f = rnd(), g = rnd();
        CHECK((f * g).valuation() == f.valuation() + g.valuation());
        CoeffScalar s = f + g;
        if (!s.is_zero()) CHECK(s.valuation() >= std::min(f.valuation(), g.valuation()));
        if (f.valuation() != g.valuation())
            CHECK(s.valuation() == std::min(f.valuation(), g.valuation()));
    }
}

TEST_CASE("residue is a ring homomorphism on R") {
    torsor_test::Rng rng(7);
    for (int i = 0; i < 200; ++i) {
        uint32_t p = 3;
        auto rnd = [&]() {
            PiPoly num(p, {rng.below(p), rng.below(p), rng.below(p)});
            PiPoly den(p, {1 + rng.below(p - 1), rng.below(p)});
            return CoeffScalar(num, den);
        };
        CoeffScalar f = rnd(), g = rnd();
        CHECK((f + g).residue() == f.residue() + g.residue());
        CHECK((f * g).residue() == f.residue() * g.residue());
    }
}

TEST_CASE("normalization is canonical") {
    uint32_t p = 5;
    // same element presented two ways
    CoeffScalar a(PiPoly(p, {0, 2, 2}), PiPoly(p, {1, 1}));      // (2pi+2pi^2)/(1+pi)
    CoeffScalar b(PiPoly(p, {0, 4}), PiPoly(p, {2}));            // 4pi/2
    CHECK(a == b);
    CHECK(a.num() == b.num());
    CHECK(a.den() == b.den());
    CHECK(a.den().lead().value() == 1);  // monic denominator
}
