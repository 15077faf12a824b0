#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"
#include "torsor/poly.hpp"

using namespace torsor;
using torsor_test::Rng;
using torsor_test::random_poly;

TEST_CASE("parse torsor relation with negative pi power") {
    MultiPoly f = parse_poly("z^2 + z + pi^(-1)*y", {"z", "y"}, 2);
    CHECK(f.term_count() == 3);
    CHECK(f.coeff(Monomial::var("y")).valuation() == -1);
}

TEST_CASE("parse zero and coefficient arithmetic") {
    CHECK(parse_poly("0", {}, 2).is_zero());
    MultiPoly f = parse_poly("(1+pi)*x - x", {"x"}, 3);
    CHECK(f == parse_poly("pi*x", {"x"}, 3));
}

TEST_CASE("parse rejects bad input") {
    CHECK_THROWS_AS(parse_poly("x + y", {"x"}, 2), UndeclaredVariable);
    CHECK_THROWS_AS(parse_poly("x + ", {"x"}, 2), SyntaxError);
    CHECK_THROWS_AS(parse_poly("x^(-1)", {"x"}, 2), SyntaxError);
}

TEST_CASE("substitution: blow-up rescaling") {
    // z^2 - z - pi^{-1} y with y -> pi*w collapses to z^2 - z - w
    MultiPoly f = parse_poly("z^2 - z - pi^(-1)*y", {"z", "y"}, 2);
    std::map<std::string, MultiPoly> b;
    b["y"] = parse_poly("pi*w", {"w"}, 2);
    CHECK(f.substitute(b) == parse_poly("z^2 - z - w", {"z", "w"}, 2));

    std::map<std::string, MultiPoly> idb;
    idb["z"] = MultiPoly::var(2, "z");
    CHECK(f.substitute(idb) == f);
}

TEST_CASE("substitution then pi-normalization reproduces the quasi-finite group relation") {
    // y^p - y - pi*x with y -> pi*y, then normalize: pi^{p-1} y^p - y - x
    for (uint32_t p : {2u, 3u, 5u}) {
        MultiPoly f = parse_poly("y^" + std::to_string(p) + " - y - pi*x", {"y", "x"}, p);
        std::map<std::string, MultiPoly> b;
        b["y"] = parse_poly("pi*y", {"y"}, p);
        auto [g, m] = f.substitute(b).pi_normalize();
        CHECK(m == 1);
        CHECK(g == parse_poly("pi^" + std::to_string(p - 1) + "*y^" + std::to_string(p) +
                                  " - y - x",
                              {"y", "x"}, p));
    }
}

TEST_CASE("pi_normalize") {
    MultiPoly f = parse_poly("pi^2*x + pi^3*y", {"x", "y"}, 5);
    auto [g, m] = f.pi_normalize();
    CHECK(m == 2);
    CHECK(g == parse_poly("x + pi*y", {"x", "y"}, 5));

    auto [h, m2] = parse_poly("x + pi*y", {"x", "y"}, 5).pi_normalize();
    CHECK(m2 == 0);

    auto [q, m3] = parse_poly("pi*y^2 - pi*y - pi^2*x", {"x", "y"}, 2).pi_normalize();
    CHECK(m3 == 1);
    CHECK(q == parse_poly("y^2 - y - pi*x", {"x", "y"}, 2));

    CHECK_THROWS_AS(MultiPoly(2).pi_normalize(), ZeroPolynomial);
}

TEST_CASE("monomial orders") {
    Monomial x2y = Monomial::var("x", 2) * Monomial::var("y");
    Monomial xy2 = Monomial::var("x") * Monomial::var("y", 2);
    CHECK(MonomialOrder::degrevlex({"x", "y"}).compare(x2y, xy2) > 0);

    CHECK(MonomialOrder::lex({"x", "y"}).compare(Monomial::var("x"), Monomial::var("y", 10)) > 0);

    Monomial t = Monomial::var("t");
    Monomial x3y3 = Monomial::var("x", 3) * Monomial::var("y", 3);
    CHECK(MonomialOrder::block({"t"}, {"x", "y"}).compare(t, x3y3) > 0);
}

TEST_CASE("substitution is a ring homomorphism") {
    Rng rng(11);
    std::vector<std::string> vars = {"x", "y"};
    for (int i = 0; i < 50; ++i) {
        MultiPoly f = random_poly(rng, vars, 3, 3, 3, 1);
        MultiPoly g = random_poly(rng, vars, 3, 3, 3, 1);
        std::map<std::string, MultiPoly> b;
        b["x"] = random_poly(rng, {"u", "v"}, 3, 2, 2);
        b["y"] = random_poly(rng, {"u"}, 3, 2, 2);
        CHECK((f * g).substitute(b) == f.substitute(b) * g.substitute(b));
        CHECK((f + g).substitute(b) == f.substitute(b) + g.substitute(b));
    }
}

TEST_CASE("pi_normalize shifts under pi scaling") {
    Rng rng(13);
    for (int i = 0; i < 50; ++i) {
        MultiPoly f = random_poly(rng, {"x", "y"}, 2, 3, 3, 2);
        if (f.is_zero()) continue;
        int k = static_cast<int>(rng.below(4));
        auto [g1, m1] = f.pi_normalize();
        auto [g2, m2] = f.scale_pi(k).pi_normalize();
        CHECK(g1 == g2);
        CHECK(m2 == m1 + k);
    }
}

TEST_CASE("parse of print is identity") {
    Rng rng(17);
    std::vector<std::string> vars = {"x", "y", "z"};
    for (int i = 0; i < 100; ++i) {
        uint32_t p = i % 2 ? 2 : 7;
        MultiPoly f = random_poly(rng, vars, p, 4, 4, 2);
        if (i % 3 == 0) f = f * CoeffScalar::pi_power(p, -1);
        CHECK(parse_poly(f.str(), vars, p) == f);
    }
}

TEST_CASE("model ring round trip") {
    MultiPoly f = parse_poly("y^2 - y - pi*x", {"x", "y"}, 2);
    MultiPoly m = f.to_model_ring();
    CHECK(m.uses_variable("pi"));
    CHECK(m.from_model_ring() == f);
    // pure pi-power denominators are cleared
    MultiPoly g = parse_poly("z^2 + z + pi^(-1)*y", {"z", "y"}, 2);
    CHECK(g.to_model_ring() == parse_poly("pi*z^2 + pi*z + y", {"z", "y", "pi"}, 2));
    // other denominators are rejected
    MultiPoly h = parse_poly("x/(1+pi)", {"x"}, 2);
    CHECK_THROWS_AS(h.to_model_ring(), NegativeValuation);
}
