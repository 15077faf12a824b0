// Acceptance gate: one self-contained check per criterion, each printing
// a single pass/fail line with its runtime.  The process exits nonzero
// if any criterion fails or exceeds its time budget.

#include <chrono>
#include <functional>
#include <iostream>
#include <string>

#include "test_support.hpp"
#include "torsor/torsor.hpp"

using namespace torsor;

namespace {

int g_failures = 0;

void criterion(int n, const std::string& name, double budget_s,
               const std::function<bool()>& body) {
    auto t0 = std::chrono::steady_clock::now();
    bool ok = false;
    std::string error;
    try {
        ok = body();
    } catch (const std::exception& e) {
        error = e.what();
    }
    double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (secs > budget_s) {
        ok = false;
        error = "over time budget of " + std::to_string(budget_s) + " s";
    }
    std::cout << "criterion " << n << " (" << name << "): " << (ok ? "pass" : "FAIL");
    if (!ok && !error.empty()) std::cout << " [" << error << "]";
    std::cout << " (" << secs << " s)\n";
    if (!ok) ++g_failures;
}

AffineAlgebra algebra(BaseRing base, uint32_t p, std::vector<std::string> vars,
                      std::vector<std::string> rels) {
    std::vector<MultiPoly> rs;
    for (auto& r : rels) rs.push_back(parse_poly(r, vars, p));
    return AffineAlgebra(base, p, std::move(vars), std::move(rs));
}

// the Artin-Schreier torsor K[y,z]/(z^p - z - pi^gamma y) over K[y]
// under (Z/pZ)_K with embedding basis <1, pi^alpha x, ...>, pointed at
// the origin
TorsorPresentation as_torsor_over_K(uint32_t p, int gamma, int alpha) {
    AffineAlgebra baseK = AffineAlgebra::free_ring(BaseRing::over_K, p, {"y"});
    MultiPoly rel = MultiPoly::var(p, "z", static_cast<int>(p)) - MultiPoly::var(p, "z") -
                    MultiPoly::var(p, "y") * CoeffScalar::pi_power(p, gamma);
    AffineAlgebra total(BaseRing::over_K, p, {"y", "z"}, {rel});
    HopfAlgebra group = constant_group(p, BaseRing::over_K, "x");
    std::map<std::string, MultiPoly> coaction;
    coaction["y"] = MultiPoly::var(p, std::string("y") + kTagR);
    coaction["z"] = MultiPoly::var(p, std::string("x") + kTagL) +
                    MultiPoly::var(p, std::string("z") + kTagR);
    std::vector<MultiPoly> basis;
    for (uint32_t i = 0; i < p; ++i)
        basis.push_back(MultiPoly::var(p, "x", static_cast<int>(i)) *
                        CoeffScalar::pi_power(p, alpha * static_cast<int>(i)));
    GroupEmbedding E = regular_embedding(group, basis);
    std::map<std::string, MultiPoly> timg;
    std::map<std::string, MultiPoly> x2z;
    x2z["x"] = MultiPoly::var(p, "z");
    for (uint32_t i = 1; i <= p; ++i)
        for (uint32_t j = 1; j <= p; ++j)
            timg[TorsorPresentation::zvar(static_cast<int>(i), static_cast<int>(j))] =
                E.images.at(GroupEmbedding::var(static_cast<int>(i), static_cast<int>(j)))
                    .substitute(x2z);
    timg["D"] = E.images.at("D").substitute(x2z);
    Section pt;
    pt.assignments["y"] = CoeffScalar(p);
    pt.assignments["z"] = CoeffScalar(p);
    return TorsorPresentation{std::move(baseK), std::move(group),   std::move(total),
                              std::move(coaction), std::move(pt),   std::move(E),
                              std::move(timg)};
}

// the (Z/pZ)_R-torsor R[y,z]/(z^p - z - pi^gamma y) over R[y]
TorsorPresentation as_torsor_over_R(uint32_t p, int gamma) {
    AffineAlgebra base = AffineAlgebra::free_ring(BaseRing::over_R, p, {"y"});
    MultiPoly rel = MultiPoly::var(p, "z", static_cast<int>(p)) - MultiPoly::var(p, "z") -
                    MultiPoly::var(p, "y") * CoeffScalar::pi_power(p, gamma);
    AffineAlgebra total(BaseRing::over_R, p, {"y", "z"}, {rel});
    HopfAlgebra group = constant_group(p, BaseRing::over_R, "z");
    std::map<std::string, MultiPoly> coaction;
    coaction["y"] = MultiPoly::var(p, std::string("y") + kTagR);
    coaction["z"] = MultiPoly::var(p, std::string("z") + kTagL) +
                    MultiPoly::var(p, std::string("z") + kTagR);
    return TorsorPresentation{std::move(base), std::move(group), std::move(total),
                              std::move(coaction), std::nullopt, std::nullopt,
                              {}};
}

bool example_2_5() {
    auto A = AffineAlgebra::free_ring(BaseRing::over_R, 2, {"x"});
    TorsorPresentation T = zp_torsor_from(A, -MultiPoly::var(2u, "x"), 2);
    std::map<std::string, MultiPoly> origin;
    origin["y"] = MultiPoly(2u);
    TorsorPresentation B = blowup_torsor(T, origin, 1);
    bool ok = ideal_equal(
        B.total.ideal(),
        algebra(BaseRing::over_R, 2, {"x", "y"}, {"pi*y^2 - y - x"}).ideal());
    ok = ok && ideal_equal(B.group.algebra().ideal(),
                           algebra(BaseRing::over_R, 2, {"y"}, {"pi*y^2 - y"}).ideal());
    ok = ok && verify_torsor(B).pass();
    return ok;
}

bool example_a2() {
    for (uint32_t p : {2u, 3u}) {
        for (int gamma : {1, 2, 3}) {
            auto t0 = std::chrono::steady_clock::now();
            TorsorPresentation T = as_torsor_over_R(p, gamma);
            std::map<std::string, MultiPoly> origin;
            origin["z"] = MultiPoly(p);
            for (int k = 1; k <= gamma; ++k) T = blowup_torsor(T, origin, 1);
            MultiPoly expect =
                MultiPoly::var(p, "z", static_cast<int>(p)) *
                    CoeffScalar::pi_power(p, gamma * (static_cast<int>(p) - 1)) -
                MultiPoly::var(p, "z") - MultiPoly::var(p, "y");
            if (T.total.relations().size() != 1) return false;
            if (!(T.total.relations()[0] == expect)) return false;
            bool guarded = false;
            try {
                blowup_torsor(T, origin, 1);
            } catch (const FinitenessGuardFailed&) {
                guarded = true;
            }
            if (!guarded) return false;
            double secs =
                std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            if (secs > 10.0) return false;
        }
    }
    return true;
}

bool example_a3() {
    auto X = AffineAlgebra::free_ring(BaseRing::over_R, 2, {"y"});
    Section x;
    x.assignments["y"] = CoeffScalar(2u);
    for (int gamma : {-1, -3}) {
        int alpha = (1 - gamma) / 2;
        int alpha2 = (-gamma + 1) / 2;  // ceil(-gamma/2) for odd gamma
        if (alpha != alpha2) return false;
        TorsorPresentation T = as_torsor_over_K(2, gamma, alpha);
        ExtensionResult R = extend_torsor(X, x, T);
        if (R.blowups.steps != 0) return false;
        std::string trel = "z12^2 + pi^" + std::to_string(alpha) + "*z12 + pi^" +
                           std::to_string(2 * alpha + gamma) + "*y";
        if (!ideal_equal(R.model_total.ideal(),
                         algebra(BaseRing::over_R, 2, {"y", "z12"}, {trel}).ideal()))
            return false;
        std::string grel = "x12^2 + pi^" + std::to_string(alpha) + "*x12";
        if (!ideal_equal(R.model_group.algebra().ideal(),
                         algebra(BaseRing::over_R, 2, {"x12"}, {grel}).ideal()))
            return false;
        if (!R.verification.pass()) return false;
        std::map<std::string, MultiPoly> origin;
        origin["z12"] = MultiPoly(2u);
        bool guarded = false;
        try {
            blowup_torsor(R.model, origin, 1);
        } catch (const FinitenessGuardFailed&) {
            guarded = true;
        }
        if (!guarded) return false;
    }
    return true;
}

bool example_a4() {
    auto X = AffineAlgebra::free_ring(BaseRing::over_R, 2, {"y"});
    Section x;
    x.assignments["y"] = CoeffScalar(2u);
    ExtensionResult R = extend_torsor(X, x, as_torsor_over_K(2, -1, 0));
    if (R.blowups.steps != 1) return false;
    // X' = <pi t - y> with the blown coordinate named y'
    if (!ideal_equal(R.model_base.ideal(),
                     algebra(BaseRing::over_R, 2, {"y", "y'"}, {"pi*y' - y"}).ideal()))
        return false;
    if (!ideal_equal(R.model_total.ideal(),
                     algebra(BaseRing::over_R, 2, {"y", "y'", "z12"},
                             {"z12^2 + z12 + y'", "pi*y' - y"})
                         .ideal()))
        return false;
    if (!ideal_equal(R.model_group.algebra().ideal(),
                     algebra(BaseRing::over_R, 2, {"x12"}, {"x12^2 - x12"}).ideal()))
        return false;
    if (!R.verification.pass()) return false;
    // one further blow-up of the base yields a torsor with trivial
    // special fiber
    std::vector<std::string> vars2 = R.model_total.vars();
    vars2.push_back("y''");
    std::vector<MultiPoly> rels2 = R.model_total.relations();
    rels2.push_back(parse_poly("pi*y'' - y'", vars2, 2));
    AffineAlgebra total2 = flat_closure(AffineAlgebra(BaseRing::over_R, 2, vars2, rels2));
    auto fib = special_fiber(total2);
    return ideal_equal(fib.fiber.ideal(),
                       algebra(BaseRing::over_k, 2, vars2, {"z12^2 + z12", "y", "y'"}).ideal());
}

bool roundtrip_fuzz() {
    torsor_test::Rng rng(0xACCE97u);
    int done = 0;
    for (uint32_t p : {2u, 3u, 5u}) {
        auto A = AffineAlgebra::free_ring(BaseRing::over_R, p, {"x"});
        int want = (p == 5u) ? 66 : 67;  // 200 samples across the primes
        for (int i = 0; i < want; ++i, ++done) {
            MultiPoly a = torsor_test::random_poly(rng, {"x"}, p, 4, 3, 3);
            if (!m_torsor_roundtrip(A, a, p)) {
                std::cout << "  roundtrip failed at p = " << p << ", a = " << a.str() << "\n";
                return false;
            }
        }
    }
    return done == 200;
}

bool hopf_suite() {
    for (uint32_t p : {2u, 3u, 5u, 7u, 11u, 13u}) {
        if (!verify_hopf(constant_group(p, BaseRing::over_K)).pass()) return false;
        if (!verify_hopf(constant_group(p, BaseRing::over_R)).pass()) return false;
    }
    for (uint32_t p : {2u, 3u, 5u})
        if (!verify_hopf(m_group(p)).pass()) return false;
    for (int a = 0; a <= 4; ++a)
        if (!verify_hopf(alpha_group(a)).pass()) return false;
    for (int d = 1; d <= 3; ++d) {
        if (!verify_hopf(gl_group(d, 2, BaseRing::over_K)).pass()) return false;
        if (!verify_hopf(gl_group(d, 5, BaseRing::over_R)).pass()) return false;
    }
    // five corrupted controls; a control counts as failed whether the
    // verifier reports failure or rejects the map outright
    auto fails = [](const std::function<HopfAlgebra()>& make) {
        try {
            return !verify_hopf(make()).pass();
        } catch (const std::exception&) {
            return true;
        }
    };
    int caught = 0;
    caught += fails([] {  // wrong counit on Z/2
        HopfAlgebra G = constant_group(2, BaseRing::over_K);
        auto eps = G.counit();
        eps["x"] = CoeffScalar::one(2);
        return HopfAlgebra(G.algebra(), G.comult(), eps, G.antipode());
    });
    caught += fails([] {  // identity antipode on Z/3
        HopfAlgebra G = constant_group(3, BaseRing::over_K);
        auto anti = G.antipode();
        anti["x"] = MultiPoly::var(3, "x");
        return HopfAlgebra(G.algebra(), G.comult(), G.counit(), anti);
    });
    caught += fails([] {  // comultiplication dropping the right leg on Z/5
        HopfAlgebra G = constant_group(5, BaseRing::over_K);
        auto com = G.comult();
        com["x"] = MultiPoly::var(5, "x" + kTagL);
        return HopfAlgebra(G.algebra(), com, G.counit(), G.antipode());
    });
    caught += fails([] {  // additive coproduct on GL(1) breaks x*D = 1
        HopfAlgebra G = gl_group(1, 3, BaseRing::over_K);
        auto com = G.comult();
        com["x11"] = MultiPoly::var(3, "x11" + kTagL) + MultiPoly::var(3, "x11" + kTagR);
        return HopfAlgebra(G.algebra(), com, G.counit(), G.antipode());
    });
    caught += fails([] {  // identity antipode on M(3)
        HopfAlgebra G = m_group(3);
        auto anti = G.antipode();
        anti["y"] = MultiPoly::var(3, "y");
        return HopfAlgebra(G.algebra(), G.comult(), G.counit(), anti);
    });
    return caught == 5;
}

bool flat_closure_properties() {
    torsor_test::Rng rng(7u);
    const std::vector<std::string> vars = {"x", "y", "z"};
    for (int i = 0; i < 100; ++i) {
        size_t nv = 1 + rng.below(3);
        std::vector<std::string> vs(vars.begin(), vars.begin() + nv);
        std::vector<MultiPoly> gens;
        size_t ng = 1 + rng.below(3);
        for (size_t g = 0; g < ng; ++g)
            gens.push_back(torsor_test::random_poly(rng, vs, 2, 3, 3, 2));
        AffineAlgebra A(BaseRing::over_R, 2, vs, gens);
        AffineAlgebra F = flat_closure(A);
        // idempotent
        if (!ideal_equal(flat_closure(F).ideal(), F.ideal())) return false;
        // contains the input
        for (const auto& g : gens)
            if (!g.is_zero() && !ideal_contains(F.ideal(), g)) return false;
        // preserves the generic fiber
        if (!ideal_equal(generic_fiber(A).ideal(), generic_fiber(F).ideal())) return false;
    }
    return true;
}

bool blowup_composition() {
    torsor_test::Rng rng(11u);
    const uint32_t p = 2;
    auto pick = [&rng, p]() {
        switch (rng.below(4)) {
            case 0: return CoeffScalar(p);
            case 1: return CoeffScalar::one(p);
            case 2: return CoeffScalar::pi_power(p, 1);
            default: return CoeffScalar::one(p) + CoeffScalar::pi_power(p, 1);
        }
    };
    for (int i = 0; i < 50; ++i) {
        size_t nv = 1 + rng.below(2);
        std::vector<std::string> vs = {"x", "y"};
        vs.resize(nv);
        AffineAlgebra X = AffineAlgebra::free_ring(BaseRing::over_R, p, vs);
        Section center;
        for (const auto& v : vs) center.assignments[v] = pick();
        int e = 1 + static_cast<int>(rng.below(2));
        int e2 = 1 + static_cast<int>(rng.below(2));

        // e-then-e' equals one (e+e')-fold blow-up after eliminating the
        // intermediate coordinates
        std::map<std::string, std::string> mid, fin, deep_ren;
        for (const auto& v : vs) {
            mid[v] = v + "1";
            fin[v] = v + "2";
            fin[v + "1"] = v + "1f";
            deep_ren[v] = v + "1f";
        }
        BlowupResult B1 = neron_blowup(X, center, e, mid);
        Section lifted = section_lifts(center, B1);
        BlowupResult B2 = neron_blowup(B1.algebra, lifted, e2, fin);
        BlowupResult deep = neron_blowup(X, center, e + e2, deep_ren);
        std::vector<std::string> drop, keep;
        for (const auto& v : vs) {
            drop.push_back(v + "1");
            drop.push_back(v + "2");
            keep.push_back(v);
        }
        for (const auto& v : vs) keep.push_back(v + "1f");
        auto reduced = eliminate(B2.algebra.ideal(), drop);
        if (!ideal_equal(IdealPresentation(reduced.generators(), keep), deep.algebra.ideal()))
            return false;

        // sections lift exactly when their special fiber hits the center
        Section probe;
        bool should = true;
        for (const auto& v : vs) {
            probe.assignments[v] = pick();
            if ((probe.assignments[v] - center.assignments[v]).valuation() < e) should = false;
        }
        bool did = true;
        Section got;
        try {
            got = section_lifts(probe, B1);
        } catch (const DoesNotFactor&) {
            did = false;
        }
        if (did != should) return false;
        if (did) {
            // probe(v) = pi^e * lift + center(v) on every coordinate
            for (const auto& v : vs) {
                CoeffScalar back = got.at(mid[v], p) * CoeffScalar::pi_power(p, e) +
                                   center.assignments[v];
                if (!(back == probe.assignments[v])) return false;
            }
        }
    }
    return true;
}

bool groebner_oracle() {
    torsor_test::Rng rng(13u);
    const std::vector<std::string> vars = {"x", "y"};
    int agreements = 0;
    for (int i = 0; i < 100; ++i) {
        uint32_t p = (i % 2 == 0) ? 2u : 3u;
        std::vector<MultiPoly> gens = {torsor_test::random_poly(rng, vars, p, 2, 2, 1),
                                       torsor_test::random_poly(rng, vars, p, 2, 2, 1)};
        MultiPoly f(p);
        if (i % 3 == 0) {
            // engineered member: m*g0 + g1
            f = gens[0] * MultiPoly::var(p, vars[rng.below(2)]) + gens[1];
        } else {
            f = torsor_test::random_poly(rng, vars, p, 2, 2, 1);
        }
        IdealPresentation I(gens, vars);
        bool gb = ideal_contains(I, f);
        bool oracle = torsor_test::member_oracle(f, gens, vars, 6);
        if (gb != oracle) return false;
        ++agreements;
    }
    return agreements == 100;
}

}  // namespace

int main() {
    criterion(1, "Example 2.5 reproduction", 5.0, example_2_5);
    criterion(2, "Example A.2 iterated blow-ups and guard", 60.0, example_a2);
    criterion(3, "Example A.3 good bases", 10.0, example_a3);
    criterion(4, "Example A.4 one blow-up then trivial fiber", 10.0, example_a4);
    criterion(5, "Prop. 2.6 round-trip fuzz", 300.0, roundtrip_fuzz);
    criterion(6, "Hopf axiom suite with negative controls", 60.0, hopf_suite);
    criterion(7, "flat-closure properties", 120.0, flat_closure_properties);
    criterion(8, "blow-up composition and section lifts", 60.0, blowup_composition);
    criterion(9, "Groebner membership vs. independent oracle", 60.0, groebner_oracle);
    if (g_failures) {
        std::cout << g_failures << " criterion(s) failed\n";
        return 1;
    }
    std::cout << "all criteria passed\n";
    return 0;
}
