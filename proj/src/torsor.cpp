#include "torsor/torsor.hpp"

#include <algorithm>

namespace torsor {

std::vector<std::string> TorsorPresentation::fiber_vars() const {
    std::vector<std::string> out;
    for (const auto& v : total.vars())
        if (std::find(base.vars().begin(), base.vars().end(), v) == base.vars().end())
            out.push_back(v);
    return out;
}

// ------------------------------------------------------------- verify

namespace {

bool contains(const std::vector<std::string>& vars, const std::string& v) {
    return std::find(vars.begin(), vars.end(), v) != vars.end();
}

// ideal of C (x) B: group variables tagged #L, total variables #R
IdealPresentation mixed_tensor_ideal(const AffineAlgebra& C, const AffineAlgebra& B) {
    std::vector<std::string> vars;
    std::vector<MultiPoly> gens;
    for (const auto& v : C.vars()) vars.push_back(v + kTagL);
    for (const auto& v : B.vars()) vars.push_back(v + kTagR);
    for (const auto& r : C.relations()) gens.push_back(tag(r, kTagL));
    for (const auto& r : B.relations()) gens.push_back(tag(r, kTagR));
    return IdealPresentation(std::move(gens), vars, MonomialOrder::degrevlex(vars));
}

// ideal of C (x) C (x) B with slots #L, #M, #R
IdealPresentation triple_tensor_ideal(const AffineAlgebra& C, const AffineAlgebra& B) {
    std::vector<std::string> vars;
    std::vector<MultiPoly> gens;
    for (const auto& v : C.vars()) vars.push_back(v + kTagL);
    for (const auto& v : C.vars()) vars.push_back(v + kTagM);
    for (const auto& v : B.vars()) vars.push_back(v + kTagR);
    for (const auto& r : C.relations()) {
        gens.push_back(tag(r, kTagL));
        gens.push_back(tag(r, kTagM));
    }
    for (const auto& r : B.relations()) gens.push_back(tag(r, kTagR));
    return IdealPresentation(std::move(gens), vars, MonomialOrder::degrevlex(vars));
}

// ideal of B (x)_A B: both factors tagged, base variables identified
IdealPresentation fibered_square_ideal(const TorsorPresentation& T) {
    uint32_t p = T.p();
    std::vector<std::string> vars;
    std::vector<MultiPoly> gens;
    for (const auto& v : T.total.vars()) vars.push_back(v + kTagL);
    for (const auto& v : T.total.vars()) vars.push_back(v + kTagR);
    for (const auto& r : T.total.relations()) {
        gens.push_back(tag(r, kTagL));
        gens.push_back(tag(r, kTagR));
    }
    for (const auto& b : T.base.vars())
        gens.push_back(MultiPoly::var(p, b + kTagL) - MultiPoly::var(p, b + kTagR));
    return IdealPresentation(std::move(gens), vars, MonomialOrder::degrevlex(vars));
}

}  // namespace

TorsorReport verify_torsor(const TorsorPresentation& T) {
    const uint32_t p = T.p();
    const AffineAlgebra& B = T.total;
    const AffineAlgebra& C = T.group.algebra();
    if (!T.embedding || T.torsor_images.empty())
        throw NoEmbedding("torsor verification requires GL_d embedding data");
    const int d = T.embedding->d;
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j)
            if (!T.torsor_images.count(TorsorPresentation::zvar(i, j)))
                throw NoEmbedding("missing torsor matrix image " +
                                  TorsorPresentation::zvar(i, j));
    for (const auto& v : B.vars())
        if (!T.coaction.count(v)) throw IllFormedMap("coaction not defined on generator " + v);

    IdealPresentation IB = B.ideal();
    IdealPresentation ICB = mixed_tensor_ideal(C, B);
    IdealPresentation I3 = triple_tensor_ideal(C, B);

    // the coaction must be a ring map
    for (const auto& r : B.relations())
        if (!normal_form(r.substitute(T.coaction), ICB).is_zero())
            throw IllFormedMap("coaction does not preserve relation " + r.str());

    TorsorReport rep;
    rep.lines.push_back({"coaction well-defined", true});

    // base generators are coinvariant: rho(b) = 1 (x) b
    bool coinv = true;
    for (const auto& b : T.base.vars())
        if (!normal_form(T.coaction.at(b) - MultiPoly::var(p, b + kTagR), ICB).is_zero())
            coinv = false;
    rep.lines.push_back({"base coinvariance", coinv});

    // (Delta (x) id)rho = (id (x) rho)rho
    std::map<std::string, MultiPoly> expandL, expandR;
    for (const auto& g : C.vars())
        expandL[g + kTagL] = retag(T.group.comult().at(g), kTagR, kTagM);
    for (const auto& v : B.vars())
        expandR[v + kTagR] = retag(T.coaction.at(v), kTagL, kTagM);
    bool coassoc = true;
    for (const auto& v : B.vars()) {
        const MultiPoly& a = T.coaction.at(v);
        if (!normal_form(a.substitute(expandL) - a.substitute(expandR), I3).is_zero())
            coassoc = false;
    }
    rep.lines.push_back({"coassociativity", coassoc});

    // (eps (x) id)rho = id
    std::map<std::string, MultiPoly> epsL;
    for (const auto& g : C.vars())
        epsL[g + kTagL] = MultiPoly::constant(T.group.counit().at(g));
    for (const auto& v : B.vars()) epsL[v + kTagR] = MultiPoly::var(p, v);
    bool counit = true;
    for (const auto& v : B.vars())
        if (!normal_form(T.coaction.at(v).substitute(epsL) - MultiPoly::var(p, v), IB).is_zero())
            counit = false;
    rep.lines.push_back({"counit", counit});

    // matrix data: Z_ij in B, c_ij in C, H = Z^{-1} via det-inverse * adjugate
    auto Zimg = [&](int i, int j) { return T.torsor_images.at(TorsorPresentation::zvar(i, j)); };
    auto cimg = [&](int i, int j) { return T.embedding->images.at(GroupEmbedding::var(i, j)); };
    std::vector<std::vector<MultiPoly>> Z(d, std::vector<MultiPoly>(d, MultiPoly(p)));
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) Z[i - 1][j - 1] = Zimg(i, j);
    MultiPoly zdet_inv(p);
    if (T.torsor_images.count("D")) {
        zdet_inv = T.torsor_images.at("D");
    } else {
        MultiPoly nd = normal_form(det_matrix(Z, p), IB);
        if (!nd.is_constant() || nd.constant_value().is_zero())
            throw NoEmbedding("determinant-inverse data missing and determinant is not a unit");
        zdet_inv = MultiPoly::constant(nd.constant_value().inv());
    }
    auto adjZ = adjugate(Z, p);
    auto H = [&](int r, int j) { return zdet_inv * adjZ[r - 1][j - 1]; };

    // rho(Z_ij) = sum_r c_ir (x) Z_rj
    bool matrix_coaction = true;
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            MultiPoly rhs(p);
            for (int r = 1; r <= d; ++r)
                rhs = rhs + tag(cimg(i, r), kTagL) * tag(Zimg(r, j), kTagR);
            if (!normal_form(Zimg(i, j).substitute(T.coaction) - rhs, ICB).is_zero())
                matrix_coaction = false;
        }
    rep.lines.push_back({"matrix coaction", matrix_coaction});

    // H is a two-sided inverse of the matrix [Z_ij] in B
    bool inverse_ok = true;
    for (int s = 1; s <= d; ++s)
        for (int j = 1; j <= d; ++j) {
            MultiPoly lr(p), rl(p);
            for (int r = 1; r <= d; ++r) {
                lr = lr + Zimg(s, r) * H(r, j);
                rl = rl + H(s, r) * Zimg(r, j);
            }
            MultiPoly delta =
                s == j ? MultiPoly::constant(CoeffScalar::one(p)) : MultiPoly(p);
            if (!normal_form(lr - delta, IB).is_zero()) inverse_ok = false;
            if (!normal_form(rl - delta, IB).is_zero()) inverse_ok = false;
        }
    rep.lines.push_back({"matrix inverse", inverse_ok});

    // Psi o Psi' = id on x_ij (x) 1:  sum_r rho(Z_ir)(1 (x) H_rj) = c_ij (x) 1
    bool psi_psi_inv = true;
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            MultiPoly acc(p);
            for (int r = 1; r <= d; ++r)
                acc = acc + Zimg(i, r).substitute(T.coaction) * tag(H(r, j), kTagR);
            if (!normal_form(acc - tag(cimg(i, j), kTagL), ICB).is_zero()) psi_psi_inv = false;
        }
    rep.lines.push_back({"Psi after Psi'", psi_psi_inv});

    // Psi' o Psi = id on Z_ij (x) 1 in B (x)_A B
    IdealPresentation IBB = fibered_square_ideal(T);
    bool psi_inv_psi = true;
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            MultiPoly acc(p);
            for (int s = 1; s <= d; ++s) {
                MultiPoly u(p);
                for (int r = 1; r <= d; ++r) u = u + H(s, r) * Zimg(r, j);
                acc = acc + tag(Zimg(i, s), kTagL) * tag(normal_form(u, IB), kTagR);
            }
            if (!normal_form(acc - tag(Zimg(i, j), kTagL), IBB).is_zero()) psi_inv_psi = false;
        }
    rep.lines.push_back({"Psi' after Psi", psi_inv_psi});

    if (B.base() == BaseRing::over_R) {
        rep.lines.push_back({"total flat", B.flat_certified() || is_pi_saturated(B)});
        const AffineAlgebra& G = C;
        rep.lines.push_back({"group flat", G.flat_certified() || is_pi_saturated(G)});
    }
    if (T.point) {
        bool on_torsor = true;
        for (const auto& r : B.relations())
            if (!evaluate_at(r, *T.point, p).is_zero()) on_torsor = false;
        rep.lines.push_back({"marked point", on_torsor});
    }
    return rep;
}

// ------------------------------------------------------------- blow-up

TorsorPresentation blowup_torsor(const TorsorPresentation& T,
                                 const std::map<std::string, MultiPoly>& section, int e) {
    if (e < 0) throw std::invalid_argument("blow-up exponent must be >= 0");
    if (e == 0) return T;
    const uint32_t p = T.p();
    if (T.total.base() != BaseRing::over_R || T.base.base() != BaseRing::over_R)
        throw std::invalid_argument("torsor blow-up requires over-R presentations");
    if (!T.total.flat_certified() && !is_pi_saturated(T.total))
        throw NotFlat("torsor blow-up requires a flat total algebra");

    std::vector<std::string> fvars = T.fiber_vars();
    for (const auto& [v, g] : section) {
        if (!contains(fvars, v))
            throw SectionInvalid("subtorsor section assigns non-fiber variable " + v);
        for (const auto& [m, c] : g.terms()) {
            for (const auto& [w, ex] : m.exponents())
                if (!contains(T.base.vars(), w))
                    throw SectionInvalid("section lift for " + v + " uses non-base variable " + w);
            if (c.valuation() < 0 || !c.den().is_one())
                throw SectionInvalid("section lift for " + v + " has a non-R coefficient");
        }
    }
    auto lift_of = [&](const std::string& v) {
        auto it = section.find(v);
        return it == section.end() ? MultiPoly(p) : it->second;
    };

    // rescale the fiber coordinates in place: v = pi^e v + lift(v)
    std::map<std::string, MultiPoly> sub;
    for (const auto& v : fvars)
        sub[v] = MultiPoly::var(p, v) * CoeffScalar::pi_power(p, e) + lift_of(v);
    std::vector<MultiPoly> rels;
    for (const auto& r : T.total.relations()) {
        MultiPoly s = r.substitute(sub);
        if (!s.is_zero()) rels.push_back(s.pi_normalize().first);
    }
    std::vector<std::pair<std::string, MultiPoly>> inv;
    for (const auto& [n, f] : T.total.inverted()) inv.emplace_back(n, f.substitute(sub));
    AffineAlgebra total =
        flat_closure(AffineAlgebra(BaseRing::over_R, p, T.total.vars(), rels, inv));

    // Lemma hypothesis: the blown-up special fiber must be finite over the base
    FiberResult fib = special_fiber(total);
    if (!is_finite_over(fib.fiber, T.base.vars())) {
        std::string msg = "blown-up special fiber is not finite over the base; relations:";
        for (const auto& r : fib.fiber.relations()) msg += " " + r.str() + ";";
        throw FinitenessGuardFailed(msg);
    }

    // group blown up at the unit, keeping the generator names
    std::map<std::string, std::string> same_names;
    for (const auto& g : T.group.algebra().vars()) same_names[g] = g;
    HopfAlgebra group = blowup_group(T.group, e, same_names);

    // coaction transport: rho'(v) = pi^{-e} (rho(v)[tagged rescalings] - 1 (x) lift(v))
    std::map<std::string, MultiPoly> gsub, subL, subR;
    for (const auto& g : T.group.algebra().vars()) {
        gsub[g] = MultiPoly::var(p, g) * CoeffScalar::pi_power(p, e) +
                  MultiPoly::constant(T.group.counit().at(g));
        subL[g + kTagL] = tag(gsub[g], kTagL);
    }
    for (const auto& v : fvars) subR[v + kTagR] = tag(sub.at(v), kTagR);
    CoeffScalar scale = CoeffScalar::pi_power(p, -e);
    std::map<std::string, MultiPoly> coaction;
    for (const auto& b : T.base.vars()) coaction[b] = T.coaction.at(b);
    for (const auto& v : fvars) {
        MultiPoly r =
            (T.coaction.at(v).substitute(subL).substitute(subR) - tag(lift_of(v), kTagR)) * scale;
        if (r.min_coeff_valuation() < 0)
            throw StructureMapNotTransportable("transported coaction of " + v +
                                               " has negative valuation");
        coaction[v] = r;
    }

    TorsorPresentation out{T.base,      std::move(group), std::move(total),
                           std::move(coaction), std::nullopt, std::nullopt,
                           {}};
    if (T.embedding) {
        GroupEmbedding E = *T.embedding;
        for (auto& [n, img] : E.images) img = img.substitute(gsub);
        out.embedding = std::move(E);
    }
    for (const auto& [z, img] : T.torsor_images) out.torsor_images[z] = img.substitute(sub);
    if (T.point) {
        Section pt = *T.point;
        bool lifts = true;
        for (const auto& v : fvars) {
            CoeffScalar delta = T.point->at(v, p) - evaluate_at(lift_of(v), *T.point, p);
            if (!delta.is_zero() && delta.valuation() < e) {
                lifts = false;
                break;
            }
            pt.assignments[v] = delta * scale;
        }
        if (lifts) out.point = std::move(pt);
    }
    return out;
}

// ------------------------------------------------------------ extension

namespace {

// default constructible placeholder-free holders for the loop state
struct LoopState {
    AffineAlgebra base;
    Section lifted;
    BlowupTrace trace;
};

}  // namespace

ExtensionResult extend_torsor(const AffineAlgebra& X, const Section& x,
                              const TorsorPresentation& T, int max_blowups) {
    const uint32_t p = X.p();
    if (X.base() != BaseRing::over_R)
        throw std::invalid_argument("extension requires an over-R base");
    if (max_blowups < 0) throw std::invalid_argument("max blow-ups must be >= 0");
    validate_section(X, x);
    if (!T.point) throw PointMissing("extension requires a pointed torsor");
    if (!T.embedding || T.torsor_images.empty())
        throw EmbeddingMissing("extension requires GL_d embedding data");
    const int d = T.embedding->d;
    for (const auto& r : T.total.relations())
        if (!evaluate_at(r, *T.point, p).is_zero())
            throw SectionInvalid("the marked point does not lie on the torsor");

    std::vector<std::string> zvars;
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            std::string z = TorsorPresentation::zvar(i, j);
            if (contains(T.total.vars(), z))
                throw UnsupportedParameters("variable name collision with " + z);
            zvars.push_back(z);
        }
    std::vector<std::string> fvars;
    for (const auto& v : T.total.vars())
        if (!contains(X.vars(), v)) fvars.push_back(v);

    // the matrix determinant must reduce to a unit constant; the
    // det-inverse coordinate then carries no information and is dropped
    IdealPresentation IB = T.total.ideal();
    std::vector<std::vector<MultiPoly>> Z(d, std::vector<MultiPoly>(d, MultiPoly(p)));
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            auto it = T.torsor_images.find(TorsorPresentation::zvar(i, j));
            if (it == T.torsor_images.end())
                throw EmbeddingMissing("missing torsor matrix image " +
                                       TorsorPresentation::zvar(i, j));
            Z[i - 1][j - 1] = it->second;
        }
    MultiPoly ndet = normal_form(det_matrix(Z, p), IB);
    if (!ndet.is_constant() || ndet.constant_value().is_zero())
        throw UnsupportedParameters("torsor matrix determinant is not a unit constant");

    // matrix presentation f_n: kernel of K[z_ij] -> B, z_ij -> Z_ij,
    // with pure pi-denominators chased away
    std::vector<std::string> amb = T.total.vars();
    amb.insert(amb.end(), zvars.begin(), zvars.end());
    std::vector<MultiPoly> gens = T.total.relations();
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j)
            gens.push_back(MultiPoly::var(p, TorsorPresentation::zvar(i, j)) - Z[i - 1][j - 1]);
    IdealPresentation fn =
        eliminate(IdealPresentation(std::move(gens), amb, MonomialOrder::degrevlex(amb)), fvars);
    std::vector<MultiPoly> fgens;
    for (const auto& g : fn.generators()) fgens.push_back(g.pi_normalize().first);

    // C'' = flat closure of the group image: f_n specialized at x
    std::map<std::string, MultiPoly> at_x;
    for (const auto& b : X.vars()) at_x[b] = MultiPoly::constant(x.at(b, p));
    std::vector<MultiPoly> cg;
    for (const auto& g : fgens) {
        MultiPoly h = g.substitute(at_x);
        if (!h.is_zero()) cg.push_back(h.pi_normalize().first);
    }
    AffineAlgebra Cpp = flat_closure(AffineAlgebra(BaseRing::over_R, p, zvars, cg));

    for (int e = 0; e <= max_blowups; ++e) {
        LoopState st{flat_closure(X), x, BlowupTrace{}};
        st.trace.center = x;
        if (e > 0) {
            BlowupResult B = neron_blowup(X, x, e);
            st.base = B.algebra;
            st.lifted = section_lifts(x, B);
            st.trace = B.trace;
        }
        std::vector<std::string> tvars = st.base.vars();
        tvars.insert(tvars.end(), zvars.begin(), zvars.end());
        std::vector<MultiPoly> trels = fgens;
        for (const auto& r : st.base.relations()) trels.push_back(r);
        AffineAlgebra total_e =
            flat_closure(AffineAlgebra(BaseRing::over_R, p, tvars, trels));

        // C'(e) = Y''(e) (x)_A' R through the lifted section
        std::map<std::string, MultiPoly> at_l;
        for (const auto& b : st.base.vars()) at_l[b] = MultiPoly::constant(st.lifted.at(b, p));
        std::vector<MultiPoly> cg2;
        for (const auto& r : total_e.relations()) {
            MultiPoly h = r.substitute(at_l);
            if (!h.is_zero()) cg2.push_back(h);
        }
        AffineAlgebra Cprime(BaseRing::over_R, p, zvars, cg2);
        bool cprime_flat = ideal_equal(Cprime.model_ideal(), Cpp.model_ideal());
        bool fiber_finite = is_finite_over(special_fiber(total_e).fiber, st.base.vars());
        if (!(cprime_flat && fiber_finite)) continue;

        // ---- assemble the model presentation ----
        PinnedElimination pe = eliminate_pinned(total_e.relations(), total_e.vars(), zvars);
        AffineAlgebra model_total =
            AffineAlgebra(BaseRing::over_R, p, pe.vars, pe.relations).certified_flat();
        auto zrep = [&](int i, int j) {
            auto it = pe.assignments.find(TorsorPresentation::zvar(i, j));
            return it != pe.assignments.end()
                       ? it->second
                       : MultiPoly::var(p, TorsorPresentation::zvar(i, j));
        };

        // model group: C'' in x_ij coordinates, pinned coordinates eliminated
        std::map<std::string, MultiPoly> z2x;
        std::vector<std::string> gvars;
        for (int i = 1; i <= d; ++i)
            for (int j = 1; j <= d; ++j) {
                z2x[TorsorPresentation::zvar(i, j)] =
                    MultiPoly::var(p, GroupEmbedding::var(i, j));
                gvars.push_back(GroupEmbedding::var(i, j));
            }
        std::vector<MultiPoly> grels;
        for (const auto& r : Cpp.relations()) grels.push_back(r.substitute(z2x));
        PinnedElimination gp = eliminate_pinned(grels, gvars, gvars);
        auto xrep = [&](int i, int j) {
            auto it = gp.assignments.find(GroupEmbedding::var(i, j));
            return it != gp.assignments.end() ? it->second
                                              : MultiPoly::var(p, GroupEmbedding::var(i, j));
        };
        AffineAlgebra galg =
            AffineAlgebra(BaseRing::over_R, p, gp.vars, gp.relations).certified_flat();
        std::vector<std::vector<MultiPoly>> Xm(d, std::vector<MultiPoly>(d, MultiPoly(p)));
        for (int i = 1; i <= d; ++i)
            for (int j = 1; j <= d; ++j) Xm[i - 1][j - 1] = xrep(i, j);
        MultiPoly gdet = normal_form(det_matrix(Xm, p), galg.ideal());
        if (!gdet.is_constant() || gdet.constant_value().is_zero())
            throw UnsupportedParameters("model group determinant is not a unit constant");
        CoeffScalar dinv = gdet.constant_value().inv();
        auto adjX = adjugate(Xm, p);
        std::map<std::string, MultiPoly> gcom, gant;
        std::map<std::string, CoeffScalar> gcnt;
        for (int i = 1; i <= d; ++i)
            for (int j = 1; j <= d; ++j) {
                std::string xv = GroupEmbedding::var(i, j);
                if (!contains(gp.vars, xv)) continue;
                MultiPoly c(p);
                for (int r = 1; r <= d; ++r)
                    c = c + tag(xrep(i, r), kTagL) * tag(xrep(r, j), kTagR);
                gcom[xv] = c;
                gcnt[xv] = i == j ? CoeffScalar::one(p) : CoeffScalar(p);
                gant[xv] = adjX[i - 1][j - 1] * dinv;
            }
        HopfAlgebra model_group(galg, gcom, gcnt, gant);
        GroupEmbedding gemb;
        gemb.d = d;
        for (int i = 1; i <= d; ++i)
            for (int j = 1; j <= d; ++j) gemb.images[GroupEmbedding::var(i, j)] = xrep(i, j);
        gemb.images["D"] = MultiPoly::constant(dinv);

        // coaction of the model: rho(z_ij) = sum_r c_ir (x) Z_rj
        std::map<std::string, MultiPoly> coact;
        for (const auto& b : st.base.vars()) coact[b] = MultiPoly::var(p, b + kTagR);
        for (int i = 1; i <= d; ++i)
            for (int j = 1; j <= d; ++j) {
                std::string zv = TorsorPresentation::zvar(i, j);
                if (!contains(pe.vars, zv)) continue;
                MultiPoly c(p);
                for (int r = 1; r <= d; ++r)
                    c = c + tag(xrep(i, r), kTagL) * tag(zrep(r, j), kTagR);
                coact[zv] = c;
            }

        std::map<std::string, MultiPoly> timg;
        std::vector<std::vector<MultiPoly>> Zm(d, std::vector<MultiPoly>(d, MultiPoly(p)));
        for (int i = 1; i <= d; ++i)
            for (int j = 1; j <= d; ++j) {
                timg[TorsorPresentation::zvar(i, j)] = zrep(i, j);
                Zm[i - 1][j - 1] = zrep(i, j);
            }
        MultiPoly tdet = normal_form(det_matrix(Zm, p), model_total.ideal());
        if (!tdet.is_constant() || tdet.constant_value().is_zero())
            throw UnsupportedParameters("model torsor determinant is not a unit constant");
        timg["D"] = MultiPoly::constant(tdet.constant_value().inv());

        Section mpt;
        for (const auto& b : st.base.vars()) mpt.assignments[b] = st.lifted.at(b, p);
        for (int i = 1; i <= d; ++i)
            for (int j = 1; j <= d; ++j) {
                std::string zv = TorsorPresentation::zvar(i, j);
                if (contains(pe.vars, zv))
                    mpt.assignments[zv] =
                        evaluate_at(T.torsor_images.at(zv), *T.point, p);
            }

        TorsorPresentation model{st.base,          model_group,     model_total,
                                 std::move(coact), std::move(mpt),  std::move(gemb),
                                 std::move(timg)};

        ExtensionResult out{st.base, std::move(model_group), std::move(model_total),
                            st.trace, verify_torsor(model), std::move(model)};
        return out;
    }
    throw MaxBlowupsExceeded("no flat torsor model found within " +
                             std::to_string(max_blowups) + " base blow-ups");
}

// --------------------------------------------------- M-torsor catalog

namespace {

// binomial coefficient in F_p
CoeffScalar binom(uint32_t p, int n, int k) {
    if (k < 0 || k > n) return CoeffScalar(p);
    // Pascal triangle mod p
    std::vector<CoeffScalar> row(static_cast<size_t>(n) + 1, CoeffScalar(p));
    row[0] = CoeffScalar::one(p);
    for (int i = 1; i <= n; ++i)
        for (int j = i; j >= 1; --j) row[j] = row[j] + row[j - 1];
    return row[k];
}

// shared builder for the Artin-Schreier style torsors of Prop. 2.6:
// the total relation in y, the additive coaction y -> y (x) 1 + 1 (x) y
// and the unipotent matrix images C(j-1, i-1) u^{j-i} for u = unit * y.
TorsorPresentation prop26_torsor(const AffineAlgebra& A, const HopfAlgebra& group,
                                 MultiPoly total_rel, const CoeffScalar& u_scale) {
    const uint32_t p = A.p();
    if (A.base() != BaseRing::over_R)
        throw std::invalid_argument("Prop. 2.6 torsors require an over-R base");
    std::vector<std::string> tvars = A.vars();
    tvars.push_back("y");
    std::vector<MultiPoly> trels = A.relations();
    trels.push_back(std::move(total_rel));
    TorsorPresentation T{A,
                         group,
                         AffineAlgebra(BaseRing::over_R, p, tvars, trels).certified_flat(),
                         {},
                         std::nullopt,
                         std::nullopt,
                         {}};
    for (const auto& b : A.vars()) T.coaction[b] = MultiPoly::var(p, b + kTagR);
    T.coaction["y"] = MultiPoly::var(p, std::string("y") + kTagL) +
                      MultiPoly::var(p, std::string("y") + kTagR);
    std::vector<MultiPoly> basis;
    for (uint32_t i = 0; i < p; ++i)
        basis.push_back(MultiPoly::var(p, "y", static_cast<int>(i)) * u_scale.pow(i));
    T.embedding = regular_embedding(group, basis);
    for (uint32_t i = 1; i <= p; ++i)
        for (uint32_t j = 1; j <= p; ++j) {
            MultiPoly img(p);
            if (j >= i)
                img = MultiPoly::var(p, "y", static_cast<int>(j - i)) *
                      (u_scale.pow(j - i) *
                       binom(p, static_cast<int>(j - 1), static_cast<int>(i - 1)));
            T.torsor_images[TorsorPresentation::zvar(static_cast<int>(i),
                                                     static_cast<int>(j))] = img;
        }
    T.torsor_images["D"] = MultiPoly::constant(CoeffScalar::one(p));
    return T;
}

}  // namespace

TorsorPresentation m_torsor_from(const AffineAlgebra& A, const MultiPoly& a, uint32_t p) {
    // A[y] / (pi^{p-1} y^p - y + a) under M(p), matrix variable u = pi*y
    MultiPoly rel = MultiPoly::var(p, "y", static_cast<int>(p)) *
                        CoeffScalar::pi_power(p, static_cast<int>(p) - 1) -
                    MultiPoly::var(p, "y") + a;
    return prop26_torsor(A, m_group(p, "y"), std::move(rel), CoeffScalar::pi_power(p, 1));
}

TorsorPresentation zp_torsor_from(const AffineAlgebra& A, const MultiPoly& a, uint32_t p) {
    // A[y] / (y^p - y + pi*a) under (Z/pZ)_R, matrix variable y itself
    MultiPoly rel = MultiPoly::var(p, "y", static_cast<int>(p)) - MultiPoly::var(p, "y") +
                    a * CoeffScalar::pi_power(p, 1);
    return prop26_torsor(A, constant_group(p, BaseRing::over_R, "y"), std::move(rel),
                         CoeffScalar::one(p));
}

bool m_torsor_roundtrip(const AffineAlgebra& A, const MultiPoly& a, uint32_t p) {
    TorsorPresentation T = zp_torsor_from(A, a, p);
    std::map<std::string, MultiPoly> origin;
    origin["y"] = MultiPoly(p);
    TorsorPresentation blown = blowup_torsor(T, origin, 1);
    TorsorPresentation M = m_torsor_from(A, a, p);
    return ideal_equal(blown.total.model_ideal(), M.total.model_ideal()) &&
           ideal_equal(blown.group.algebra().model_ideal(), M.group.algebra().model_ideal()) &&
           blown.coaction == M.coaction;
}

}  // namespace torsor
