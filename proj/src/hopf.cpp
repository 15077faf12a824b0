#include "torsor/hopf.hpp"

#include <algorithm>
#include <functional>

namespace torsor {

// ------------------------------------------------------------- tagging

static Monomial rename_monomial(const Monomial& m,
                                const std::function<std::string(const std::string&)>& f) {
    Monomial r;
    for (const auto& [v, e] : m.exponents()) r = r * Monomial::var(f(v), e);
    return r;
}

static MultiPoly rename_vars(const MultiPoly& f,
                             const std::function<std::string(const std::string&)>& fn) {
    MultiPoly r(f.p());
    for (const auto& [m, c] : f.terms()) r.add_term(rename_monomial(m, fn), c);
    return r;
}

MultiPoly tag(const MultiPoly& f, const std::string& suffix) {
    return rename_vars(f, [&](const std::string& v) { return v + suffix; });
}

static bool ends_with(const std::string& s, const std::string& suf) {
    return s.size() >= suf.size() && s.compare(s.size() - suf.size(), suf.size(), suf) == 0;
}

MultiPoly retag(const MultiPoly& f, const std::string& from, const std::string& to) {
    return rename_vars(f, [&](const std::string& v) {
        return ends_with(v, from) ? v.substr(0, v.size() - from.size()) + to : v;
    });
}

MultiPoly untag(const MultiPoly& f, const std::string& suffix) {
    return rename_vars(f, [&](const std::string& v) {
        return ends_with(v, suffix) ? v.substr(0, v.size() - suffix.size()) : v;
    });
}

std::vector<std::string> tag_vars(const std::vector<std::string>& vars,
                                  const std::string& suffix) {
    std::vector<std::string> r;
    for (const auto& v : vars) r.push_back(v + suffix);
    return r;
}

// ------------------------------------------------------------ verify

std::string HopfReport::str() const {
    std::string s;
    for (const auto& l : lines) s += l.axiom + ": " + (l.pass ? "pass" : "FAIL") + "\n";
    return s;
}

namespace {

// ideal of the n-fold tensor power: relations tagged once per slot
IdealPresentation tensor_ideal(const AffineAlgebra& A, const std::vector<std::string>& tags) {
    std::vector<std::string> vars;
    std::vector<MultiPoly> gens;
    for (const auto& t : tags) {
        for (const auto& v : A.vars()) vars.push_back(v + t);
        for (const auto& r : A.relations()) gens.push_back(tag(r, t));
    }
    return IdealPresentation(std::move(gens), vars, MonomialOrder::degrevlex(vars));
}

}  // namespace

HopfReport verify_hopf(const HopfAlgebra& H) {
    const AffineAlgebra& A = H.algebra();
    uint32_t p = A.p();
    for (const auto& v : A.vars()) {
        if (!H.comult().count(v) || !H.counit().count(v) || !H.antipode().count(v))
            throw IllFormedMap("structure maps not defined on generator " + v);
    }

    IdealPresentation I = A.ideal();
    IdealPresentation I2 = tensor_ideal(A, {kTagL, kTagR});
    IdealPresentation I3 = tensor_ideal(A, {kTagL, kTagM, kTagR});

    Section eps = H.unit();
    // well-definedness: each structure map must kill the relations
    for (const auto& r : A.relations()) {
        if (!normal_form(r.substitute(H.comult()), I2).is_zero())
            throw IllFormedMap("comultiplication does not preserve relation " + r.str());
        if (!evaluate_at(r, eps, p).is_zero())
            throw IllFormedMap("counit does not preserve relation " + r.str());
        if (!normal_form(r.substitute(H.antipode()), I).is_zero())
            throw IllFormedMap("antipode does not preserve relation " + r.str());
    }

    HopfReport rep;
    rep.lines.push_back({"well-defined", true});

    // (Delta (x) id)Delta = (id (x) Delta)Delta
    std::map<std::string, MultiPoly> expandL, expandR;
    for (const auto& v : A.vars()) {
        expandL[v + kTagL] = retag(H.comult().at(v), kTagR, kTagM);
        expandR[v + kTagR] = retag(H.comult().at(v), kTagL, kTagM);
    }
    bool coassoc = true;
    for (const auto& v : A.vars()) {
        const MultiPoly& a = H.comult().at(v);
        if (!normal_form(a.substitute(expandL) - a.substitute(expandR), I3).is_zero())
            coassoc = false;
    }
    rep.lines.push_back({"coassociativity", coassoc});

    // (eps (x) id)Delta = id = (id (x) eps)Delta
    std::map<std::string, MultiPoly> epsL, epsR;
    for (const auto& v : A.vars()) {
        epsL[v + kTagL] = MultiPoly::constant(H.counit().at(v));
        epsL[v + kTagR] = MultiPoly::var(p, v);
        epsR[v + kTagL] = MultiPoly::var(p, v);
        epsR[v + kTagR] = MultiPoly::constant(H.counit().at(v));
    }
    bool left_counit = true, right_counit = true;
    for (const auto& v : A.vars()) {
        const MultiPoly& a = H.comult().at(v);
        if (!normal_form(a.substitute(epsL) - MultiPoly::var(p, v), I).is_zero())
            left_counit = false;
        if (!normal_form(a.substitute(epsR) - MultiPoly::var(p, v), I).is_zero())
            right_counit = false;
    }
    rep.lines.push_back({"left counit", left_counit});
    rep.lines.push_back({"right counit", right_counit});

    // m(S (x) id)Delta = eps = m(id (x) S)Delta
    std::map<std::string, MultiPoly> convL, convR;
    for (const auto& v : A.vars()) {
        convL[v + kTagL] = H.antipode().at(v);
        convL[v + kTagR] = MultiPoly::var(p, v);
        convR[v + kTagL] = MultiPoly::var(p, v);
        convR[v + kTagR] = H.antipode().at(v);
    }
    bool left_anti = true, right_anti = true;
    for (const auto& v : A.vars()) {
        const MultiPoly& a = H.comult().at(v);
        MultiPoly e = MultiPoly::constant(H.counit().at(v));
        if (!normal_form(a.substitute(convL) - e, I).is_zero()) left_anti = false;
        if (!normal_form(a.substitute(convR) - e, I).is_zero()) right_anti = false;
    }
    rep.lines.push_back({"left antipode", left_anti});
    rep.lines.push_back({"right antipode", right_anti});
    return rep;
}

// ------------------------------------------------------------- catalog

HopfAlgebra constant_group(uint32_t p, BaseRing base, const std::string& var) {
    std::vector<std::string> vars = {var};
    MultiPoly rel = MultiPoly::var(p, var, p) - MultiPoly::var(p, var);
    AffineAlgebra A(base, p, vars, {rel});
    std::map<std::string, MultiPoly> comult, antipode;
    comult[var] = MultiPoly::var(p, var + kTagL) + MultiPoly::var(p, var + kTagR);
    antipode[var] = -MultiPoly::var(p, var);
    std::map<std::string, CoeffScalar> counit;
    counit[var] = CoeffScalar(p);
    return HopfAlgebra(std::move(A), std::move(comult), std::move(counit), std::move(antipode));
}

HopfAlgebra m_group(uint32_t p, const std::string& var) {
    std::vector<std::string> vars = {var};
    MultiPoly rel = MultiPoly::var(p, var, p) * CoeffScalar::pi_power(p, p - 1) -
                    MultiPoly::var(p, var);
    AffineAlgebra A(BaseRing::over_R, p, vars, {rel});
    std::map<std::string, MultiPoly> comult, antipode;
    comult[var] = MultiPoly::var(p, var + kTagL) + MultiPoly::var(p, var + kTagR);
    antipode[var] = -MultiPoly::var(p, var);
    std::map<std::string, CoeffScalar> counit;
    counit[var] = CoeffScalar(p);
    return HopfAlgebra(std::move(A), std::move(comult), std::move(counit), std::move(antipode));
}

HopfAlgebra alpha_group(int alpha) {
    if (alpha < 0) throw UnsupportedParameters("alpha must be >= 0");
    const uint32_t p = 2;
    std::vector<std::string> vars = {"x12"};
    MultiPoly rel = MultiPoly::var(p, "x12", 2) +
                    MultiPoly::var(p, "x12") * CoeffScalar::pi_power(p, alpha);
    AffineAlgebra A(BaseRing::over_R, p, vars, {rel});
    std::map<std::string, MultiPoly> comult, antipode;
    comult["x12"] = MultiPoly::var(p, "x12" + kTagL) + MultiPoly::var(p, "x12" + kTagR);
    antipode["x12"] = -MultiPoly::var(p, "x12");
    std::map<std::string, CoeffScalar> counit;
    counit["x12"] = CoeffScalar(p);
    return HopfAlgebra(std::move(A), std::move(comult), std::move(counit), std::move(antipode));
}

MultiPoly det_matrix(const std::vector<std::vector<MultiPoly>>& m, uint32_t p) {
    size_t d = m.size();
    if (d == 0) return MultiPoly::constant(CoeffScalar::one(p));
    if (d == 1) return m[0][0];
    MultiPoly det(p);
    int sign = 1;
    for (size_t j = 0; j < d; ++j) {
        std::vector<std::vector<MultiPoly>> minor;
        for (size_t i = 1; i < d; ++i) {
            std::vector<MultiPoly> row;
            for (size_t k = 0; k < d; ++k)
                if (k != j) row.push_back(m[i][k]);
            minor.push_back(std::move(row));
        }
        MultiPoly term = m[0][j] * det_matrix(minor, p);
        det = sign > 0 ? det + term : det - term;
        sign = -sign;
    }
    return det;
}

std::vector<std::vector<MultiPoly>> adjugate(const std::vector<std::vector<MultiPoly>>& m,
                                             uint32_t p) {
    size_t d = m.size();
    std::vector<std::vector<MultiPoly>> adj(d, std::vector<MultiPoly>(d, MultiPoly(p)));
    for (size_t i = 0; i < d; ++i) {
        for (size_t j = 0; j < d; ++j) {
            // adj[i][j] = (-1)^{i+j} * minor of m with row j, column i removed
            std::vector<std::vector<MultiPoly>> minor;
            for (size_t r = 0; r < d; ++r) {
                if (r == j) continue;
                std::vector<MultiPoly> row;
                for (size_t c = 0; c < d; ++c)
                    if (c != i) row.push_back(m[r][c]);
                minor.push_back(std::move(row));
            }
            MultiPoly cof = det_matrix(minor, p);
            adj[i][j] = (i + j) % 2 == 0 ? cof : -cof;
        }
    }
    return adj;
}

HopfAlgebra gl_group(int d, uint32_t p, BaseRing base) {
    if (d < 1 || d > 9) throw UnsupportedParameters("GL dimension must be between 1 and 9");
    std::vector<std::string> vars;
    std::vector<std::vector<MultiPoly>> X(d, std::vector<MultiPoly>(d, MultiPoly(p)));
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            vars.push_back(GroupEmbedding::var(i, j));
            X[i - 1][j - 1] = MultiPoly::var(p, GroupEmbedding::var(i, j));
        }
    vars.push_back("D");
    MultiPoly det = det_matrix(X, p);
    MultiPoly rel = MultiPoly::var(p, "D") * det - MultiPoly::constant(CoeffScalar::one(p));
    AffineAlgebra A(base, p, vars, {rel}, {{"D", det}});

    std::map<std::string, MultiPoly> comult, antipode;
    std::map<std::string, CoeffScalar> counit;
    auto adj = adjugate(X, p);
    for (int i = 1; i <= d; ++i)
        for (int j = 1; j <= d; ++j) {
            MultiPoly c(p);
            for (int r = 1; r <= d; ++r)
                c = c + MultiPoly::var(p, GroupEmbedding::var(i, r) + kTagL) *
                            MultiPoly::var(p, GroupEmbedding::var(r, j) + kTagR);
            comult[GroupEmbedding::var(i, j)] = c;
            counit[GroupEmbedding::var(i, j)] =
                i == j ? CoeffScalar::one(p) : CoeffScalar(p);
            antipode[GroupEmbedding::var(i, j)] = MultiPoly::var(p, "D") * adj[i - 1][j - 1];
        }
    comult["D"] = MultiPoly::var(p, "D" + kTagL) * MultiPoly::var(p, "D" + kTagR);
    counit["D"] = CoeffScalar::one(p);
    antipode["D"] = det;
    return HopfAlgebra(std::move(A), std::move(comult), std::move(counit), std::move(antipode));
}

HopfAlgebra builtin(const std::string& name, uint32_t p, int param, BaseRing base) {
    if (name == "constant-Z/p") return constant_group(p, base);
    if (name == "M") return m_group(p);
    if (name == "alpha") {
        if (p != 2) throw UnsupportedParameters("alpha-family requires p = 2");
        return alpha_group(param);
    }
    if (name == "GL") return gl_group(param, p, base);
    throw UnsupportedParameters("unknown builtin group: " + name);
}

// ------------------------------------------------------------- blow-up

HopfAlgebra blowup_group(const HopfAlgebra& G, int e,
                         const std::map<std::string, std::string>& rename) {
    const AffineAlgebra& A = G.algebra();
    if (A.base() != BaseRing::over_R)
        throw std::invalid_argument("group blow-up requires an over-R presentation");
    if (e < 0) throw std::invalid_argument("blow-up exponent must be >= 0");
    if (e == 0) return G;
    uint32_t p = A.p();
    validate_section(A, G.unit());

    // t = pi^e t' + eps(t); present directly in the rescaled generators
    std::vector<std::string> new_vars;
    std::map<std::string, std::string> names;
    for (const auto& t : A.vars()) {
        auto it = rename.find(t);
        std::string tn = it == rename.end() ? t + "'" : it->second;
        new_vars.push_back(tn);
        names[t] = tn;
    }
    std::map<std::string, MultiPoly> subst;
    for (const auto& t : A.vars())
        subst[t] = MultiPoly::var(p, names[t]) * CoeffScalar::pi_power(p, e) +
                   MultiPoly::constant(G.counit().at(t));
    std::vector<MultiPoly> rels;
    for (const auto& r : A.relations()) {
        MultiPoly s = r.substitute(subst);
        if (!s.is_zero()) rels.push_back(s.pi_normalize().first);
    }
    std::vector<std::pair<std::string, MultiPoly>> inverted;
    for (const auto& [n, f] : A.inverted()) inverted.emplace_back(n, f.substitute(subst));
    AffineAlgebra blown =
        flat_closure(AffineAlgebra(BaseRing::over_R, p, new_vars, rels, inverted));

    // transport the structure maps through the substitution:
    //   Delta'(t') = pi^{-e} (Delta(t)[u -> pi^e u' + eps(u)] - eps(t))
    std::map<std::string, MultiPoly> substL, substR, comult, antipode;
    std::map<std::string, CoeffScalar> counit;
    for (const auto& t : A.vars()) {
        substL[t + kTagL] = tag(subst[t], kTagL);
        substR[t + kTagR] = tag(subst[t], kTagR);
    }
    CoeffScalar scale = CoeffScalar::pi_power(p, -e);
    for (const auto& t : A.vars()) {
        MultiPoly eps = MultiPoly::constant(G.counit().at(t));
        MultiPoly dm =
            (G.comult().at(t).substitute(substL).substitute(substR) - tag(eps, kTagL)) * scale;
        MultiPoly sm = (G.antipode().at(t).substitute(subst) - eps) * scale;
        if (dm.min_coeff_valuation() < 0 || sm.min_coeff_valuation() < 0)
            throw StructureMapNotTransportable(
                "transported structure map of " + t + " has negative valuation");
        comult[names[t]] = dm;
        antipode[names[t]] = sm;
        counit[names[t]] = CoeffScalar(p);
    }
    return HopfAlgebra(std::move(blown), std::move(comult), std::move(counit),
                       std::move(antipode));
}

// ------------------------------------------------------------ embedding

namespace {

// rows of a linear system over K: scalar coefficients plus a
// polynomial right-hand side
struct SolveRow {
    std::vector<CoeffScalar> a;
    MultiPoly rhs;
};

// Gauss-Jordan; returns the d solutions, throws when the scalar part is
// rank-deficient (NotABasis) or the system is inconsistent
std::vector<MultiPoly> solve_rows(std::vector<SolveRow> rows, size_t d, uint32_t p) {
    size_t rank = 0;
    for (size_t col = 0; col < d; ++col) {
        size_t pivot = rank;
        while (pivot < rows.size() && rows[pivot].a[col].is_zero()) ++pivot;
        if (pivot == rows.size())
            throw NotABasis("basis elements are linearly dependent modulo the ideal");
        std::swap(rows[rank], rows[pivot]);
        CoeffScalar inv = rows[rank].a[col].inv();
        for (size_t k = 0; k < d; ++k) rows[rank].a[k] = rows[rank].a[k] * inv;
        rows[rank].rhs = rows[rank].rhs * inv;
        for (size_t r = 0; r < rows.size(); ++r) {
            if (r == rank || rows[r].a[col].is_zero()) continue;
            CoeffScalar f = rows[r].a[col];
            for (size_t k = 0; k < d; ++k)
                rows[r].a[k] = rows[r].a[k] - f * rows[rank].a[k];
            rows[r].rhs = rows[r].rhs - rows[rank].rhs * f;
        }
        ++rank;
    }
    for (size_t r = rank; r < rows.size(); ++r)
        if (!rows[r].rhs.is_zero())
            throw DimensionMismatch("coaction does not land in the span of the basis");
    std::vector<MultiPoly> sol;
    for (size_t i = 0; i < d; ++i) sol.push_back(rows[i].rhs);
    (void)p;
    return sol;
}

}  // namespace

GroupEmbedding regular_embedding(const HopfAlgebra& C, const std::vector<MultiPoly>& basis) {
    const AffineAlgebra& A = C.algebra();
    uint32_t p = A.p();
    size_t d = basis.size();
    if (d < 1 || d > 9) throw UnsupportedParameters("basis size must be between 1 and 9");

    IdealPresentation I = A.ideal();
    IdealPresentation I2 = tensor_ideal(A, {kTagL, kTagR});

    std::vector<MultiPoly> nf;
    for (const auto& b : basis) nf.push_back(normal_form(b, I));

    // every monomial the reduced basis touches, in a fixed order
    std::vector<Monomial> mons;
    auto note = [&](const Monomial& m) {
        if (std::find(mons.begin(), mons.end(), m) == mons.end()) mons.push_back(m);
    };
    for (const auto& f : nf)
        for (const auto& [m, c] : f.terms()) note(m);

    // matrix coefficients c_ij from Delta(b_j) = sum_i c_ij (x) b_i
    std::vector<std::vector<MultiPoly>> coeffs(d, std::vector<MultiPoly>(d, MultiPoly(p)));
    for (size_t j = 0; j < d; ++j) {
        MultiPoly db = normal_form(basis[j].substitute(C.comult()), I2);
        // split each term into its left-factor polynomial and its
        // right-factor monomial
        std::map<Monomial, MultiPoly> right_parts;
        for (const auto& [m, c] : db.terms()) {
            Monomial ml, mr;
            for (const auto& [v, e] : m.exponents()) {
                if (ends_with(v, kTagL))
                    ml = ml * Monomial::var(v.substr(0, v.size() - kTagL.size()), e);
                else if (ends_with(v, kTagR))
                    mr = mr * Monomial::var(v.substr(0, v.size() - kTagR.size()), e);
                else
                    throw DimensionMismatch("comultiplication image has an untagged variable " +
                                            v);
            }
            auto it = right_parts.emplace(mr, MultiPoly(p)).first;
            it->second.add_term(ml, c);
            note(mr);
        }
        std::vector<SolveRow> rows;
        for (const auto& m : mons) {
            SolveRow row{{}, MultiPoly(p)};
            for (size_t i = 0; i < d; ++i) row.a.push_back(nf[i].coeff(m));
            auto it = right_parts.find(m);
            if (it != right_parts.end()) row.rhs = it->second;
            rows.push_back(std::move(row));
        }
        std::vector<MultiPoly> col = solve_rows(std::move(rows), d, p);
        for (size_t i = 0; i < d; ++i) coeffs[i][j] = col[i];
    }

    // double check the decomposition modulo the tensor ideal
    for (size_t j = 0; j < d; ++j) {
        MultiPoly recon(p);
        for (size_t i = 0; i < d; ++i)
            recon = recon + tag(coeffs[i][j], kTagL) * tag(basis[i], kTagR);
        if (!normal_form(recon - basis[j].substitute(C.comult()), I2).is_zero())
            throw DimensionMismatch("matrix-coefficient decomposition failed to reproduce Delta");
    }

    GroupEmbedding E;
    E.d = static_cast<int>(d);
    for (size_t i = 0; i < d; ++i)
        for (size_t j = 0; j < d; ++j)
            E.images[GroupEmbedding::var(static_cast<int>(i) + 1, static_cast<int>(j) + 1)] =
                coeffs[i][j];

    // det-inverse solved inside the span of the basis
    MultiPoly det = det_matrix(coeffs, p);
    std::vector<SolveRow> rows;
    std::vector<MultiPoly> prod;
    for (size_t i = 0; i < d; ++i) prod.push_back(normal_form(det * basis[i], I));
    MultiPoly one = normal_form(MultiPoly::constant(CoeffScalar::one(p)), I);
    for (const auto& f : prod)
        for (const auto& [m, c] : f.terms()) note(m);
    for (const auto& [m, c] : one.terms()) note(m);
    for (const auto& m : mons) {
        SolveRow row{{}, MultiPoly(p)};
        for (size_t i = 0; i < d; ++i) row.a.push_back(prod[i].coeff(m));
        row.rhs = MultiPoly::constant(one.coeff(m));
        rows.push_back(std::move(row));
    }
    std::vector<MultiPoly> lambda;
    try {
        lambda = solve_rows(std::move(rows), d, p);
    } catch (const NotABasis&) {
        throw DimensionMismatch("determinant is not invertible in the span of the basis");
    }
    MultiPoly dinv(p);
    for (size_t i = 0; i < d; ++i) {
        if (!lambda[i].is_constant())
            throw DimensionMismatch("det-inverse coordinates are not scalars");
        dinv = dinv + basis[i] * lambda[i].constant_value();
    }
    E.images["D"] = dinv;
    return E;
}

bool verify_embedding(const HopfAlgebra& C, const GroupEmbedding& E) {
    const AffineAlgebra& A = C.algebra();
    uint32_t p = A.p();
    IdealPresentation I = A.ideal();
    IdealPresentation I2 = tensor_ideal(A, {kTagL, kTagR});
    Section eps = C.unit();
    int d = E.d;
    auto img = [&](int i, int j) { return E.images.at(GroupEmbedding::var(i, j)); };
    for (int i = 1; i <= d; ++i) {
        for (int j = 1; j <= d; ++j) {
            // Delta(c_ij) = sum_r c_ir (x) c_rj
            MultiPoly rhs(p);
            for (int r = 1; r <= d; ++r)
                rhs = rhs + tag(img(i, r), kTagL) * tag(img(r, j), kTagR);
            if (!normal_form(img(i, j).substitute(C.comult()) - rhs, I2).is_zero()) return false;
            // eps(c_ij) = delta_ij
            CoeffScalar want = i == j ? CoeffScalar::one(p) : CoeffScalar(p);
            if (!(evaluate_at(img(i, j), eps, p) == want)) return false;
            // sum_r S(c_ir) c_rj = delta_ij
            MultiPoly conv(p);
            for (int r = 1; r <= d; ++r)
                conv = conv + img(i, r).substitute(C.antipode()) * img(r, j);
            if (!normal_form(conv - MultiPoly::constant(want), I).is_zero()) return false;
        }
    }
    // det-inverse is grouplike
    const MultiPoly& dv = E.images.at("D");
    if (!normal_form(dv.substitute(C.comult()) - tag(dv, kTagL) * tag(dv, kTagR), I2).is_zero())
        return false;
    MultiPoly det = det_matrix(
        [&] {
            std::vector<std::vector<MultiPoly>> m(d, std::vector<MultiPoly>(d, MultiPoly(p)));
            for (int i = 1; i <= d; ++i)
                for (int j = 1; j <= d; ++j) m[i - 1][j - 1] = img(i, j);
            return m;
        }(),
        p);
    return normal_form(dv * det - MultiPoly::constant(CoeffScalar::one(p)), I).is_zero();
}

}  // namespace torsor
