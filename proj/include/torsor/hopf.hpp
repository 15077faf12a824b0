#pragma once

// Hopf-algebra presentations of affine group schemes, axiom
// verification, the built-in group catalog, group blow-up at the unit
// of the special fiber, and GL_d embeddings via matrix coefficients.
//
// Tensor powers are realized by variable tagging: x (x) 1 becomes the
// variable x#L, 1 (x) x becomes x#R, and the middle slot of a triple
// tensor is x#M.  The '#' makes tagged names unparseable, so they can
// never collide with user input.

#include "torsor/scheme.hpp"

namespace torsor {

struct IllFormedMap : std::runtime_error {
    explicit IllFormedMap(const std::string& what) : std::runtime_error(what) {}
};
struct UnsupportedParameters : std::runtime_error {
    explicit UnsupportedParameters(const std::string& what) : std::runtime_error(what) {}
};
struct StructureMapNotTransportable : std::runtime_error {
    explicit StructureMapNotTransportable(const std::string& what) : std::runtime_error(what) {}
};
struct NotABasis : std::runtime_error {
    explicit NotABasis(const std::string& what) : std::runtime_error(what) {}
};
struct DimensionMismatch : std::runtime_error {
    explicit DimensionMismatch(const std::string& what) : std::runtime_error(what) {}
};

inline const std::string kTagL = "#L";
inline const std::string kTagR = "#R";
inline const std::string kTagM = "#M";

// rename every variable v -> v + suffix
MultiPoly tag(const MultiPoly& f, const std::string& suffix);
// rename every variable ending in `from` so it ends in `to` instead
MultiPoly retag(const MultiPoly& f, const std::string& from, const std::string& to);
// strip one suffix layer: v + suffix -> v  (other variables unchanged)
MultiPoly untag(const MultiPoly& f, const std::string& suffix);
std::vector<std::string> tag_vars(const std::vector<std::string>& vars,
                                  const std::string& suffix);

class HopfAlgebra {
public:
    HopfAlgebra(AffineAlgebra algebra, std::map<std::string, MultiPoly> comult,
                std::map<std::string, CoeffScalar> counit,
                std::map<std::string, MultiPoly> antipode)
        : algebra_(std::move(algebra)), comult_(std::move(comult)), counit_(std::move(counit)),
          antipode_(std::move(antipode)) {}

    const AffineAlgebra& algebra() const { return algebra_; }
    const std::map<std::string, MultiPoly>& comult() const { return comult_; }
    const std::map<std::string, CoeffScalar>& counit() const { return counit_; }
    const std::map<std::string, MultiPoly>& antipode() const { return antipode_; }
    uint32_t p() const { return algebra_.p(); }

    // the unit section, read off the counit
    Section unit() const {
        Section s;
        for (const auto& [v, c] : counit_) s.assignments[v] = c;
        return s;
    }

    HopfAlgebra with_algebra(AffineAlgebra a) const {
        return HopfAlgebra(std::move(a), comult_, counit_, antipode_);
    }

private:
    AffineAlgebra algebra_;
    std::map<std::string, MultiPoly> comult_;
    std::map<std::string, CoeffScalar> counit_;
    std::map<std::string, MultiPoly> antipode_;
};

struct HopfReport {
    struct Line {
        std::string axiom;
        bool pass;
    };
    std::vector<Line> lines;

    bool pass() const {
        for (const auto& l : lines)
            if (!l.pass) return false;
        return true;
    }
    std::string str() const;
};

// Checks coassociativity, the two counit identities and the two
// antipode convolution identities modulo the defining ideal.  Throws
// IllFormedMap when a structure map fails to send a defining relation
// into the target ideal (the quotient maps would not exist).
HopfReport verify_hopf(const HopfAlgebra& H);

// ------------------------------------------------------------- catalog

// (Z/pZ) = K[x]/(x^p - x), additive coproduct
HopfAlgebra constant_group(uint32_t p, BaseRing base, const std::string& var = "x");
// M(p) = R[y]/(pi^{p-1} y^p - y), the unit-component model of (Z/pZ)_K
HopfAlgebra m_group(uint32_t p, const std::string& var = "y");
// R[x12]/(x12^2 + pi^alpha x12) over R, p = 2
HopfAlgebra alpha_group(int alpha);
// GL(d): x11..xdd and the inverted determinant D
HopfAlgebra gl_group(int d, uint32_t p, BaseRing base);
// dispatcher: name in {constant-Z/p, M, alpha, GL}
HopfAlgebra builtin(const std::string& name, uint32_t p, int param, BaseRing base);

// ------------------------------------------------------------- blow-up

// Neron blow-up of G at the unit of its special fiber, e-fold, with the
// structure maps transported through t = pi^e t' + eps(t) and
// pi-normalized.  `rename` maps old generators to the new names
// (default t + "'").
HopfAlgebra blowup_group(const HopfAlgebra& G, int e,
                         const std::map<std::string, std::string>& rename = {});

// ------------------------------------------------------------ embedding

struct GroupEmbedding {
    int d = 0;
    // "x11".."xdd" and "D" (the inverted determinant) -> images in the
    // group's generators
    std::map<std::string, MultiPoly> images;

    static std::string var(int i, int j) {
        return "x" + std::to_string(i) + std::to_string(j);
    }
};

// Matrix coefficients of the regular representation on the given
// K-basis: Delta(b_j) = sum_i c_ij (x) b_i, embedding images
// x_ij -> c_ij, det-inverse solved inside the span of the basis.
GroupEmbedding regular_embedding(const HopfAlgebra& C, const std::vector<MultiPoly>& basis);

// Delta-compatibility, counit and antipode-sum identities of an
// embedding, all modulo the group's ideal
bool verify_embedding(const HopfAlgebra& C, const GroupEmbedding& E);

// Laplace expansion; m must be square
MultiPoly det_matrix(const std::vector<std::vector<MultiPoly>>& m, uint32_t p);
// adj * m = det(m) * I
std::vector<std::vector<MultiPoly>> adjugate(const std::vector<std::vector<MultiPoly>>& m,
                                             uint32_t p);

}  // namespace torsor
