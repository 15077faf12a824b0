#pragma once

// Torsor presentations and the three core procedures: torsor
// verification (the Psi isomorphism), Neron blow-up of torsors at a
// trivial special-fiber subtorsor, and the full extension algorithm
// (embed into GL_d, flat-close, iterate base blow-ups), plus the
// M-torsor classification.
//
// Tensor conventions: in C (x) B the group variables carry #L and the
// total-ring variables carry #R; B (x)_A B is realized by tagging both
// factors and identifying the base variables.

#include <optional>

#include "torsor/hopf.hpp"

namespace torsor {

struct FinitenessGuardFailed : std::runtime_error {
    explicit FinitenessGuardFailed(const std::string& what) : std::runtime_error(what) {}
};
struct MaxBlowupsExceeded : std::runtime_error {
    explicit MaxBlowupsExceeded(const std::string& what) : std::runtime_error(what) {}
};
struct PointMissing : std::runtime_error {
    explicit PointMissing(const std::string& what) : std::runtime_error(what) {}
};
struct EmbeddingMissing : std::runtime_error {
    explicit EmbeddingMissing(const std::string& what) : std::runtime_error(what) {}
};
struct NoEmbedding : std::runtime_error {
    explicit NoEmbedding(const std::string& what) : std::runtime_error(what) {}
};

struct TorsorPresentation {
    AffineAlgebra base;   // X (over R) or X_eta (over K); vars included in total's
    HopfAlgebra group;    // C
    AffineAlgebra total;  // Y
    // total generator -> MultiPoly in group#L and total#R variables;
    // base generators must be coinvariant (mapped to 1 (x) themselves)
    std::map<std::string, MultiPoly> coaction;
    std::optional<Section> point;
    // GL_d data: group-side matrix coefficients plus the images of the
    // torsor-side matrix coordinates z_ij in the total ring
    std::optional<GroupEmbedding> embedding;
    std::map<std::string, MultiPoly> torsor_images;  // "z11".."zdd" [, "D"]

    uint32_t p() const { return total.p(); }
    std::vector<std::string> fiber_vars() const;

    static std::string zvar(int i, int j) {
        return "z" + std::to_string(i) + std::to_string(j);
    }
};

using TorsorReport = HopfReport;

// Comodule axioms, the matrix form of the coaction, the Psi / Psi'
// inversion identities on generators, and (over R) flatness of total
// and group.  Requires the embedding data (throws NoEmbedding).
TorsorReport verify_torsor(const TorsorPresentation& T);

// Neron blow-up of the torsor at the trivial special-fiber subtorsor
// given by `section` (fiber generator -> lift with R-coefficients in
// the base variables), e-fold, together with the group blown up at the
// unit; coaction and embedding data are transported in place.
// Throws FinitenessGuardFailed when the blown-up special fiber is not
// finite over the base (the Lemma hypothesis), NotFlat when the input
// total is not flat.
TorsorPresentation blowup_torsor(const TorsorPresentation& T,
                                 const std::map<std::string, MultiPoly>& section, int e = 1);

struct ExtensionResult {
    AffineAlgebra model_base;   // X'
    HopfAlgebra model_group;    // G' = closure of G in GL_{d,R}
    AffineAlgebra model_total;  // Y''
    BlowupTrace blowups;
    TorsorReport verification;
    TorsorPresentation model;  // the assembled presentation over R
};

// The extension algorithm: rewrite the pointed generic-fiber torsor T
// in GL_d matrix coordinates, chase denominators, flat-close over R,
// and blow the base up at x one step at a time until the fiber of the
// total at the section equals the flat group closure and the special
// fiber is finite over the blown base.
ExtensionResult extend_torsor(const AffineAlgebra& X, const Section& x,
                              const TorsorPresentation& T, int max_blowups = 32);

// Prop. 2.6 presentations: the M(p)-torsor A[y]/(pi^{p-1} y^p - y + a)
// over base A (over R), with the full embedding data
TorsorPresentation m_torsor_from(const AffineAlgebra& A, const MultiPoly& a, uint32_t p);
// the (Z/pZ)_R-torsor A[y]/(y^p - y + pi a) with the same data
TorsorPresentation zp_torsor_from(const AffineAlgebra& A, const MultiPoly& a, uint32_t p);

// blow the (Z/pZ)_R-torsor with relation y^p - y + pi a up at y = 0 and
// compare with m_torsor_from(a)
bool m_torsor_roundtrip(const AffineAlgebra& A, const MultiPoly& a, uint32_t p);

}  // namespace torsor
