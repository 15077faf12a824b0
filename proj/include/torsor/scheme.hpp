#pragma once

// Affine scheme presentations over R, K and k: sections, fibers, flat
// closure, Neron blow-up at a section, flatness and fiber-finiteness
// tests.  Relations are stored with pi inside the coefficients; ideal
// operations that see R-structure run in the model ring k[pi, x_1, ...]
// where pi is an ordinary variable.

#include "torsor/groebner.hpp"

namespace torsor {

enum class BaseRing { over_R, over_K, over_k };

struct SectionInvalid : std::runtime_error {
    explicit SectionInvalid(const std::string& what) : std::runtime_error(what) {}
};
struct NotFlat : std::runtime_error {
    explicit NotFlat(const std::string& what) : std::runtime_error(what) {}
};
struct DoesNotFactor : std::runtime_error {
    explicit DoesNotFactor(const std::string& what) : std::runtime_error(what) {}
};

class AffineAlgebra {
public:
    AffineAlgebra(BaseRing base, uint32_t p, std::vector<std::string> vars,
                  std::vector<MultiPoly> relations,
                  std::vector<std::pair<std::string, MultiPoly>> inverted = {});

    static AffineAlgebra free_ring(BaseRing base, uint32_t p, std::vector<std::string> vars) {
        return AffineAlgebra(base, p, std::move(vars), {});
    }

    BaseRing base() const { return base_; }
    uint32_t p() const { return p_; }
    const std::vector<std::string>& vars() const { return vars_; }
    const std::vector<MultiPoly>& relations() const { return relations_; }
    const std::vector<std::pair<std::string, MultiPoly>>& inverted() const { return inverted_; }
    bool flat_certified() const { return flat_; }

    // ideal of relations in K-coefficient regime
    IdealPresentation ideal() const;
    // ideal in the model ring, pi adjoined as the smallest variable
    IdealPresentation model_ideal() const;
    // ambient variables of the model ring: vars then pi
    std::vector<std::string> model_vars() const;

    AffineAlgebra with_relations(std::vector<MultiPoly> rels) const {
        AffineAlgebra a = *this;
        a.relations_ = std::move(rels);
        a.flat_ = false;
        return a;
    }
    AffineAlgebra certified_flat() const {
        AffineAlgebra a = *this;
        a.flat_ = true;
        return a;
    }

private:
    BaseRing base_;
    uint32_t p_;
    std::vector<std::string> vars_;
    std::vector<MultiPoly> relations_;
    std::vector<std::pair<std::string, MultiPoly>> inverted_;
    bool flat_ = false;
};

// R-point of an affine R-scheme: variable assignments with valuation >= 0
struct Section {
    std::map<std::string, CoeffScalar> assignments;

    CoeffScalar at(const std::string& v, uint32_t p) const {
        auto it = assignments.find(v);
        return it == assignments.end() ? CoeffScalar(p) : it->second;
    }
};

// throws SectionInvalid unless every relation vanishes and every
// inverted element evaluates to a unit of R
void validate_section(const AffineAlgebra& A, const Section& x);
CoeffScalar evaluate_at(const MultiPoly& f, const Section& x, uint32_t p);

struct BlowupTrace {
    Section center;
    int steps = 0;
    // old variable -> rescaled variable adjoined by the blow-up
    std::vector<std::pair<std::string, std::string>> substitutions;
    std::vector<int> normalization_exponents;  // per original relation
};

struct BlowupResult {
    AffineAlgebra algebra;
    BlowupTrace trace;
};

struct FiberResult {
    AffineAlgebra fiber;
    bool naive = false;  // set when the input was not certified flat
};

AffineAlgebra generic_fiber(const AffineAlgebra& A);
FiberResult special_fiber(const AffineAlgebra& A);

// relations replaced by the pi-saturation; generic fiber unchanged
AffineAlgebra flat_closure(const AffineAlgebra& A);
bool is_pi_saturated(const AffineAlgebra& A);

// Neron blow-up of X at the special fibre of the section x, e-fold.
// Every variable t is rescaled: t = pi^e t' + x(t), with t' named by
// `rename` when provided (defaults to t + "'").
BlowupResult neron_blowup(const AffineAlgebra& X, const Section& x, int e,
                          const std::map<std::string, std::string>& rename = {});

// unique lift of a section through a blow-up; DoesNotFactor when the
// special fibre of the point misses the center
Section section_lifts(const Section& x, const BlowupResult& blown);

// module-finiteness certificate over k: every non-base variable has a
// pure-power leading monomial in the block-order basis
bool is_finite_over(const AffineAlgebra& F, const std::vector<std::string>& base_vars);

// Presentation cleanup: eliminate variables from `candidates` that are
// pinned by a relation of the form  v - g  with v absent from g.
// Deterministic; returns the reduced relation list, surviving vars and
// the value each eliminated variable was pinned to (in surviving vars).
struct PinnedElimination {
    std::vector<MultiPoly> relations;
    std::vector<std::string> vars;
    std::map<std::string, MultiPoly> assignments;
};
PinnedElimination eliminate_pinned(std::vector<MultiPoly> relations,
                                   std::vector<std::string> vars,
                                   const std::vector<std::string>& candidates);

}  // namespace torsor
