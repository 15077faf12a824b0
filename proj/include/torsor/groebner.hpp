#pragma once

// Buchberger-based ideal arithmetic over K = F_p(pi): reduced bases,
// normal forms, membership, equality, quotient, saturation, elimination.
// The same engine serves the R-model ring k[pi, x_1, ..., x_n] where pi
// is an ordinary variable and coefficients stay constant.

#include <optional>

#include "torsor/poly.hpp"

namespace torsor {

struct ResourceLimit : std::runtime_error {
    explicit ResourceLimit(const std::string& what) : std::runtime_error(what) {}
};

struct GroebnerLimits {
    int degree_cap = 60;
    size_t basis_cap = 5000;
};

// process-wide caps, overridable from the CLI / environment
GroebnerLimits& groebner_limits();

// Finitely generated ideal with a chosen ambient variable list and
// monomial order; the reduced Groebner basis is computed on demand and
// cached (it is unique for the order, so equal ideals cache equal bases).
class IdealPresentation {
public:
    IdealPresentation(std::vector<MultiPoly> gens, std::vector<std::string> ambient,
                      MonomialOrder order)
        : gens_(std::move(gens)), vars_(std::move(ambient)), order_(std::move(order)) {
        for (auto it = gens_.begin(); it != gens_.end();)
            it = it->is_zero() ? gens_.erase(it) : std::next(it);
    }
    IdealPresentation(std::vector<MultiPoly> gens, std::vector<std::string> ambient)
        : IdealPresentation(std::move(gens), ambient, MonomialOrder::degrevlex(ambient)) {}

    const std::vector<MultiPoly>& generators() const { return gens_; }
    const std::vector<std::string>& ambient() const { return vars_; }
    const MonomialOrder& order() const { return order_; }
    uint32_t p() const;
    bool is_zero_ideal() const { return gens_.empty(); }

    const std::vector<MultiPoly>& groebner_basis() const;

    IdealPresentation with_order(MonomialOrder order) const {
        return IdealPresentation(gens_, vars_, std::move(order));
    }
    IdealPresentation with_extra_generator(MultiPoly g) const {
        std::vector<MultiPoly> gens = gens_;
        gens.push_back(std::move(g));
        return IdealPresentation(std::move(gens), vars_, order_);
    }

private:
    std::vector<MultiPoly> gens_;
    std::vector<std::string> vars_;
    MonomialOrder order_;
    mutable std::optional<std::vector<MultiPoly>> basis_;
};

// remainder of multivariate division by the reduced basis; zero iff f in I
MultiPoly normal_form(const MultiPoly& f, const IdealPresentation& I);
bool ideal_contains(const IdealPresentation& I, const MultiPoly& f);
bool ideal_equal(const IdealPresentation& I, const IdealPresentation& J);

// (I : f), computed through the intersection I cap <f>
IdealPresentation ideal_quotient(const IdealPresentation& I, const MultiPoly& f);
// (I : f^inf) via the Rabinowitsch trick and block elimination
IdealPresentation saturate(const IdealPresentation& I, const MultiPoly& f);
// I cap K[remaining variables]
IdealPresentation eliminate(const IdealPresentation& I, const std::vector<std::string>& drop);

// exact division, h known divisible by f
MultiPoly divide_exact(const MultiPoly& h, const MultiPoly& f, const MonomialOrder& ord);

}  // namespace torsor
