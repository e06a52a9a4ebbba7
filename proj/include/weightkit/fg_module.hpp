#pragma once

// Finitely generated modules in invariant-factor form, and subquotients
// L/R of a free ambient module presented by explicit generator lattices.
// Everything homological in the library (homology groups, hom groups,
// coefficient homology) funnels through Subquotient, so the canonical
// form logic lives in exactly one place.

#include <optional>
#include <string>
#include <vector>

#include "weightkit/linalg.hpp"

namespace weightkit {

struct FgModule {
    CoeffRing ring;
    int rank = 0;
    // Invariant factors > 1 with d1 | d2 | ...; empty over fields.
    std::vector<long long> torsion;

    bool is_zero() const { return rank == 0 && torsion.empty(); }
    int gens() const { return rank + static_cast<int>(torsion.size()); }
    // Order of the i-th canonical generator: 0 for free, d for torsion.
    long long gen_order(int i) const {
        return i < rank ? 0 : torsion[static_cast<size_t>(i - rank)];
    }

    bool operator==(const FgModule& o) const {
        return ring == o.ring && rank == o.rank && torsion == o.torsion;
    }
    bool operator!=(const FgModule& o) const { return !(*this == o); }

    std::string to_string() const;
};

FgModule fg_zero(CoeffRing ring);
FgModule fg_free(CoeffRing ring, int rank);
// Canonicalize a direct sum of cyclic modules: order 0 means a free
// summand, order >= 1 the cyclic module R/(o). Over fields every nonzero
// order is a unit, so only the zero orders survive (as free summands).
FgModule fg_from_orders(CoeffRing ring, int rank, const std::vector<long long>& orders);
FgModule fg_direct_sum(const FgModule& a, const FgModule& b);
// Hom(A, B) as an abstract module (Z and fields).
FgModule fg_hom(const FgModule& A, const FgModule& B);

// L/R where L is spanned by the columns of `gens` inside ring^n and R by
// the columns of `rels` (each of which must lie in L). Ring must admit SNF.
class Subquotient {
public:
    Subquotient(const Matrix& gens, const Matrix& rels);

    const FgModule& module() const { return module_; }
    const CoeffRing& ring() const { return ring_; }
    int ambient_dim() const { return basis_.rows(); }

    // Canonical coordinates of an ambient vector (or several, columnwise):
    // rank free rows followed by torsion rows reduced mod their orders.
    // Throws InvariantViolation if a column is not in L.
    Matrix class_of(const Matrix& v) const;

    // Ambient representative of the i-th canonical generator.
    Matrix lift_generator(int i) const;

private:
    CoeffRing ring_;
    FgModule module_;
    Matrix basis_;        // n x k, basis of L
    Matrix gen_transform_;     // k x k, y = U * (coords in basis)
    Matrix gen_transform_inv_;
    std::vector<int> coord_rows_;  // for each canonical generator, its row in y
};

struct FgModuleMap {
    FgModule src, tgt;
    // Action on canonical generators: gens(tgt) x gens(src). Torsion rows
    // reduced mod their orders at construction.
    Matrix action;

    bool is_zero() const { return action.is_zero(); }
    bool operator==(const FgModuleMap& o) const {
        return src == o.src && tgt == o.tgt && action == o.action;
    }
};

// Validates well-definedness: a generator of order d must map to a class
// annihilated by d.
FgModuleMap make_fg_module_map(const FgModule& src, const FgModule& tgt, Matrix action);
FgModuleMap fg_map_zero(const FgModule& src, const FgModule& tgt);
FgModuleMap compose(const FgModuleMap& g, const FgModuleMap& f);  // g after f

}  // namespace weightkit
