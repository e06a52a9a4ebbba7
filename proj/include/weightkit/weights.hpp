#pragma once

// The stupid weight structure on bounded complexes: truncation triangles,
// extension of morphisms across truncations, morphisms killing a range of
// weights, objects without weights, decompositions avoiding weights, and
// weight complexes computed through truncation towers.
//
// Dictionary used throughout: weight i lives in cohomological degree -i, so
// w_{<=n} keeps degrees >= -n (a subcomplex) and w_{>=n+1} is the quotient
// on degrees <= -n-1.

#include <optional>
#include <vector>

#include "weightkit/decompose.hpp"
#include "weightkit/homotopy.hpp"

namespace weightkit {

// The degreewise-split triangle  lower -> M -> upper  of brutal truncations.
struct TruncationTriangle {
    Complex total;
    int bound = 0;    // n
    Complex lower;    // w_{<=n}: degrees >= -n
    Complex upper;    // w_{>=n+1}: degrees <= -n-1
    ChainMap incl;    // lower -> total
    ChainMap proj;    // total -> upper
};
TruncationTriangle stupid_truncate(const Complex& M, int n);

// A morphism of truncation rows: g extended by h on the lower parts and j
// on the upper parts, each square commuting up to the stored homotopy.
struct TruncationDiagram {
    ChainMap g;
    TruncationTriangle row_src, row_tgt;
    ChainMap h;  // row_src.lower -> row_tgt.lower
    ChainMap j;  // row_src.upper -> row_tgt.upper
    HomotopyWitness lower_homotopy;  // certifies g.incl - incl'.h
    HomotopyWitness upper_homotopy;  // certifies proj'.g - j.proj
};
// Always Some when row_src.bound <= row_tgt.bound; h is then unique up to
// homotopy whenever the bounds are strictly ordered.
std::optional<TruncationDiagram> extend_truncation_diagram(const ChainMap& g,
                                                           const TruncationTriangle& row_src,
                                                           const TruncationTriangle& row_tgt);

// The equivalent characterizations of "g kills weights m..n" that the
// decision procedure can witness directly. Numbers match the classical
// numbering of the equivalence.
enum class KillCondition {
    composite = 1,     // w_{<=n}M -> M -> N -> w_{>=m}N is null-homotopic
    factor_lower = 3,  // g.incl factors through w_{<=m-1}N up to homotopy
    factor_upper = 5,  // proj.g factors through w_{>=n+1}M up to homotopy
    completion = 7,    // both rows complete to a morphism of triangles
};

// A user-supplied bound-weight decomposition of incl.tgt: the part lies in
// w_{<=bound} and cone(incl) in w_{>=bound+1} (both certified on use).
struct WeightChoice {
    Complex part;
    ChainMap incl;  // part -> total
    int bound = 0;
};

struct KillCertificate {
    KillCondition condition = KillCondition::composite;
    int m = 0, n = 0;
    std::optional<HomotopyWitness> composite_null;  // condition 1
    std::optional<ChainMap> h;                      // conditions 3, 7
    std::optional<HomotopyWitness> lower_homotopy;
    std::optional<ChainMap> j;                      // conditions 5, 7
    std::optional<HomotopyWitness> upper_homotopy;
};

// Decide whether g kills weights m..n, witnessing the selected condition
// with stupid truncations. All modes agree on every input.
std::optional<KillCertificate> kills_weights(const ChainMap& g, int m, int n,
                                             KillCondition mode = KillCondition::composite);
// Condition-7 completion for supplied decompositions: src_choice must be an
// n-choice for g.src and tgt_choice an (m-1)-choice for g.tgt.
std::optional<KillCertificate> kills_weights(const ChainMap& g, int m, int n,
                                             const WeightChoice& src_choice,
                                             const WeightChoice& tgt_choice);

// id_M kills weights m..n. Decided both through kills_weights and through
// the interval relation id ~_[-n,-m] 0; the two must agree.
std::optional<KillCertificate> without_weights(const Complex& M, int m, int n);

// A weight decomposition avoiding weights m..n: the triangle X -> M -> Y
// with X in w_{<=m-1} and Y in w_{>=n+1}, realized by comparing Y with
// cone(x_incl) through a stored homotopy equivalence.
struct AvoidingDecomposition {
    Complex x, y;
    int m = 0, n = 0;
    ChainMap x_incl;      // X -> M
    ChainMap y_proj;      // M -> Y
    ChainMap connecting;  // Y -> X[1]
    ChainMap cone_compare;            // cone(x_incl) -> Y
    ChainMap cone_compare_inv;        // Y -> cone(x_incl)
    HomotopyWitness compare_cone_id;  // certifies id_cone - inv.compare
    HomotopyWitness compare_y_id;     // certifies id_Y - compare.inv
};
// Some iff M is without weights m..n; built from the canonical
// decomposition, so dual numbers are not supported here.
std::optional<AvoidingDecomposition> avoiding_decomposition(const Complex& M, int m, int n);

// The weight complex of M computed through the tower of truncations
// w_{<=k}M and the cones of its connecting maps. Default choices are the
// stupid truncations; the result is then degreewise isomorphic to M.
// Supplied choices replace individual tower stages (bound inside the
// support weight range, each validated via stupid_membership).
Complex weight_complex_via_tower(const Complex& M);
Complex weight_complex_via_tower(const Complex& M, const std::vector<WeightChoice>& choices);

}  // namespace weightkit
