#pragma once

// Null-homotopy, weak homotopy, the interval relations ~_[k,l], and stupid
// weight-class membership. Every decision is one affine linear system over
// the coefficient ring, so all four rings (dual numbers included) are
// supported uniformly.
//
// A weak homotopy between f and g is a decomposition
//     f - g - m0 = d_N x + y d_M
// with x, y independent collections M^i -> N^{i-1} and m0 a chain map
// vanishing on a prescribed degree interval (m0 = 0 when no interval is
// involved). Null-homotopy is the special case x = y, m0 = 0.

#include <optional>

#include "weightkit/complex.hpp"

namespace weightkit {

// Degree bound, possibly infinite. Intervals are clipped to the supports;
// components outside support are zero maps, so clipping loses nothing.
struct Bound {
    bool finite = true;
    int v = 0;
    static Bound at(int v) { return {true, v}; }
    static Bound neg_inf() { return {false, -1}; }
    static Bound pos_inf() { return {false, +1}; }
    bool is_neg_inf() const { return !finite && v < 0; }
    bool is_pos_inf() const { return !finite && v > 0; }
};

struct HomotopyWitness {
    Complex src, tgt;
    int lo = 0;             // degree of x[0]
    std::vector<Matrix> x;  // x[k] : src^{lo+k} -> tgt^{lo+k-1}

    Matrix comp(int i) const;  // zero-materialized outside the stored range
};

struct WeakHomotopyWitness {
    Complex src, tgt;
    int lo = 0;
    std::vector<Matrix> x, y;  // independent collections, same indexing
    ChainMap m0;               // vanishes on the requested interval

    Matrix xcomp(int i) const;
    Matrix ycomp(int i) const;
};

// Exact recomposition checks; every operation verifies before returning,
// and tests re-verify independently.
bool witness_verifies(const ChainMap& f, const HomotopyWitness& w);
bool witness_verifies(const ChainMap& f, const ChainMap& g, const WeakHomotopyWitness& w,
                      Bound k, Bound l);

std::optional<HomotopyWitness> is_null_homotopic(const ChainMap& f);
std::optional<WeakHomotopyWitness> weakly_homotopic(const ChainMap& f, const ChainMap& g);
// f - g weakly homotopic to some chain map m0 with m0^i = 0 for k <= i <= l.
// Requires k <= l, and k finite if k = l.
std::optional<WeakHomotopyWitness> sim_interval(const ChainMap& f, const ChainMap& g,
                                                Bound k, Bound l);

// Factorization solvers in the homotopy category. Both search for a chain
// map u together with a homotopy certifying the triangle:
//   homotopy_lift(p, e):   u : p.src -> e.src  with  e . u ~ p
//   homotopy_extend(p, q): u : q.tgt -> p.tgt  with  u . q ~ p
struct LiftResult {
    ChainMap map;
    HomotopyWitness homotopy;  // certifies p - composite as null-homotopic
};
std::optional<LiftResult> homotopy_lift(const ChainMap& p, const ChainMap& along);
std::optional<LiftResult> homotopy_extend(const ChainMap& p, const ChainMap& along);

enum class Side { le, ge };

// M in K(B)_{w_st <= n}  <=>  id_M ~_[-inf, -n-1] 0;
// M in K(B)_{w_st >= n}  <=>  id_M ~_[-n+1, +inf] 0.
std::optional<WeakHomotopyWitness> stupid_membership(const Complex& M, Side side, int n);

}  // namespace weightkit
