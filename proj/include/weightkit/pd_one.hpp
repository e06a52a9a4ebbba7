#pragma once

// Decision procedures that exploit projective dimension <= 1 over Z (and
// degenerate gracefully over fields): explicit Ext^1 groups, the Hom/Ext
// decomposition of maps in the homotopy category, homology criteria for
// killing single weights / avoiding weight bands / skeleton membership,
// and homology with coefficients in a finitely generated module.

#include "weightkit/complex.hpp"
#include "weightkit/decompose.hpp"

namespace weightkit {

// Ext^1(A, B): over Z this is the direct sum of B/dB over the invariant
// factors d of A; zero over fields (everything is projective).
FgModule ext1(const FgModule& A, const FgModule& B);

struct ExtClass {
    FgModule group;  // ext1(H_{m-1}(src), H_m(tgt))
    Matrix element;  // gens(group) x 1, canonical coordinates

    bool is_zero() const { return element.is_zero(); }
};

struct HomDecomposition {
    FgModule hom_part;  // sum over j of Hom(H_j M, H_j N)
    FgModule ext_part;  // sum over j of Ext^1(H_j M, H_{j+1} N)
    FgModule total;     // hom_group(M, N)
    bool matches = false;  // invariant factors of hom_part + ext_part == total
};
// The two-layer description of maps in the homotopy category: every map is
// a homology map plus an extension class, and nothing else.
HomDecomposition hom_decomposition(const Complex& M, const Complex& N);

// The extension-class component of g between weights m-1 and m: express g
// in block form with respect to the canonical decompositions and read off
// the part running from the torsion pieces of H_{m-1}(src) into the pieces
// presenting H_m(tgt).
ExtClass ext_class_of(const ChainMap& g, int m);

// Whether phi factors through a projective (= free) module. Decision lemma:
// phi factors through a free module iff it annihilates the torsion of its
// source. If it kills torsion it factors through src/torsion, which is
// free; conversely free modules are torsion-free, so any map through one
// sends torsion elements to zero.
bool factors_through_free(const FgModuleMap& phi);

// g kills the single weight m iff H_m(g) = 0, the extension class of g at m
// vanishes, and H_{m-1}(g) factors through a projective. Agrees with
// kills_weights(g, m, m).
bool kill_criterion_pd1(const ChainMap& g, int m);

// M avoids weights m..n iff H_j(M) = 0 for m <= j <= n and H_{m-1}(M) is
// projective. Agrees with without_weights(M, m, n).
bool without_weights_pd1(const Complex& M, int m, int n);

// M lies in w_{<=n} iff H_j(M) = 0 for j > n and H_n(M) is free. Agrees
// with stupid_membership(M, Side::le, n).
bool skeleton_membership(const Complex& M, int n);

// Homology with coefficients: tensor takes H_j(M (x) coeff), hom takes the
// cohomology H^j(Hom(M, coeff)). Both are computed on a complex of free
// modules (a free presentation of coeff spliced into M), so they are also
// functorial in chain maps.
enum class Variance { tensor, hom };
FgModule coefficient_homology(const Complex& M, const FgModule& coeff, int j, Variance v);
// Induced map on coefficient homology. Covariant for tensor; for hom the
// result runs from the coefficient homology of f.tgt to that of f.src.
FgModuleMap coefficient_homology_map(const ChainMap& f, const FgModule& coeff, int j, Variance v);

}  // namespace weightkit
