#pragma once

// Homology, canonical decomposition into elementary pieces, and Hom groups
// in the homotopy category.
//
// Homological indexing: H_j(M) := H^{-j}(M), so a complex concentrated in
// cohomological degree -j has H_j free of its rank there.

#include <map>
#include <vector>

#include "weightkit/complex.hpp"
#include "weightkit/fg_module.hpp"

namespace weightkit {

// H_j(M) presented as a subquotient ker d^{-j} / im d^{-j-1} of the
// degree -j component; exposes class_of and generator lifts.
Subquotient homology_subquotient(const Complex& M, int j);
FgModule homology(const Complex& M, int j);
// Induced map H_j(f): H_j(src) -> H_j(tgt).
FgModuleMap homology_map(const ChainMap& f, int j);
// Degrees with nonzero homology lie within this window of j values.
std::pair<int, int> homology_range(const Complex& M);

struct ElementaryPiece {
    enum class Kind { Free, Torsion };
    Kind kind = Kind::Free;
    int j = 0;          // Free: ring in degree -j. Torsion: R ->d R in degrees -j-1, -j.
    long long d = 0;    // invariant factor, 0 for Free

    bool operator==(const ElementaryPiece& o) const {
        return kind == o.kind && j == o.j && d == o.d;
    }
    // Sort order fixes the layout of the decomposed complex.
    bool operator<(const ElementaryPiece& o) const {
        if (j != o.j) return j > o.j;  // higher j = lower degree first
        if (kind != o.kind) return kind == Kind::Free;
        return d < o.d;
    }
    std::string to_string() const;
};

Complex piece_complex(CoeffRing ring, const ElementaryPiece& p);

struct CanonicalDecomposition {
    std::vector<ElementaryPiece> pieces;   // sorted
    std::map<int, int> contractible_count; // lower degree of the pair -> count
    Complex decomposed;                    // sum of pieces + contractibles
    ChainMap iso;                          // original -> decomposed
    ChainMap iso_inv;                      // strict two-sided inverse
};

// Strict isomorphism onto a sum of elementary pieces and contractible
// two-term complexes, via iterated Smith normal form from the lowest
// degree upward. Needs a ring with SNF.
CanonicalDecomposition canonical_decompose(const Complex& M);

// Chain maps M -> N modulo null-homotopic ones, canonical form.
FgModule hom_group(const Complex& M, const Complex& N);
// Same group with representatives: class_of/lift go through this.
Subquotient hom_subquotient(const Complex& M, const Complex& N);
// Rebuild the chain map encoded by one ambient column of hom_subquotient.
ChainMap hom_element_to_map(const Complex& M, const Complex& N, const Matrix& column);
// Inverse direction: flatten a chain map into that ambient column.
Matrix hom_element_of_map(const ChainMap& f);

}  // namespace weightkit
