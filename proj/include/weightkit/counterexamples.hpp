#pragma once

// Two parity-constrained homotopy categories whose hearts are not
// idempotent complete, so weight decompositions that exist in the ambient
// category can fail to exist inside:
//   * triples (c1, c2, c3) of bounded complexes over one field whose total
//     homology dimension is even, with truncation acting on the middle;
//   * complexes of even-dimensional spaces over a field.
// In both, the only obstruction is a parity count, and the reports below
// compute it.

#include <optional>
#include <string>

#include "weightkit/weights.hpp"

namespace weightkit {

// ---- triples with even total homology dimension ---------------------------

struct TripleObject {
    Complex c1, c2, c3;
};
// Validates the common field and the even-parity membership condition.
TripleObject make_triple(Complex c1, Complex c2, Complex c3);

// Sum over all degrees of dim H^i; defined over fields only.
long long total_homology_dim(const Complex& M);
long long total_homology_dim(const TripleObject& M);

// One weight decomposition attempt following the middle-component recipe
//   (0, w_{<=n}c2, c3) -> M -> (c1, w_{>=n+1}c2, 0).
// The two sides always have equal parity; both lie in the category exactly
// when that parity is even.
struct TripleDecomposition {
    TripleObject lower, upper;
    ChainMap middle_incl;  // lower.c2 -> M.c2
    ChainMap middle_proj;  // M.c2 -> upper.c2
};
struct TripleDecomposeResult {
    int bound = 0;                                 // n
    long long lower_parity = 0, upper_parity = 0;  // total homology dim mod 2
    std::optional<TripleDecomposition> decomposition;
    std::string obstruction;  // set when the decomposition is absent
};
TripleDecomposeResult triple_weight_decompose(const TripleObject& M, int n);

// The weight complex of a triple vanishes iff the middle component is
// contractible. The ambient Karoubian category then splits M into a
// left-degenerate part (c1, 0, 0) and a right part (0, 0, c3); the split
// exists inside the category iff both parities are even.
struct TripleDegeneracyReport {
    bool degenerate = false;
    long long left_parity = 0, right_parity = 0;  // dim H(c1), dim H(c3) mod 2
    Complex left_component;                       // the c1 slot
    Complex right_component;                      // the c3 slot
    bool decomposable_in_category = false;
    std::string note;
};
TripleDegeneracyReport triple_degeneracy_report(const TripleObject& M);

// ---- complexes of even-dimensional spaces ----------------------------------

struct EvenComplex {
    Complex underlying;
};
// Validates the field and that every term has even dimension.
EvenComplex make_even_complex(Complex M);

// Euler characteristics of any avoiding decomposition are homotopy
// invariants, and every complex of even-dimensional spaces has even Euler
// characteristic; an odd component therefore bars the decomposition from
// the category even when the ambient one exists.
struct EvenObstructionReport {
    int m = 0, n = 0;
    bool without = false;           // underlying is without weights m..n
    long long chi_x = 0, chi_y = 0; // Euler characteristics of the ambient parts
    bool exists_in_category = false;
    std::optional<AvoidingDecomposition> ambient;
    std::string note;
};
EvenObstructionReport even_obstruction(const EvenComplex& M, int m, int n);

// ---- ready-made instances ---------------------------------------------------

// (L in degree 0, 0, L in degree 0): weight-degenerate with odd ambient
// parities, so no splitting inside the triple category.
TripleObject degenerate_triple_example(CoeffRing field);
// The three-step staircase L^2 -> L^2 -> L^2 in degrees -1..1: without
// weight 0, but both ambient avoiding components have odd Euler
// characteristic.
EvenComplex even_without_weight_example(CoeffRing field);

}  // namespace weightkit
