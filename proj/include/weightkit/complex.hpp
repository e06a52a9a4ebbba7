#pragma once

// Bounded cochain complexes of finite-rank free modules and chain maps
// between them.
//
// Conventions, used everywhere downstream:
//   * cohomological (superscript) grading; d^i : M^i -> M^{i+1};
//   * shift: M[n]^i = M^{i+n}, differential scaled by (-1)^n;
//   * cone of f : X -> Y lives on Y^i + X^{i+1} with differential
//     [[d_Y, f], [0, -d_X]], giving the triangle X -> Y -> cone -> X[1].
// Complexes are kept in a trimmed canonical form: no zero-dimensional
// degrees at either end, and the zero complex is always (lo = 0, no
// degrees), so structural equality is meaningful.

#include <vector>

#include "weightkit/matrix.hpp"

namespace weightkit {

struct Complex {
    CoeffRing ring = CoeffRing::integers();
    int lo = 0;
    std::vector<int> dims;     // dims[k] = rank in degree lo + k
    std::vector<Matrix> diffs; // diffs[k] : degree lo+k -> lo+k+1

    int hi() const { return lo + static_cast<int>(dims.size()) - 1; }
    bool is_zero_complex() const { return dims.empty(); }

    int dim(int i) const {
        if (i < lo || i > hi()) return 0;
        return dims[static_cast<size_t>(i - lo)];
    }
    // Differential leaving degree i, zero-extended outside the support.
    Matrix diff(int i) const;

    bool operator==(const Complex& o) const {
        return ring == o.ring && lo == o.lo && dims == o.dims && diffs == o.diffs;
    }
    bool operator!=(const Complex& o) const { return !(*this == o); }
};

// Validates shapes and d.d = 0, then trims zero-width boundary degrees.
Complex make_complex(CoeffRing ring, int lo, std::vector<int> dims, std::vector<Matrix> diffs);
Complex zero_complex(CoeffRing ring);
// The ring in a single degree; building block for fixtures.
Complex ring_in_degree(CoeffRing ring, int degree);

struct ChainMap {
    Complex src, tgt;
    int clo = 0;               // degree of comps[0]
    std::vector<Matrix> comps; // stored on the overlap of the two supports

    // Component in degree i, zero-materialized to shape tgt.dim(i) x src.dim(i).
    Matrix comp(int i) const;
    bool is_zero_map() const;

    bool operator==(const ChainMap& o) const {
        return src == o.src && tgt == o.tgt && clo == o.clo && comps == o.comps;
    }
    bool operator!=(const ChainMap& o) const { return !(*this == o); }
};

// Validates commuting squares d_tgt . f = f . d_src in every degree.
ChainMap make_chain_map(Complex src, Complex tgt, int clo, std::vector<Matrix> comps);
ChainMap id_map(const Complex& M);
ChainMap zero_map(const Complex& src, const Complex& tgt);

ChainMap add(const ChainMap& f, const ChainMap& g);
ChainMap sub(const ChainMap& f, const ChainMap& g);
ChainMap neg(const ChainMap& f);
ChainMap scalar_mul(const Elem& c, const ChainMap& f);
ChainMap compose(const ChainMap& g, const ChainMap& f); // g after f

Complex shift(const Complex& M, int n);
ChainMap shift_map(const ChainMap& f, int n);

struct ConeTriangle {
    Complex cone;
    ChainMap inclusion;  // tgt -> cone
    ChainMap projection; // cone -> src[1]
};
ConeTriangle cone(const ChainMap& f);

Complex direct_sum(const std::vector<Complex>& Ms);
// Structure maps of the sum: the s-th summand into / out of direct_sum(Ms).
ChainMap summand_inclusion(const std::vector<Complex>& Ms, size_t s);
ChainMap summand_projection(const std::vector<Complex>& Ms, size_t s);
// Blockwise sum of maps: src = sum of sources, tgt = sum of targets.
ChainMap direct_sum_map(const std::vector<ChainMap>& fs);

// Alternating sum of component ranks, sum_i (-1)^i dim M^i.
long long euler_char(const Complex& M);

}  // namespace weightkit
