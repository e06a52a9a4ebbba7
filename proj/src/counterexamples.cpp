#include "weightkit/counterexamples.hpp"

#include <sstream>

namespace weightkit {

namespace {

void require_field(const CoeffRing& R, const char* what) {
    if (!R.is_field()) {
        std::ostringstream os;
        os << what << " needs field coefficients, got " << R.name();
        throw UnsupportedRing(os.str());
    }
}

}  // namespace

long long total_homology_dim(const Complex& M) {
    require_field(M.ring, "total homology dimension");
    if (M.is_zero_complex()) return 0;
    auto [jlo, jhi] = homology_range(M);
    long long total = 0;
    for (int j = jlo; j <= jhi; ++j) total += homology(M, j).rank;
    return total;
}

long long total_homology_dim(const TripleObject& M) {
    return total_homology_dim(M.c1) + total_homology_dim(M.c2) + total_homology_dim(M.c3);
}

TripleObject make_triple(Complex c1, Complex c2, Complex c3) {
    if (c1.ring != c2.ring || c2.ring != c3.ring)
        throw RingMismatch("triple components live over different rings");
    require_field(c1.ring, "triple object");
    TripleObject M{std::move(c1), std::move(c2), std::move(c3)};
    if (total_homology_dim(M) % 2 != 0)
        throw InvariantViolation("triple has odd total homology dimension");
    return M;
}

TripleDecomposeResult triple_weight_decompose(const TripleObject& M, int n) {
    TruncationTriangle tr = stupid_truncate(M.c2, n);
    TripleDecomposeResult out;
    out.bound = n;
    out.lower_parity = (total_homology_dim(tr.lower) + total_homology_dim(M.c3)) % 2;
    out.upper_parity = (total_homology_dim(M.c1) + total_homology_dim(tr.upper)) % 2;
    // Additivity of the Euler characteristic across a brutal truncation
    // forces the two parities equal once the total is even.
    if (out.lower_parity != out.upper_parity)
        throw InvariantViolation("truncation sides of a triple have unequal parity");
    if (out.lower_parity == 0) {
        Complex zero = zero_complex(M.c2.ring);
        TripleDecomposition dec{make_triple(zero, tr.lower, M.c3),
                                make_triple(M.c1, tr.upper, zero), tr.incl, tr.proj};
        out.decomposition = std::move(dec);
    } else {
        std::ostringstream os;
        os << "components have odd parity " << out.lower_parity << " and " << out.upper_parity;
        out.obstruction = os.str();
    }
    return out;
}

TripleDegeneracyReport triple_degeneracy_report(const TripleObject& M) {
    TripleDegeneracyReport rep;
    rep.degenerate = is_null_homotopic(id_map(M.c2)).has_value();
    rep.left_parity = total_homology_dim(M.c1) % 2;
    rep.right_parity = total_homology_dim(M.c3) % 2;
    rep.left_component = M.c1;
    rep.right_component = M.c3;
    rep.decomposable_in_category =
        rep.degenerate && rep.left_parity == 0 && rep.right_parity == 0;
    std::ostringstream os;
    if (!rep.degenerate) {
        os << "weight complex is nonzero; not weight-degenerate";
    } else if (rep.decomposable_in_category) {
        os << "weight-degenerate; ambient components have even parity, "
           << "the splitting exists inside the category";
    } else {
        os << "weight-degenerate; ambient components have odd parity " << rep.left_parity
           << " and " << rep.right_parity << ", so no splitting exists inside the category";
    }
    rep.note = os.str();
    return rep;
}

EvenComplex make_even_complex(Complex M) {
    require_field(M.ring, "even-dimensional complex");
    for (int d : M.dims)
        if (d % 2 != 0) throw InvariantViolation("complex has an odd-dimensional term");
    return EvenComplex{std::move(M)};
}

EvenObstructionReport even_obstruction(const EvenComplex& M, int m, int n) {
    if (m > n) throw InvalidRange("weight range has m > n");
    EvenObstructionReport rep;
    rep.m = m;
    rep.n = n;
    rep.without = without_weights(M.underlying, m, n).has_value();
    std::ostringstream os;
    if (!rep.without) {
        os << "not without weights " << m << ".." << n
           << "; no avoiding decomposition exists in any extension";
        rep.note = os.str();
        return rep;
    }
    rep.ambient = avoiding_decomposition(M.underlying, m, n);
    if (!rep.ambient)
        throw InvariantViolation("object without weights has no ambient avoiding decomposition");
    rep.chi_x = euler_char(rep.ambient->x);
    rep.chi_y = euler_char(rep.ambient->y);
    rep.exists_in_category = rep.chi_x % 2 == 0 && rep.chi_y % 2 == 0;
    if (rep.exists_in_category) {
        os << "ambient components have even Euler characteristics " << rep.chi_x << " and "
           << rep.chi_y << "; the avoiding decomposition exists inside the category";
    } else {
        os << "ambient components have Euler characteristics " << rep.chi_x << " and "
           << rep.chi_y << "; odd values cannot arise from even-dimensional terms, so no "
           << "avoiding decomposition exists inside the category";
    }
    rep.note = os.str();
    return rep;
}

TripleObject degenerate_triple_example(CoeffRing field) {
    Complex L = ring_in_degree(field, 0);
    return make_triple(L, zero_complex(field), L);
}

EvenComplex even_without_weight_example(CoeffRing field) {
    Matrix A = Matrix::zero(field, 2, 2);
    A.set(0, 0, elem_one(field));
    Matrix B = Matrix::zero(field, 2, 2);
    B.set(1, 1, elem_one(field));
    return make_even_complex(make_complex(field, -1, {2, 2, 2}, {A, B}));
}

}  // namespace weightkit
