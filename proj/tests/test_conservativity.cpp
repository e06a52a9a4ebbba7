#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "weightkit/conservativity.hpp"

using namespace weightkit;

namespace {

const CoeffRing E2 = CoeffRing::dual_numbers(2);
const CoeffRing E3 = CoeffRing::dual_numbers(3);
const CoeffRing F2 = CoeffRing::prime_field(2);

Matrix one_by_one(const CoeffRing& R, Elem e) {
    Matrix m = Matrix::zero(R, 1, 1);
    m.set(0, 0, e);
    return m;
}
// (R --e--> R) in degrees (-1, 0).
Complex fix_Me() { return make_complex(E2, -1, {1, 1}, {one_by_one(E2, Elem{0, 1})}); }
// (R --1+e--> R) in degrees (0, 1): contractible since 1+e is a unit.
Complex fix_Mu() { return make_complex(E2, 0, {1, 1}, {one_by_one(E2, Elem{1, 1})}); }

}  // namespace

TEST_CASE("reduction of complexes") {
    Complex red = reduce_mod_eps(fix_Me());
    CHECK(red == make_complex(F2, -1, {1, 1}, {Matrix::zero(F2, 1, 1)}));
    CHECK(red.dims == fix_Me().dims);
    CHECK(red.lo == fix_Me().lo);

    Complex m3 = make_complex(E3, 0, {1, 1}, {one_by_one(E3, Elem{2, 1})});
    Complex red3 = reduce_mod_eps(m3);
    CHECK(red3.ring == CoeffRing::prime_field(3));
    CHECK(red3.diff(0).at(0, 0) == Elem{2, 0});

    CHECK(reduce_mod_eps(zero_complex(E2)) == zero_complex(F2));
    CHECK_THROWS_AS(reduce_mod_eps(ring_in_degree(CoeffRing::integers(), 0)), UnsupportedRing);
    CHECK_THROWS_AS(reduce_mod_eps(ring_in_degree(F2, 0)), UnsupportedRing);
}

TEST_CASE("reduction is a functor") {
    Complex Me = fix_Me();
    ChainMap idr = reduce_mod_eps(id_map(Me));
    CHECK(idr == id_map(reduce_mod_eps(Me)));

    // f = (1+e, 1), g = (e, 0): both commute with the differential e.
    ChainMap f = make_chain_map(Me, Me, -1, {one_by_one(E2, Elem{1, 1}), one_by_one(E2, Elem{1, 0})});
    ChainMap g = make_chain_map(Me, Me, -1, {one_by_one(E2, Elem{0, 1}), Matrix::zero(E2, 1, 1)});
    CHECK(reduce_mod_eps(compose(g, f)) == compose(reduce_mod_eps(g), reduce_mod_eps(f)));
    CHECK(reduce_mod_eps(compose(f, f)) == compose(reduce_mod_eps(f), reduce_mod_eps(f)));
    CHECK(reduce_mod_eps(f).comp(-1).is_identity());
    CHECK(reduce_mod_eps(g).is_zero_map());
}

TEST_CASE("kernel of the reduction is square-zero") {
    // Exhaustive over 2x2 matrices with entries in (e), p = 2.
    for (int mask = 0; mask < 16; ++mask) {
        Matrix A = Matrix::zero(E2, 2, 2);
        for (int k = 0; k < 4; ++k)
            A.set(k / 2, k % 2, Elem{0, (mask >> k) & 1});
        CHECK(reduce_entries_mod_eps(A).is_zero());
        CHECK(mul(A, A).is_zero());
    }
    Matrix B = Matrix::zero(E3, 2, 2);
    B.set(0, 1, Elem{0, 2});
    B.set(1, 0, Elem{0, 1});
    CHECK(mul(B, B).is_zero());

    ChainMap g = make_chain_map(fix_Me(), fix_Me(), -1,
                                {one_by_one(E2, Elem{0, 1}), Matrix::zero(E2, 1, 1)});
    CHECK(compose(g, g).is_zero_map());
}

TEST_CASE("reduction is weight-exact") {
    std::vector<Complex> family{fix_Me(), fix_Mu(), direct_sum({fix_Me(), shift(fix_Me(), 2)}),
                                direct_sum({fix_Mu(), ring_in_degree(E2, -2)})};
    for (const Complex& M : family) {
        Complex F = reduce_mod_eps(M);
        CHECK(F.lo == M.lo);
        CHECK(F.dims == M.dims);
        for (int n = -3; n <= 3; ++n) {
            CHECK(stupid_membership(M, Side::le, n).has_value() ==
                  stupid_membership(F, Side::le, n).has_value());
            CHECK(stupid_membership(M, Side::ge, n).has_value() ==
                  stupid_membership(F, Side::ge, n).has_value());
        }
    }
}

TEST_CASE("conservativity reports") {
    Complex Mu = fix_Mu();  // weights -1, 0; contractible
    for (auto [m, n] : std::vector<std::pair<int, int>>{{-1, -1}, {-1, 0}, {0, 0}}) {
        ConservativityReport rep = conservativity_check(Mu, m, n);
        CHECK(rep.reduced_without);
        CHECK(rep.original_without);
        CHECK(!rep.vacuous);
        CHECK(rep.reduced_witness.has_value());
        CHECK(rep.original_witness.has_value());
    }

    ConservativityReport keep = conservativity_check(ring_in_degree(E2, 0), 0, 0);
    CHECK(!keep.reduced_without);
    CHECK(!keep.original_without);
    CHECK(keep.vacuous);

    // The naive degree-0 term is nonzero, yet weight 0 is avoided on both
    // sides of the reduction.
    Complex P = direct_sum({fix_Mu(), ring_in_degree(E2, -2)});
    for (auto [m, n] : std::vector<std::pair<int, int>>{{0, 0}, {-1, 0}}) {
        ConservativityReport rep = conservativity_check(P, m, n);
        CHECK(rep.reduced_without);
        CHECK(rep.original_without);
        CHECK(P.dim(0) == 1);
    }

    ConservativityReport me = conservativity_check(fix_Me(), 0, 0);
    CHECK(!me.reduced_without);
    CHECK(!me.original_without);
    CHECK(me.vacuous);

    Complex m3 = make_complex(E3, 0, {1, 1}, {one_by_one(E3, Elem{1, 2})});
    ConservativityReport r3 = conservativity_check(m3, -1, 0);
    CHECK(r3.reduced_without);
    CHECK(r3.original_without);

    CHECK_THROWS_AS(conservativity_check(Mu, 1, 0), InvalidRange);
    CHECK_THROWS_AS(conservativity_check(ring_in_degree(F2, 0), 0, 0), UnsupportedRing);
}
