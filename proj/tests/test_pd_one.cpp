#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "weightkit/homotopy.hpp"
#include "weightkit/pd_one.hpp"
#include "weightkit/weights.hpp"

using namespace weightkit;

namespace {

const CoeffRing Z = CoeffRing::integers();
const CoeffRing Q = CoeffRing::rationals();

Complex fix_S() { return ring_in_degree(Z, 0); }
Complex fix_T2() { return make_complex(Z, -1, {1, 1}, {Matrix::from_rows(Z, {{2}})}); }
Complex fix_T4() { return make_complex(Z, -1, {1, 1}, {Matrix::from_rows(Z, {{4}})}); }
Complex fix_Pb(CoeffRing R) {
    return make_complex(R, -1, {2, 2, 2},
                        {Matrix::from_rows(R, {{1, 0}, {0, 0}}),
                         Matrix::from_rows(R, {{0, 0}, {0, 1}})});
}
Complex fix_W() { return direct_sum({shift(fix_S(), 1), shift(fix_S(), -1)}); }
Complex fix_Me() {
    CoeffRing E = CoeffRing::dual_numbers(2);
    Matrix eps = Matrix::zero(E, 1, 1);
    eps.set(0, 0, Elem{0, 1});
    return make_complex(E, 0, {1, 1}, {eps});
}
ChainMap fix_fT() {
    return make_chain_map(fix_T2(), shift(fix_S(), 1), -1, {Matrix::from_rows(Z, {{1}})});
}
ChainMap fix_g4() {
    return make_chain_map(fix_T4(), shift(fix_S(), 1), -1, {Matrix::from_rows(Z, {{1}})});
}
ChainMap fix_f1() {
    Complex Pb = fix_Pb(Z);
    return make_chain_map(Pb, Pb, -1,
                          {Matrix::zero(Z, 2, 2), Matrix::from_rows(Z, {{0, 0}, {0, 1}}),
                           Matrix::identity(Z, 2)});
}
ChainMap times(long long c, const ChainMap& f) { return scalar_mul(elem_from_int(f.src.ring, c), f); }

FgModule cyc(long long d) { return fg_from_orders(Z, 0, {d}); }

}  // namespace

TEST_CASE("explicit first extension groups") {
    CHECK(ext1(cyc(2), fg_free(Z, 1)) == cyc(2));
    CHECK(ext1(fg_free(Z, 1), cyc(12)).is_zero());
    CHECK(ext1(fg_free(Z, 3), fg_free(Z, 2)).is_zero());
    CHECK(ext1(cyc(6), cyc(4)) == cyc(2));
    CHECK(ext1(cyc(4), fg_from_orders(Z, 1, {6})) == fg_from_orders(Z, 0, {4, 2}));
    CHECK(ext1(fg_zero(Z), cyc(5)).is_zero());
    CHECK(ext1(fg_from_orders(Q, 0, {}), fg_free(Q, 2)).is_zero());
    CHECK_THROWS_AS(ext1(fg_free(Z, 1), fg_free(Q, 1)), RingMismatch);
    auto E = CoeffRing::dual_numbers(2);
    CHECK_THROWS_AS(ext1(fg_free(E, 1), fg_free(E, 1)), UnsupportedRing);
}

TEST_CASE("hom groups split into a hom part and an ext part") {
    Complex S = fix_S();
    Complex T2 = fix_T2();
    Complex S1 = shift(S, 1);

    HomDecomposition a = hom_decomposition(T2, S1);
    CHECK(a.hom_part.is_zero());
    CHECK(a.ext_part == cyc(2));
    CHECK(a.total == cyc(2));
    CHECK(a.matches);

    HomDecomposition b = hom_decomposition(S, S);
    CHECK(b.hom_part == fg_free(Z, 1));
    CHECK(b.ext_part.is_zero());
    CHECK(b.matches);

    HomDecomposition c = hom_decomposition(T2, T2);
    CHECK(c.hom_part == cyc(2));
    CHECK(c.ext_part.is_zero());
    CHECK(c.matches);

    std::vector<Complex> fam{S, T2, fix_T4(), fix_W(), fix_Pb(Z), shift(T2, 1)};
    for (const Complex& M : fam) {
        for (const Complex& N : fam) {
            CHECK(hom_decomposition(M, N).matches);
        }
    }
    for (const Complex& M : {fix_Pb(Q), shift(fix_Pb(Q), -1)}) {
        for (const Complex& N : {fix_Pb(Q), shift(fix_Pb(Q), -1)}) {
            HomDecomposition d = hom_decomposition(M, N);
            CHECK(d.matches);
            CHECK(d.ext_part.is_zero());
        }
    }
    CHECK_THROWS_AS(hom_decomposition(fix_Me(), fix_Me()), UnsupportedRing);
}

TEST_CASE("extension class of a morphism") {
    ChainMap fT = fix_fT();
    ChainMap g4 = fix_g4();

    ExtClass e = ext_class_of(fT, 1);
    CHECK(e.group == cyc(2));
    CHECK(!e.is_zero());
    CHECK(e.element.at(0, 0).a == 1);

    CHECK(ext_class_of(zero_map(fT.src, fT.tgt), 1).is_zero());
    CHECK(ext_class_of(fT, 0).group.is_zero());
    CHECK(ext_class_of(id_map(fix_T2()), 1).group.is_zero());

    // Scaling walks through Z/4: only multiples of 4 die.
    CHECK(ext_class_of(g4, 1).group == cyc(4));
    CHECK(!ext_class_of(g4, 1).is_zero());
    ExtClass e2 = ext_class_of(times(2, g4), 1);
    CHECK(!e2.is_zero());
    CHECK(e2.element.at(0, 0).a == 2);
    CHECK(ext_class_of(times(4, g4), 1).is_zero());

    CHECK(ext_class_of(id_map(fix_Pb(Q)), 0).group.is_zero());
    CHECK_THROWS_AS(ext_class_of(id_map(fix_Me()), 0), UnsupportedRing);
}

TEST_CASE("factoring module maps through projectives") {
    FgModule Z2 = cyc(2);
    FgModule ZZ2 = fg_from_orders(Z, 1, {2});
    FgModule Zf = fg_free(Z, 1);

    CHECK(!factors_through_free(make_fg_module_map(Z2, Z2, Matrix::identity(Z, 1))));
    CHECK(factors_through_free(make_fg_module_map(ZZ2, Zf, Matrix::from_rows(Z, {{1, 0}}))));
    CHECK(factors_through_free(make_fg_module_map(Zf, Z2, Matrix::from_rows(Z, {{1}}))));
    CHECK(!factors_through_free(make_fg_module_map(Z2, cyc(4), Matrix::from_rows(Z, {{2}}))));
    CHECK(factors_through_free(fg_map_zero(Z2, Z2)));
}

TEST_CASE("single-weight kill criterion by homology") {
    ChainMap fT = fix_fT();
    ChainMap g4 = fix_g4();
    Complex S = fix_S();

    CHECK(kill_criterion_pd1(fT, 0));
    CHECK(!kill_criterion_pd1(fT, 1));
    CHECK(!kill_criterion_pd1(times(2, id_map(S)), 0));
    CHECK(!kill_criterion_pd1(times(2, g4), 1));
    CHECK(kill_criterion_pd1(times(4, g4), 1));

    std::vector<ChainMap> fam{fT,
                              g4,
                              times(2, g4),
                              times(4, g4),
                              id_map(fix_T2()),
                              times(2, id_map(fix_T2())),
                              fix_f1(),
                              id_map(S),
                              times(2, id_map(S)),
                              zero_map(fix_T2(), shift(S, 1)),
                              id_map(fix_W()),
                              id_map(fix_Pb(Q)),
                              times(2, id_map(fix_Pb(Q)))};
    for (const ChainMap& g : fam) {
        for (int m = -2; m <= 2; ++m) {
            CHECK(kill_criterion_pd1(g, m) == kills_weights(g, m, m).has_value());
        }
    }
    CHECK_THROWS_AS(kill_criterion_pd1(id_map(fix_Me()), 0), UnsupportedRing);
}

TEST_CASE("weight-band avoidance by homology") {
    Complex S = fix_S();
    Complex T2 = fix_T2();
    Complex W = fix_W();

    CHECK(!without_weights_pd1(T2, 1, 1));
    CHECK(without_weights_pd1(W, 0, 0));
    CHECK(without_weights_pd1(S, 1, 5));

    for (const Complex& M : {S, T2, fix_T4(), W, fix_Pb(Z), fix_Pb(Q)}) {
        for (int m = -2; m <= 2; ++m) {
            for (int n = m; n <= 2; ++n) {
                CHECK(without_weights_pd1(M, m, n) == without_weights(M, m, n).has_value());
            }
        }
    }
    CHECK_THROWS_AS(without_weights_pd1(S, 1, 0), InvalidRange);
    CHECK_THROWS_AS(without_weights_pd1(fix_Me(), 0, 0), UnsupportedRing);
}

TEST_CASE("skeleton membership by homology") {
    Complex S = fix_S();
    Complex T2 = fix_T2();

    CHECK(!skeleton_membership(T2, 0));
    CHECK(skeleton_membership(T2, 1));
    CHECK(skeleton_membership(S, 0));
    CHECK(!skeleton_membership(shift(S, 1), 0));

    for (const Complex& M : {S, T2, fix_T4(), fix_W(), fix_Pb(Z), shift(T2, -1), fix_Pb(Q)}) {
        for (int n = -2; n <= 2; ++n) {
            CHECK(skeleton_membership(M, n) == stupid_membership(M, Side::le, n).has_value());
        }
    }

    // Mirror criterion has no freeness clause: w_{>=0} is plain vanishing.
    for (const Complex& M : {S, T2, fix_T4(), fix_W(), fix_Pb(Z), shift(S, 1), shift(S, -1)}) {
        bool vanish = true;
        for (int j = homology_range(M).first; j < 0; ++j) vanish = vanish && homology(M, j).is_zero();
        CHECK(stupid_membership(M, Side::ge, 0).has_value() == vanish);
    }
    CHECK_THROWS_AS(skeleton_membership(fix_Me(), 0), UnsupportedRing);
}

TEST_CASE("homology with coefficients") {
    Complex S = fix_S();
    Complex T2 = fix_T2();

    CHECK(coefficient_homology(T2, cyc(2), 0, Variance::tensor) == cyc(2));
    CHECK(coefficient_homology(T2, cyc(2), 1, Variance::tensor) == cyc(2));
    CHECK(coefficient_homology(T2, cyc(3), 1, Variance::tensor).is_zero());
    CHECK(coefficient_homology(S, cyc(6), 0, Variance::tensor) == cyc(6));
    CHECK(coefficient_homology(S, fg_from_orders(Z, 2, {4}), 0, Variance::tensor) ==
          fg_from_orders(Z, 2, {4}));
    CHECK(coefficient_homology(T2, cyc(2), 1, Variance::hom) == cyc(2));
    CHECK(coefficient_homology(T2, fg_free(Z, 1), 1, Variance::hom) == cyc(2));
    CHECK(coefficient_homology(T2, fg_free(Z, 1), 0, Variance::hom).is_zero());

    Complex PbQ = fix_Pb(Q);
    for (int j = -2; j <= 2; ++j) {
        CHECK(coefficient_homology(PbQ, fg_free(Q, 1), j, Variance::tensor) == homology(PbQ, j));
    }

    // Functoriality: identities induce identities, and the induced map of fT
    // on mod-2 homology in degree 0 is the zero map Z/2 -> 0.
    FgModuleMap idm = coefficient_homology_map(id_map(T2), cyc(2), 1, Variance::tensor);
    CHECK(idm.src == cyc(2));
    CHECK(idm.action.is_identity());
    FgModuleMap fm = coefficient_homology_map(fix_fT(), cyc(2), 0, Variance::tensor);
    CHECK(fm.src == cyc(2));
    CHECK(fm.tgt.is_zero());
    CHECK(fm.is_zero());

    CHECK_THROWS_AS(coefficient_homology(T2, fg_from_orders(Q, 1, {}), 0, Variance::tensor),
                    RingMismatch);
    CHECK_THROWS_AS(coefficient_homology(fix_Me(), fg_free(CoeffRing::dual_numbers(2), 1), 0,
                                         Variance::tensor),
                    UnsupportedRing);
}

TEST_CASE("killing a weight silences every pure coefficient functor") {
    std::vector<std::pair<ChainMap, int>> killers{
        {fix_fT(), 0},           {fix_f1(), 0},
        {fix_f1(), 1},           {times(2, id_map(fix_T2())), 0},
        {times(2, id_map(fix_T2())), 1}, {times(4, fix_g4()), 1}};
    std::vector<FgModule> gamma{fg_free(Z, 1), cyc(2), cyc(3), cyc(4), cyc(8), cyc(16)};
    for (const auto& [g, m] : killers) {
        REQUIRE(kills_weights(g, m, m).has_value());
        for (const FgModule& G : gamma) {
            CHECK(coefficient_homology_map(g, G, m, Variance::hom).is_zero());
        }
    }
}

TEST_CASE("weakly homotopic maps agree on coefficient homology") {
    Complex Pb = fix_Pb(Z);
    ChainMap f1 = fix_f1();
    // Perturb by z . d for a degree -1 map z with d z d = 0: weakly null.
    ChainMap f2 = make_chain_map(Pb, Pb, -1,
                                 {Matrix::zero(Z, 2, 2), Matrix::from_rows(Z, {{0, 1}, {0, 1}}),
                                  Matrix::identity(Z, 2)});
    REQUIRE(weakly_homotopic(f1, f2).has_value());
    std::vector<FgModule> gamma{fg_free(Z, 1), cyc(2), cyc(6)};
    for (const FgModule& G : gamma) {
        for (int j = -2; j <= 2; ++j) {
            CHECK(coefficient_homology_map(f1, G, j, Variance::tensor) ==
                  coefficient_homology_map(f2, G, j, Variance::tensor));
            CHECK(coefficient_homology_map(f1, G, j, Variance::hom) ==
                  coefficient_homology_map(f2, G, j, Variance::hom));
        }
    }
}
