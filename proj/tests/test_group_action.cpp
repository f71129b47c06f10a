#include <nilcdga/group_action.hpp>
#include <nilcdga/presets.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace nilcdga;

namespace {

std::vector<std::size_t> sizes(std::initializer_list<std::size_t> l) { return l; }

GradedElement random_element(std::mt19937_64& rng, const CdgaPresentation& p, int degree) {
    GradedElement e(p.table());
    std::uniform_int_distribution<int> coef(-2, 2);
    for (auto m : basis_of_degree(p, degree))
        if (rng() % 5 == 0)
            e.add_term(m, coef(rng));
    return e;
}

IntMatrix random_unimodular(std::mt19937_64& rng) {
    IntMatrix g = to_int_matrix({{1, 0}, {0, 1}});
    for (int s = 0; s < 6; ++s) {
        long f = static_cast<long>(rng() % 5) - 2;
        IntMatrix e = to_int_matrix({{1, 0}, {0, 1}});
        if (rng() % 2)
            e(0, 1) = f;
        else
            e(1, 0) = f;
        g = g * e;
        if (rng() % 3 == 0)
            g.swap_cols(0, 1);
    }
    return g;
}

} // namespace

TEST(GroupAction, RhoOnMIsOrderThreeAutomorphism) {
    auto src = preset("M");
    auto rho = AlgebraAutomorphism::from_source(src, "rho");
    auto r = verify_automorphism(rho);
    EXPECT_TRUE(r.pass());
    EXPECT_EQ(r.computed_order, 3);
    auto id = verify_automorphism(AlgebraAutomorphism::identity(src.presentation));
    EXPECT_TRUE(id.pass());
    EXPECT_EQ(id.computed_order, 1);
    // both sides of the chain-map identity on d(e1), expanded by hand:
    // -b1c1 -> -(b1+b2)(c1+c2), b2c1 -> -b1(c1+c2), b1c2 -> -(b1+b2)c1, 2b2c2 -> 2b1c1
    const auto& p = src.presentation;
    auto expected = parse_element("-b1^c1 - 2*b2^c1 - 2*b1^c2 - b2^c2", src);
    EXPECT_EQ(rho.apply(differential(p, p.generator("e1"))), expected);
    EXPECT_EQ(differential(p, rho.apply(p.generator("e1"))), expected);
}

TEST(GroupAction, BrokenActionsAreReported) {
    auto src = preset("N");
    const auto& p = src.presentation;
    // swapping b1 and c1 does not commute with d
    std::vector<GradedElement> imgs;
    for (std::size_t i = 0; i < p.generator_count(); ++i)
        imgs.push_back(p.generator(i));
    std::swap(imgs[0], imgs[2]);
    AlgebraAutomorphism swap(p, "swap", 2, imgs);
    auto r = verify_automorphism(swap);
    EXPECT_FALSE(r.commutes_with_d);
    EXPECT_FALSE(r.pass());
    EXPECT_THROW(invariant_subcomplex(swap), GroupActionError);
    // wrong declared order
    auto rho = AlgebraAutomorphism::from_source(src, "rho");
    AlgebraAutomorphism wrong(p, "rho2", 2, rho.map().images());
    EXPECT_FALSE(verify_automorphism(wrong).declared_order_is_identity);
}

TEST(GroupAction, ReynoldsProjector) {
    auto src = preset("M");
    auto rho = AlgebraAutomorphism::from_source(src, "rho");
    const auto& p = src.presentation;
    EXPECT_TRUE(reynolds(rho, p.generator("a1")).is_zero());
    EXPECT_EQ(reynolds(rho, *src.find_element("omega")), *src.find_element("omega"));
    for (const char* n : {"xi", "varsigma", "kappa", "sigma", "tau2", "tau3", "theta"})
        EXPECT_EQ(rho.apply(*src.find_element(n)), *src.find_element(n)) << n;
    std::mt19937_64 rng(31);
    for (int i = 0; i < 30; ++i) {
        int k = static_cast<int>(rng() % 8);
        auto x = random_element(rng, p, k);
        auto rx = reynolds(rho, x);
        EXPECT_EQ(reynolds(rho, rx), rx);
        EXPECT_EQ(differential(p, rx), reynolds(rho, differential(p, x)));
    }
}

TEST(GroupAction, InvariantSubcomplexOfM) {
    auto src = preset("M");
    auto rho = AlgebraAutomorphism::from_source(src, "rho");
    auto inv = invariant_subcomplex(rho);
    std::vector<std::size_t> dims;
    for (int k = 0; k <= 8; ++k)
        dims.push_back(inv.dimension(k));
    EXPECT_EQ(dims, sizes({1, 0, 16, 8, 36, 8, 16, 0, 1}));
    EXPECT_EQ(betti_vector(inv), sizes({1, 0, 13, 0, 26, 0, 13, 0, 1}));
    EXPECT_EQ(euler_characteristic(inv), 54);
    EXPECT_EQ(chain_euler_characteristic(inv), 54);
    const std::size_t expected_a[] = {0, 4, 6, 24, 17, 24, 6, 4, 0};
    const std::size_t binom[] = {1, 8, 28, 56, 70, 56, 28, 8, 1};
    for (int k = 0; k <= 8; ++k) {
        auto m = isotypic_multiplicities(rho, k);
        EXPECT_EQ(m.trivial, dims[static_cast<std::size_t>(k)]);
        EXPECT_EQ(m.two_dimensional, expected_a[k]);
        EXPECT_EQ(m.trivial + 2 * m.two_dimensional, binom[k]);
    }
    // two independent computations of the invariant Betti numbers
    auto full = CochainComplex::full(src.presentation);
    for (int k = 0; k <= 8; ++k)
        EXPECT_EQ(invariant_cohomology_dimension(full, rho, k), betti_number(inv, k)) << k;
}

TEST(GroupAction, TrivialActionGivesFullComplex) {
    auto t2 = preset("T2");
    auto inv = invariant_subcomplex(AlgebraAutomorphism::identity(t2.presentation));
    EXPECT_EQ(betti_vector(inv), sizes({1, 2, 1}));
    EXPECT_THROW(isotypic_multiplicities(AlgebraAutomorphism::identity(t2.presentation), 1), GroupActionError);
}

TEST(GroupAction, FixedPoints) {
    auto id = to_int_matrix({{1, 0}, {0, 1}});
    LatticeAction base(standard_rotation3(), id);
    EXPECT_EQ(fixed_point_count(base), 3);
    auto pts = fixed_points(base);
    ASSERT_EQ(pts.size(), 3u);
    EXPECT_EQ(pts[1], std::make_pair(make_rational(1, 3), make_rational(1, 3)));
    EXPECT_EQ(pts[2], std::make_pair(make_rational(2, 3), make_rational(2, 3)));
    LatticeAction fiber(standard_rotation3(), to_int_matrix({{1, 3}, {1, 0}}));
    EXPECT_EQ(fixed_point_count(fiber), 3);
    auto fp = fixed_points(fiber);
    ASSERT_EQ(fp.size(), 3u);
    EXPECT_EQ(fp[0], std::make_pair(Rational(0), Rational(0)));
    EXPECT_EQ(fp[1], std::make_pair(Rational(1), Rational(0)));
    EXPECT_EQ(fp[2], std::make_pair(Rational(2), Rational(0)));
    EXPECT_EQ(product_fixed_point_count(torus_factors_of_m()), 81);
    EXPECT_THROW(fixed_point_count(LatticeAction(id, id)), GroupActionError);
    EXPECT_THROW(LatticeAction(standard_rotation3(), to_int_matrix({{1, 0}, {0, 2}})), GroupActionError);
}

TEST(GroupAction, FixedPointCountIsBasisIndependent) {
    std::mt19937_64 rng(2718);
    for (int i = 0; i < 50; ++i) {
        IntMatrix g = random_unimodular(rng);
        LatticeAction base(standard_rotation3(), g);
        EXPECT_EQ(fixed_point_count(base), 3);
        LatticeAction fiber(standard_rotation3(), to_int_matrix({{1, 3}, {1, 0}}) * g);
        EXPECT_EQ(fixed_point_count(fiber), 3);
        EXPECT_EQ(fixed_points(fiber).size(), 3u);
    }
}

TEST(GroupAction, QuotientEulerAndResolution) {
    EXPECT_EQ(quotient_euler(0, 3, std::vector<long>(81, 3)), Rational(54));
    EXPECT_EQ(quotient_euler(7, 1, {}), Rational(7));
    EXPECT_EQ(quotient_euler(6, 3, {}), Rational(2));
    EXPECT_EQ(resolution_betti2(13, 81), 256);
    EXPECT_EQ(resolution_betti2(5, 0), 5);
    EXPECT_EQ(resolution_betti2(0, 1), 3);
}
