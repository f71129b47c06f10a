#include <nilcdga/coordinate_model.hpp>
#include <nilcdga/group_action.hpp>
#include <nilcdga/presets.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace nilcdga;

namespace {

Polynomial random_poly(std::mt19937_64& rng, const SpacePtr& s) {
    Polynomial p = Polynomial::constant(s, static_cast<long>(rng() % 5) - 2);
    for (int t = 0; t < 3; ++t) {
        Polynomial m = Polynomial::constant(s, static_cast<long>(rng() % 7) - 3);
        for (int k = 0; k < 2; ++k)
            if (rng() % 2)
                m = m * Polynomial::variable(s, rng() % s->coordinates);
        p += m;
    }
    return p;
}

PolyForm random_form(std::mt19937_64& rng, const SpacePtr& s, int degree) {
    PolyForm f(s);
    for (int t = 0; t < 3; ++t) {
        std::uint64_t mask = 0;
        while (std::popcount(mask) < degree)
            mask |= std::uint64_t(1) << (rng() % s->coordinates);
        f += random_poly(rng, s) * PolyForm::basis_form(s, mask);
    }
    return f;
}

PolyMap random_map(std::mt19937_64& rng, const SpacePtr& s) {
    PolyMap m{s, {}};
    for (std::size_t i = 0; i < s->coordinates; ++i)
        m.images.push_back(random_poly(rng, s));
    return m;
}

} // namespace

TEST(CoordinateModel, DerivativeOfEta) {
    auto s = coords::translation_space();
    auto forms = coords::generator_forms(s);
    auto dy = [&](const char* n) { return PolyForm::differential_of(s, n); };
    auto expected = Rational(-1) * wedge(dy("y1"), dy("z1")) + wedge(dy("y2"), dy("z1")) + wedge(dy("y1"), dy("z2")) +
                    Rational(2) * wedge(dy("y2"), dy("z2"));
    EXPECT_EQ(d(forms[6]), expected);
    EXPECT_TRUE(d(PolyForm::function(Polynomial::constant(s, 7))).is_zero());
    auto f = Polynomial::variable(s, "v1") * dy("z1");
    EXPECT_TRUE(d(d(f)).is_zero());
    EXPECT_EQ(d(f), wedge(dy("v1"), dy("z1")));
    EXPECT_THROW(PolyForm::differential_of(s, "y1'"), CdgaError);
}

TEST(CoordinateModel, LeftInvariance) {
    auto s = coords::translation_space();
    auto forms = coords::generator_forms(s);
    PolyMap left{s, coords::group_law(coords::point(s, 8), coords::point(s, 0))};
    EXPECT_EQ(pullback(left, forms[2]), forms[2]);
    EXPECT_EQ(pullback(left, forms[6]), forms[6]);
    EXPECT_EQ(pullback(left, forms[7]), forms[7]);
    // the naive v-differential is not invariant
    auto dv = PolyForm::differential_of(s, "v1");
    EXPECT_FALSE(pullback(left, dv) == dv);
}

TEST(CoordinateModel, Equivariance) {
    auto r = verify_equivariance();
    EXPECT_TRUE(r.pass) << r.first_difference;
    PointMap swap_y = [](const coords::Point& p) {
        auto q = p;
        std::swap(q[2], q[3]);
        return q;
    };
    auto bad = verify_equivariance(swap_y);
    EXPECT_FALSE(bad.pass);
    EXPECT_NE(bad.first_difference.find("component v"), std::string::npos);
    auto mod3 = lattice_stability_checks();
    EXPECT_EQ(mod3.size(), 9u);
    EXPECT_TRUE(all_pass(mod3));
}

TEST(CoordinateModel, ChecksAgainstPreset) {
    auto src = preset("M");
    auto rho = AlgebraAutomorphism::from_source(src, "rho");
    auto checks = coordinate_checks(src.presentation, &rho.map().images());
    EXPECT_EQ(checks.size(), 26u);
    for (const auto& c : checks)
        EXPECT_TRUE(c.pass) << c.name << ": " << c.witness;
    EXPECT_THROW(coordinate_checks(preset("N").presentation), CdgaError);
}

TEST(CoordinateModel, WrongStructureEquationIsDetected) {
    auto src = preset("M");
    auto imgs = src.presentation.images();
    imgs[6] = ExactScalar(-1) * imgs[6];
    CdgaPresentation flipped("flipped", src.presentation.table(), imgs);
    auto checks = coordinate_checks(flipped);
    EXPECT_FALSE(checks[6].pass);
    EXPECT_TRUE(checks[7].pass);
}

TEST(CoordinateModel, PropertySuite) {
    std::mt19937_64 rng(99);
    auto s = make_space({"p", "q", "r"});
    for (int t = 0; t < 30; ++t) {
        auto f = random_form(rng, s, static_cast<int>(rng() % 2));
        EXPECT_TRUE(d(d(f)).is_zero());
        auto m1 = random_map(rng, s), m2 = random_map(rng, s);
        EXPECT_EQ(pullback(m1, pullback(m2, f)), pullback(compose(m2, m1), f));
        EXPECT_EQ(d(pullback(m1, f)), pullback(m1, d(f)));
        auto g = random_form(rng, s, 1);
        // Leibniz for a 1-form on the left
        auto h = random_form(rng, s, static_cast<int>(rng() % 2));
        EXPECT_EQ(d(wedge(g, h)), wedge(d(g), h) - wedge(g, d(h)));
        EXPECT_EQ(pullback(PolyMap::identity(s), f), f);
    }
}
