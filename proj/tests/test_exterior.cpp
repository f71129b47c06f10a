#include <nilcdga/exterior.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace nilcdga;

namespace {

TablePtr abc_table() { return make_table({"a", "b", "c", "d", "e", "f"}); }

GradedElement random_element(std::mt19937_64& rng, const TablePtr& t, int degree) {
    auto basis = basis_of_degree(t->size(), degree);
    GradedElement e(t);
    std::uniform_int_distribution<int> coef(-3, 3);
    for (auto m : basis)
        if (rng() % 3 == 0)
            e.add_term(m, coef(rng));
    return e;
}

// Independent reference: sign of a permutation sorting the concatenated list.
int reference_sign(const std::vector<std::size_t>& a, const std::vector<std::size_t>& b) {
    std::vector<std::size_t> all(a);
    all.insert(all.end(), b.begin(), b.end());
    int inv = 0;
    for (std::size_t i = 0; i < all.size(); ++i)
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            if (all[i] == all[j])
                return 0;
            if (all[i] > all[j])
                ++inv;
        }
    return inv % 2 ? -1 : 1;
}

} // namespace

TEST(Monomial, OrderingIsDegreeThenLex) {
    auto b = basis_of_degree(4, 2);
    ASSERT_EQ(b.size(), 6u);
    std::vector<std::vector<std::size_t>> expect{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    for (std::size_t i = 0; i < b.size(); ++i) {
        EXPECT_EQ(b[i].indices(), expect[i]);
        if (i > 0)
            EXPECT_TRUE(b[i - 1] < b[i]);
    }
    EXPECT_TRUE(Monomial::from_indices({3}) < Monomial::from_indices({0, 1}));
}

TEST(Monomial, BasisSizesAreBinomial) {
    std::size_t expected[] = {1, 8, 28, 56, 70, 56, 28, 8, 1};
    for (int k = 0; k <= 8; ++k)
        EXPECT_EQ(basis_of_degree(8, k).size(), expected[k]);
    EXPECT_TRUE(basis_of_degree(8, 9).empty());
}

TEST(Monomial, WedgeSignMatchesPermutationParity) {
    std::mt19937_64 rng(5);
    for (int i = 0; i < 500; ++i) {
        std::uint64_t a = rng() & 0xFFF, b = rng() & 0xFFF;
        Monomial ma(a), mb(b);
        EXPECT_EQ(wedge_sign(ma, mb), reference_sign(ma.indices(), mb.indices()));
    }
}

TEST(Element, DegreeOfZeroAndInhomogeneous) {
    auto t = abc_table();
    GradedElement z(t);
    EXPECT_FALSE(z.degree().has_value());
    auto x = GradedElement::generator(t, "a") + wedge(GradedElement::generator(t, "b"), GradedElement::generator(t, "c"));
    EXPECT_FALSE(x.is_homogeneous());
    EXPECT_THROW(x.degree(), CdgaError);
    EXPECT_THROW(bar(x), CdgaError);
}

TEST(Element, WedgeAcrossTablesThrows) {
    auto t1 = abc_table();
    auto t2 = make_table({"x", "y"});
    EXPECT_THROW(wedge(GradedElement::generator(t1, 0), GradedElement::generator(t2, 0)), CdgaError);
}

TEST(Element, GradedCommutativityAndAssociativity) {
    std::mt19937_64 rng(11);
    auto t = abc_table();
    for (int i = 0; i < 200; ++i) {
        int p = rng() % 4, q = rng() % 4, r = rng() % 3;
        auto x = random_element(rng, t, p), y = random_element(rng, t, q), z = random_element(rng, t, r);
        GradedElement yx = wedge(y, x);
        if ((p * q) % 2)
            yx = -yx;
        EXPECT_EQ(wedge(x, y), yx);
        EXPECT_EQ(wedge(wedge(x, y), z), wedge(x, wedge(y, z)));
        EXPECT_EQ(wedge(x + y, z), wedge(x, z) + wedge(y, z));
    }
}

TEST(Element, OddElementsSquareToZero) {
    std::mt19937_64 rng(12);
    auto t = abc_table();
    for (int i = 0; i < 100; ++i) {
        auto x = random_element(rng, t, 1 + 2 * (rng() % 2));
        EXPECT_TRUE(wedge(x, x).is_zero());
    }
}

TEST(Element, CanonicalString) {
    auto t = abc_table();
    auto a = GradedElement::generator(t, "a"), b = GradedElement::generator(t, "b");
    auto e = ExactScalar(-1) * wedge(a, b) + ExactScalar::rational(2, 3) * wedge(b, GradedElement::generator(t, "c"));
    EXPECT_EQ(e.str(), "-1*a^b + 2/3*b^c");
    EXPECT_EQ(GradedElement(t).str(), "0");
}

namespace {

CdgaPresentation heisenberg_like() {
    auto t = make_table({"x", "y", "z"});
    auto x = GradedElement::generator(t, "x"), y = GradedElement::generator(t, "y");
    return CdgaPresentation("H", t, {GradedElement(t), GradedElement(t), wedge(x, y)});
}

} // namespace

TEST(Presentation, RejectsBadDifferentials) {
    auto t = make_table({"x", "y", "z"});
    auto x = GradedElement::generator(t, "x");
    // degree-1 image
    EXPECT_THROW(CdgaPresentation("bad", t, {GradedElement(t), x, GradedElement(t)}), CdgaError);
    auto t4 = make_table({"w", "x", "y", "z"});
    auto w4 = GradedElement::generator(t4, "w"), x4 = GradedElement::generator(t4, "x"),
         y4 = GradedElement::generator(t4, "y"), z4 = GradedElement::generator(t4, "z");
    // dw = x^y, dx = z^w gives d(dw) = z^w^y != 0
    try {
        CdgaPresentation("bad", t4, {wedge(x4, y4), wedge(z4, w4), GradedElement(t4), GradedElement(t4)});
        FAIL() << "expected rejection";
    } catch (const CdgaError& e) {
        EXPECT_NE(std::string(e.what()).find("d^2"), std::string::npos);
    }
}

TEST(Presentation, LeibnizAndDSquared) {
    auto p = heisenberg_like();
    EXPECT_TRUE(check_d_squared(p).pass);
    std::mt19937_64 rng(3);
    for (int i = 0; i < 100; ++i) {
        int a = rng() % 3, b = rng() % 3;
        auto x = random_element(rng, p.table(), a), y = random_element(rng, p.table(), b);
        auto lhs = differential(p, wedge(x, y));
        auto rhs = wedge(differential(p, x), y);
        auto second = wedge(x, differential(p, y));
        rhs += (a % 2) ? -second : second;
        EXPECT_EQ(lhs, rhs);
        EXPECT_TRUE(differential(p, differential(p, x)).is_zero());
    }
}

TEST(Presentation, ChangeOfBasisTransportsDifferential) {
    auto p = heisenberg_like();
    auto t = p.table();
    auto x = p.generator("x"), y = p.generator("y"), z = p.generator("z");
    auto r = ExactScalar::sqrt3();
    auto bc = change_basis(p, "H2", {"u", "v", "w"}, {x + r * y, x - r * y, z});
    auto u = bc.presentation.generator("u"), v = bc.presentation.generator("v");
    // x^y = -(u^v)/(2 sqrt3)
    auto expected = -(ExactScalar(1) / (ExactScalar(2) * r)) * wedge(u, v);
    EXPECT_EQ(differential(bc.presentation, bc.presentation.generator("w")), expected);
    EXPECT_TRUE(chain_map_failures(bc.to_old, bc.presentation, p).empty());
}
