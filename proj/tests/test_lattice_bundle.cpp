#include <nilcdga/lattice_bundle.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace nilcdga;

namespace {

IntMatrix random_unimodular(std::mt19937_64& rng, std::size_t n) {
    IntMatrix g = IntMatrix::identity(n);
    for (int s = 0; s < 10; ++s) {
        std::size_t i = rng() % n, j = rng() % n;
        if (i == j)
            continue;
        IntMatrix e = IntMatrix::identity(n);
        e(i, j) = static_cast<long>(rng() % 5) - 2;
        g = g * e;
        if (rng() % 4 == 0)
            g.swap_cols(i, j);
    }
    return g;
}

} // namespace

TEST(LatticeBundle, RingArithmetic) {
    auto z = QuadInt::root(QuadRing::Eisenstein);
    auto one = QuadInt::unit(QuadRing::Eisenstein);
    EXPECT_EQ(z * z, (QuadInt{QuadRing::Eisenstein, -1, -1}));
    EXPECT_EQ(z * z * z, one);
    EXPECT_EQ(one + z + z * z, (QuadInt{QuadRing::Eisenstein, 0, 0}));
    auto i = QuadInt::root(QuadRing::Gaussian);
    EXPECT_EQ(i * i, (QuadInt{QuadRing::Gaussian, -1, 0}));
    EXPECT_THROW(z * i, BundleError);
    EXPECT_EQ(parse_ring("gaussian"), QuadRing::Gaussian);
    EXPECT_THROW(parse_ring("hurwitz"), BundleError);
}

TEST(LatticeBundle, CurvatureMatrices) {
    auto f = curvature_class_matrix(standard_bundle(QuadRing::Eisenstein));
    EXPECT_EQ(f, (to_int_matrix({{0, 1, 0, 0, -1, 0}, {0, 0, 1, 1, -1, 0}})));
    auto g = curvature_class_matrix(standard_bundle(QuadRing::Gaussian));
    EXPECT_EQ(g, (to_int_matrix({{0, 1, 0, 0, -1, 0}, {0, 0, 1, 1, 0, 0}})));
    // a degenerate pair gives a zero column
    auto d = standard_bundle(QuadRing::Eisenstein);
    d.base[1] = d.base[0];
    auto fd = curvature_class_matrix(d);
    EXPECT_EQ(fd(0, 0), 0);
    EXPECT_EQ(fd(1, 0), 0);
}

TEST(LatticeBundle, PairingIsUnimodularAndSymmetric) {
    auto q = wedge2_pairing();
    EXPECT_EQ(q, q.transpose());
    EXPECT_EQ(abs(int_determinant(q)), 1);
    EXPECT_EQ(q(0, 5), 1);
    // wedge2(g) scales the pairing by det g
    std::mt19937_64 rng(5);
    for (int t = 0; t < 10; ++t) {
        auto g = random_unimodular(rng, 4);
        auto w = wedge2(g);
        auto lhs = w.transpose() * q * w;
        BigInt det = int_determinant(g);
        for (std::size_t r = 0; r < 6; ++r)
            for (std::size_t c = 0; c < 6; ++c)
                EXPECT_EQ(lhs(r, c), det * q(r, c));
    }
}

TEST(LatticeBundle, Invariants) {
    auto f = curvature_class_matrix(standard_bundle(QuadRing::Eisenstein));
    auto g = curvature_class_matrix(standard_bundle(QuadRing::Gaussian));
    EXPECT_EQ(image_gram_matrix(f), (to_int_matrix({{2, 1}, {1, 2}})));
    EXPECT_EQ(image_gram_matrix(g), (to_int_matrix({{2, 0}, {0, 2}})));
    EXPECT_EQ(image_lattice_q_determinant(f), 3);
    EXPECT_EQ(image_lattice_q_determinant(g), 4);
    EXPECT_EQ(bundles_equivalent(f, g), BundleVerdict::Distinct);
    EXPECT_EQ(bundles_equivalent(f, f), BundleVerdict::Inconclusive);
    auto isotropic = to_int_matrix({{1, 0, 0, 0, 0, 0}, {0, 1, 0, 0, 0, 0}});
    EXPECT_EQ(image_lattice_q_determinant(isotropic), 0);
    EXPECT_THROW(image_lattice_q_determinant(to_int_matrix({{1, 0, 0, 0, 0, 0}, {2, 0, 0, 0, 0, 0}})),
                 BundleError);
}

TEST(LatticeBundle, InvariantUnderBaseAndFiberChanges) {
    std::mt19937_64 rng(1234);
    auto f = curvature_class_matrix(standard_bundle(QuadRing::Eisenstein));
    auto g = curvature_class_matrix(standard_bundle(QuadRing::Gaussian));
    for (int t = 0; t < 50; ++t) {
        auto a = random_unimodular(rng, 2);
        auto w = wedge2(random_unimodular(rng, 4));
        auto f2 = a * f * w;
        auto g2 = a * g * w;
        EXPECT_EQ(image_lattice_q_determinant(f2), 3);
        EXPECT_EQ(image_lattice_q_determinant(g2), 4);
        EXPECT_EQ(bundles_equivalent(f, f2), BundleVerdict::Inconclusive);
        EXPECT_EQ(bundles_equivalent(f2, g2), BundleVerdict::Distinct);
    }
}
