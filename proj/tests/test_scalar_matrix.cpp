#include <nilcdga/matrix.hpp>
#include <nilcdga/scalar.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace nilcdga;

namespace {

ExactMatrix random_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo = -3, int hi = 3) {
    std::uniform_int_distribution<int> dist(lo, hi);
    ExactMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = dist(rng);
    return m;
}

IntMatrix random_int_matrix(std::mt19937_64& rng, std::size_t r, std::size_t c, int lo = -5, int hi = 5) {
    std::uniform_int_distribution<int> dist(lo, hi);
    IntMatrix m(r, c);
    for (std::size_t i = 0; i < r; ++i)
        for (std::size_t j = 0; j < c; ++j)
            m(i, j) = dist(rng);
    return m;
}

} // namespace

TEST(Scalar, RationalArithmeticIsCanonical) {
    ExactScalar a = ExactScalar::rational(2, 4);
    EXPECT_EQ(a.str(), "1/2");
    EXPECT_EQ((a + a).str(), "1");
    EXPECT_EQ((ExactScalar::rational(-1, 3) * 3).str(), "-1");
    EXPECT_THROW(ExactScalar(0).inverse(), std::domain_error);
}

TEST(Scalar, Sqrt3Field) {
    ExactScalar r = ExactScalar::sqrt3();
    EXPECT_EQ(r * r, ExactScalar(3));
    EXPECT_TRUE((r * r).is_rational());
    ExactScalar x = ExactScalar(1) + r;
    EXPECT_EQ(x * x.inverse(), ExactScalar(1));
    EXPECT_EQ((ExactScalar(1) - r).str(), "1-sqrt3");
    EXPECT_EQ((ExactScalar::rational(1, 2) * r).str(), "1/2*sqrt3");
}

TEST(Scalar, FieldAxiomsOnRandomValues) {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<int> d(-9, 9);
    auto draw = [&] {
        return ExactScalar::quadratic(make_rational(d(rng), 1 + (d(rng) + 9) % 5), make_rational(d(rng), 1 + (d(rng) + 9) % 4));
    };
    for (int i = 0; i < 200; ++i) {
        ExactScalar a = draw(), b = draw(), c = draw();
        EXPECT_EQ((a + b) * c, a * c + b * c);
        EXPECT_EQ(a * (b * c), (a * b) * c);
        EXPECT_EQ(a * b, b * a);
        if (!a.is_zero())
            EXPECT_EQ(a / a, ExactScalar(1));
    }
}

TEST(Matrix, RrefOfIdentityAndZero) {
    auto id = ExactMatrix::identity(3);
    auto r = rref(id);
    EXPECT_EQ(r.rank, 3u);
    EXPECT_EQ(r.reduced, id);
    EXPECT_EQ(r.pivots, (std::vector<std::size_t>{0, 1, 2}));
    ExactMatrix z(2, 5);
    EXPECT_EQ(rank(z), 0u);
    EXPECT_EQ(kernel_basis(z).size(), 5u);
}

TEST(Matrix, EmptyShapes) {
    ExactMatrix e(0, 4);
    EXPECT_EQ(rank(e), 0u);
    EXPECT_EQ(kernel_basis(e).size(), 4u);
    ExactMatrix f(3, 0);
    EXPECT_EQ(rank(f), 0u);
    EXPECT_TRUE(kernel_basis(f).empty());
}

TEST(Matrix, OutOfRangeAccessThrows) {
    ExactMatrix m(2, 2);
    EXPECT_THROW(m.at(2, 0), std::out_of_range);
}

TEST(Matrix, SingularInverseThrows) {
    ExactMatrix m{{1, 2}, {2, 4}};
    EXPECT_THROW(inverse(m), std::domain_error);
    EXPECT_EQ(determinant(m), ExactScalar(0));
}

TEST(Matrix, RandomRankKernelAndSolve) {
    std::mt19937_64 rng(20240501);
    for (int trial = 0; trial < 60; ++trial) {
        std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
        // low-rank product to exercise degenerate cases
        std::size_t inner = 1 + rng() % 4;
        ExactMatrix a = random_matrix(rng, r, inner) * random_matrix(rng, inner, c);
        auto red = rref(a);
        auto ker = kernel_basis(a);
        EXPECT_EQ(red.rank + ker.size(), c);
        for (const auto& v : ker)
            EXPECT_TRUE(is_zero_vector(a.apply(v)));
        // RREF is idempotent and the row spaces agree
        EXPECT_EQ(rref(red.reduced).reduced, red.reduced);
        // solve a consistent system
        std::vector<ExactScalar> x(c);
        for (auto& e : x)
            e = static_cast<int>(rng() % 7) - 3;
        auto b = a.apply(x);
        auto sol = solve(a, b);
        ASSERT_TRUE(sol.has_value());
        EXPECT_EQ(a.apply(*sol), b);
    }
}

TEST(Matrix, InconsistentSystemHasNoSolution) {
    ExactMatrix a{{1, 0}, {0, 0}};
    std::vector<ExactScalar> b{1, 1};
    EXPECT_FALSE(solve(a, b).has_value());
}

TEST(Matrix, DeterminantMultiplicative) {
    std::mt19937_64 rng(99);
    for (int i = 0; i < 40; ++i) {
        std::size_t n = 1 + rng() % 5;
        ExactMatrix a = random_matrix(rng, n, n), b = random_matrix(rng, n, n);
        EXPECT_EQ(determinant(a * b), determinant(a) * determinant(b));
        IntMatrix ai = random_int_matrix(rng, n, n);
        ExactMatrix aq(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c)
                aq(r, c) = ExactScalar(Rational(ai(r, c)));
        EXPECT_EQ(ExactScalar(Rational(int_determinant(ai))), determinant(aq));
    }
}

TEST(Smith, SmallKnownForms) {
    auto s = smith_normal_form(to_int_matrix({{-2, -1}, {1, -1}}));
    EXPECT_EQ(s.diag[0], 1);
    EXPECT_EQ(s.diag[1], 3);
    auto f = smith_normal_form(to_int_matrix({{1, -1, 1, -1, 2, 1}, {-1, 2, -1, 1, 1, 1}}));
    EXPECT_EQ(f.diag[0], 1);
    EXPECT_EQ(f.diag[1], 1);
}

TEST(Smith, RandomInvariants) {
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 80; ++trial) {
        std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
        IntMatrix m = random_int_matrix(rng, r, c);
        auto s = smith_normal_form(m);
        EXPECT_EQ(s.left * m * s.right, diagonal_matrix(s));
        EXPECT_EQ(abs(int_determinant(s.left)), 1);
        EXPECT_EQ(abs(int_determinant(s.right)), 1);
        std::size_t k = std::min(r, c);
        for (std::size_t i = 0; i < k; ++i) {
            EXPECT_GE(s.diag[i], 0);
            if (i + 1 < k && s.diag[i] != 0)
                EXPECT_TRUE(s.diag[i + 1] % s.diag[i] == 0);
            if (s.diag[i] == 0 && i + 1 < k)
                EXPECT_EQ(s.diag[i + 1], 0);
        }
        if (r == c) {
            BigInt prod = 1;
            for (std::size_t i = 0; i < k; ++i)
                prod *= s.diag[i];
            EXPECT_EQ(prod, abs(int_determinant(m)));
        }
    }
}
