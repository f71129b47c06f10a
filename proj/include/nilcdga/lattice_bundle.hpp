#pragma once

#include <nilcdga/matrix.hpp>

#include <array>
#include <stdexcept>
#include <string>
#include <vector>

namespace nilcdga {

class BundleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class QuadRing { Eisenstein, Gaussian };

inline std::string to_string(QuadRing r) { return r == QuadRing::Eisenstein ? "eisenstein" : "gaussian"; }

inline QuadRing parse_ring(const std::string& s) {
    if (s == "eisenstein")
        return QuadRing::Eisenstein;
    if (s == "gaussian")
        return QuadRing::Gaussian;
    throw BundleError("unknown ring '" + s + "' (expected eisenstein or gaussian)");
}

// m + n*w with w = zeta (w^2 = -1 - w) or w = i (w^2 = -1).
struct QuadInt {
    QuadRing ring = QuadRing::Eisenstein;
    BigInt m = 0, n = 0;

    static QuadInt unit(QuadRing r) { return {r, 1, 0}; }
    static QuadInt root(QuadRing r) { return {r, 0, 1}; }

    friend bool operator==(const QuadInt& x, const QuadInt& y) {
        return x.ring == y.ring && x.m == y.m && x.n == y.n;
    }
    friend QuadInt operator+(const QuadInt& x, const QuadInt& y) {
        check_ring(x, y);
        return {x.ring, x.m + y.m, x.n + y.n};
    }
    friend QuadInt operator-(const QuadInt& x, const QuadInt& y) {
        check_ring(x, y);
        return {x.ring, x.m - y.m, x.n - y.n};
    }
    friend QuadInt operator*(const QuadInt& x, const QuadInt& y) {
        check_ring(x, y);
        BigInt nn = x.n * y.n;
        BigInt m = x.m * y.m - nn;
        BigInt n = x.m * y.n + x.n * y.m;
        if (x.ring == QuadRing::Eisenstein)
            n -= nn;
        return {x.ring, m, n};
    }

private:
    static void check_ring(const QuadInt& x, const QuadInt& y) {
        if (x.ring != y.ring)
            throw BundleError("mixed ring arithmetic");
    }
};

// Four base vectors of the rank-2 module and the fiber basis {1, w}.
struct BundleData {
    QuadRing ring = QuadRing::Eisenstein;
    std::array<std::array<QuadInt, 2>, 4> base;
};

// e1 = (1,0), e2 = (w,0), e3 = (0,1), e4 = (0,w).
inline BundleData standard_bundle(QuadRing r) {
    QuadInt zero{r, 0, 0};
    auto one = QuadInt::unit(r), w = QuadInt::root(r);
    return {r, {{{one, zero}, {w, zero}, {zero, one}, {zero, w}}}};
}

inline const std::array<std::pair<int, int>, 6>& wedge2_pairs() {
    static const std::array<std::pair<int, int>, 6> pairs{{{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}}};
    return pairs;
}

// Column for e_i ^ e_j holds the fiber coordinates of a1*b2 - a2*b1,
// the integral of du1 ^ du2 over the parallelogram spanned by e_i and e_j.
inline IntMatrix curvature_class_matrix(const BundleData& b) {
    IntMatrix f(2, 6);
    const auto& pairs = wedge2_pairs();
    for (std::size_t c = 0; c < 6; ++c) {
        const auto& x = b.base[static_cast<std::size_t>(pairs[c].first)];
        const auto& y = b.base[static_cast<std::size_t>(pairs[c].second)];
        QuadInt v = x[0] * y[1] - x[1] * y[0];
        f(0, c) = v.m;
        f(1, c) = v.n;
    }
    return f;
}

// Q(e_i^e_j, e_k^e_l) = sign of (i j k l) when it is a permutation, oriented so
// that Q(e1^e2, e3^e4) = +1.
inline IntMatrix wedge2_pairing() {
    IntMatrix q(6, 6);
    const auto& pairs = wedge2_pairs();
    for (std::size_t a = 0; a < 6; ++a)
        for (std::size_t b = 0; b < 6; ++b) {
            int p[4] = {pairs[a].first, pairs[a].second, pairs[b].first, pairs[b].second};
            bool distinct = true;
            for (int i = 0; i < 4 && distinct; ++i)
                for (int j = i + 1; j < 4; ++j)
                    if (p[i] == p[j])
                        distinct = false;
            if (!distinct)
                continue;
            int inversions = 0;
            for (int i = 0; i < 4; ++i)
                for (int j = i + 1; j < 4; ++j)
                    if (p[i] > p[j])
                        ++inversions;
            q(a, b) = inversions % 2 ? -1 : 1;
        }
    return q;
}

// Induced action of a 4x4 matrix on the basis e_i ^ e_j (2x2 minors).
inline IntMatrix wedge2(const IntMatrix& g) {
    if (g.rows() != 4 || g.cols() != 4)
        throw BundleError("wedge2 needs a 4x4 matrix");
    IntMatrix w(6, 6);
    const auto& pairs = wedge2_pairs();
    for (std::size_t r = 0; r < 6; ++r)
        for (std::size_t c = 0; c < 6; ++c) {
            auto [i, j] = pairs[r];
            auto [k, l] = pairs[c];
            auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
            auto uk = static_cast<std::size_t>(k), ul = static_cast<std::size_t>(l);
            w(r, c) = g(ui, uk) * g(uj, ul) - g(ui, ul) * g(uj, uk);
        }
    return w;
}

// Z-basis of the row lattice of f, read off the Smith form.
inline std::vector<std::vector<BigInt>> row_lattice_basis(const IntMatrix& f) {
    auto s = smith_normal_form(f);
    Matrix<Rational> r(s.right.rows(), s.right.cols());
    for (std::size_t i = 0; i < r.rows(); ++i)
        for (std::size_t j = 0; j < r.cols(); ++j)
            r(i, j) = s.right(i, j);
    auto rinv = inverse(r);
    std::vector<std::vector<BigInt>> out;
    for (std::size_t i = 0; i < s.diag.size(); ++i) {
        if (s.diag[i] == 0)
            continue;
        std::vector<BigInt> row(f.cols());
        for (std::size_t j = 0; j < f.cols(); ++j)
            row[j] = s.diag[i] * BigInt(rinv(i, j).get_num());
        out.push_back(std::move(row));
    }
    return out;
}

inline IntMatrix image_gram_matrix(const IntMatrix& f) {
    if (f.cols() != 6)
        throw BundleError("curvature matrix needs 6 columns");
    auto basis = row_lattice_basis(f);
    auto q = wedge2_pairing();
    IntMatrix g(basis.size(), basis.size());
    for (std::size_t a = 0; a < basis.size(); ++a)
        for (std::size_t b = 0; b < basis.size(); ++b) {
            BigInt s = 0;
            for (std::size_t i = 0; i < 6; ++i)
                for (std::size_t j = 0; j < 6; ++j)
                    s += basis[a][i] * q(i, j) * basis[b][j];
            g(a, b) = s;
        }
    return g;
}

// |det| of Q restricted to the image lattice; unchanged by GL(2,Z) on rows and
// by the wedge2 action of GL(4,Z) on columns.
inline BigInt image_lattice_q_determinant(const IntMatrix& f) {
    auto g = image_gram_matrix(f);
    if (g.rows() < 2)
        throw BundleError("curvature matrix has rank " + std::to_string(g.rows()) + " < 2");
    return abs(int_determinant(g));
}

enum class BundleVerdict { Distinct, Inconclusive };

inline std::string to_string(BundleVerdict v) { return v == BundleVerdict::Distinct ? "distinct" : "inconclusive"; }

inline BundleVerdict bundles_equivalent(const IntMatrix& f1, const IntMatrix& f2) {
    return image_lattice_q_determinant(f1) == image_lattice_q_determinant(f2) ? BundleVerdict::Inconclusive
                                                                              : BundleVerdict::Distinct;
}

} // namespace nilcdga
