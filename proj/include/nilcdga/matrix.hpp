#pragma once

#include "scalar.hpp"

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace nilcdga {

// Dense row-major matrix over an exact field (or ring, for BigInt).
template <class T>
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, T(0)) {}

    Matrix(std::initializer_list<std::initializer_list<T>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_)
                throw std::invalid_argument("ragged matrix initializer");
            for (const auto& v : row)
                data_.push_back(v);
        }
    }

    static Matrix identity(std::size_t n) {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i)
            m(i, i) = T(1);
        return m;
    }

    // Columns given as vectors of equal length.
    static Matrix from_columns(std::size_t rows, const std::vector<std::vector<T>>& cols) {
        Matrix m(rows, cols.size());
        for (std::size_t j = 0; j < cols.size(); ++j) {
            if (cols[j].size() != rows)
                throw std::invalid_argument("column length mismatch");
            for (std::size_t i = 0; i < rows; ++i)
                m(i, j) = cols[j][i];
        }
        return m;
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    T& at(std::size_t i, std::size_t j) {
        check(i, j);
        return (*this)(i, j);
    }
    const T& at(std::size_t i, std::size_t j) const {
        check(i, j);
        return (*this)(i, j);
    }

    std::vector<T> row(std::size_t i) const {
        return std::vector<T>(data_.begin() + i * cols_, data_.begin() + (i + 1) * cols_);
    }
    std::vector<T> column(std::size_t j) const {
        std::vector<T> c;
        c.reserve(rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            c.push_back((*this)(i, j));
        return c;
    }

    void swap_rows(std::size_t a, std::size_t b) {
        if (a == b)
            return;
        for (std::size_t j = 0; j < cols_; ++j)
            std::swap((*this)(a, j), (*this)(b, j));
    }
    void swap_cols(std::size_t a, std::size_t b) {
        if (a == b)
            return;
        for (std::size_t i = 0; i < rows_; ++i)
            std::swap((*this)(i, a), (*this)(i, b));
    }

    Matrix transpose() const {
        Matrix t(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                t(j, i) = (*this)(i, j);
        return t;
    }

    bool is_zero() const {
        return std::all_of(data_.begin(), data_.end(), [](const T& v) { return v == T(0); });
    }

    friend bool operator==(const Matrix& a, const Matrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    friend Matrix operator*(const Matrix& a, const Matrix& b) {
        if (a.cols_ != b.rows_)
            throw std::invalid_argument("matrix product dimension mismatch");
        Matrix c(a.rows_, b.cols_);
        for (std::size_t i = 0; i < a.rows_; ++i)
            for (std::size_t k = 0; k < a.cols_; ++k) {
                const T& aik = a(i, k);
                if (aik == T(0))
                    continue;
                for (std::size_t j = 0; j < b.cols_; ++j)
                    c(i, j) += aik * b(k, j);
            }
        return c;
    }

    friend Matrix operator+(Matrix a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matrix sum dimension mismatch");
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            a.data_[i] += b.data_[i];
        return a;
    }

    friend Matrix operator-(Matrix a, const Matrix& b) {
        if (a.rows_ != b.rows_ || a.cols_ != b.cols_)
            throw std::invalid_argument("matrix difference dimension mismatch");
        for (std::size_t i = 0; i < a.data_.size(); ++i)
            a.data_[i] -= b.data_[i];
        return a;
    }

    std::vector<T> apply(std::span<const T> v) const {
        if (v.size() != cols_)
            throw std::invalid_argument("matrix-vector dimension mismatch");
        std::vector<T> out(rows_, T(0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j)
                if (!(v[j] == T(0)))
                    out[i] += (*this)(i, j) * v[j];
        return out;
    }

private:
    void check(std::size_t i, std::size_t j) const {
        if (i >= rows_ || j >= cols_)
            throw std::out_of_range("matrix index (" + std::to_string(i) + "," + std::to_string(j) +
                                    ") outside " + std::to_string(rows_) + "x" + std::to_string(cols_));
    }

    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<T> data_;
};

using ExactMatrix = Matrix<ExactScalar>;
using IntMatrix = Matrix<BigInt>;

template <class T>
bool is_zero_vector(std::span<const T> v) {
    return std::all_of(v.begin(), v.end(), [](const T& x) { return x == T(0); });
}

template <class T>
bool is_zero_vector(const std::vector<T>& v) {
    return is_zero_vector(std::span<const T>(v));
}

template <class T>
struct RrefResult {
    std::size_t rank = 0;
    std::vector<std::size_t> pivots;
    Matrix<T> reduced;
};

namespace detail {

// In-place Gauss-Jordan.  Pivots are searched only in the first `pivot_cols`
// columns; the remaining columns ride along (augmented part).
template <class T>
std::vector<std::size_t> gauss_jordan(Matrix<T>& m, std::size_t pivot_cols) {
    std::vector<std::size_t> pivots;
    std::size_t r = 0;
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    for (std::size_t c = 0; c < pivot_cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m(p, c) == T(0))
            ++p;
        if (p == rows)
            continue;
        m.swap_rows(r, p);
        if (!(m(r, c) == T(1))) {
            T inv = T(1) / m(r, c);
            for (std::size_t j = c; j < cols; ++j)
                if (!(m(r, j) == T(0)))
                    m(r, j) *= inv;
        }
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == r || m(i, c) == T(0))
                continue;
            T f = m(i, c);
            for (std::size_t j = c; j < cols; ++j)
                if (!(m(r, j) == T(0)))
                    m(i, j) -= f * m(r, j);
        }
        pivots.push_back(c);
        ++r;
    }
    return pivots;
}

} // namespace detail

// Reduced row echelon form with leftmost-column, first-nonzero-row pivoting.
template <class T>
RrefResult<T> rref(Matrix<T> m) {
    RrefResult<T> out;
    out.pivots = detail::gauss_jordan(m, m.cols());
    out.rank = out.pivots.size();
    out.reduced = std::move(m);
    return out;
}

template <class T>
std::size_t rank(const Matrix<T>& m) {
    return rref(m).rank;
}

// Kernel basis from the free-variable construction: one vector per free
// column f, with x_f = 1 and the pivot coordinates read off the RREF.
template <class T>
std::vector<std::vector<T>> kernel_basis(const Matrix<T>& m) {
    auto r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (auto p : r.pivots)
        is_pivot[p] = true;
    std::vector<std::vector<T>> basis;
    for (std::size_t f = 0; f < m.cols(); ++f) {
        if (is_pivot[f])
            continue;
        std::vector<T> x(m.cols(), T(0));
        x[f] = T(1);
        for (std::size_t i = 0; i < r.rank; ++i)
            x[r.pivots[i]] = -r.reduced(i, f);
        basis.push_back(std::move(x));
    }
    return basis;
}

// Precomputed elimination for repeated solves against one matrix.  Row
// reduces [A | I] so that E*A = R; a right-hand side b is consistent iff
// (E b) vanishes below the rank, and the returned solution sets every free
// variable to zero.
template <class T>
class LinearSolver {
public:
    LinearSolver() = default;

    explicit LinearSolver(const Matrix<T>& a) : rows_(a.rows()), cols_(a.cols()) {
        Matrix<T> aug(rows_, cols_ + rows_);
        for (std::size_t i = 0; i < rows_; ++i) {
            for (std::size_t j = 0; j < cols_; ++j)
                aug(i, j) = a(i, j);
            aug(i, cols_ + i) = T(1);
        }
        pivots_ = detail::gauss_jordan(aug, cols_);
        transform_ = Matrix<T>(rows_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < rows_; ++j)
                transform_(i, j) = aug(i, cols_ + j);
    }

    std::size_t rank() const noexcept { return pivots_.size(); }
    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    const std::vector<std::size_t>& pivots() const noexcept { return pivots_; }

    std::optional<std::vector<T>> solve(std::span<const T> b) const {
        if (b.size() != rows_)
            throw std::invalid_argument("right-hand side length " + std::to_string(b.size()) +
                                        " does not match row count " + std::to_string(rows_));
        std::vector<T> y = transform_.apply(b);
        for (std::size_t i = rank(); i < rows_; ++i)
            if (!(y[i] == T(0)))
                return std::nullopt;
        std::vector<T> x(cols_, T(0));
        for (std::size_t i = 0; i < rank(); ++i)
            x[pivots_[i]] = std::move(y[i]);
        return x;
    }

    bool in_column_space(std::span<const T> b) const { return solve(b).has_value(); }

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<std::size_t> pivots_;
    Matrix<T> transform_;
};

template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& m, std::span<const T> b) {
    return LinearSolver<T>(m).solve(b);
}

template <class T>
std::optional<std::vector<T>> solve(const Matrix<T>& m, const std::vector<T>& b) {
    return LinearSolver<T>(m).solve(std::span<const T>(b));
}

template <class T>
T determinant(Matrix<T> m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant of a non-square matrix");
    T det(1);
    const std::size_t n = m.rows();
    for (std::size_t c = 0; c < n; ++c) {
        std::size_t p = c;
        while (p < n && m(p, c) == T(0))
            ++p;
        if (p == n)
            return T(0);
        if (p != c) {
            m.swap_rows(p, c);
            det = -det;
        }
        det *= m(c, c);
        T inv = T(1) / m(c, c);
        for (std::size_t i = c + 1; i < n; ++i) {
            if (m(i, c) == T(0))
                continue;
            T f = m(i, c) * inv;
            for (std::size_t j = c; j < n; ++j)
                m(i, j) -= f * m(c, j);
        }
    }
    return det;
}

// Inverse over a field; throws for singular input.
template <class T>
Matrix<T> inverse(const Matrix<T>& m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("inverse of a non-square matrix");
    LinearSolver<T> s(m);
    if (s.rank() != m.rows())
        throw std::domain_error("matrix is singular");
    Matrix<T> inv(m.rows(), m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        std::vector<T> e(m.rows(), T(0));
        e[j] = T(1);
        auto x = *s.solve(e);
        for (std::size_t i = 0; i < m.rows(); ++i)
            inv(i, j) = x[i];
    }
    return inv;
}

// Row-space basis in RREF: the nonzero rows of rref(m).
template <class T>
std::vector<std::vector<T>> row_space_basis(const Matrix<T>& m) {
    auto r = rref(m);
    std::vector<std::vector<T>> rows;
    for (std::size_t i = 0; i < r.rank; ++i)
        rows.push_back(r.reduced.row(i));
    return rows;
}

// ---------------------------------------------------------------------------
// Integer matrices

// Bareiss fraction-free determinant.
inline BigInt int_determinant(IntMatrix m) {
    if (m.rows() != m.cols())
        throw std::invalid_argument("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    if (n == 0)
        return BigInt(1);
    int sign = 1;
    BigInt prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m(k, k) == 0) {
            std::size_t p = k + 1;
            while (p < n && m(p, k) == 0)
                ++p;
            if (p == n)
                return BigInt(0);
            m.swap_rows(k, p);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) {
                BigInt v = m(i, j) * m(k, k) - m(i, k) * m(k, j);
                mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
                m(i, j) = v;
            }
        prev = m(k, k);
    }
    return sign * m(n - 1, n - 1);
}

struct SmithForm {
    IntMatrix left;            // unimodular, rows x rows
    std::vector<BigInt> diag;  // d_1 | d_2 | ... , all >= 0, length min(rows, cols)
    IntMatrix right;           // unimodular, cols x cols
};

// left * m * right = diag(d_1, ..., d_r, 0, ...), computed by repeated
// Euclidean reduction on the smallest nonzero entry of the trailing block.
inline SmithForm smith_normal_form(const IntMatrix& m) {
    const std::size_t rows = m.rows();
    const std::size_t cols = m.cols();
    IntMatrix a = m;
    IntMatrix left = IntMatrix::identity(rows);
    IntMatrix right = IntMatrix::identity(cols);

    auto add_row = [&](std::size_t dst, std::size_t src, const BigInt& f) {
        for (std::size_t j = 0; j < cols; ++j)
            a(dst, j) += f * a(src, j);
        for (std::size_t j = 0; j < rows; ++j)
            left(dst, j) += f * left(src, j);
    };
    auto add_col = [&](std::size_t dst, std::size_t src, const BigInt& f) {
        for (std::size_t i = 0; i < rows; ++i)
            a(i, dst) += f * a(i, src);
        for (std::size_t i = 0; i < cols; ++i)
            right(i, dst) += f * right(i, src);
    };

    const std::size_t n = std::min(rows, cols);
    for (std::size_t t = 0; t < n; ++t) {
        for (;;) {
            // smallest nonzero |entry| in the trailing block
            bool found = false;
            std::size_t pi = t, pj = t;
            BigInt best;
            for (std::size_t i = t; i < rows; ++i)
                for (std::size_t j = t; j < cols; ++j)
                    if (a(i, j) != 0 && (!found || abs(a(i, j)) < best)) {
                        best = abs(a(i, j));
                        pi = i;
                        pj = j;
                        found = true;
                    }
            if (!found)
                break;
            a.swap_rows(t, pi);
            left.swap_rows(t, pi);
            a.swap_cols(t, pj);
            right.swap_cols(t, pj);

            bool clean = true;
            for (std::size_t i = t + 1; i < rows; ++i) {
                if (a(i, t) == 0)
                    continue;
                BigInt q;
                mpz_fdiv_q(q.get_mpz_t(), a(i, t).get_mpz_t(), a(t, t).get_mpz_t());
                add_row(i, t, -q);
                if (a(i, t) != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < cols; ++j) {
                if (a(t, j) == 0)
                    continue;
                BigInt q;
                mpz_fdiv_q(q.get_mpz_t(), a(t, j).get_mpz_t(), a(t, t).get_mpz_t());
                add_col(j, t, -q);
                if (a(t, j) != 0)
                    clean = false;
            }
            if (!clean)
                continue;
            // divisibility: fold any offending row into row t and repeat
            bool divides = true;
            for (std::size_t i = t + 1; i < rows && divides; ++i)
                for (std::size_t j = t + 1; j < cols; ++j)
                    if (a(i, j) % a(t, t) != 0) {
                        add_row(t, i, BigInt(1));
                        divides = false;
                        break;
                    }
            if (divides)
                break;
        }
        if (a(t, t) < 0) {
            for (std::size_t j = 0; j < cols; ++j)
                a(t, j) = -a(t, j);
            for (std::size_t j = 0; j < rows; ++j)
                left(t, j) = -left(t, j);
        }
    }

    SmithForm out;
    out.diag.reserve(n);
    for (std::size_t t = 0; t < n; ++t)
        out.diag.push_back(a(t, t));
    out.left = std::move(left);
    out.right = std::move(right);
    return out;
}

inline IntMatrix diagonal_matrix(const SmithForm& s) {
    IntMatrix d(s.left.rows(), s.right.rows());
    for (std::size_t i = 0; i < s.diag.size(); ++i)
        d(i, i) = s.diag[i];
    return d;
}

inline IntMatrix to_int_matrix(std::initializer_list<std::initializer_list<long>> init) {
    IntMatrix m(init.size(), init.size() ? init.begin()->size() : 0);
    std::size_t i = 0;
    for (const auto& row : init) {
        if (row.size() != m.cols())
            throw std::invalid_argument("ragged matrix initializer");
        std::size_t j = 0;
        for (long v : row)
            m(i, j++) = v;
        ++i;
    }
    return m;
}

} // namespace nilcdga
