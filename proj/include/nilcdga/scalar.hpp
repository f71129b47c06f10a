#pragma once

#include <gmpxx.h>

#include <ostream>
#include <stdexcept>
#include <string>
#include <type_traits>

namespace nilcdga {

using BigInt = mpz_class;
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0)
        throw std::domain_error("rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

// "p" for integers, "p/q" otherwise.
inline std::string rational_string(const Rational& q) {
    if (q.get_den() == 1)
        return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

// An exact element a + b*sqrt(3).  The field tag records whether the value
// lives in Q or in Q(sqrt 3); binary operations take the join of the tags.
// Values compare componentwise, ignoring the tag.
class ExactScalar {
public:
    enum class Field { Rational, Sqrt3 };

    ExactScalar() = default;

    template <class I, std::enable_if_t<std::is_integral_v<I>, int> = 0>
    ExactScalar(I v) : a_(static_cast<long>(v)) {}

    ExactScalar(Rational q) : a_(std::move(q)) { a_.canonicalize(); }

    static ExactScalar rational(long num, long den = 1) {
        return ExactScalar(make_rational(num, den));
    }

    static ExactScalar quadratic(Rational a, Rational b) {
        ExactScalar s(std::move(a));
        b.canonicalize();
        s.b_ = std::move(b);
        s.field_ = Field::Sqrt3;
        return s;
    }

    static ExactScalar sqrt3() { return quadratic(Rational(0), Rational(1)); }

    Field field() const noexcept { return field_; }
    const Rational& rational_part() const noexcept { return a_; }
    const Rational& surd_part() const noexcept { return b_; }

    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }
    // True when the value is rational, whatever the tag says.
    bool is_rational() const { return sgn(b_) == 0; }

    ExactScalar& operator+=(const ExactScalar& o) {
        a_ += o.a_;
        if (o.field_ == Field::Sqrt3) {
            b_ += o.b_;
            field_ = Field::Sqrt3;
        }
        return *this;
    }

    ExactScalar& operator-=(const ExactScalar& o) {
        a_ -= o.a_;
        if (o.field_ == Field::Sqrt3) {
            b_ -= o.b_;
            field_ = Field::Sqrt3;
        }
        return *this;
    }

    ExactScalar& operator*=(const ExactScalar& o) {
        if (field_ == Field::Rational && o.field_ == Field::Rational) {
            a_ *= o.a_;
            return *this;
        }
        // (a + b r)(c + e r) = (ac + 3be) + (ae + bc) r
        Rational na = a_ * o.a_ + 3 * b_ * o.b_;
        Rational nb = a_ * o.b_ + b_ * o.a_;
        a_ = std::move(na);
        b_ = std::move(nb);
        field_ = Field::Sqrt3;
        return *this;
    }

    ExactScalar& operator/=(const ExactScalar& o) { return *this *= o.inverse(); }

    ExactScalar inverse() const {
        if (is_zero())
            throw std::domain_error("division by zero");
        if (field_ == Field::Rational)
            return ExactScalar(1 / a_);
        // 1/(a + b r) = (a - b r)/(a^2 - 3 b^2); the norm is nonzero since r is irrational
        Rational norm = a_ * a_ - 3 * b_ * b_;
        return quadratic(a_ / norm, -b_ / norm);
    }

    ExactScalar operator-() const {
        ExactScalar s(*this);
        s.a_ = -s.a_;
        s.b_ = -s.b_;
        return s;
    }

    friend ExactScalar operator+(ExactScalar x, const ExactScalar& y) { return x += y; }
    friend ExactScalar operator-(ExactScalar x, const ExactScalar& y) { return x -= y; }
    friend ExactScalar operator*(ExactScalar x, const ExactScalar& y) { return x *= y; }
    friend ExactScalar operator/(ExactScalar x, const ExactScalar& y) { return x /= y; }

    friend bool operator==(const ExactScalar& x, const ExactScalar& y) {
        return x.a_ == y.a_ && x.b_ == y.b_;
    }
    friend bool operator!=(const ExactScalar& x, const ExactScalar& y) { return !(x == y); }

    // "p/q" for rationals, "a+b*sqrt3" style otherwise.
    std::string str() const {
        if (is_rational())
            return rational_string(a_);
        std::string s;
        if (sgn(a_) != 0)
            s = rational_string(a_);
        if (sgn(b_) < 0) {
            s += "-";
        } else if (!s.empty()) {
            s += "+";
        }
        Rational mag = abs(b_);
        if (mag != 1)
            s += rational_string(mag) + "*";
        s += "sqrt3";
        return s;
    }

    friend std::ostream& operator<<(std::ostream& os, const ExactScalar& s) { return os << s.str(); }

private:
    Rational a_{0};
    Rational b_{0};
    Field field_ = Field::Rational;
};

inline ExactScalar join_field(ExactScalar::Field f, ExactScalar s) {
    if (f == ExactScalar::Field::Sqrt3 && s.field() == ExactScalar::Field::Rational)
        return ExactScalar::quadratic(s.rational_part(), Rational(0));
    return s;
}

} // namespace nilcdga
