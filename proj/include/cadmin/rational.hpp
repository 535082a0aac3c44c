#pragma once

#include <gmpxx.h>

#include <compare>
#include <iosfwd>
#include <string>

#include "cadmin/errors.hpp"

namespace cadmin {

using BigInt = mpz_class;

/**
 * Arbitrary-precision rational number, always in lowest terms with a
 * positive denominator. Thin wrapper over GMP's mpq_class that pins the
 * canonical form on every construction path and provides the string
 * format used by all serializers ("p" or "p/q").
 */
class Rational
{
public:
    Rational() : v_(0) {}
    Rational(int n) : v_(n) {}
    Rational(long n) : v_(static_cast<signed long>(n)) {}
    Rational(const BigInt& n) : v_(n) {}
    Rational(const BigInt& num, const BigInt& den) : v_(num, den)
    {
        if (den == 0) throw Error("rational with zero denominator");
        v_.canonicalize();
    }
    Rational(long num, long den) : Rational(BigInt(num), BigInt(den)) {}

    /** Parse "p" or "p/q" (arbitrary precision, optional sign). */
    static Rational fromString(const std::string& s);

    BigInt num() const { return v_.get_num(); }
    BigInt den() const { return v_.get_den(); }

    int sign() const { return sgn(v_); }
    bool isZero() const { return sign() == 0; }
    bool isInteger() const { return v_.get_den() == 1; }

    Rational abs() const { return Rational(::abs(v_)); }
    BigInt floor() const
    {
        BigInt q;
        mpz_fdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
        return q;
    }
    BigInt ceil() const
    {
        BigInt q;
        mpz_cdiv_q(q.get_mpz_t(), v_.get_num().get_mpz_t(), v_.get_den().get_mpz_t());
        return q;
    }

    Rational operator-() const { return Rational(mpq_class(-v_)); }
    Rational operator+(const Rational& o) const { return Rational(mpq_class(v_ + o.v_)); }
    Rational operator-(const Rational& o) const { return Rational(mpq_class(v_ - o.v_)); }
    Rational operator*(const Rational& o) const { return Rational(mpq_class(v_ * o.v_)); }
    Rational operator/(const Rational& o) const
    {
        if (o.isZero()) throw Error("rational division by zero");
        return Rational(mpq_class(v_ / o.v_));
    }
    Rational& operator+=(const Rational& o) { v_ += o.v_; return *this; }
    Rational& operator-=(const Rational& o) { v_ -= o.v_; return *this; }
    Rational& operator*=(const Rational& o) { v_ *= o.v_; return *this; }
    Rational& operator/=(const Rational& o) { *this = *this / o; return *this; }

    Rational inverse() const
    {
        if (isZero()) throw Error("rational inverse of zero");
        return Rational(mpq_class(1 / v_));
    }

    static Rational pow(const Rational& base, unsigned e);

    bool operator==(const Rational& o) const { return v_ == o.v_; }
    bool operator!=(const Rational& o) const { return v_ != o.v_; }
    bool operator<(const Rational& o) const { return v_ < o.v_; }
    bool operator<=(const Rational& o) const { return v_ <= o.v_; }
    bool operator>(const Rational& o) const { return v_ > o.v_; }
    bool operator>=(const Rational& o) const { return v_ >= o.v_; }

    int compare(const Rational& o) const { return cmp(v_, o.v_); }

    /** "p" when integral, "p/q" otherwise. */
    std::string str() const;

    double toDouble() const { return v_.get_d(); }

private:
    explicit Rational(mpq_class v) : v_(std::move(v)) {}
    mpq_class v_;
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

} // namespace cadmin
