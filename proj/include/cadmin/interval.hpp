#pragma once

#include <optional>
#include <vector>

#include "cadmin/rational.hpp"

namespace cadmin {

/** Closed interval with rational endpoints, lo <= hi. */
struct QInterval
{
    Rational lo;
    Rational hi;

    QInterval() = default;
    QInterval(Rational l, Rational h) : lo(std::move(l)), hi(std::move(h))
    {
        if (lo > hi) throw Error("interval with lo > hi");
    }
    static QInterval point(const Rational& r) { return QInterval(r, r); }

    bool containsZero() const { return lo.sign() <= 0 && hi.sign() >= 0; }
    Rational width() const { return hi - lo; }
    Rational mid() const { return (lo + hi) / Rational(2); }

    /** Sign of every point in the interval, if uniform. */
    std::optional<int> uniformSign() const
    {
        if (lo.sign() > 0) return 1;
        if (hi.sign() < 0) return -1;
        if (lo.isZero() && hi.isZero()) return 0;
        return std::nullopt;
    }

    QInterval operator+(const QInterval& o) const { return QInterval(lo + o.lo, hi + o.hi); }
    QInterval operator-(const QInterval& o) const { return QInterval(lo - o.hi, hi - o.lo); }
    QInterval operator-() const { return QInterval(-hi, -lo); }
    QInterval operator*(const QInterval& o) const;
    QInterval pow(unsigned e) const;
    QInterval scaled(const Rational& c) const
    {
        return c.sign() >= 0 ? QInterval(lo * c, hi * c) : QInterval(hi * c, lo * c);
    }
};

} // namespace cadmin
