#pragma once

#include <optional>
#include <string>
#include <vector>

#include "cadmin/interval.hpp"
#include "cadmin/polynomial.hpp"

namespace cadmin {

/**
 * A real algebraic number: a squarefree univariate defining polynomial
 * together with an open isolating interval that contains exactly one of
 * its real roots and whose endpoints are not roots. Rational values also
 * carry the value itself. Immutable; refinement returns a new value.
 */
class AlgebraicNumber
{
public:
    AlgebraicNumber(); // zero
    static AlgebraicNumber fromRational(const Rational& r);
    /** Internal factory; callers must guarantee the invariants. */
    static AlgebraicNumber fromDefining(Polynomial defining, Rational lo, Rational hi,
                                        std::optional<Rational> rationalValue = std::nullopt);

    const Polynomial& defining() const { return defining_; }
    const Rational& lo() const { return lo_; }
    const Rational& hi() const { return hi_; }
    QInterval interval() const { return QInterval(lo_, hi_); }

    bool isRational() const { return rational_.has_value(); }
    const Rational& rationalValue() const;

    /** Halve the isolating interval `rounds` times. */
    AlgebraicNumber refined(int rounds = 1) const;
    AlgebraicNumber refinedToWidth(const Rational& w) const;

    int sign() const;
    int compareRational(const Rational& r) const;
    static int compare(const AlgebraicNumber& a, const AlgebraicNumber& b);
    bool operator==(const AlgebraicNumber& o) const { return compare(*this, o) == 0; }
    bool operator!=(const AlgebraicNumber& o) const { return compare(*this, o) != 0; }
    bool operator<(const AlgebraicNumber& o) const { return compare(*this, o) < 0; }
    bool operator<=(const AlgebraicNumber& o) const { return compare(*this, o) <= 0; }

    double toDouble() const;
    std::string str() const;

private:
    Polynomial defining_; // univariate, squarefree, exactly one root in (lo, hi)
    Rational lo_, hi_;
    std::optional<Rational> rational_;
};

/**
 * All real roots of a univariate polynomial, strictly increasing, with
 * pairwise disjoint isolating intervals. Rational roots are recognized
 * exactly. Throws CurtainFibreError on the zero polynomial; a nonzero
 * constant has no roots.
 */
std::vector<AlgebraicNumber> isolateRealRoots(const Polynomial& p);

/** Exact sign of a univariate polynomial at an algebraic point. */
int signAtUnivariate(const Polynomial& q, const AlgebraicNumber& a);

/** Number of distinct real roots of p in the open interval (lo, hi),
    by Sturm's theorem; endpoints must not be roots. */
int countRootsInOpenInterval(const Polynomial& p, const Rational& lo, const Rational& hi);

/** The rational with smallest denominator (then smallest numerator
    magnitude) strictly between lo and hi. */
Rational simplestRationalStrictlyBetween(const Rational& lo, const Rational& hi);

} // namespace cadmin
