#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cadmin/interval.hpp"
#include "cadmin/rational.hpp"

namespace cadmin {

/// Maximum number of variable slots. Public decompositions use at most 3
/// variables; the fourth slot exists for internal value-polynomial
/// constructions (eliminating up to three algebraic coordinates against a
/// fresh variable).
inline constexpr int kMaxVars = 4;

using Exponents = std::array<unsigned, kMaxVars>;

/** Term order: the highest variable slot is the most significant. */
struct ExponentsLess
{
    bool operator()(const Exponents& a, const Exponents& b) const
    {
        for (int i = kMaxVars - 1; i >= 0; --i)
            if (a[i] != b[i]) return a[i] < b[i];
        return false;
    }
};

/**
 * Sparse multivariate polynomial with rational coefficients over a fixed
 * number of variable slots (0..kMaxVars). Zero coefficients are never
 * stored. Values are immutable after construction in the sense that all
 * operations return new polynomials.
 */
class Polynomial
{
public:
    using TermMap = std::map<Exponents, Rational, ExponentsLess>;

    explicit Polynomial(int vars = 1);

    static Polynomial constant(int vars, const Rational& c);
    static Polynomial variable(int vars, int slot);
    /** Build from (exponent vector, coefficient) pairs; vectors may be
        shorter than vars (missing entries are zero). */
    static Polynomial fromTerms(int vars,
                                const std::vector<std::pair<std::vector<unsigned>, Rational>>& ts);

    int vars() const { return vars_; }
    bool isZero() const { return terms_.empty(); }
    bool isConstant() const;
    /** Value of a constant polynomial (zero polynomial gives 0). */
    Rational constantValue() const;

    /** Degree in one slot; the zero polynomial has degree -1 everywhere. */
    int degree(int slot) const;
    int degreeLast() const { return degree(vars_ - 1); }
    int totalDegree() const;
    std::size_t termCount() const { return terms_.size(); }
    const TermMap& terms() const { return terms_; }

    /** Largest coefficient magnitude (0 for the zero polynomial). */
    Rational maxAbsCoefficient() const;

    Polynomial operator-() const;
    Polynomial operator+(const Polynomial& o) const;
    Polynomial operator-(const Polynomial& o) const;
    Polynomial operator*(const Polynomial& o) const;
    Polynomial operator*(const Rational& c) const;
    Polynomial pow(unsigned e) const;
    bool operator==(const Polynomial& o) const { return vars_ == o.vars_ && terms_ == o.terms_; }
    bool operator!=(const Polynomial& o) const { return !(*this == o); }

    Polynomial derivative(int slot) const;

    Rational evaluate(const std::vector<Rational>& pt) const;
    QInterval evaluateOnBox(const std::vector<QInterval>& box) const;

    // ---- views with respect to the last variable ----

    /** Coefficients c_0..c_d of the last variable, each with vars-1 slots. */
    std::vector<Polynomial> coefficientsLast() const;
    Polynomial leadingCoefficientLast() const;
    /** Drop the leading term with respect to the last variable. */
    Polynomial reductumLast() const;
    static Polynomial fromCoefficientsLast(int vars, const std::vector<Polynomial>& cs);

    /** Substitute a rational for the last variable (result has vars-1 slots). */
    Polynomial substituteLast(const Rational& c) const;
    /** Fix slots 0..m-1 to rationals; remaining slots shift down. */
    Polynomial substitutePrefix(const std::vector<Rational>& values) const;

    // ---- slot plumbing ----

    /** Reinterpret with newVars slots. Shrinking requires the dropped
        slots to be unused. */
    Polynomial withVars(int newVars) const;
    /** Send slot i to slot target[i] of a newVars-slot polynomial.
        Targets must be distinct and cover every used slot. */
    Polynomial remapSlots(const std::vector<int>& target, int newVars) const;
    Polynomial swapSlots(int i, int j) const;

    /** Substitute polynomial images[i] (over newVars slots) for slot i. */
    Polynomial compose(const std::vector<Polynomial>& images, int newVars) const;

    std::string str(const std::vector<std::string>& names = {}) const;
    /** Stable canonical form used for hashing, dedup and sorting. */
    std::string canonical() const;

private:
    void insertTerm(const Exponents& e, const Rational& c);
    static void checkSameVars(const Polynomial& a, const Polynomial& b);

    int vars_;
    TermMap terms_;
};

// ---- free algebra ----

/** Number of variable slots actually used: highest used slot + 1. */
int effectiveVars(const Polynomial& p);
/** Shrink to exactly effectiveVars slots. */
Polynomial toEffectiveVars(const Polynomial& p);

/** Greatest common divisor (primitive PRS), canonically normalized. */
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/** Content/primitive part with respect to the last variable. */
Polynomial contentLast(const Polynomial& p);
Polynomial primitivePartLast(const Polynomial& p);

/** Scale to integer coefficients with content 1 and positive leading
    coefficient under the term order. Zero stays zero. */
Polynomial normalizeCanonical(const Polynomial& p);

/** Product of distinct irreducible factors (char 0), normalized. */
Polynomial squarefreePart(const Polynomial& p);

/** Pairwise-coprime squarefree basis with the same real zero set as the
    product of the inputs; constants and zero inputs dropped. Throws
    DegenerateFamilyError when a nonempty input is entirely zero. */
std::vector<Polynomial> squarefreeBasis(const std::vector<Polynomial>& polys);

/** Exact division; nullopt if b does not divide a. */
std::optional<Polynomial> divideExact(const Polynomial& a, const Polynomial& b);

/** Pseudo-remainder of a by b with respect to the last variable. */
Polynomial pseudoRemainderLast(const Polynomial& a, const Polynomial& b);

/** Resultant with respect to the last variable (Sylvester matrix,
    fraction-free elimination). Errors when both inputs are zero. */
Polynomial resultantLast(const Polynomial& a, const Polynomial& b);
Polynomial discriminantLast(const Polynomial& p);

/** Principal subresultant coefficients psc_0..psc_{min(deg a, deg b)-1}
    with respect to the last variable. */
std::vector<Polynomial> pscChainLast(const Polynomial& a, const Polynomial& b);

/** Resultant eliminating an arbitrary slot; the result keeps the other
    slots in order, one slot fewer. */
Polynomial eliminateSlot(const Polynomial& a, const Polynomial& b, int slot);

/** Fraction-free (Bareiss) determinant of a square polynomial matrix. */
Polynomial bareissDeterminant(std::vector<std::vector<Polynomial>> m);

} // namespace cadmin
