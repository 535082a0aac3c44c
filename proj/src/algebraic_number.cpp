#include "cadmin/algebraic_number.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>
#include <utility>

#include "cadmin/errors.hpp"

namespace cadmin {

namespace {

// ---------- dense integer univariate helpers (ascending degree) ----------

using ZPoly = std::vector<BigInt>; // c0 + c1 x + ...; invariant: back() != 0 unless empty

void trim(ZPoly& p)
{
    while (!p.empty() && p.back() == 0) p.pop_back();
}

/** Primitive integer form of a univariate rational polynomial (sign kept). */
ZPoly toIntegerPrimitive(const Polynomial& p)
{
    BigInt denLcm(1);
    for (const auto& [e, c] : p.terms())
        mpz_lcm(denLcm.get_mpz_t(), denLcm.get_mpz_t(), c.den().get_mpz_t());
    ZPoly z(static_cast<std::size_t>(std::max(p.degree(0), 0)) + 1, BigInt(0));
    for (const auto& [e, c] : p.terms())
        z[e[0]] = (c * Rational(denLcm)).num();
    trim(z);
    BigInt g(0);
    for (const BigInt& c : z) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
    if (g > 1)
        for (BigInt& c : z) c /= g;
    return z;
}

/** Sign of p at a rational point, exactly. */
int signAtRational(const ZPoly& p, const Rational& x)
{
    if (p.empty()) return 0;
    const BigInt& num = x.num();
    const BigInt& den = x.den();
    BigInt acc = p.back();
    BigInt dpow(1);
    for (std::size_t i = p.size() - 1; i-- > 0;) {
        dpow *= den;
        acc = acc * num + p[i] * dpow;
    }
    return sgn(acc);
}

/** In-place Taylor shift by 1: p(x) <- p(x+1). */
void taylorShift1(ZPoly& p)
{
    const std::size_t n = p.size();
    if (n < 2) return;
    for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = n - 1; j-- > i;)
            p[j] += p[j + 1];
}

int signVariations(const ZPoly& p)
{
    int v = 0, prev = 0;
    for (const BigInt& c : p) {
        const int s = sgn(c);
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

/** Descartes bound on the roots of p in (0,1): variations of the
    reverse of p shifted by one. */
int variations01(const ZPoly& p)
{
    ZPoly r(p.rbegin(), p.rend());
    taylorShift1(r);
    return signVariations(r);
}

/** Scaled half image 2^deg(p) * p(x/2); its roots in (0,1) are p's in (0,1/2). */
ZPoly scaleHalf(const ZPoly& p)
{
    ZPoly q = p;
    BigInt pw(1);
    for (std::size_t i = q.size(); i-- > 0;) {
        q[i] *= pw;
        pw *= 2;
    }
    trim(q);
    return q;
}

/** Exact division by (x - 1); p(1) must be zero. */
void divideByXMinus1(ZPoly& p)
{
    assert(!p.empty());
    ZPoly q(p.size() - 1);
    BigInt carry(0);
    for (std::size_t i = p.size(); i-- > 1;) {
        carry += p[i];
        q[i - 1] = carry;
    }
    assert(carry + p[0] == 0);
    p = std::move(q);
    trim(p);
}

/** Strip one zero root (the constant term must vanish). */
void stripOneZeroRoot(ZPoly& p)
{
    assert(!p.empty() && p.front() == 0);
    p.erase(p.begin());
}

/** Cauchy root bound as a power of two: all real roots lie strictly
    inside (-B, B). */
Rational cauchyBoundPow2(const ZPoly& p)
{
    BigInt maxc(0);
    for (std::size_t i = 0; i + 1 < p.size(); ++i) {
        BigInt a = abs(p[i]);
        if (a > maxc) maxc = a;
    }
    BigInt bound = 2 + maxc / abs(p.back()); // > 1 + max|c_i|/|lead|
    BigInt b(2);
    while (b < bound) b *= 2;
    return Rational(b);
}

/** Affine image of p with (0,1) covering (lo,hi), cleared to integer
    coefficients: q(x) ~ p(lo + (hi-lo) x). */
ZPoly mapToUnit(const ZPoly& p, const Rational& lo, const Rational& hi)
{
    const Rational w = hi - lo;
    std::vector<Rational> q; // Horner: q <- q*(lo + w x) + c_i
    for (std::size_t i = p.size(); i-- > 0;) {
        std::vector<Rational> r(q.size() + 1, Rational(0));
        for (std::size_t j = 0; j < q.size(); ++j) {
            r[j] += q[j] * lo;
            r[j + 1] += q[j] * w;
        }
        r[0] += Rational(p[i]);
        while (!r.empty() && r.back().isZero()) r.pop_back();
        q = std::move(r);
    }
    BigInt denLcm(1);
    for (const Rational& c : q)
        mpz_lcm(denLcm.get_mpz_t(), denLcm.get_mpz_t(), c.den().get_mpz_t());
    ZPoly z(q.size());
    for (std::size_t i = 0; i < q.size(); ++i) z[i] = (q[i] * Rational(denLcm)).num();
    trim(z);
    return z;
}

/**
 * Bisection tree of the variation-counting isolation method. `q` is an
 * integer polynomial whose roots in (0,1) correspond to the original's
 * roots in the open interval (lo, hi); exact roots found at bisection
 * midpoints are divided out of the children, so every emitted interval
 * has non-root endpoints and contains exactly one root.
 */
struct IsolationWalk
{
    const ZPoly* original = nullptr;
    std::vector<std::pair<Rational, Rational>> openIntervals; // ascending
    std::vector<Rational> exactRoots;                         // ascending

    void recurse(const ZPoly& q, const Rational& lo, const Rational& hi)
    {
        const int v = variations01(q);
        if (v == 0) return;
        if (v == 1) {
            openIntervals.emplace_back(lo, hi);
            return;
        }
        const Rational mid = (lo + hi) / Rational(2);
        ZPoly left = scaleHalf(q);
        ZPoly right = left;
        taylorShift1(right);
        if (signAtRational(*original, mid) == 0) {
            divideByXMinus1(left);
            stripOneZeroRoot(right);
            recurse(left, lo, mid);
            exactRoots.push_back(mid);
            recurse(right, mid, hi);
        } else {
            recurse(left, lo, mid);
            recurse(right, mid, hi);
        }
    }
};

// ---------- Sturm chains ----------

Rational leadingCoefficient1(const Polynomial& p)
{
    return p.terms().rbegin()->second;
}

Polynomial negRemainder1(const Polynomial& a, const Polynomial& b)
{
    Polynomial rem = a;
    const int db = b.degree(0);
    const Rational lb = leadingCoefficient1(b);
    while (!rem.isZero() && rem.degree(0) >= db) {
        const int dr = rem.degree(0);
        const Rational lr = leadingCoefficient1(rem);
        Polynomial t = Polynomial::fromTerms(
            1, {{{static_cast<unsigned>(dr - db)}, lr / lb}});
        rem = rem - t * b;
    }
    return -rem;
}

std::vector<Polynomial> sturmChain(const Polynomial& p)
{
    std::vector<Polynomial> chain;
    Polynomial a = p;
    Polynomial b = p.derivative(0);
    chain.push_back(a);
    while (!b.isZero()) {
        chain.push_back(b);
        Polynomial next = negRemainder1(a, b);
        a = std::move(b);
        b = std::move(next);
    }
    return chain;
}

int sturmVariationsAt(const std::vector<Polynomial>& chain, const Rational& x)
{
    int v = 0, prev = 0;
    for (const Polynomial& q : chain) {
        const int s = q.evaluate({x}).sign();
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++v;
        prev = s;
    }
    return v;
}

/** Simplest rational in the open interval (a, b) for 0 <= a < b:
    continued-fraction walk, descending one quotient per step. */
Rational simplestNonNegative(const Rational& a, const Rational& b)
{
    const BigInt fa = a.floor();
    const Rational next(BigInt(fa + 1)); // smallest integer strictly above a
    if (next < b) return next;
    // No integer inside; everything in (a,b) has integer part fa.
    const Rational offA = a - Rational(fa);
    const Rational offB = b - Rational(fa); // <= 1 since fa+1 >= b
    if (offA.isZero()) {
        // (fa, fa + offB): the simplest offset is the largest unit fraction
        // strictly below offB.
        BigInt m = offB.inverse().floor() + 1;
        return Rational(fa) + Rational(BigInt(1), m);
    }
    return Rational(fa) + simplestNonNegative(offB.inverse(), offA.inverse()).inverse();
}

} // namespace

int countRootsInOpenInterval(const Polynomial& p, const Rational& lo, const Rational& hi)
{
    if (p.isZero()) throw CurtainFibreError();
    if (p.vars() != 1)
        throw VariableMismatchError("root counting needs a univariate polynomial");
    if (lo >= hi) return 0;
    Polynomial sf = squarefreePart(p);
    if (sf.isConstant()) return 0;
    if (sf.evaluate({lo}).isZero() || sf.evaluate({hi}).isZero())
        throw Error("root count over an interval with a root at an endpoint");
    auto chain = sturmChain(sf);
    return sturmVariationsAt(chain, lo) - sturmVariationsAt(chain, hi);
}

Rational simplestRationalStrictlyBetween(const Rational& lo, const Rational& hi)
{
    if (lo >= hi) throw Error("simplestRationalStrictlyBetween: empty interval");
    if (lo.sign() < 0 && hi.sign() > 0) return Rational(0);
    if (hi.sign() <= 0) return -simplestNonNegative(-hi, -lo);
    return simplestNonNegative(lo, hi);
}

// ---------- AlgebraicNumber ----------

AlgebraicNumber::AlgebraicNumber()
    : defining_(Polynomial::variable(1, 0)), lo_(-1), hi_(1), rational_(Rational(0))
{
}

AlgebraicNumber AlgebraicNumber::fromRational(const Rational& r)
{
    AlgebraicNumber a;
    a.defining_ = Polynomial::fromTerms(
        1, {{{1}, Rational(r.den())}, {{0}, -Rational(r.num())}});
    a.lo_ = r - Rational(1);
    a.hi_ = r + Rational(1);
    a.rational_ = r;
    return a;
}

AlgebraicNumber AlgebraicNumber::fromDefining(Polynomial defining, Rational lo, Rational hi,
                                              std::optional<Rational> rationalValue)
{
    AlgebraicNumber a;
    a.defining_ = std::move(defining);
    a.lo_ = std::move(lo);
    a.hi_ = std::move(hi);
    a.rational_ = std::move(rationalValue);
    return a;
}

const Rational& AlgebraicNumber::rationalValue() const
{
    if (!rational_) throw Error("rationalValue of an irrational algebraic number");
    return *rational_;
}

AlgebraicNumber AlgebraicNumber::refined(int rounds) const
{
    AlgebraicNumber a = *this;
    if (rational_) {
        for (int i = 0; i < rounds; ++i) {
            const Rational w = (a.hi_ - a.lo_) / Rational(4);
            a.lo_ = *rational_ - w;
            a.hi_ = *rational_ + w;
        }
        return a;
    }
    const int signHi = defining_.evaluate({hi_}).sign();
    for (int i = 0; i < rounds; ++i) {
        const Rational mid = (a.lo_ + a.hi_) / Rational(2);
        const int sm = defining_.evaluate({mid}).sign();
        if (sm == 0) {
            // The midpoint is the root itself.
            const Rational w = (a.hi_ - a.lo_) / Rational(8);
            a.lo_ = mid - w;
            a.hi_ = mid + w;
            a.rational_ = mid;
            return a;
        }
        if (sm == signHi) a.hi_ = mid;
        else a.lo_ = mid;
    }
    return a;
}

AlgebraicNumber AlgebraicNumber::refinedToWidth(const Rational& w) const
{
    AlgebraicNumber a = *this;
    while (a.hi_ - a.lo_ >= w) a = a.refined(1);
    return a;
}

int AlgebraicNumber::sign() const
{
    return compareRational(Rational(0));
}

int AlgebraicNumber::compareRational(const Rational& r) const
{
    if (rational_) return rational_->compare(r);
    if (hi_ <= r) return -1;
    if (lo_ >= r) return 1;
    if (defining_.evaluate({r}).isZero()) return 0; // r inside, so r is the root
    AlgebraicNumber a = *this;
    while (a.lo_ < r && a.hi_ > r) a = a.refined(1);
    return a.lo_ >= r ? 1 : -1;
}

int AlgebraicNumber::compare(const AlgebraicNumber& a, const AlgebraicNumber& b)
{
    if (a.rational_ && b.rational_) return a.rational_->compare(*b.rational_);
    if (b.rational_) return a.compareRational(*b.rational_);
    if (a.rational_) return -b.compareRational(*a.rational_);

    AlgebraicNumber x = a, y = b;
    for (int round = 0; round < 4; ++round) {
        if (x.hi_ <= y.lo_) return -1;
        if (y.hi_ <= x.lo_) return 1;
        x = x.refined(1);
        y = y.refined(1);
    }
    // Persistent overlap: decide equality exactly. A root of the gcd of the
    // defining polynomials inside the interval overlap is a common root in
    // both isolating intervals, hence equals both numbers. The overlap's
    // endpoints are isolating-interval endpoints, never roots of the gcd.
    const Rational lo = std::max(x.lo_, y.lo_);
    const Rational hi = std::min(x.hi_, y.hi_);
    if (lo < hi) {
        Polynomial g = gcd(x.defining_, y.defining_);
        if (!g.isConstant() && countRootsInOpenInterval(g, lo, hi) > 0) return 0;
    }
    while (true) {
        x = x.refined(1);
        y = y.refined(1);
        if (x.hi_ <= y.lo_) return -1;
        if (y.hi_ <= x.lo_) return 1;
    }
}

double AlgebraicNumber::toDouble() const
{
    if (rational_) return rational_->toDouble();
    AlgebraicNumber a = refinedToWidth(Rational(BigInt(1), BigInt(1) << 60));
    return ((a.lo_ + a.hi_) / Rational(2)).toDouble();
}

std::string AlgebraicNumber::str() const
{
    if (rational_) return rational_->str();
    std::ostringstream os;
    os << "root of " << defining_.str() << " in (" << lo_.str() << ", " << hi_.str() << ")";
    return os.str();
}

// ---------- isolation ----------

std::vector<AlgebraicNumber> isolateRealRoots(const Polynomial& p)
{
    if (p.isZero()) throw CurtainFibreError();
    if (p.vars() != 1)
        throw VariableMismatchError("isolateRealRoots needs a univariate polynomial");
    if (p.isConstant()) return {};

    const Polynomial sf = squarefreePart(p);
    const ZPoly z = toIntegerPrimitive(sf);
    assert(z.size() >= 2);

    IsolationWalk walk;
    walk.original = &z;
    const Rational B = cauchyBoundPow2(z);
    walk.recurse(mapToUnit(z, -B, B), -B, B);

    // Divide the midpoint-exact roots out so the defining polynomial for the
    // remaining roots has no root at any emitted interval endpoint (those
    // endpoints are all former bisection midpoints or the outer bound).
    Polynomial reduced = sf;
    for (const Rational& r : walk.exactRoots) {
        Polynomial lin = Polynomial::fromTerms(
            1, {{{1}, Rational(r.den())}, {{0}, -Rational(r.num())}});
        auto q = divideExact(reduced, lin);
        assert(q.has_value());
        reduced = normalizeCanonical(*q);
    }
    const ZPoly zr = toIntegerPrimitive(reduced);
    const BigInt leadAbs = zr.empty() ? BigInt(1) : abs(zr.back());

    struct Entry
    {
        Rational key;
        AlgebraicNumber value;
    };
    std::vector<Entry> entries;
    entries.reserve(walk.exactRoots.size() + walk.openIntervals.size());
    for (const Rational& r : walk.exactRoots)
        entries.push_back({r, AlgebraicNumber::fromRational(r)});

    for (const auto& [origLo, origHi] : walk.openIntervals) {
        // Shrink until rational-root detection is certified: a rational root
        // p/q in lowest terms has q dividing the leading coefficient, so two
        // candidates differ by at least 1/lead^2; below half that width the
        // simplest rational in the interval is the root whenever the root is
        // rational at all.
        Rational a = origLo, b = origHi;
        const Rational minWidth(BigInt(1), leadAbs * leadAbs * 2);
        const int signB = signAtRational(zr, b);
        assert(signB != 0 && signAtRational(zr, a) == -signB);
        std::optional<Rational> exact;
        while (b - a >= minWidth) {
            const Rational mid = (a + b) / Rational(2);
            const int sm = signAtRational(zr, mid);
            if (sm == 0) {
                exact = mid;
                break;
            }
            if (sm == signB) b = mid;
            else a = mid;
        }
        if (!exact) {
            const Rational cand = simplestRationalStrictlyBetween(a, b);
            if (cand.den() <= leadAbs && signAtRational(zr, cand) == 0) exact = cand;
        }
        if (exact) {
            entries.push_back({*exact, AlgebraicNumber::fromRational(*exact)});
        } else {
            entries.push_back(
                {(a + b) / Rational(2), AlgebraicNumber::fromDefining(reduced, a, b)});
        }
    }

    std::sort(entries.begin(), entries.end(),
              [](const Entry& x, const Entry& y) { return x.key < y.key; });
    std::vector<AlgebraicNumber> out;
    out.reserve(entries.size());
    for (Entry& e : entries) out.push_back(std::move(e.value));
    // Make the isolating intervals pairwise disjoint (rational roots start
    // with wide default intervals).
    for (std::size_t i = 0; i + 1 < out.size(); ++i)
        while (out[i].hi() > out[i + 1].lo()) {
            out[i] = out[i].refined(1);
            out[i + 1] = out[i + 1].refined(1);
        }
    return out;
}

int signAtUnivariate(const Polynomial& q, const AlgebraicNumber& a)
{
    if (q.isZero()) return 0;
    if (q.vars() != 1)
        throw VariableMismatchError("signAtUnivariate needs a univariate polynomial");
    if (a.isRational()) return q.evaluate({a.rationalValue()}).sign();
    if (q.isConstant()) return q.constantValue().sign();

    // Zero test first: q vanishes at the number exactly when the gcd with
    // the defining polynomial has a root in the isolating interval.
    Polynomial g = gcd(squarefreePart(q), a.defining());
    if (!g.isConstant() && countRootsInOpenInterval(g, a.lo(), a.hi()) > 0) return 0;

    AlgebraicNumber x = a;
    while (true) {
        const auto s = q.evaluateOnBox({x.interval()}).uniformSign();
        if (s) return *s;
        x = x.refined(1);
    }
}

} // namespace cadmin
