#include "cadmin/point_eval.hpp"

#include <algorithm>
#include <cassert>
#include <climits>
#include <map>

#include "cadmin/errors.hpp"

namespace cadmin {

namespace {

struct CompactPoint
{
    Polynomial poly;                    // only irrational coordinates remain
    std::vector<AlgebraicNumber> syms;  // coordinate values for the new slots
};

/** Substitute the rational coordinates exactly and renumber the remaining
    (irrational) coordinates to slots 0..s-1. */
CompactPoint substituteRationals(const Polynomial& q, const std::vector<AlgebraicNumber>& point)
{
    if (static_cast<int>(point.size()) != q.vars())
        throw VariableMismatchError("point arity does not match the polynomial");
    CompactPoint out;
    for (const auto& a : point)
        if (!a.isRational()) out.syms.push_back(a);
    const int s = static_cast<int>(out.syms.size());
    std::vector<Polynomial> images;
    images.reserve(point.size());
    int next = 0;
    for (const auto& a : point) {
        if (a.isRational())
            images.push_back(Polynomial::constant(s, a.rationalValue()));
        else
            images.push_back(Polynomial::variable(s, next++));
    }
    out.poly = q.compose(images, s);
    return out;
}

/** Content of p as a polynomial in all slots except `slot`, i.e. the gcd of
    the univariate-in-`slot` coefficient polynomials. Result has one slot. */
Polynomial univariateContentInSlot(const Polynomial& p, int slot)
{
    std::map<Exponents, Polynomial, ExponentsLess> groups;
    for (const auto& [e, c] : p.terms()) {
        Exponents rest = e;
        const unsigned d = rest[static_cast<std::size_t>(slot)];
        rest[static_cast<std::size_t>(slot)] = 0;
        auto it = groups.find(rest);
        if (it == groups.end()) it = groups.emplace(rest, Polynomial(1)).first;
        it->second = it->second + Polynomial::fromTerms(1, {{{d}, c}});
    }
    Polynomial cont(1);
    for (const auto& [e, uni] : groups) cont = gcd(cont, uni);
    return cont;
}

/**
 * Univariate polynomial with q(syms) among its roots: starting from
 * t - q(x_1..x_s) with t in slot 0, each symbol slot is eliminated with a
 * defining polynomial pruned to stay coprime to the content, so the result
 * is never identically zero.
 */
Polynomial valuePolynomial(const Polynomial& qc, const std::vector<AlgebraicNumber>& syms)
{
    const int s = static_cast<int>(syms.size());
    assert(s + 1 <= kMaxVars);
    // M = t - qc with t at slot 0 and symbol j at slot j+1... build by remap.
    std::vector<int> target(static_cast<std::size_t>(s));
    for (int i = 0; i < s; ++i) target[static_cast<std::size_t>(i)] = i + 1;
    Polynomial M = Polynomial::variable(s + 1, 0) - qc.remapSlots(target, s + 1);
    for (int j = s; j >= 1; --j) {
        const AlgebraicNumber& sym = syms[static_cast<std::size_t>(j - 1)];
        Polynomial h = sym.defining();
        const Polynomial cont = univariateContentInSlot(M, j);
        const Polynomial g = gcd(h, cont);
        if (!g.isConstant()) {
            if (signAtUnivariate(g, sym) == 0)
                throw FibreDegenerateError();
            auto rest = divideExact(h, g);
            assert(rest.has_value());
            h = normalizeCanonical(*rest);
        }
        M = eliminateSlot(M, h.remapSlots({j}, M.vars()), j);
        if (M.isZero()) throw StructureError("value polynomial vanished");
    }
    return M;
}

/** Strip the highest power of the variable dividing p; returns the cofactor. */
Polynomial stripVariableFactor(const Polynomial& p, unsigned& power)
{
    power = 0;
    if (p.isZero()) return p;
    unsigned minExp = UINT_MAX;
    for (const auto& [e, c] : p.terms()) minExp = std::min(minExp, e[0]);
    power = minExp;
    if (minExp == 0) return p;
    std::vector<std::pair<std::vector<unsigned>, Rational>> ts;
    for (const auto& [e, c] : p.terms()) ts.push_back({{e[0] - minExp}, c});
    return Polynomial::fromTerms(1, ts);
}

} // namespace

int signAt(const Polynomial& q, const std::vector<AlgebraicNumber>& point)
{
    if (q.isZero()) return 0;
    CompactPoint cp = substituteRationals(q, point);
    if (cp.syms.empty()) return cp.poly.constantValue().sign();
    if (cp.syms.size() == 1) return signAtUnivariate(cp.poly, cp.syms[0]);

    // Interval refinement usually resolves the sign quickly.
    std::vector<AlgebraicNumber> pts = cp.syms;
    auto boxSign = [&]() -> std::optional<int> {
        std::vector<QInterval> box;
        box.reserve(pts.size());
        for (const auto& a : pts) box.push_back(a.interval());
        return cp.poly.evaluateOnBox(box).uniformSign();
    };
    for (int round = 0; round < 24; ++round) {
        if (auto s = boxSign()) return *s;
        for (auto& a : pts) a = a.refined(1);
    }

    // Exact fallback: the value of the polynomial at the point is a root of
    // a univariate value polynomial M. If t^k || M, nonzero roots of M stay
    // outside (-delta, delta) for the Cauchy-style bound delta below, so an
    // interval image inside it certifies the value is zero.
    const Polynomial M = valuePolynomial(cp.poly, cp.syms);
    unsigned k = 0;
    const Polynomial core = stripVariableFactor(M, k);
    if (k > 0 && core.isConstant()) return 0; // M = c * t^k: only root is zero
    std::optional<Rational> delta;
    if (k > 0) {
        Rational a0 = core.terms().begin()->second.abs(); // constant term (nonzero)
        Rational maxOther(0);
        bool first = true;
        for (const auto& [e, c] : core.terms()) {
            if (first) {
                first = false; // skip the constant term (lowest under the order)
                continue;
            }
            maxOther = std::max(maxOther, c.abs());
        }
        delta = a0 / (a0 + maxOther);
    }
    while (true) {
        std::vector<QInterval> box;
        box.reserve(pts.size());
        for (const auto& a : pts) box.push_back(a.interval());
        const QInterval img = cp.poly.evaluateOnBox(box);
        if (auto s = img.uniformSign()) return *s;
        // When delta is absent, zero is not a root of M, so refinement alone
        // must eventually resolve the sign.
        if (delta && -*delta < img.lo && img.hi < *delta) return 0;
        for (auto& a : pts) a = a.refined(1);
    }
}

std::vector<AlgebraicNumber> isolateFibreRoots(const Polynomial& p,
                                               const std::vector<AlgebraicNumber>& base)
{
    if (p.isZero()) throw CurtainFibreError();
    if (static_cast<int>(base.size()) != p.vars() - 1)
        throw VariableMismatchError("base point arity does not match the polynomial");

    // Curtain check: the fibre polynomial is identically zero exactly when
    // every coefficient (in the fibre variable) vanishes at the base point.
    bool allZero = true;
    for (const Polynomial& coef : p.coefficientsLast())
        if (!coef.isZero() && signAt(coef, base) != 0) {
            allZero = false;
            break;
        }
    if (allZero) throw CurtainFibreError();

    // Rational base points substitute directly.
    bool allRational = true;
    for (const auto& a : base)
        if (!a.isRational()) {
            allRational = false;
            break;
        }
    if (allRational) {
        std::vector<Rational> vals;
        vals.reserve(base.size());
        for (const auto& a : base) vals.push_back(a.rationalValue());
        return isolateRealRoots(base.empty() ? p : p.substitutePrefix(vals));
    }

    // Mixed case: renumber so the fibre variable is slot 0 and the
    // irrational base coordinates are slots 1..s, then eliminate the symbol
    // slots with (pruned) defining polynomials; fibre roots survive into the
    // eliminant, and an exact sign filter removes the spurious ones.
    std::vector<AlgebraicNumber> syms;
    std::vector<Polynomial> images;
    for (const auto& a : base)
        if (!a.isRational()) syms.push_back(a);
    const int s = static_cast<int>(syms.size());
    assert(s + 1 <= kMaxVars);
    int next = 1;
    for (const auto& a : base) {
        if (a.isRational())
            images.push_back(Polynomial::constant(s + 1, a.rationalValue()));
        else
            images.push_back(Polynomial::variable(s + 1, next++));
    }
    images.push_back(Polynomial::variable(s + 1, 0)); // fibre variable
    Polynomial N = p.compose(images, s + 1);

    for (int j = s; j >= 1; --j) {
        const AlgebraicNumber& sym = syms[static_cast<std::size_t>(j - 1)];
        Polynomial h = sym.defining();
        const Polynomial cont = univariateContentInSlot(N, j);
        const Polynomial g = gcd(h, cont);
        if (!g.isConstant()) {
            if (signAtUnivariate(g, sym) == 0) throw FibreDegenerateError();
            auto rest = divideExact(h, g);
            assert(rest.has_value());
            h = normalizeCanonical(*rest);
        }
        N = eliminateSlot(N, h.remapSlots({j}, N.vars()), j);
        if (N.isZero()) throw StructureError("fibre eliminant vanished");
    }

    if (N.isConstant()) return {};
    std::vector<AlgebraicNumber> out;
    for (const AlgebraicNumber& cand : isolateRealRoots(N)) {
        std::vector<AlgebraicNumber> full = base;
        full.push_back(cand);
        if (signAt(p, full) == 0) out.push_back(cand);
    }
    return out;
}

} // namespace cadmin
