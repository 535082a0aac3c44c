#include "cadmin/geometry.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "cadmin/errors.hpp"
#include "cadmin/point_eval.hpp"
#include "cadmin/reduction.hpp"

namespace cadmin {

namespace {

constexpr int kRefineBudget = 64;

[[noreturn]] void undecided(const std::string& why) {
    throw ContinuityUndecidedError("continuity undecided: " + why);
}

}  // namespace

CurtainLocus curtainLocus(const SetDefinition& s, int dimension) {
    if (s.mode != SetMode::Algebraic) throw Error("curtain locus needs an algebraic set");
    CurtainLocus locus;
    locus.baseVars = dimension - 1;
    std::set<std::string> seen;
    for (const Polynomial& p : s.polynomials) {
        if (p.vars() != dimension)
            throw VariableMismatchError("set polynomial has wrong variable count");
        if (p.isZero()) {
            locus.wholeSpace = true;
            continue;
        }
        for (const Polynomial& coeff : p.coefficientsLast()) {
            if (coeff.isZero()) continue;
            const Polynomial g = normalizeCanonical(coeff);
            if (seen.insert(g.canonical()).second) locus.generators.push_back(g);
        }
    }
    std::sort(locus.generators.begin(), locus.generators.end(),
              [](const Polynomial& x, const Polynomial& y) {
                  return x.canonical() < y.canonical();
              });
    return locus;
}

bool hasCurtainAt(const CurtainLocus& locus, const std::vector<AlgebraicNumber>& point) {
    if (static_cast<int>(point.size()) != locus.baseVars)
        throw VariableMismatchError("curtain query point has wrong arity");
    if (locus.wholeSpace) return true;
    for (const Polynomial& g : locus.generators) {
        if (g.isConstant()) {
            if (g.constantValue() != Rational(0)) return false;
            continue;
        }
        if (signAt(g, point) != 0) return false;
    }
    return true;
}

namespace {

// ---------------------------------------------------------------------------
// Certified band evaluation
//
// Every approach style reduces the limit question to a one-parameter family:
// the candidates are the fibre roots at the boundary point, rational
// separators isolate them, gate polynomials certify that no separator is
// crossed on a tail of the approach, and a single exact probe inside the
// tail then pins the band the tracked root stays in. The limit is the
// unique candidate in that band (or the matching infinity).
// ---------------------------------------------------------------------------

// Rational separators s_0 < b_1 < s_1 < ... < b_t < s_t around the sorted
// candidate roots; {0} when there are no candidates.
std::vector<Rational> separatorsAround(std::vector<AlgebraicNumber> roots) {
    if (roots.empty()) return {Rational(0)};
    for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
        int guard = 0;
        while (!(roots[i].hi() < roots[i + 1].lo())) {
            roots[i] = roots[i].refined();
            roots[i + 1] = roots[i + 1].refined();
            if (++guard > kRefineBudget) undecided("candidate separation");
        }
    }
    std::vector<Rational> seps;
    seps.push_back(roots.front().lo() - 1);
    for (std::size_t i = 0; i + 1 < roots.size(); ++i)
        seps.push_back(simplestRationalStrictlyBetween(roots[i].hi(), roots[i + 1].lo()));
    seps.push_back(roots.back().hi() + 1);
    return seps;
}

// Largest rational region endpoint: a rational strictly between the
// approach-side gate roots and the target. Gate roots equal to the target
// are ignored (the target itself is allowed to be a gate-polynomial root).
Rational tailThreshold(const std::vector<AlgebraicNumber>& gateRoots,
                       const AlgebraicNumber& target, bool fromBelow) {
    std::optional<AlgebraicNumber> extreme;
    for (const AlgebraicNumber& u : gateRoots) {
        const int cmp = AlgebraicNumber::compare(u, target);
        if (fromBelow ? cmp >= 0 : cmp <= 0) continue;
        if (!extreme) {
            extreme = u;
            continue;
        }
        const int vs = AlgebraicNumber::compare(u, *extreme);
        if (fromBelow ? vs > 0 : vs < 0) extreme = u;
    }
    AlgebraicNumber t = target;
    if (!extreme) return fromBelow ? t.lo() - 1 : t.hi() + 1;
    AlgebraicNumber e = *extreme;
    int guard = 0;
    while (fromBelow ? !(e.hi() < t.lo()) : !(t.hi() < e.lo())) {
        e = e.refined();
        t = t.refined();
        if (++guard > kRefineBudget) undecided("tail isolation");
    }
    return fromBelow ? simplestRationalStrictlyBetween(e.hi(), t.lo())
                     : simplestRationalStrictlyBetween(t.hi(), e.lo());
}

// A rational probe strictly between the threshold and the target, on the
// approach side.
Rational probeBetween(const Rational& threshold, AlgebraicNumber target, bool fromBelow) {
    int guard = 0;
    while (fromBelow ? !(threshold < target.lo()) : !(target.hi() < threshold)) {
        target = target.refined();
        if (++guard > kRefineBudget) undecided("probe isolation");
    }
    return fromBelow ? simplestRationalStrictlyBetween(threshold, target.lo())
                     : simplestRationalStrictlyBetween(target.hi(), threshold);
}

// Band of a value relative to the separators: the number of separators
// strictly below it. Values on a separator are rejected (the gates
// certified this cannot happen on the tail).
int bandOf(const AlgebraicNumber& value, const std::vector<Rational>& seps) {
    int band = 0;
    for (const Rational& s : seps) {
        const int cmp = value.compareRational(s);
        if (cmp == 0) undecided("probe value hit a separator");
        if (cmp > 0) ++band;
    }
    return band;
}

ExtendedReal limitFromBand(int band, const std::vector<AlgebraicNumber>& candidates,
                           const std::vector<Rational>& seps) {
    if (band == 0) return ExtendedReal::negInf();
    if (band == static_cast<int>(seps.size())) return ExtendedReal::posInf();
    return ExtendedReal::finite(candidates[static_cast<std::size_t>(band - 1)]);
}

// Real roots of a polynomial that must be univariate up to unused slots.
std::vector<AlgebraicNumber> univariateRoots(const Polynomial& g) {
    if (g.isZero() || g.isConstant()) return {};
    return isolateRealRoots(toEffectiveVars(g));
}

// ---------------------------------------------------------------------------
// Gate-root collection per approach style
// ---------------------------------------------------------------------------

// Where a two-variable polynomial g can change sign along the branches of
// V(curve) passing through the boundary point p: the x-coordinates of the
// candidate crossings, or nullopt when g vanishes identically on the branch
// through p (no sign change at all). Sound over-approximations are fine.
std::optional<std::vector<AlgebraicNumber>> arcGateRoots(
    Polynomial curve, const Polynomial& g, const std::vector<AlgebraicNumber>& p,
    int depth = 0) {
    if (depth > kRefineBudget) undecided("curve gate recursion");
    if (g.isZero()) return std::nullopt;
    if (g.degree(1) <= 0) {
        // Constant along each vertical line: sign along the curve depends on
        // x alone.
        return univariateRoots(g);
    }
    if (curve.degree(1) <= 0) throw StructureError("curve polynomial lost its fibre variable");
    const Polynomial r = resultantLast(curve, g);
    if (!r.isZero()) {
        std::vector<AlgebraicNumber> roots = univariateRoots(r);
        for (const AlgebraicNumber& u : univariateRoots(curve.leadingCoefficientLast()))
            roots.push_back(u);
        for (const AlgebraicNumber& u : univariateRoots(g.leadingCoefficientLast()))
            roots.push_back(u);
        return roots;
    }
    // Vanishing resultant: the curve shares a component with V(g). Split off
    // the common factor and decide which side of the split the branch
    // through p lives on.
    const Polynomial h = gcd(curve, g);
    if (h.isConstant()) throw StructureError("vanishing resultant without a common factor");
    const auto quotient = divideExact(curve, h);
    if (!quotient) throw StructureError("common factor does not divide the curve");
    const Polynomial rest = *quotient;
    const int signH = h.isConstant() ? 1 : signAt(h, p);
    if (signH != 0) {
        // The branch through p avoids V(h), so near p it lies in V(rest);
        // gate g there, plus the crossings of h itself (the tail must stay
        // clear of V(h)).
        auto main = arcGateRoots(rest, g, p, depth + 1);
        if (!main) return std::nullopt;
        auto guard = arcGateRoots(rest, h, p, depth + 1);
        if (guard) {
            main->insert(main->end(), guard->begin(), guard->end());
            return main;
        }
        throw StructureError("common factor vanishes on a branch it avoids");
    }
    const int signRest = rest.isConstant() ? (rest.constantValue() != Rational(0) ? 1 : 0)
                                           : signAt(rest, p);
    if (signRest != 0) {
        // The branch through p lies in V(h), and h divides g: g vanishes
        // identically on it.
        return std::nullopt;
    }
    undecided("boundary point sits on several curve components");
}

struct BandProblem {
    std::vector<AlgebraicNumber> candidates;
    std::vector<Rational> separators;
    std::vector<AlgebraicNumber> gateRoots;  // approach-parameter values
};

// ---------------------------------------------------------------------------

// The value polynomial of one separator: the piece polynomial with the
// fibre variable fixed at the separator.
Polynomial separatorGate(const Polynomial& pieceVars, const Rational& s) {
    return pieceVars.substituteLast(s);
}

}  // namespace

ExtendedReal boundaryLimit(const Cad& c, const Index& pieceCell, const IndexedRoot& piece,
                           const Index& boundaryCell,
                           const std::vector<AlgebraicNumber>& boundaryPoint,
                           int approachSlot, bool approachFromBelow) {
    const Cad& init = c.initialCad();
    const int m = pieceCell.length();  // base level of the bound
    if (m < 1 || m > 2) throw StructureError("bound base level out of range");
    if (static_cast<int>(boundaryPoint.size()) != m)
        throw StructureError("boundary point arity mismatch");
    if (piece.poly.vars() != m + 1) throw StructureError("piece polynomial arity mismatch");
    (void)boundaryCell;

    // Fibre candidates at the boundary point; an identically vanishing fibre
    // is the curtain case the caller must rule out.
    std::vector<AlgebraicNumber> candidates;
    try {
        candidates = isolateFibreRoots(piece.poly, boundaryPoint);
    } catch (const CurtainFibreError&) {
        throw CurtainAtBoundaryError("curtain at boundary");
    }
    const std::vector<Rational> seps = separatorsAround(candidates);

    const Cell& cell = init.cell(pieceCell);

    if (m == 1) {
        // Interval base: certify along the base axis.
        const AlgebraicNumber target = boundaryPoint[0];
        std::vector<AlgebraicNumber> gates;
        for (const Rational& s : seps) {
            const Polynomial g = separatorGate(piece.poly, s);
            if (g.isZero()) undecided("separator vanishes along the approach");
            for (AlgebraicNumber& u : univariateRoots(g)) gates.push_back(std::move(u));
        }
        for (const Polynomial& wall : c.basis[0])
            for (AlgebraicNumber& u : univariateRoots(wall)) gates.push_back(std::move(u));
        const Rational threshold = tailThreshold(gates, target, approachFromBelow);
        const Rational probe = probeBetween(threshold, target, approachFromBelow);
        const std::vector<AlgebraicNumber> pt{AlgebraicNumber::fromRational(probe)};
        if (initialCellAt(c, pt) != pieceCell)
            undecided("probe escaped the approach cell");
        const std::vector<AlgebraicNumber> roots = isolateFibreRoots(piece.poly, pt);
        if (piece.rootNumber < 1 || piece.rootNumber > static_cast<int>(roots.size()))
            throw StructureError("piece root index out of range at probe");
        return limitFromBand(
            bandOf(roots[static_cast<std::size_t>(piece.rootNumber - 1)], seps), candidates,
            seps);
    }

    // m == 2 from here on.
    const bool sectionCell = cell.kind == CellKind::Section;

    if (approachSlot == 1) {
        // Vertical approach within one column: the boundary sits directly
        // above or below the piece cell.
        const AlgebraicNumber x0 = boundaryPoint[0];
        const AlgebraicNumber target = boundaryPoint[1];
        std::vector<Polynomial> lineGates;  // univariate in the fibre coordinate y
        auto pushLineGate = [&](const Polynomial& g2, bool required) {
            // g2 lives in (x, y); restrict it to the line x = x0.
            if (g2.isZero()) {
                if (required) undecided("separator vanishes along the approach");
                return;
            }
            if (x0.isRational()) {
                Polynomial g = g2.substitutePrefix({x0.rationalValue()});
                if (g.isZero()) {
                    if (required) undecided("separator vanishes along the approach");
                    return;
                }
                lineGates.push_back(std::move(g));
                return;
            }
            Polynomial b = x0.defining();
            int guard = 0;
            for (;;) {
                if (++guard > kRefineBudget) undecided("line gate elimination");
                const Polynomial b2 = b.withVars(2);
                const Polynomial r = eliminateSlot(b2, g2, 0);
                if (!r.isZero()) {
                    lineGates.push_back(r);
                    return;
                }
                // Some root of b makes g2 vanish identically in y; split it
                // off and retry with the rest.
                Polynomial shared = b;
                for (const Polynomial& coeff : g2.coefficientsLast())
                    shared = gcd(shared, coeff.withVars(1));
                if (shared.isConstant())
                    throw StructureError("vanishing eliminant without a shared factor");
                if (signAtUnivariate(shared, x0) == 0) {
                    if (required) undecided("separator vanishes along the approach");
                    return;
                }
                const auto rest = divideExact(b, shared);
                if (!rest) throw StructureError("shared factor does not divide");
                b = *rest;
            }
        };
        for (const Rational& s : seps) pushLineGate(separatorGate(piece.poly, s), true);
        for (const Polynomial& wall : c.basis[1]) pushLineGate(wall, false);
        std::vector<AlgebraicNumber> gates;
        for (const Polynomial& g : lineGates)
            for (AlgebraicNumber& u : univariateRoots(g)) gates.push_back(std::move(u));
        const Rational threshold = tailThreshold(gates, target, approachFromBelow);
        const Rational probe = probeBetween(threshold, target, approachFromBelow);
        const std::vector<AlgebraicNumber> pt{x0, AlgebraicNumber::fromRational(probe)};
        if (initialCellAt(c, pt) != pieceCell)
            undecided("probe escaped the approach cell");
        const std::vector<AlgebraicNumber> roots = isolateFibreRoots(piece.poly, pt);
        if (piece.rootNumber < 1 || piece.rootNumber > static_cast<int>(roots.size()))
            throw StructureError("piece root index out of range at probe");
        return limitFromBand(
            bandOf(roots[static_cast<std::size_t>(piece.rootNumber - 1)], seps), candidates,
            seps);
    }

    if (approachSlot != 0) throw StructureError("approach slot out of range");
    const AlgebraicNumber target = boundaryPoint[0];

    if (sectionCell) {
        // The piece cell is a curve: parametrize the approach by the base
        // coordinate and gate sign changes along the curve.
        if (!cell.bound || cell.bound->pieces.size() != 1)
            throw StructureError("curve cell without a single defining piece");
        const IndexedRoot curvePiece = cell.bound->pieces.begin()->second;
        const Polynomial& curve = curvePiece.poly;
        std::vector<AlgebraicNumber> gates;
        for (const Rational& s : seps) {
            auto roots = arcGateRoots(curve, separatorGate(piece.poly, s), boundaryPoint);
            if (!roots) undecided("separator vanishes along the approach");
            gates.insert(gates.end(), roots->begin(), roots->end());
        }
        for (const Polynomial& wall : c.basis[1]) {
            auto roots = arcGateRoots(curve, wall, boundaryPoint);
            if (!roots) continue;  // constant sign (identically zero) along the curve
            gates.insert(gates.end(), roots->begin(), roots->end());
        }
        for (const Polynomial& wall : c.basis[0])
            for (AlgebraicNumber& u : univariateRoots(wall)) gates.push_back(std::move(u));
        const Rational threshold = tailThreshold(gates, target, approachFromBelow);
        const Rational probe = probeBetween(threshold, target, approachFromBelow);
        const std::vector<AlgebraicNumber> baseAt{AlgebraicNumber::fromRational(probe)};
        const std::vector<AlgebraicNumber> curveRoots =
            isolateFibreRoots(curve, baseAt);
        if (curvePiece.rootNumber < 1 ||
            curvePiece.rootNumber > static_cast<int>(curveRoots.size()))
            throw StructureError("curve root index out of range at probe");
        const std::vector<AlgebraicNumber> pt{
            baseAt[0], curveRoots[static_cast<std::size_t>(curvePiece.rootNumber - 1)]};
        if (initialCellAt(c, pt) != pieceCell)
            undecided("probe escaped the approach cell");
        const std::vector<AlgebraicNumber> roots = isolateFibreRoots(piece.poly, pt);
        if (piece.rootNumber < 1 || piece.rootNumber > static_cast<int>(roots.size()))
            throw StructureError("piece root index out of range at probe");
        return limitFromBand(
            bandOf(roots[static_cast<std::size_t>(piece.rootNumber - 1)], seps), candidates,
            seps);
    }

    // Open two-dimensional cell approached sideways.
    const bool p0Rational = boundaryPoint[0].isRational();
    const bool p1Rational = boundaryPoint[1].isRational();

    if (p0Rational && p1Rational) {
        // Straight rational segment from an interior anchor to the boundary
        // point, certified along the segment parameter.
        const Rational px = boundaryPoint[0].rationalValue();
        const Rational py = boundaryPoint[1].rationalValue();
        std::vector<std::pair<Rational, Rational>> anchors;
        if (cell.sample[0].isRational() && cell.sample[1].isRational())
            anchors.emplace_back(cell.sample[0].rationalValue(),
                                 cell.sample[1].rationalValue());
        for (const auto& anchor : anchors) {
            const Rational qx = anchor.first, qy = anchor.second;
            // Segment x(t) = q + t (p - q) into slots (t, fibre).
            const Polynomial tvar = Polynomial::variable(2, 0);
            const Polynomial zvar = Polynomial::variable(2, 1);
            const Polynomial xOfT = tvar * (px - qx) + Polynomial::constant(2, qx);
            const Polynomial yOfT = tvar * (py - qy) + Polynomial::constant(2, qy);
            const Polynomial onSegment = piece.poly.compose({xOfT, yOfT, zvar}, 2);
            const Polynomial tvar1 = Polynomial::variable(1, 0);
            const Polynomial xOfT1 = tvar1 * (px - qx) + Polynomial::constant(1, qx);
            const Polynomial yOfT1 = tvar1 * (py - qy) + Polynomial::constant(1, qy);
            std::vector<AlgebraicNumber> gates;
            bool degenerate = false;
            for (const Rational& s : seps) {
                const Polynomial g = separatorGate(onSegment, s);
                if (g.isZero()) {
                    degenerate = true;
                    break;
                }
                for (AlgebraicNumber& u : univariateRoots(g)) gates.push_back(std::move(u));
            }
            if (degenerate) continue;
            for (const Polynomial& wall : c.basis[1]) {
                const Polynomial g = wall.compose({xOfT1, yOfT1}, 1);
                for (AlgebraicNumber& u : univariateRoots(g)) gates.push_back(std::move(u));
            }
            for (const Polynomial& wall : c.basis[0]) {
                const Polynomial g = wall.compose({xOfT1}, 1);
                for (AlgebraicNumber& u : univariateRoots(g)) gates.push_back(std::move(u));
            }
            const AlgebraicNumber one = AlgebraicNumber::fromRational(Rational(1));
            Rational threshold = tailThreshold(gates, one, true);
            if (threshold < Rational(0)) threshold = Rational(0);
            const Rational probeT = probeBetween(threshold, one, true);
            const Rational probeX = qx + probeT * (px - qx);
            const Rational probeY = qy + probeT * (py - qy);
            const std::vector<AlgebraicNumber> pt{AlgebraicNumber::fromRational(probeX),
                                                  AlgebraicNumber::fromRational(probeY)};
            if (initialCellAt(c, pt) != pieceCell) continue;  // segment cut a corner
            const std::vector<AlgebraicNumber> roots = isolateFibreRoots(piece.poly, pt);
            if (piece.rootNumber < 1 || piece.rootNumber > static_cast<int>(roots.size()))
                throw StructureError("piece root index out of range at probe");
            return limitFromBand(
                bandOf(roots[static_cast<std::size_t>(piece.rootNumber - 1)], seps),
                candidates, seps);
        }
        // fall through to the horizontal style
    }

    if (p1Rational) {
        // Horizontal approach along the line y = p2.
        const Rational py = boundaryPoint[1].rationalValue();
        const Polynomial onLine = piece.poly.swapSlots(0, 1).substitutePrefix({py});
        std::vector<AlgebraicNumber> gates;
        for (const Rational& s : seps) {
            const Polynomial g = separatorGate(onLine, s);
            if (g.isZero()) undecided("separator vanishes along the approach");
            for (AlgebraicNumber& u : univariateRoots(g)) gates.push_back(std::move(u));
        }
        for (const Polynomial& wall : c.basis[1]) {
            const Polynomial g = wall.swapSlots(0, 1).substitutePrefix({py});
            for (AlgebraicNumber& u : univariateRoots(g)) gates.push_back(std::move(u));
        }
        for (const Polynomial& wall : c.basis[0])
            for (AlgebraicNumber& u : univariateRoots(wall)) gates.push_back(std::move(u));
        const Rational threshold = tailThreshold(gates, target, approachFromBelow);
        const Rational probe = probeBetween(threshold, target, approachFromBelow);
        const std::vector<AlgebraicNumber> pt{AlgebraicNumber::fromRational(probe),
                                              boundaryPoint[1]};
        if (initialCellAt(c, pt) != pieceCell)
            undecided("probe escaped the approach cell");
        const std::vector<AlgebraicNumber> roots = isolateFibreRoots(piece.poly, pt);
        if (piece.rootNumber < 1 || piece.rootNumber > static_cast<int>(roots.size()))
            throw StructureError("piece root index out of range at probe");
        return limitFromBand(
            bandOf(roots[static_cast<std::size_t>(piece.rootNumber - 1)], seps), candidates,
            seps);
    }

    undecided("no certified approach path to an irrational boundary point");
}

namespace {

// The unique piece of a section's bound adjacent to the boundary initial
// cell across the site direction, together with the initial cell it is
// keyed by.
std::optional<std::pair<Index, IndexedRoot>> adjacentPiece(const BoundFunction& bound,
                                                           const Index& boundaryInit,
                                                           int slot, int step) {
    const Index exact = boundaryInit.shifted(slot, step);
    auto it = bound.pieces.find(exact);
    if (it != bound.pieces.end()) return std::make_pair(exact, it->second);
    const int want = boundaryInit.entry(slot) + step;
    std::optional<std::pair<Index, IndexedRoot>> found;
    for (const auto& [key, piece] : bound.pieces) {
        if (key.length() != boundaryInit.length() || key.entry(slot) != want) continue;
        if (found) return std::nullopt;  // ambiguous
        found = std::make_pair(key, piece);
    }
    return found;
}

}  // namespace

ContinuityCertificate continuityCheck(const Cad& c, const LabelTree& t, const Family& f,
                                      const Index& site, const Index& mergedIndex) {
    const int k = site.length();
    const int slot = k - 1;
    const int l = mergedIndex.length();
    ContinuityCertificate cert;
    cert.site = site;
    if (mergedIndex.isOdd()) throw StructureError("merged bound index must be even");

    const Cell& leftSec = c.cell(mergedIndex);
    const Cell& midSec = c.cell(mergedIndex.shifted(slot, +1));
    const Cell& rightSec = c.cell(mergedIndex.shifted(slot, +2));
    if (leftSec.kind != CellKind::Section || midSec.kind != CellKind::Section ||
        rightSec.kind != CellKind::Section)
        throw StructureError("merged bound indices must name sections");

    const Cell& midBase = c.cell(midSec.baseIndex);
    const std::vector<AlgebraicNumber>& p = midBase.sample;
    const Index boundaryInit = midBase.sampleFrom;
    const AlgebraicNumber midValue = midSec.sample.back();

    // Witness gate shared by both sides: at the top level the merged section
    // must lie inside a family set that has no curtain at the boundary
    // sample; below the top level the piece polynomial itself is the
    // witness, checked per side via its fibre.
    bool topWitness = true;
    if (l == c.dimension) {
        topWitness = false;
        const std::vector<bool>& bits = t.leafBits(mergedIndex);
        for (std::size_t i = 0; i < bits.size() && !topWitness; ++i) {
            if (!bits[i]) continue;
            if (!hasCurtainAt(curtainLocus(f.sets[i], c.dimension), p)) topWitness = true;
        }
    }

    for (int side = 0; side < 2; ++side) {
        const bool fromBelow = (side == 0);
        const Cell& sideSec = fromBelow ? leftSec : rightSec;
        const int step = fromBelow ? -1 : +1;

        BoundaryCheck check;
        check.boundaryCell = boundaryInit;
        check.matchedValue = ExtendedReal::finite(midValue);

        if (!topWitness) {
            check.adjacentCell = boundaryInit.shifted(slot, step);
            check.curtainObstruction = true;
            check.verdict = false;
            cert.checks.push_back(std::move(check));
            continue;
        }

        if (!sideSec.bound) throw StructureError("side section without a bound");
        const auto piece = adjacentPiece(*sideSec.bound, boundaryInit, slot, step);
        if (!piece) undecided("no adjacent bound piece at " + boundaryInit.str());
        check.adjacentCell = piece->first;

        try {
            check.limit = boundaryLimit(c, piece->first, piece->second, boundaryInit, p,
                                        slot, fromBelow);
        } catch (const CurtainAtBoundaryError&) {
            check.curtainObstruction = true;
            check.verdict = false;
            cert.checks.push_back(std::move(check));
            continue;
        }
        check.verdict = (check.limit == check.matchedValue);
        cert.checks.push_back(std::move(check));
    }
    return cert;
}

}  // namespace cadmin
