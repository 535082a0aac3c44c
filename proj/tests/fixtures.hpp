#pragma once

// Shared test helpers: polynomial shorthands and hand-assembled
// decompositions with known structure, built without the production
// construction code so they can serve as independent oracles for it.

#include <utility>
#include <vector>

#include "cadmin/cad.hpp"
#include "cadmin/family.hpp"

namespace cadmin::testfix {

inline Polynomial var(int vars, int slot) { return Polynomial::variable(vars, slot); }
inline Polynomial con(int vars, long c) { return Polynomial::constant(vars, Rational(c)); }

// x^2 - 1 over one variable.
inline Polynomial xSquaredMinusOne() {
    return Polynomial::fromTerms(1, {{{2}, Rational(1)}, {{0}, Rational(-1)}});
}

inline AlgebraicNumber q(long num, long den = 1) {
    return AlgebraicNumber::fromRational(Rational(num, den));
}

inline Cell makeCell(Index idx, CellKind kind, std::vector<AlgebraicNumber> sample) {
    Cell c;
    c.index = idx;
    c.kind = kind;
    c.baseIndex = idx.parent();
    c.sample = std::move(sample);
    c.mergedFrom = {idx};
    c.sampleFrom = idx;
    return c;
}

inline BoundFunction rootBound(const Index& baseKey, const Polynomial& p, int rootNumber) {
    BoundFunction f;
    f.pieces.emplace(baseKey, IndexedRoot{p, rootNumber});
    return f;
}

// Hand-assembled stack over the real line for a list of (polynomial, root
// number, section value) triples in strictly increasing value order, with
// rational sector samples in the gaps.
struct SectionSpec {
    Polynomial poly;
    int rootNumber;
    Rational value;
};

inline Cad lineCad(const std::vector<Polynomial>& basis, const std::vector<SectionSpec>& secs,
                   const std::vector<Rational>& gaps) {
    const int u = static_cast<int>(secs.size());
    Cad c;
    c.dimension = 1;
    c.levels.resize(1);
    c.basis = {basis};
    c.stackSizes[Index()] = u;
    std::vector<BoundFunction> bounds;
    for (const SectionSpec& s : secs)
        bounds.push_back(rootBound(Index(), s.poly, s.rootNumber));
    for (int j = 0; j <= u; ++j) {
        Cell sec = makeCell(Index{2 * j + 1}, CellKind::Sector,
                            {AlgebraicNumber::fromRational(gaps[static_cast<std::size_t>(j)])});
        if (j > 0) sec.lower = bounds[static_cast<std::size_t>(j - 1)];
        if (j < u) sec.upper = bounds[static_cast<std::size_t>(j)];
        c.levels[0].emplace(sec.index, std::move(sec));
        if (j < u) {
            Cell s = makeCell(Index{2 * (j + 1)}, CellKind::Section,
                              {AlgebraicNumber::fromRational(secs[static_cast<std::size_t>(j)].value)});
            s.bound = bounds[static_cast<std::size_t>(j)];
            c.levels[0].emplace(s.index, std::move(s));
        }
    }
    return c;
}

// Five cells adapted to {-1, +1}: sections are the two roots of x^2 - 1.
inline Cad fiveCellLine() {
    const Polynomial p = xSquaredMinusOne();
    return lineCad({p}, {{p, 1, Rational(-1)}, {p, 2, Rational(1)}},
                   {Rational(-2), Rational(0), Rational(2)});
}

// Seven cells adapted to {-1, 0, +1}: the roots of x^2 - 1 and of x.
inline Cad sevenCellLine() {
    const Polynomial p = xSquaredMinusOne();
    const Polynomial x = var(1, 0);
    return lineCad({p, x},
                   {{p, 1, Rational(-1)}, {x, 1, Rational(0)}, {p, 2, Rational(1)}},
                   {Rational(-2), Rational(-1, 2), Rational(1, 2), Rational(2)});
}

// A planar decomposition with one trivial base cell and a single section
// sheet at the zeros of `sheet` (one root over every x; sheet must vanish
// exactly at y = 0 over the base sample x = 0).
inline Cad onePlanarSheet(const Polynomial& sheet) {
    Cad c;
    c.dimension = 2;
    c.levels.resize(2);
    c.basis = {{}, {sheet}};
    c.stackSizes[Index()] = 0;
    c.stackSizes[Index{1}] = 1;
    c.levels[0].emplace(Index{1}, makeCell(Index{1}, CellKind::Sector, {q(0)}));
    const BoundFunction b = rootBound(Index{1}, sheet, 1);
    Cell lo = makeCell(Index{1, 1}, CellKind::Sector, {q(0), q(-1)});
    lo.upper = b;
    Cell mid = makeCell(Index{1, 2}, CellKind::Section, {q(0), q(0)});
    mid.bound = b;
    Cell hi = makeCell(Index{1, 3}, CellKind::Sector, {q(0), q(1)});
    hi.lower = b;
    c.levels[1].emplace(lo.index, std::move(lo));
    c.levels[1].emplace(mid.index, std::move(mid));
    c.levels[1].emplace(hi.index, std::move(hi));
    return c;
}

}  // namespace cadmin::testfix
