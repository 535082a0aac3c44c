#include "doctest.h"

#include <random>
#include <set>
#include <string>
#include <vector>

#include "cadmin/builder.hpp"
#include "cadmin/errors.hpp"
#include "cadmin/point_eval.hpp"
#include "fixtures.hpp"

using namespace cadmin;
using namespace cadmin::testfix;

namespace {

Polynomial circlePoly() {
    return Polynomial::fromTerms(
        2, {{{2, 0}, Rational(1)}, {{0, 2}, Rational(1)}, {{0, 0}, Rational(-1)}});
}

Polynomial spherePoly() {
    return Polynomial::fromTerms(3, {{{2, 0, 0}, Rational(1)},
                                     {{0, 2, 0}, Rational(1)},
                                     {{0, 0, 2}, Rational(1)},
                                     {{0, 0, 0}, Rational(-1)}});
}

Family oneSetFamily(int dim, const Polynomial& p, const std::string& name = "set") {
    Family f;
    f.dimension = dim;
    f.sets.push_back(SetDefinition{name, {p}, SetMode::Algebraic});
    return f;
}

bool basisContains(const std::vector<Polynomial>& basis, const Polynomial& p) {
    for (const Polynomial& b : basis)
        if (b == p) return true;
    return false;
}

}  // namespace

TEST_CASE("projection: one-variable family is its own basis") {
    const Polynomial xm1 =
        Polynomial::fromTerms(1, {{{1}, Rational(1)}, {{0}, Rational(-1)}});
    const ProjectionBasis b = buildProjectionBasis(oneSetFamily(1, xm1));
    REQUIRE(b.perLevel.size() == 1);
    CHECK(b.level(1) == std::vector<Polynomial>{xm1});
}

TEST_CASE("projection: circle discriminant reaches level 1") {
    const ProjectionBasis b = buildProjectionBasis(oneSetFamily(2, circlePoly()));
    REQUIRE(b.perLevel.size() == 2);
    CHECK(b.level(2) == std::vector<Polynomial>{circlePoly()});
    // Oracle: the discriminant in y is 4 - 4x^2, which normalizes to x^2 - 1.
    const Polynomial disc = normalizeCanonical(discriminantLast(circlePoly()));
    CHECK(disc == Polynomial::fromTerms(1, {{{2}, Rational(1)}, {{0}, Rational(-1)}}));
    CHECK(basisContains(b.level(1), disc));
}

TEST_CASE("projection: sphere discriminant reaches level 2") {
    const ProjectionBasis b = buildProjectionBasis(oneSetFamily(3, spherePoly()));
    REQUIRE(b.perLevel.size() == 3);
    const Polynomial disc = normalizeCanonical(discriminantLast(spherePoly()));
    CHECK(disc == circlePoly());
    CHECK(basisContains(b.level(2), disc));
    CHECK(basisContains(b.level(1),
                        Polynomial::fromTerms(1, {{{2}, Rational(1)}, {{0}, Rational(-1)}})));
}

TEST_CASE("projection: basis layers are squarefree and pairwise coprime") {
    const ProjectionBasis b =
        buildProjectionBasis(oneSetFamily(2, circlePoly()), {var(2, 0)});
    for (const auto& level : b.perLevel)
        for (std::size_t i = 0; i < level.size(); ++i) {
            CHECK(squarefreePart(level[i]) == normalizeCanonical(level[i]));
            for (std::size_t j = i + 1; j < level.size(); ++j)
                CHECK(gcd(level[i], level[j]).isConstant());
        }
}

TEST_CASE("projection: rejects degenerate input") {
    Family f;
    f.dimension = 1;
    f.sets.push_back(SetDefinition{"bad", {Polynomial(1)}, SetMode::Algebraic});
    CHECK_THROWS_AS(buildProjectionBasis(f), DegenerateFamilyError);
}

TEST_CASE("lift: two points on a line give the five-cell decomposition") {
    const Cad c = liftCad(buildProjectionBasis(oneSetFamily(1, xSquaredMinusOne())));
    CHECK(validateCad(c).ok);
    CHECK(c.cellCount(1) == 5);
    // Hand-assembled oracle: identical structure up to witness choice.
    CHECK(canonicalKey(c) == canonicalKey(fiveCellLine()));
}

TEST_CASE("lift: circle gives stacks 1,3,5,3,1") {
    const Cad c = liftCad(buildProjectionBasis(oneSetFamily(2, circlePoly())));
    CHECK(validateCad(c).ok);
    CHECK(c.cellCount(1) == 5);
    CHECK(c.cellCount(2) == 13);
    const std::vector<int> expect{0, 1, 2, 1, 0};
    for (int j = 1; j <= 5; ++j)
        CHECK(c.stackSize(Index{j}) == expect[static_cast<std::size_t>(j - 1)]);
}

TEST_CASE("lift: circle plus vertical line x=0") {
    // The injected line refines the base decomposition; over x = 0 it spans
    // the whole fibre (a curtain) and contributes no sections, while the
    // circle still cuts that fibre at y = -1 and y = +1.
    const Cad c =
        liftCad(buildProjectionBasis(oneSetFamily(2, circlePoly()), {var(2, 0)}));
    CHECK(validateCad(c).ok);
    CHECK(c.cellCount(1) == 7);
    const std::vector<int> expect{0, 1, 2, 2, 2, 1, 0};
    for (int j = 1; j <= 7; ++j)
        CHECK(c.stackSize(Index{j}) == expect[static_cast<std::size_t>(j - 1)]);
    CHECK(c.cellCount(2) == 23);
    // The sections over x = 0 are roots 1 and 2 of the circle polynomial.
    const Cell& low = c.cell(Index{4, 2});
    const Cell& high = c.cell(Index{4, 4});
    REQUIRE(low.bound);
    REQUIRE(high.bound);
    CHECK(low.bound->pieces.at(Index{4}).poly == circlePoly());
    CHECK(low.bound->pieces.at(Index{4}).rootNumber == 1);
    CHECK(high.bound->pieces.at(Index{4}).poly == circlePoly());
    CHECK(high.bound->pieces.at(Index{4}).rootNumber == 2);
}

TEST_CASE("lift: a curtain fibre keeps the whole vertical line as one cell") {
    const Polynomial xy = var(2, 0) * var(2, 1);
    const Cad c = liftCad(buildProjectionBasis(oneSetFamily(2, xy)));
    CHECK(validateCad(c).ok);
    CHECK(c.cellCount(1) == 3);
    CHECK(c.stackSize(Index{1}) == 1);
    CHECK(c.stackSize(Index{2}) == 0);  // x = 0: the fibre lies inside V(xy)
    CHECK(c.stackSize(Index{3}) == 1);
    CHECK(c.cellCount(2) == 7);
    // The full fibre over x = 0 is in the set, and its label says so.
    const LabelTree t = labelCells(c, oneSetFamily(2, xy));
    CHECK(t.leafBits(Index{2, 1}) == std::vector<bool>{true});
}

TEST_CASE("lift: parallel construction matches the serial one bit for bit") {
    const ProjectionBasis b =
        buildProjectionBasis(oneSetFamily(2, circlePoly()), {var(2, 0)});
    const Cad serial = liftCad(b);
    LiftOptions par;
    par.parallel = true;
    const Cad parallel = liftCad(b, par);
    CHECK(canonicalKey(serial) == canonicalKey(parallel));
    CHECK(cadToJson(serial).dump() == cadToJson(parallel).dump());
}

TEST_CASE("lift: construction is deterministic") {
    const Family f = oneSetFamily(2, circlePoly());
    const Cad a = liftCad(buildProjectionBasis(f));
    const Cad b = liftCad(buildProjectionBasis(f));
    CHECK(cadToJson(a).dump() == cadToJson(b).dump());
}

TEST_CASE("labels: five-cell line against the two-point set") {
    const Cad c = liftCad(buildProjectionBasis(oneSetFamily(1, xSquaredMinusOne())));
    const LabelTree t = labelCells(c, oneSetFamily(1, xSquaredMinusOne()));
    const std::vector<bool> expect{false, true, false, true, false};
    for (int j = 1; j <= 5; ++j)
        CHECK(t.leafBits(Index{j}) == std::vector<bool>{expect[static_cast<std::size_t>(j - 1)]});
    CHECK(t.arity(Index()) == 5);
}

TEST_CASE("labels: circle has exactly four member leaves") {
    const Family f = oneSetFamily(2, circlePoly());
    const Cad c = liftCad(buildProjectionBasis(f));
    const LabelTree t = labelCells(c, f);
    std::set<Index> ones;
    for (const auto& [idx, cell] : c.level(2))
        if (t.leafBits(idx) == std::vector<bool>{true}) ones.insert(idx);
    const std::set<Index> expect{Index{2, 2}, Index{3, 2}, Index{3, 4}, Index{4, 2}};
    CHECK(ones == expect);
}

TEST_CASE("labels: circle plus line, family is the circle only") {
    const Family f = oneSetFamily(2, circlePoly());
    const Cad c = liftCad(buildProjectionBasis(f, {var(2, 0)}));
    const LabelTree t = labelCells(c, f);
    std::set<Index> ones;
    for (const auto& [idx, cell] : c.level(2))
        if (t.leafBits(idx) == std::vector<bool>{true}) ones.insert(idx);
    const std::set<Index> expect{Index{2, 2}, Index{3, 2}, Index{3, 4}, Index{4, 2},
                                 Index{4, 4}, Index{5, 2}, Index{5, 4}, Index{6, 2}};
    CHECK(ones == expect);
    // Internal labels have one component per child.
    for (const auto& [idx, u] : c.stackSizes) CHECK(t.arity(idx) == 2 * u + 1);
}

TEST_CASE("labels: sphere leaves are exactly the sample points on the sphere") {
    const Family f = oneSetFamily(3, spherePoly());
    const Cad c = liftCad(buildProjectionBasis(f));
    CHECK(validateCad(c).ok);
    const LabelTree t = labelCells(c, f);
    for (const auto& [idx, cell] : c.level(3)) {
        const bool on = signAt(spherePoly(), cell.sample) == 0;
        CHECK(t.leafBits(idx) == std::vector<bool>{on});
    }
}

TEST_CASE("adaptedness: positive and negative verdicts") {
    SUBCASE("circle decomposition is adapted to the circle") {
        const Family f = oneSetFamily(2, circlePoly());
        const Cad c = liftCad(buildProjectionBasis(f));
        CHECK(adaptednessCheck(c, labelCells(c, f), f));
    }
    SUBCASE("the five-cell line is not adapted to a point it never cut out") {
        const Family line = oneSetFamily(1, var(1, 0));
        const Cad c = liftCad(buildProjectionBasis(oneSetFamily(1, xSquaredMinusOne())));
        CHECK(!adaptednessCheck(c, labelCells(c, line), line));
    }
    SUBCASE("an empty real zero set is vacuously a union of cells") {
        const Polynomial empty = circlePoly() + con(2, 2);  // x^2 + y^2 + 1
        const Family f = oneSetFamily(2, empty);
        const Cad c = liftCad(buildProjectionBasis(oneSetFamily(2, circlePoly())));
        const LabelTree t = labelCells(c, f);
        for (const auto& [idx, cell] : c.level(2))
            CHECK(t.leafBits(idx) == std::vector<bool>{false});
        CHECK(adaptednessCheck(c, t, f));
    }
    SUBCASE("tampered labels are rejected") {
        const Family f = oneSetFamily(2, circlePoly());
        const Cad c = liftCad(buildProjectionBasis(f));
        LabelTree t = labelCells(c, f);
        auto pool = t.pool;
        t.labels[Index{1, 1}] = pool->leaf({true});
        CHECK(!adaptednessCheck(c, t, f));
    }
}

namespace {

// Signs of every basis polynomial (all levels) at a full-dimension point.
std::vector<int> basisSigns(const Cad& c, const std::vector<AlgebraicNumber>& pt) {
    std::vector<int> out;
    for (int k = 1; k <= c.dimension; ++k) {
        const std::vector<AlgebraicNumber> prefix(pt.begin(), pt.begin() + k);
        for (const Polynomial& q : c.basis[static_cast<std::size_t>(k - 1)])
            out.push_back(signAt(q, prefix));
    }
    return out;
}

}  // namespace

TEST_CASE("sign invariance: perturbed in-cell points carry the sample's signs") {
    const Cad c = liftCad(buildProjectionBasis(oneSetFamily(2, circlePoly()), {var(2, 0)}));
    std::mt19937 rng(77u);
    std::uniform_int_distribution<long> numDist(1, 3);
    std::uniform_int_distribution<int> signDist(0, 1);

    for (const auto& [idx, cell] : c.level(2)) {
        const std::vector<int> expect = basisSigns(c, cell.sample);
        const Cell& base = c.cell(cell.baseIndex);
        int found = 0;
        for (int attempt = 0; attempt < 40 && found < 5; ++attempt) {
            const long denom = 64L << (attempt / 4);
            const Rational dx((signDist(rng) ? 1 : -1) * numDist(rng), denom);
            const Rational dy((signDist(rng) ? 1 : -1) * numDist(rng), denom);
            std::vector<AlgebraicNumber> pt;
            if (base.kind == CellKind::Section) {
                if (cell.kind == CellKind::Section) break;  // a single point: nothing to vary
                // Vertical segment: keep x, nudge y.
                pt = {cell.sample[0],
                      AlgebraicNumber::fromRational(
                          cell.sample[1].isRational()
                              ? cell.sample[1].rationalValue() + dy
                              : (cell.sample[1].lo() + cell.sample[1].hi()) / Rational(2))};
            } else if (cell.kind == CellKind::Section) {
                // Follow the indexed root to a nearby base point.
                REQUIRE(cell.sample[0].isRational());
                const Rational x1 = cell.sample[0].rationalValue() + dx;
                const AlgebraicNumber ax = AlgebraicNumber::fromRational(x1);
                if (cellMembership(c, {ax}) != cell.baseIndex) continue;
                const IndexedRoot& piece = cell.bound->pieces.at(cell.baseIndex);
                std::vector<AlgebraicNumber> roots;
                try {
                    roots = isolateFibreRoots(piece.poly, {ax});
                } catch (const CurtainFibreError&) {
                    continue;
                }
                if (piece.rootNumber > static_cast<int>(roots.size())) continue;
                pt = {ax, roots[static_cast<std::size_t>(piece.rootNumber - 1)]};
            } else {
                REQUIRE(cell.sample[0].isRational());
                REQUIRE(cell.sample[1].isRational());
                pt = {AlgebraicNumber::fromRational(cell.sample[0].rationalValue() + dx),
                      AlgebraicNumber::fromRational(cell.sample[1].rationalValue() + dy)};
            }
            if (cellMembership(c, pt) != idx) continue;  // re-located elsewhere: skip
            ++found;
            CHECK(basisSigns(c, pt) == expect);
        }
        if (cell.kind == CellKind::Sector) CHECK(found > 0);
    }
}

TEST_CASE("lift: every construction passes validation") {
    const std::vector<Family> fams{
        oneSetFamily(1, xSquaredMinusOne()),
        oneSetFamily(2, circlePoly()),
        oneSetFamily(2, var(2, 0) * var(2, 1)),
        oneSetFamily(3, spherePoly()),
    };
    for (const Family& f : fams) {
        const Cad c = liftCad(buildProjectionBasis(f));
        const ValidationReport r = validateCad(c);
        CHECK(r.ok);
        for (const std::string& v : r.violations) MESSAGE(v);
    }
}
