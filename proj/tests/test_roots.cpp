#include "doctest.h"

#include <cmath>
#include <random>
#include <vector>

#include "cadmin/algebraic_number.hpp"
#include "cadmin/errors.hpp"

using namespace cadmin;

namespace {

Polynomial uni(const std::vector<long>& ascendingCoeffs)
{
    std::vector<std::pair<std::vector<unsigned>, Rational>> ts;
    for (unsigned i = 0; i < ascendingCoeffs.size(); ++i)
        if (ascendingCoeffs[i] != 0) ts.push_back({{i}, Rational(ascendingCoeffs[i])});
    return Polynomial::fromTerms(1, ts);
}

const Polynomial X = Polynomial::variable(1, 0);

} // namespace

TEST_CASE("isolation of simple quadratics")
{
    // x^2 - 2: roots -sqrt(2), sqrt(2)
    const auto roots = isolateRealRoots(uni({-2, 0, 1}));
    REQUIRE(roots.size() == 2);
    CHECK(roots[0].sign() == -1);
    CHECK(roots[1].sign() == 1);
    CHECK(!roots[0].isRational());
    CHECK(!roots[1].isRational());
    const double s = std::sqrt(2.0);
    CHECK(roots[0].toDouble() == doctest::Approx(-s).epsilon(1e-9));
    CHECK(roots[1].toDouble() == doctest::Approx(s).epsilon(1e-9));
    CHECK(signAtUnivariate(uni({-2, 0, 1}), roots[1]) == 0);
    CHECK(signAtUnivariate(X, roots[1]) == 1);
    CHECK(signAtUnivariate(uni({-2, 1}), roots[1]) == -1); // sqrt(2) < 2
}

TEST_CASE("rational roots are recognized exactly")
{
    // (x-1)(x-2)(x-3) = x^3 - 6x^2 + 11x - 6
    const auto roots = isolateRealRoots(uni({-6, 11, -6, 1}));
    REQUIRE(roots.size() == 3);
    for (int i = 0; i < 3; ++i) {
        CHECK(roots[static_cast<std::size_t>(i)].isRational());
        CHECK(roots[static_cast<std::size_t>(i)].rationalValue() == Rational(i + 1));
    }
    // (2x-1)(x^2-3): rational 1/2 between the irrational pair
    const auto mixed = isolateRealRoots(uni({3, -6, -1, 2})); // (2x-1)(x^2-3) = 2x^3 - x^2 - 6x + 3
    REQUIRE(mixed.size() == 3);
    CHECK(!mixed[0].isRational());
    CHECK(mixed[1].isRational());
    CHECK(mixed[1].rationalValue() == Rational(1, 2));
    CHECK(!mixed[2].isRational());
    CHECK(mixed[0].toDouble() == doctest::Approx(-std::sqrt(3.0)).epsilon(1e-9));
    CHECK(mixed[2].toDouble() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
}

TEST_CASE("zero root between irrational roots")
{
    // x(x^2-2): exercises an exact bisection-midpoint hit
    const auto roots = isolateRealRoots(uni({0, -2, 0, 1}));
    REQUIRE(roots.size() == 3);
    CHECK(roots[0].sign() == -1);
    CHECK(roots[1].isRational());
    CHECK(roots[1].rationalValue() == Rational(0));
    CHECK(roots[2].sign() == 1);
    CHECK(AlgebraicNumber::compare(roots[0], roots[1]) < 0);
    CHECK(AlgebraicNumber::compare(roots[1], roots[2]) < 0);
}

TEST_CASE("multiplicity is flattened")
{
    // (x-1)^3 = x^3 - 3x^2 + 3x - 1
    const auto roots = isolateRealRoots(uni({-1, 3, -3, 1}));
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].isRational());
    CHECK(roots[0].rationalValue() == Rational(1));
}

TEST_CASE("cube root of two lies in (5/4, 3/2)")
{
    const auto roots = isolateRealRoots(uni({-2, 0, 0, 1}));
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].compareRational(Rational(5, 4)) > 0);
    CHECK(roots[0].compareRational(Rational(3, 2)) < 0);
    CHECK(!roots[0].isRational());
}

TEST_CASE("many rational roots")
{
    // (x-1)(x-2)...(x-10)
    Polynomial p = Polynomial::constant(1, Rational(1));
    for (long k = 1; k <= 10; ++k) p = p * (X - Polynomial::constant(1, Rational(k)));
    const auto roots = isolateRealRoots(p);
    REQUIRE(roots.size() == 10);
    for (long k = 1; k <= 10; ++k) {
        CHECK(roots[static_cast<std::size_t>(k - 1)].isRational());
        CHECK(roots[static_cast<std::size_t>(k - 1)].rationalValue() == Rational(k));
    }
}

TEST_CASE("degenerate inputs")
{
    CHECK_THROWS_AS(isolateRealRoots(Polynomial(1)), CurtainFibreError);
    CHECK(isolateRealRoots(Polynomial::constant(1, Rational(5))).empty());
    CHECK(isolateRealRoots(uni({1, 0, 1})).empty()); // x^2 + 1
}

TEST_CASE("equality across different defining polynomials")
{
    // sqrt(2) via x^2-2 and via x^4-4 must compare equal
    const auto a = isolateRealRoots(uni({-2, 0, 1}));
    const auto b = isolateRealRoots(uni({-4, 0, 0, 0, 1}));
    REQUIRE(a.size() == 2);
    REQUIRE(b.size() == 2);
    CHECK(AlgebraicNumber::compare(a[1], b[1]) == 0);
    CHECK(a[1] == b[1]);
    CHECK(AlgebraicNumber::compare(a[0], b[1]) < 0);
    CHECK(a[0] != b[1]);
}

TEST_CASE("comparison against nearby rationals")
{
    const auto roots = isolateRealRoots(uni({-2, 0, 1}));
    const auto sqrt2 = roots[1];
    // 577/408 is a continued-fraction convergent slightly above sqrt(2)
    CHECK(sqrt2.compareRational(Rational(577, 408)) < 0);
    // 665857/470832 is also above; 1393/985 is below
    CHECK(sqrt2.compareRational(Rational(1393, 985)) > 0);
    CHECK(sqrt2.compareRational(Rational(1)) > 0);
    CHECK(sqrt2.compareRational(Rational(2)) < 0);
}

TEST_CASE("refinement tightens the interval around the same root")
{
    const auto roots = isolateRealRoots(uni({-2, 0, 1}));
    const auto r = roots[1].refinedToWidth(Rational(1, 1000));
    CHECK(r.hi() - r.lo() < Rational(1, 1000));
    CHECK(AlgebraicNumber::compare(r, roots[1]) == 0);
    CHECK(signAtUnivariate(uni({-2, 0, 1}), r) == 0);
}

TEST_CASE("sign evaluation at algebraic points")
{
    const auto roots = isolateRealRoots(uni({-2, 0, 1}));
    const auto sqrt2 = roots[1];
    CHECK(signAtUnivariate(Polynomial::constant(1, Rational(3)), sqrt2) == 1);
    CHECK(signAtUnivariate(Polynomial(1), sqrt2) == 0);
    // (x^2-2)(x-5) vanishes at sqrt(2) too (shared factor)
    CHECK(signAtUnivariate(uni({-2, 0, 1}) * (X - Polynomial::constant(1, Rational(5))),
                           sqrt2) == 0);
    // x^3 at sqrt(2) is positive, at -sqrt(2) negative
    CHECK(signAtUnivariate(uni({0, 0, 0, 1}), sqrt2) == 1);
    CHECK(signAtUnivariate(uni({0, 0, 0, 1}), roots[0]) == -1);
}

TEST_CASE("root counting in open intervals")
{
    const auto p = uni({-2, 0, 1}); // x^2 - 2
    CHECK(countRootsInOpenInterval(p, Rational(0), Rational(2)) == 1);
    CHECK(countRootsInOpenInterval(p, Rational(-2), Rational(2)) == 2);
    CHECK(countRootsInOpenInterval(p, Rational(2), Rational(3)) == 0);
    CHECK(countRootsInOpenInterval(p, Rational(3), Rational(2)) == 0);
    // non-squarefree input is handled through its squarefree part
    CHECK(countRootsInOpenInterval(uni({-1, 2, -1}) * Rational(-1), Rational(0), Rational(2)) ==
          1); // (x-1)^2
    CHECK_THROWS_AS(countRootsInOpenInterval(Polynomial(1), Rational(0), Rational(1)), Error);
}

TEST_CASE("simplest rational in an interval")
{
    CHECK(simplestRationalStrictlyBetween(Rational(30, 100), Rational(34, 100)) ==
          Rational(1, 3));
    CHECK(simplestRationalStrictlyBetween(Rational(-34, 100), Rational(-30, 100)) ==
          Rational(-1, 3));
    CHECK(simplestRationalStrictlyBetween(Rational(-1, 2), Rational(1, 3)) == Rational(0));
    CHECK(simplestRationalStrictlyBetween(Rational(16, 5), Rational(47, 10)) == Rational(4));
    CHECK(simplestRationalStrictlyBetween(Rational(2), Rational(3)) == Rational(5, 2));
    CHECK(simplestRationalStrictlyBetween(Rational(1), Rational(2)) == Rational(3, 2));
    CHECK(simplestRationalStrictlyBetween(Rational(5, 4), Rational(3, 2)) == Rational(4, 3));
    CHECK(simplestRationalStrictlyBetween(Rational(0), Rational(1, 1000)) ==
          Rational(1, 1001));
    CHECK_THROWS_AS(simplestRationalStrictlyBetween(Rational(1), Rational(1)), Error);
    // result is always strictly inside
    const Rational r = simplestRationalStrictlyBetween(Rational(355, 113), Rational(22, 7));
    CHECK(Rational(355, 113) < r);
    CHECK(r < Rational(22, 7));
}

TEST_CASE("quadratic root counts match the closed form")
{
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<long> coeff(-9, 9);
    int checked = 0;
    while (checked < 500) {
        const long a = coeff(rng), b = coeff(rng), c = coeff(rng);
        if (a == 0) continue;
        ++checked;
        const long disc = b * b - 4 * a * c;
        const std::size_t expected = disc > 0 ? 2 : (disc == 0 ? 1 : 0);
        const auto roots = isolateRealRoots(uni({c, b, a}));
        CHECK(roots.size() == expected);
        if (expected == 2) CHECK(AlgebraicNumber::compare(roots[0], roots[1]) < 0);
        for (const auto& r : roots) CHECK(signAtUnivariate(uni({c, b, a}), r) == 0);
    }
}

TEST_CASE("random polynomials: ordering, disjointness, exact membership")
{
    std::mt19937 rng(907);
    std::uniform_int_distribution<long> coeff(-9, 9);
    std::uniform_int_distribution<int> degree(1, 5);
    for (int iter = 0; iter < 200; ++iter) {
        const int d = degree(rng);
        std::vector<long> cs(static_cast<std::size_t>(d) + 1);
        for (auto& v : cs) v = coeff(rng);
        if (cs.back() == 0) cs.back() = 1;
        const auto p = uni(cs);
        const auto roots = isolateRealRoots(p);
        CHECK(roots.size() <= static_cast<std::size_t>(d));
        for (std::size_t i = 0; i < roots.size(); ++i) {
            CHECK(signAtUnivariate(p, roots[i]) == 0);
            if (i + 1 < roots.size()) {
                CHECK(AlgebraicNumber::compare(roots[i], roots[i + 1]) < 0);
                // isolating intervals must not overlap
                CHECK(roots[i].hi() <= roots[i + 1].lo());
            }
        }
        // odd degree guarantees at least one real root
        if (d % 2 == 1) CHECK(!roots.empty());
    }
}

TEST_CASE("double conversion accuracy")
{
    const auto roots = isolateRealRoots(uni({-3, 0, 1})); // x^2 - 3
    REQUIRE(roots.size() == 2);
    CHECK(roots[1].toDouble() == doctest::Approx(std::sqrt(3.0)).epsilon(1e-12));
    const auto golden = isolateRealRoots(uni({-1, -1, 1})); // x^2 - x - 1
    REQUIRE(golden.size() == 2);
    CHECK(golden[1].toDouble() == doctest::Approx((1 + std::sqrt(5.0)) / 2).epsilon(1e-12));
}
