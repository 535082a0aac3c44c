#include "doctest.h"

#include <cmath>

#include "cadmin/errors.hpp"
#include "cadmin/point_eval.hpp"

using namespace cadmin;

namespace {

AlgebraicNumber sqrtOf(long n)
{
    const auto p = Polynomial::fromTerms(1, {{{2}, Rational(1)}, {{0}, Rational(-n)}});
    const auto roots = isolateRealRoots(p);
    REQUIRE(roots.size() == 2);
    return roots[1];
}

AlgebraicNumber negSqrtOf(long n)
{
    const auto p = Polynomial::fromTerms(1, {{{2}, Rational(1)}, {{0}, Rational(-n)}});
    return isolateRealRoots(p)[0];
}

AlgebraicNumber rat(long num, long den = 1)
{
    return AlgebraicNumber::fromRational(Rational(num, den));
}

} // namespace

TEST_CASE("sign at rational points")
{
    const auto x = Polynomial::variable(2, 0);
    const auto y = Polynomial::variable(2, 1);
    const auto q = x * x * y - Polynomial::constant(2, Rational(4));
    CHECK(signAt(q, {rat(2), rat(1)}) == 0);
    CHECK(signAt(q, {rat(2), rat(2)}) == 1);
    CHECK(signAt(q, {rat(1), rat(1)}) == -1);
    CHECK(signAt(Polynomial(2), {rat(0), rat(0)}) == 0);
    CHECK(signAt(Polynomial::constant(2, Rational(-3)), {rat(1), rat(5)}) == -1);
}

TEST_CASE("sign with one irrational coordinate")
{
    const auto x = Polynomial::variable(2, 0);
    const auto y = Polynomial::variable(2, 1);
    const auto s2 = sqrtOf(2);
    // y - x^2 at (sqrt2, 2) is exactly zero
    CHECK(signAt(y - x * x, {s2, rat(2)}) == 0);
    CHECK(signAt(y - x * x, {s2, rat(3)}) == 1);
    CHECK(signAt(y - x * x, {s2, rat(1)}) == -1);
}

TEST_CASE("exact zero forces the value-polynomial path")
{
    const auto x = Polynomial::variable(2, 0);
    const auto y = Polynomial::variable(2, 1);
    const auto s2 = sqrtOf(2);
    const auto s3 = sqrtOf(3);

    // sqrt2 * sqrt2 = 2 exactly: interval refinement alone can never decide
    CHECK(signAt(x * y - Polynomial::constant(2, Rational(2)), {s2, s2}) == 0);
    // same root twice
    CHECK(signAt(x - y, {s2, s2}) == 0);
    // two different roots of the same defining polynomial
    CHECK(signAt(x + y, {s2, negSqrtOf(2)}) == 0);
    // sqrt2 * sqrt3 = sqrt6
    const auto s6 = sqrtOf(6);
    const auto z3 = Polynomial::variable(3, 2);
    const auto x3 = Polynomial::variable(3, 0);
    const auto y3 = Polynomial::variable(3, 1);
    CHECK(signAt(x3 * y3 - z3, {s2, s3, s6}) == 0);
    CHECK(signAt(x3 * y3 - z3, {s2, s3, sqrtOf(7)}) == -1);
}

TEST_CASE("nonzero signs with several irrational coordinates")
{
    const auto x = Polynomial::variable(2, 0);
    const auto y = Polynomial::variable(2, 1);
    const auto s2 = sqrtOf(2);
    const auto s3 = sqrtOf(3);
    CHECK(signAt(x - y, {s2, s3}) == -1);
    CHECK(signAt(x - y, {s3, s2}) == 1);
    CHECK(signAt(x * x + y * y - Polynomial::constant(2, Rational(1)), {s2, s3}) == 1);
    // sqrt2 + sqrt3 vs pi-ish rational 157/50 = 3.14: sqrt2+sqrt3 ~ 3.146
    CHECK(signAt(x + y - Polynomial::constant(2, Rational(157, 50)), {s2, s3}) == 1);
    CHECK(signAt(x + y - Polynomial::constant(2, Rational(63, 20)), {s2, s3}) == -1);
}

TEST_CASE("three irrational coordinates")
{
    const auto x = Polynomial::variable(3, 0);
    const auto y = Polynomial::variable(3, 1);
    const auto z = Polynomial::variable(3, 2);
    const auto s2 = sqrtOf(2);
    // (xyz)^2 - 8 = 0 at (s2, s2, s2)
    const auto q = (x * y * z).pow(2) - Polynomial::constant(3, Rational(8));
    CHECK(signAt(q, {s2, s2, s2}) == 0);
    CHECK(signAt(x * y * z - Polynomial::constant(3, Rational(3)), {s2, s2, s2}) == -1);
    CHECK(signAt(x * y * z - Polynomial::constant(3, Rational(14, 5)), {s2, s2, s2}) == 1);
}

TEST_CASE("fibre roots over rational base points")
{
    const auto x = Polynomial::variable(2, 0);
    const auto y = Polynomial::variable(2, 1);
    const auto circle = x * x + y * y - Polynomial::constant(2, Rational(1));

    auto r0 = isolateFibreRoots(circle, {rat(0)});
    REQUIRE(r0.size() == 2);
    CHECK(r0[0].isRational());
    CHECK(r0[0].rationalValue() == Rational(-1));
    CHECK(r0[1].rationalValue() == Rational(1));

    auto rHalf = isolateFibreRoots(circle, {rat(1, 2)});
    REQUIRE(rHalf.size() == 2);
    CHECK(!rHalf[0].isRational());
    CHECK(rHalf[1].toDouble() == doctest::Approx(std::sqrt(3.0) / 2).epsilon(1e-9));

    auto rTangent = isolateFibreRoots(circle, {rat(1)});
    REQUIRE(rTangent.size() == 1);
    CHECK(rTangent[0].rationalValue() == Rational(0));

    CHECK(isolateFibreRoots(circle, {rat(2)}).empty());
}

TEST_CASE("fibre roots over an irrational base point")
{
    const auto x = Polynomial::variable(2, 0);
    const auto y = Polynomial::variable(2, 1);
    const auto circle = x * x + y * y - Polynomial::constant(2, Rational(1));

    // base x = 1/sqrt2 (positive root of 2x^2-1): fibre roots +-1/sqrt2
    const auto halfSqrt2 =
        isolateRealRoots(Polynomial::fromTerms(1, {{{2}, Rational(2)}, {{0}, Rational(-1)}}))[1];
    auto roots = isolateFibreRoots(circle, {halfSqrt2});
    REQUIRE(roots.size() == 2);
    CHECK(AlgebraicNumber::compare(roots[0], roots[1]) < 0);
    CHECK(roots[0].toDouble() == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-9));
    CHECK(roots[1].toDouble() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
    // each root y satisfies 2y^2 - 1 = 0
    const auto check = Polynomial::fromTerms(2, {{{0, 2}, Rational(2)}, {{0, 0}, Rational(-1)}});
    CHECK(signAt(check, {halfSqrt2, roots[0]}) == 0);
    CHECK(signAt(check, {halfSqrt2, roots[1]}) == 0);
}

TEST_CASE("sphere fibre over the tangent base point")
{
    const auto x = Polynomial::variable(3, 0);
    const auto y = Polynomial::variable(3, 1);
    const auto z = Polynomial::variable(3, 2);
    const auto sphere = x * x + y * y + z * z - Polynomial::constant(3, Rational(1));

    // (1/sqrt2, 1/sqrt2) lies on the equator circle: single root z = 0
    const auto h = isolateRealRoots(
        Polynomial::fromTerms(1, {{{2}, Rational(2)}, {{0}, Rational(-1)}}))[1];
    auto roots = isolateFibreRoots(sphere, {h, h});
    REQUIRE(roots.size() == 1);
    CHECK(roots[0].isRational());
    CHECK(roots[0].rationalValue() == Rational(0));

    // mixed rational/irrational base (1/2, sqrt3/2): also tangent
    const auto sq32 = isolateRealRoots(
        Polynomial::fromTerms(1, {{{2}, Rational(4)}, {{0}, Rational(-3)}}))[1];
    auto mixed = isolateFibreRoots(sphere, {rat(1, 2), sq32});
    REQUIRE(mixed.size() == 1);
    CHECK(mixed[0].rationalValue() == Rational(0));

    // interior base point: two symmetric roots
    auto interior = isolateFibreRoots(sphere, {rat(1, 2), rat(1, 2)});
    REQUIRE(interior.size() == 2);
    CHECK(interior[0].toDouble() == doctest::Approx(-std::sqrt(0.5)).epsilon(1e-9));
    CHECK(interior[1].toDouble() == doctest::Approx(std::sqrt(0.5)).epsilon(1e-9));
}

TEST_CASE("curtain fibres are rejected")
{
    const auto x = Polynomial::variable(2, 0);
    const auto y = Polynomial::variable(2, 1);
    CHECK_THROWS_AS(isolateFibreRoots(x * y, {rat(0)}), CurtainFibreError);
    CHECK_THROWS_AS(isolateFibreRoots(Polynomial(2), {rat(1)}), CurtainFibreError);
    // over a nonzero base the fibre of x*y is fine
    auto ok = isolateFibreRoots(x * y, {rat(3)});
    REQUIRE(ok.size() == 1);
    CHECK(ok[0].rationalValue() == Rational(0));
    // curtain over an irrational base point
    const auto s2 = sqrtOf(2);
    const auto curtain = (x * x - Polynomial::constant(2, Rational(2))) * y;
    CHECK_THROWS_AS(isolateFibreRoots(curtain, {s2}), CurtainFibreError);
    auto fine = isolateFibreRoots(curtain, {rat(1)});
    REQUIRE(fine.size() == 1);
    CHECK(fine[0].rationalValue() == Rational(0));
}

TEST_CASE("fibre root ordering and interlacing")
{
    // (y^2 - x)(y - 1): over x = 2, roots -sqrt2, 1, sqrt2
    const auto x = Polynomial::variable(2, 0);
    const auto y = Polynomial::variable(2, 1);
    const auto p = (y * y - x) * (y - Polynomial::constant(2, Rational(1)));
    auto roots = isolateFibreRoots(p, {rat(2)});
    REQUIRE(roots.size() == 3);
    CHECK(!roots[0].isRational());
    CHECK(roots[1].isRational());
    CHECK(roots[1].rationalValue() == Rational(1));
    CHECK(!roots[2].isRational());
    for (std::size_t i = 0; i + 1 < roots.size(); ++i)
        CHECK(AlgebraicNumber::compare(roots[i], roots[i + 1]) < 0);
}
