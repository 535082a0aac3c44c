#include "doctest.h"

#include "cadmin/errors.hpp"
#include "cadmin/interval.hpp"
#include "cadmin/rational.hpp"

using namespace cadmin;

TEST_CASE("rational construction canonicalizes")
{
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(1, -2) == Rational(-1, 2));
    CHECK(Rational(-3, -6) == Rational(1, 2));
    CHECK(Rational(0, 7) == Rational(0));
    CHECK(Rational(BigInt(10), BigInt(15)) == Rational(2, 3));
    CHECK_THROWS_AS(Rational(1, 0), Error);
}

TEST_CASE("rational parsing and printing")
{
    CHECK(Rational::fromString("3/4") == Rational(3, 4));
    CHECK(Rational::fromString("-7") == Rational(-7));
    CHECK(Rational::fromString("-6/4") == Rational(-3, 2));
    CHECK(Rational(5, 3).str() == "5/3");
    CHECK(Rational(-4).str() == "-4");
    CHECK(Rational(8, 4).str() == "2");
}

TEST_CASE("rational arithmetic")
{
    const Rational a(1, 2), b(1, 3);
    CHECK(a + b == Rational(5, 6));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 6));
    CHECK(a / b == Rational(3, 2));
    CHECK(-a == Rational(-1, 2));
    CHECK(a.inverse() == Rational(2));
    CHECK_THROWS_AS(Rational(0).inverse(), Error);
    CHECK(Rational::pow(Rational(2, 3), 3) == Rational(8, 27));
    CHECK(Rational::pow(Rational(5), 0) == Rational(1));
    CHECK(Rational(-7, 3).abs() == Rational(7, 3));
}

TEST_CASE("rational floor ceil and predicates")
{
    CHECK(Rational(7, 2).floor() == 3);
    CHECK(Rational(-7, 2).floor() == -4);
    CHECK(Rational(7, 2).ceil() == 4);
    CHECK(Rational(-7, 2).ceil() == -3);
    CHECK(Rational(6, 2).floor() == 3);
    CHECK(Rational(6, 2).ceil() == 3);
    CHECK(Rational(4, 2).isInteger());
    CHECK(!Rational(1, 2).isInteger());
    CHECK(Rational(0).isZero());
    CHECK(Rational(-5).sign() == -1);
    CHECK(Rational(5).sign() == 1);
    CHECK(Rational(0).sign() == 0);
}

TEST_CASE("rational ordering")
{
    CHECK(Rational(1, 3) < Rational(1, 2));
    CHECK(Rational(-1, 2) < Rational(-1, 3));
    CHECK(Rational(2, 4) <= Rational(1, 2));
    CHECK(Rational(3, 2) > Rational(1));
    CHECK(Rational(1, 2).compare(Rational(2, 3)) == -1);
    CHECK(Rational(1, 2).toDouble() == doctest::Approx(0.5));
}

TEST_CASE("interval basics")
{
    const QInterval i(Rational(1), Rational(2));
    CHECK(i.width() == Rational(1));
    CHECK(i.mid() == Rational(3, 2));
    CHECK(!i.containsZero());
    CHECK(QInterval(Rational(-1), Rational(1)).containsZero());
    CHECK(QInterval::point(Rational(3)).width() == Rational(0));
}

TEST_CASE("interval uniform sign")
{
    CHECK(QInterval(Rational(1), Rational(2)).uniformSign() == 1);
    CHECK(QInterval(Rational(-2), Rational(-1)).uniformSign() == -1);
    CHECK(QInterval::point(Rational(0)).uniformSign() == 0);
    CHECK(!QInterval(Rational(-1), Rational(1)).uniformSign().has_value());
}

TEST_CASE("interval arithmetic containment")
{
    // Every product of member points must land inside the product interval.
    const QInterval a(Rational(-2), Rational(3));
    const QInterval b(Rational(-1), Rational(4));
    const QInterval prod = a * b;
    const Rational sa[] = {Rational(-2), Rational(0), Rational(3)};
    const Rational sb[] = {Rational(-1), Rational(2), Rational(4)};
    for (const auto& x : sa)
        for (const auto& y : sb) {
            CHECK(prod.lo <= x * y);
            CHECK(x * y <= prod.hi);
        }
    const QInterval sum = a + b;
    CHECK(sum.lo == Rational(-3));
    CHECK(sum.hi == Rational(7));
    const QInterval diff = a - b;
    CHECK(diff.lo == Rational(-6));
    CHECK(diff.hi == Rational(4));

    const QInterval sq = a.pow(2);
    for (const auto& x : sa) {
        CHECK(sq.lo <= x * x);
        CHECK(x * x <= sq.hi);
    }
    CHECK(a.scaled(Rational(-2)).lo == Rational(-6));
    CHECK(a.scaled(Rational(-2)).hi == Rational(4));
}
