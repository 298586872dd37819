#include <doctest.h>

#include "lvcap/lp.hpp"
#include "lvcap/rational.hpp"

using namespace lvcap;

TEST_CASE("rational arithmetic is exact and reduced") {
    Rational a(1, 3), b(1, 6);
    CHECK(a + b == Rational(1, 2));
    CHECK(a - b == Rational(1, 6));
    CHECK(a * b == Rational(1, 18));
    CHECK(a / b == Rational(2));
    CHECK(Rational(2, 4) == Rational(1, 2));
    CHECK(Rational(-1, -2) == Rational(1, 2));
    CHECK(Rational(1, -2) < Rational(0));
    CHECK(Rational(4, 7).str() == "4/7");
    CHECK(Rational(3).str() == "3");
    CHECK(Rational::parse("4/7") == Rational(4, 7));
    CHECK(Rational::parse("-2") == Rational(-2));
    CHECK_THROWS(Rational(1, 0));
}

TEST_CASE("rational comparisons are total") {
    CHECK(Rational(2, 3) < Rational(4, 5));
    CHECK(Rational(4, 7) < Rational(3, 5));
    CHECK(Rational(1, 2) <= Rational(1, 2));
    CHECK(rat_min(Rational(2, 3), Rational(4, 5)) == Rational(2, 3));
}

TEST_CASE("simplex solves a known LP exactly") {
    // max x + y  s.t.  x + 2y <= 4, 3x + y <= 6
    std::vector<std::vector<Rational>> A = {{Rational(1), Rational(2)},
                                            {Rational(3), Rational(1)}};
    std::vector<Rational> b = {Rational(4), Rational(6)};
    auto res = lp_max(A, b, {Rational(1), Rational(1)});
    REQUIRE(res.feasible);
    REQUIRE(res.bounded);
    CHECK(res.value == Rational(14, 5));
    CHECK(res.x[0] == Rational(8, 5));
    CHECK(res.x[1] == Rational(6, 5));
}

TEST_CASE("simplex handles equality via opposing rows and negative rhs") {
    // max z  s.t.  z - x1 <= 0, z - x2 <= 0, x1 + x2 = 1
    std::vector<std::vector<Rational>> A = {
        {Rational(-1), Rational(0), Rational(1)},
        {Rational(0), Rational(-1), Rational(1)},
        {Rational(1), Rational(1), Rational(0)},
        {Rational(-1), Rational(-1), Rational(0)},
    };
    std::vector<Rational> b = {Rational(0), Rational(0), Rational(1), Rational(-1)};
    auto res = lp_max(A, b, {Rational(0), Rational(0), Rational(1)});
    REQUIRE(res.feasible);
    REQUIRE(res.bounded);
    CHECK(res.value == Rational(1, 2));
}

TEST_CASE("simplex reports infeasible and unbounded programs") {
    auto inf = lp_max({{Rational(1)}, {Rational(-1)}}, {Rational(-2), Rational(1)}, {Rational(1)});
    CHECK(!inf.feasible);
    auto unb = lp_max({{Rational(-1)}}, {Rational(0)}, {Rational(1)});
    REQUIRE(unb.feasible);
    CHECK(!unb.bounded);
}
