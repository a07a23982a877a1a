#include "doctest.h"

#include "specdet/logspace.hpp"

using namespace specdet;

TEST_CASE("factor_integer") {
    auto f = factor_integer(Integer(360));
    CHECK(f[Integer(2)] == 3);
    CHECK(f[Integer(3)] == 2);
    CHECK(f[Integer(5)] == 1);
    CHECK(factor_integer(Integer(1)).empty());
    CHECK(factor_integer(Integer(1000003)).at(Integer(1000003)) == 1);
    // cofactor above the primality-certification cap
    Integer huge = Integer(1000003) * Integer(1000033);
    CHECK_THROWS_AS(factor_integer(huge), Error);
}

TEST_CASE("log combinations are canonical over primes") {
    auto l8 = LogCombination::log_of(Rational(8));
    auto l2 = LogCombination::log_of(Rational(2));
    CHECK(l8 == l2 * Rational(3));
    CHECK((l8 - l2 * Rational(3)).is_zero());

    // log(6075/4096) = 5 log 3 + 2 log 5 - 12 log 2
    auto v = LogCombination::log_of(Rational("6075/4096"));
    CHECK(v.coefficient(Integer(2)) == -12);
    CHECK(v.coefficient(Integer(3)) == 5);
    CHECK(v.coefficient(Integer(5)) == 2);
    CHECK(v.coefficient(Integer(7)) == 0);

    // log 4 = 2 log 2 even when built from different bases
    CHECK(LogCombination::log_of(Rational(4)) ==
          LogCombination::log_of(Rational(2), Rational(2)));
    CHECK(LogCombination::log_of(Rational(1)).is_zero());
    CHECK_THROWS_AS(LogCombination::log_of(Rational(-3)), Error);
}

TEST_CASE("log combination numeric value") {
    PrecisionScope scope(256);
    auto v = LogCombination::log_of(Rational("6075/4096"));
    Real direct = boost::multiprecision::log(Real(Rational("6075/4096")));
    CHECK(rabs(v.value() - direct) < pow2(-240));

    auto half = LogCombination::log_of(Rational(2), Rational("1/2"));
    CHECK(rabs(half.value() - boost::multiprecision::log(Real(2)) / 2) < pow2(-240));
    CHECK(half.str() == "1/2*log(2)");
}
