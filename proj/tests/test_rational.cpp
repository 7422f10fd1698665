#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "smg/rational.hpp"

using namespace smg;

TEST_CASE("construction normalizes") {
  CHECK(Rational(2, 4) == Rational(1, 2));
  CHECK(Rational(0, 7).str() == "0/1");
  CHECK(Rational(128, 127).str() == "128/127");
  CHECK(Rational(6, 3) == Rational(2));
  CHECK_THROWS(Rational(1, 0));
  CHECK_THROWS(Rational(-1, 2));
  CHECK_THROWS(Rational(1, -2));
}

TEST_CASE("arithmetic") {
  CHECK(Rational(1, 2) + Rational(1, 2) == Rational(1));
  CHECK(Rational(3, 2) * Rational(3, 2) == Rational(9, 4));
  CHECK(Rational(1) - Rational(1, 3) == Rational(2, 3));
  CHECK_THROWS(Rational(1, 3) - Rational(1, 2));
  CHECK(Rational(3, 4) / Rational(3, 2) == Rational(1, 2));
  CHECK_THROWS(Rational(1) / Rational(0));
}

TEST_CASE("comparison is exact cross-multiplication") {
  CHECK(Rational(9, 8) == Rational(1) + Rational(1, 8));  // bound at h=7
  CHECK(Rational(1, 3) < Rational(34, 100));
  CHECK(Rational(2, 3) > Rational(66, 100));
  CHECK(Rational(7, 8) <= Rational(7, 8));
}

TEST_CASE("parsing round-trips") {
  CHECK(Rational::parse("3/4").str() == "3/4");
  CHECK(Rational::parse("6/8") == Rational(3, 4));
  CHECK(Rational::parse("5") == Rational(5));
  CHECK(!Rational::try_parse("-1/2"));
  CHECK(!Rational::try_parse("a/b"));
  CHECK(!Rational::try_parse("1/0"));
  CHECK(!Rational::try_parse(""));
  for (const char* s : {"0/1", "8/7", "128/127", "135/64"})
    CHECK(Rational::parse(s).str() == s);
}

TEST_CASE("no overflow at large exponents") {
  // products of 2^h/(2^h-1) factors stay exact far beyond 64-bit range
  Rational p(1);
  for (int i = 0; i < 30; ++i) p *= Rational((1LL << 31) - 1, 1LL << 31);
  Rational q(1);
  for (int i = 0; i < 30; ++i) q *= Rational(1LL << 31, (1LL << 31) - 1);
  CHECK(p * q == Rational(1));
}

TEST_CASE("helpers") {
  CHECK(avg(Rational(6, 7), Rational(8, 7)) == Rational(1));
  CHECK(pow(Rational(8, 7), 6) == Rational(262144, 117649));
  CHECK(pow(Rational(3, 2), 0) == Rational(1));
  CHECK(Rational(1, 3).approx() == doctest::Approx(1.0 / 3).epsilon(1e-12));
}
