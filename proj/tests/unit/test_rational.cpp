#include <doctest.h>

#include <random>

#include "orbitrep/errors.hpp"
#include "orbitrep/rational.hpp"

using orbitrep::ParseError;
using orbitrep::Rational;

TEST_SUITE("rational") {
  TEST_CASE("parses integers and fractions in lowest terms") {
    CHECK(Rational::parse("7/2") == Rational(7, 2));
    CHECK(Rational::parse("-11/10") == Rational(-11, 10));
    CHECK(Rational::parse("4").str() == "4");
    CHECK(Rational::parse("2/4").str() == "1/2");
    CHECK(Rational::parse("-0").str() == "0");
    CHECK(Rational::parse("123456789012345678901234567890/3").str() == "41152263004115226300411522630");
  }

  TEST_CASE("rejects malformed rationals") {
    for (const char* bad : {"1/0", "", "a", "1/-2", " 1", "1.5", "1/", "/2", "--1", "+1", "1/2/3", "0x10"}) {
      CAPTURE(bad);
      CHECK_THROWS_AS(Rational::parse(bad), ParseError);
    }
    CHECK_THROWS_AS(Rational(1, 0), std::domain_error);
  }

  TEST_CASE("arithmetic and ordering") {
    const Rational a(7, 2);
    const Rational b(-11, 10);
    CHECK(a + b == Rational(12, 5));
    CHECK(a - b == Rational(23, 5));
    CHECK(a * b == Rational(-77, 20));
    CHECK(a / b == Rational(-35, 11));
    CHECK(-a == Rational(-7, 2));
    CHECK(b < a);
    CHECK(orbitrep::abs(b) == Rational(11, 10));
    CHECK(orbitrep::min(a, b) == b);
    CHECK(orbitrep::max(a, b) == a);
    CHECK_THROWS(a / Rational(0));
    CHECK(Rational(3, 4).to_double() == doctest::Approx(0.75));
  }

  TEST_CASE("round_to picks the nearest fraction with the given denominator") {
    CHECK(Rational::round_to(0.5, 1000000) == Rational(1, 2));
    CHECK(Rational::round_to(1.0 / 3.0, 1000000) == Rational(333333, 1000000));
    CHECK(Rational::round_to(2.0 / 3.0, 1000000) == Rational(666667, 1000000));
  }

  TEST_CASE("str and parse round trip on random fractions") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> num(-100000, 100000);
    std::uniform_int_distribution<long> den(1, 100000);
    for (int k = 0; k < 1000; ++k) {
      const Rational r(num(rng), den(rng));
      CHECK(Rational::parse(r.str()) == r);
      CHECK(std::hash<Rational>{}(r) == std::hash<Rational>{}(Rational::parse(r.str())));
    }
  }
}
