#include <doctest.h>

#include <sstream>

#include "mlkpz/rational.hpp"

using mlkpz::binom;
using mlkpz::binom_or_zero;
using mlkpz::Rational;

TEST_SUITE("rational") {
  TEST_CASE("binomial conventions") {
    CHECK(binom(5, 2) == Rational(10));
    CHECK(binom(3, -1) == Rational(0));
    CHECK(binom(-1, -1) == Rational(1));
    CHECK(binom(0, 0) == Rational(1));
    CHECK(binom(2, 3) == Rational(0));
    CHECK(binom_or_zero(-1, 0) == 0);
    CHECK(binom_or_zero(6, 3) == 20);
  }

  TEST_CASE("Pascal rule for n >= 1") {
    for (long n = 1; n <= 20; ++n) {
      for (long k = 0; k <= n; ++k) CHECK(binom(n, k) == binom(n - 1, k) + binom(n - 1, k - 1));
    }
  }

  TEST_CASE("parse and print") {
    const Rational r = Rational::parse("-5129851/53747712");
    CHECK(r.to_fraction_string() == "-5129851/53747712");
    CHECK(Rational::parse("6/4") == Rational(3, 2));
    CHECK(Rational::parse("7").to_fraction_string() == "7/1");
    CHECK_THROWS(Rational::parse("1/0"));
    CHECK_THROWS(Rational::parse("abc"));
    std::ostringstream os;
    os << Rational(-85, 288);
    CHECK(os.str() == "-85/288");
  }

  TEST_CASE("powers of -1/2") {
    CHECK(Rational::neg_half_pow(0) == Rational(1));
    CHECK(Rational::neg_half_pow(1) == Rational(-1, 2));
    CHECK(Rational::neg_half_pow(3) == Rational(-1, 8));
    CHECK(Rational::neg_half_pow(-2) == Rational(4));
    CHECK(Rational::pow2(-3) == Rational(1, 8));
  }

  TEST_CASE("arithmetic is exact") {
    CHECK(Rational(-85, 288) + Rational(47, 144) == Rational(1, 32));
    CHECK(Rational(-995, 6912) + Rational(445, 3456) == Rational(-105, 6912));
    CHECK((Rational(2, 3) / Rational(4, 9)) == Rational(3, 2));
    CHECK_THROWS(Rational(1) / Rational(0));
  }
}
