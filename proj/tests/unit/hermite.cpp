#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mlkpz/hermite.hpp"

using namespace mlkpz;

TEST_SUITE("hermite") {
  TEST_CASE("polynomials") {
    CHECK(hermite(0).coefficients() == std::vector<Rational>{1});
    CHECK(hermite(2).coefficients() == std::vector<Rational>{-1, 0, 1});
    CHECK(hermite(6).coefficients() == std::vector<Rational>{-15, 0, 45, 0, -15, 0, 1});
    for (int n = 0; n <= 12; ++n) CHECK(hermite(n)(0.8) == doctest::Approx(hermite_value(n, 0.8)));
  }

  TEST_CASE("triple integral values") {
    CHECK(triple_integral(0, 0, 0).coefficient == Rational(1));
    CHECK(triple_integral(1, 0, 0).coefficient == Rational(0));
    CHECK(triple_integral(2, 0, 0).coefficient == Rational(-2, 3));
    CHECK(triple_unit(1.0) == doctest::Approx(1.0 / (4.0 * std::sqrt(3.0) * std::numbers::pi)));
    CHECK(triple_unit(1.0) == doctest::Approx(0.045944).epsilon(1e-5));
  }

  TEST_CASE("quadrature oracle") {
    CHECK(quadrature_oracle(0, 0, 0, 1.0) == doctest::Approx(triple_unit(1.0)).epsilon(1e-12));
    CHECK(quadrature_oracle(2, 0, 0, 1.0) == doctest::Approx(-2.0 / 3.0 * triple_unit(1.0)).epsilon(1e-12));
    const double r = quadrature_oracle(1, 1, 0, 0.5) / triple_unit(0.5);
    CHECK(std::isfinite(r));
    CHECK(r == doctest::Approx(triple_integral(1, 1, 0).coefficient.to_double()).epsilon(1e-10));
    CHECK_THROWS_AS(quadrature_oracle(10, 10, 6, 1.0), DegreeBudgetExceeded);
    CHECK_THROWS_AS(quadrature_oracle(0, 0, 0, 0.0), std::invalid_argument);
  }

  TEST_CASE("closed form matches quadrature for even sums up to 16") {
    for (int a = 0; a <= 16; ++a) {
      for (int b = 0; a + b <= 16; ++b) {
        for (int c = 0; a + b + c <= 16; ++c) {
          const double exact = triple_integral(a, b, c).coefficient.to_double();
          if ((a + b + c) % 2 != 0) {
            CHECK(exact == 0.0);
            continue;
          }
          for (double t : {0.25, 1.0, 4.0}) {
            const double q = quadrature_oracle(a, b, c, t) / triple_unit(t);
            CHECK(std::abs(q - exact) <= 1e-8 * (1.0 + std::abs(exact)));
          }
        }
      }
    }
  }

  TEST_CASE("symmetric in its arguments") {
    for (int a = 0; a <= 6; ++a) {
      for (int b = 0; b <= 6; ++b) {
        for (int c = 0; c <= 6; ++c) {
          CHECK(triple_integral(a, b, c) == triple_integral(c, a, b));
          CHECK(triple_integral(a, b, c) == triple_integral(b, a, c));
        }
      }
    }
  }

  TEST_CASE("value scales like 1/t") {
    const TripleIntegralValue v = triple_integral(4, 2, 2);
    CHECK(v.value(2.0) == doctest::Approx(v.value(1.0) / 2.0));
  }
}
