#include <doctest.h>

#include <algorithm>
#include <array>

#include "mlkpz/trees.hpp"

using namespace mlkpz;

namespace {

Rational multiplicity_of(const std::vector<KernelTree>& trees, TreeShape shape, std::vector<int> orders) {
  for (const KernelTree& t : trees) {
    if (t.shape == shape && t.orders == orders) return t.multiplicity;
  }
  return Rational(0);
}

}  // namespace

TEST_SUITE("trees") {
  TEST_CASE("rule R") {
    const std::vector<EdgeLabel> ok{{2, 1}, {2, 2}};
    const std::vector<EdgeLabel> bad{{2, 1}, {3, 2}};
    CHECK(rule_allows(TreeShape::Two, ok));
    CHECK_FALSE(rule_allows(TreeShape::Two, bad));
    const std::vector<EdgeLabel> tall{{1, 1}, {1, 1}, {2, 1}, {2, 2}, {3, 2}, {3, 3}};
    CHECK(rule_allows(TreeShape::TwoOneOne, tall));
    const std::vector<EdgeLabel> broken_parent{{1, 1}, {2, 1}, {2, 1}, {2, 2}, {3, 2}, {3, 3}};
    CHECK_FALSE(rule_allows(TreeShape::TwoOneOne, broken_parent));
    const std::vector<EdgeLabel> malformed{{1, 2}};
    CHECK_FALSE(rule_allows(TreeShape::One, malformed));
    CHECK_THROWS_AS(rule_allows(TreeShape::Two, malformed), std::invalid_argument);
  }

  TEST_CASE("homogeneity") {
    CHECK(homogeneity(TreeShape::D) == Homogeneity{Rational(-1, 2), Rational(-1)});
    CHECK(homogeneity(TreeShape::Two) == Homogeneity{Rational(-1), Rational(-2)});
    CHECK(homogeneity(TreeShape::One) == Homogeneity{Rational(1, 2), Rational(-1)});
    for (TreeShape s : kAllShapes) CHECK(homogeneity(s).constant > Rational(-3, 2));
  }

  TEST_CASE("shape names round-trip") {
    for (TreeShape s : kAllShapes) CHECK(parse_shape(shape_name(s)) == s);
    CHECK(arity(TreeShape::FourZero) == 6);
  }

  TEST_CASE("small expansions") {
    const auto n1 = expand_layer(1, 0);
    REQUIRE(n1.size() == 1);
    CHECK(n1[0].shape == TreeShape::One);
    CHECK(n1[0].orders == std::vector<int>{0});
    CHECK(n1[0].multiplicity == Rational(1));

    const auto n2 = expand_layer(2, 0);
    REQUIRE(n2.size() == 2);
    CHECK(multiplicity_of(n2, TreeShape::One, {0}) == Rational(1));
    CHECK(multiplicity_of(n2, TreeShape::One, {1}) == Rational(1));

    CHECK(multiplicity_of(expand_layer(2, 1), TreeShape::TwoZero, {0, 0, 1}) == Rational(1));
    CHECK(to_string(expand_layer(2, 1)[1]) == "<20>[0,0,1] x 1");
  }

  TEST_CASE("brute force equals closed form for n <= 5") {
    for (int n = 1; n <= 5; ++n) {
      for (int order = 0; order <= 2; ++order) CHECK(expand_layer(n, order) == closed_form_layer(n, order));
    }
  }

  TEST_CASE("labelled expansion obeys the rule") {
    for (int n = 1; n <= 4; ++n) {
      for (int order = 0; order <= 2; ++order) {
        for (const DecoratedTree& t : expand_layer_labelled(n, order)) CHECK(rule_allows(t.shape, t.labels));
      }
    }
  }

  TEST_CASE("closed-form coefficients") {
    const std::array<int, 6> zeros{};
    CHECK(coeff_211(1, zeros) == Rational(1));
    CHECK(coeff_40(1, zeros) == Rational(1));
    const std::array<int, 6> m5_only{0, 0, 0, 0, 1, 0};
    CHECK(coeff_211(2, m5_only) > Rational(0));
    const std::array<int, 6> m5_too_big{1, 0, 0, 0, 1, 0};
    CHECK(coeff_211(2, m5_too_big) == Rational(0));
    const std::array<int, 6> m1_too_big{2, 0, 0, 0, 0, 0};
    CHECK(coeff_40(2, m1_too_big) == Rational(0));
    CHECK(coeff_40(2, zeros) > Rational(0));
    CHECK(coeff_20(3, 3, 0, 0) == Rational(0));
    CHECK_THROWS(coeff_20(0, 0, 0, 0));
  }

  TEST_CASE("<211> coefficient factors through <210>") {
    for (int n = 1; n <= 4; ++n) {
      for (int code = 0; code < n * n * n * n * n; ++code) {
        std::array<int, 6> m{};
        int c = code;
        for (int k = 0; k < 5; ++k) {
          m[k] = c % n;
          c /= n;
        }
        for (int m6 = 0; m6 < n; ++m6) {
          m[5] = m6;
          const Rational lhs = coeff_211(n, m);
          const Rational rhs = coeff_210(n, m[0], m[1], m[2], m[3], m[4]) * Rational(binom_or_zero(n - 1, m6));
          CHECK(lhs == rhs);
        }
      }
    }
  }
}
