#include <doctest.h>

#include "mlkpz/kernel_algebra.hpp"

using namespace mlkpz;

namespace {
const BasisKernel G0 = BasisKernel::direct(0);
const BasisKernel G1 = BasisKernel::direct(1);
const BasisKernel G2 = BasisKernel::direct(2);
const BasisKernel G3 = BasisKernel::direct(3);
const BasisKernel Gt0 = BasisKernel::reflected(0);
const BasisKernel Gt1 = BasisKernel::reflected(1);
}  // namespace

TEST_SUITE("kernel_algebra") {
  TEST_CASE("Gbar expansion") {
    CHECK(expand_gbar(0) == KernelCombo{{G0, Rational(1)}});
    CHECK(expand_gbar(1) == KernelCombo{{G1, Rational(1)}});
    CHECK(expand_gbar(3) == KernelCombo{{G1, Rational(1)}, {G2, Rational(2)}, {G3, Rational(1)}});
    for (int j = 1; j <= 10; ++j) CHECK(gbar_polynomial(j).to_kernels() == expand_gbar(j));
  }

  TEST_CASE("canonical text form") {
    CHECK(KernelCombo{}.to_string() == "0");
    const KernelCombo d01{{G0, Rational(-1, 4)}, {Gt0, Rational(-1, 4)}, {G1, Rational(1, 2)}};
    CHECK(d01.to_string() == "-1/4·G_0 + 1/2·G_1 - 1/4·Gt_0");
  }

  TEST_CASE("telescoping") {
    CHECK(mild_telescoping_check(1, 1));
    CHECK(mild_telescoping_check(1, 4));
    CHECK(mild_telescoping_check(3, 7));
    for (int i = 1; i <= 12; ++i) {
      for (int k = i; k <= 12; ++k) CHECK(mild_telescoping_check(i, k));
    }
    for (int i = 1; i <= 10; ++i) CHECK(resummation_identity_holds(i));
  }

  TEST_CASE("D base cases and worked identities") {
    const KernelCombo d00{{G0, Rational(1, 2)}, {Gt0, Rational(1, 2)}};
    CHECK(dij_closed(0, 0) == d00);
    CHECK(dij_recursion(0, 0) == d00);
    CHECK(dij_lattice_paths(0, 0) == d00);

    const KernelCombo d11{{G0, Rational(1, 4)}, {Gt0, Rational(1, 4)}, {G1, Rational(-1, 4)}, {Gt1, Rational(-1, 4)}};
    CHECK(dij_closed(1, 1) == d11);

    const KernelCombo d01{{G0, Rational(-1, 4)}, {Gt0, Rational(-1, 4)}, {G1, Rational(1, 2)}};
    CHECK(dij_recursion(0, 1) == d01);
    const KernelCombo d10{{Gt1, Rational(1, 2)}, {G0, Rational(-1, 4)}, {Gt0, Rational(-1, 4)}};
    CHECK(dij_lattice_paths(1, 0) == d10);
    CHECK(d01.reflect() == d10);
  }

  TEST_CASE("three D routes agree") {
    CHECK(dij_closed(0, 2) == dij_recursion(0, 2));
    CHECK(dij_recursion(5, 3) == dij_closed(5, 3));
    CHECK(dij_lattice_paths(3, 4) == dij_closed(3, 4));
    for (int i = 0; i <= 8; ++i) {
      for (int j = 0; j <= 8; ++j) {
        const KernelCombo c = dij_closed(i, j);
        CHECK(c == dij_recursion(i, j));
        CHECK(c == dij_lattice_paths(i, j));
        CHECK(dij_closed(j, i) == c.reflect());
      }
    }
    CHECK_THROWS_AS(dij_lattice_paths(11, 10), std::out_of_range);
  }

  TEST_CASE("parabolic scaling") {
    CHECK(scaling_check(0, {{1.0, 0.0}}, 2.0).ok);
    CHECK(heat_kernel(4.0, 0.0) == doctest::Approx(0.5 * heat_kernel(1.0, 0.0)).epsilon(1e-14));
    CHECK(scaling_check(1, {{1.0, 1.0}}, 3.0).ok);
    std::vector<SpaceTimePoint> grid;
    for (int a = 1; a <= 4; ++a) {
      for (int b = 0; b < 5; ++b) grid.push_back({0.25 * a, -1.0 + 0.5 * b});
    }
    REQUIRE(grid.size() == 20);
    CHECK(scaling_check(4, grid, 0.5).ok);
  }

  TEST_CASE("basis kernels are t^i/i! d_x^{2i} G") {
    // second difference of G against G_1 = t d_x^2 G
    const double t = 0.7, x = 0.3, h = 1e-3;
    const double d2 = (heat_kernel(t, x + h) - 2 * heat_kernel(t, x) + heat_kernel(t, x - h)) / (h * h);
    CHECK(basis_kernel_value(1, t, x) == doctest::Approx(t * d2).epsilon(1e-5));
  }
}
