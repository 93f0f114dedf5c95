#pragma once

// Probabilists' Hermite polynomials and the Gaussian triple-product integral
//
//   A(n1,n2,n3) = \int H_{n1}(x/sqrt(2t)) H_{n2}(x/sqrt(2t)) H_{n3}(x/sqrt(2t)) G(t,x)^3 dx
//
// where G is the heat kernel of d_t - d_x^2. A is always a rational multiple of
// 1/(sqrt(3) * 4 * pi * t); triple_integral returns that multiple exactly.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mlkpz/rational.hpp"

namespace mlkpz {

class HermitePoly {
 public:
  explicit HermitePoly(std::vector<Rational> coefficients);

  int degree() const { return static_cast<int>(coefficients_.size()) - 1; }
  /// Monomial coefficients, index = power of x.
  const std::vector<Rational>& coefficients() const { return coefficients_; }
  double operator()(double x) const;

 private:
  std::vector<Rational> coefficients_;
};

/// H_n via H_{n+1} = x H_n - n H_{n-1}.
HermitePoly hermite(int n);

/// Double-precision H_n(x) by the same recurrence.
double hermite_value(int n, double x);

struct TripleIntegralValue {
  /// A = coefficient / (sqrt(3) * 4 * pi * t)
  Rational coefficient;

  double value(double t) const;
  friend bool operator==(const TripleIntegralValue&, const TripleIntegralValue&) = default;
};

/// Exact closed form of A(n1,n2,n3). Memoized on the sorted triple; safe to
/// call concurrently.
TripleIntegralValue triple_integral(int n1, int n2, int n3);

class DegreeBudgetExceeded : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

inline constexpr int kQuadratureDegreeBudget = 24;

/// Numerical A(n1,n2,n3) at time t by Gauss-Hermite quadrature after the
/// substitution y = x*sqrt(3/(2t)). Throws DegreeBudgetExceeded when
/// n1+n2+n3 > kQuadratureDegreeBudget and std::invalid_argument for t <= 0.
double quadrature_oracle(int n1, int n2, int n3, double t);

/// 1/(sqrt(3) * 4 * pi * t), the unit in which A is expressed.
double triple_unit(double t);

}  // namespace mlkpz
