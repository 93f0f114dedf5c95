#include "mlkpz/hermite.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <numbers>
#include <mutex>
#include <shared_mutex>
#include <string>

#include "mlkpz/quadrature.hpp"

namespace mlkpz {

HermitePoly::HermitePoly(std::vector<Rational> coefficients)
    : coefficients_(std::move(coefficients)) {
  if (coefficients_.empty()) coefficients_.emplace_back(0);
}

double HermitePoly::operator()(double x) const {
  double acc = 0.0;
  for (auto it = coefficients_.rbegin(); it != coefficients_.rend(); ++it) {
    acc = acc * x + it->to_double();
  }
  return acc;
}

HermitePoly hermite(int n) {
  if (n < 0) throw std::invalid_argument("hermite: negative degree");
  std::vector<Rational> prev{Rational(1)};
  if (n == 0) return HermitePoly(prev);
  std::vector<Rational> cur{Rational(0), Rational(1)};
  for (int k = 1; k < n; ++k) {
    std::vector<Rational> next(cur.size() + 1, Rational(0));
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= Rational(k) * prev[i];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return HermitePoly(cur);
}

double hermite_value(int n, double x) {
  if (n < 0) throw std::invalid_argument("hermite_value: negative degree");
  if (n == 0) return 1.0;
  double prev = 1.0;
  double cur = x;
  for (int k = 1; k < n; ++k) {
    const double next = x * cur - k * prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

double triple_unit(double t) { return 1.0 / (std::sqrt(3.0) * 4.0 * std::numbers::pi * t); }

double TripleIntegralValue::value(double t) const { return coefficient.to_double() * triple_unit(t); }

namespace {

Rational closed_form(const std::array<int, 3>& n) {
  const int total = n[0] + n[1] + n[2];
  if (total % 2 != 0) return Rational(0);
  const int half = total / 2;
  Rational sum(0);
  for (int r1 = 0; 2 * r1 <= n[0]; ++r1) {
    for (int r2 = 0; 2 * r2 <= n[1]; ++r2) {
      for (int r3 = 0; 2 * r3 <= n[2]; ++r3) {
        const int rs = r1 + r2 + r3;
        if (rs > half) continue;
        const std::array<int, 3> r{r1, r2, r3};
        mpz_class num = 1;
        mpz_class den = 1;
        for (int j = 0; j < 3; ++j) {
          num *= factorial(n[j]);
          den *= factorial(r[j]) * factorial(n[j] - 2 * r[j]);
        }
        // prod 3^{r_j - n_j/2} collapses to 3^{rs - half}, an integer power
        mpz_class three;
        mpz_ui_pow_ui(three.get_mpz_t(), 3, static_cast<unsigned long>(half - rs));
        den *= three;
        const int m = total - 2 * rs;
        num *= factorial(m);
        den *= factorial(m / 2);
        Rational term(mpq_class(num, den));
        if (rs % 2 != 0) term = -term;
        sum += term;
      }
    }
  }
  return sum * Rational::pow2(-half);
}

}  // namespace

TripleIntegralValue triple_integral(int n1, int n2, int n3) {
  if (n1 < 0 || n2 < 0 || n3 < 0) throw std::invalid_argument("triple_integral: negative index");
  std::array<int, 3> key{n1, n2, n3};
  std::sort(key.begin(), key.end());
  static std::map<std::array<int, 3>, Rational> memo;
  static std::shared_mutex mu;
  {
    std::shared_lock lock(mu);
    if (auto it = memo.find(key); it != memo.end()) return {it->second};
  }
  Rational value = closed_form(key);
  std::unique_lock lock(mu);
  memo.emplace(key, value);
  return {value};
}

double quadrature_oracle(int n1, int n2, int n3, double t) {
  if (n1 < 0 || n2 < 0 || n3 < 0) throw std::invalid_argument("quadrature_oracle: negative index");
  if (!(t > 0.0)) throw std::invalid_argument("quadrature_oracle: t must be positive");
  const int total = n1 + n2 + n3;
  if (total > kQuadratureDegreeBudget) {
    throw DegreeBudgetExceeded("quadrature_oracle: degree " + std::to_string(total) +
                               " exceeds budget " + std::to_string(kQuadratureDegreeBudget));
  }
  const auto order = static_cast<std::size_t>(total / 2 + 2);
  const quad::Rule rule = quad::gauss_hermite_prob(order);
  const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
  double sum = 0.0;
  for (std::size_t i = 0; i < rule.size(); ++i) {
    const double u = rule.nodes[i] * inv_sqrt3;
    sum += rule.weights[i] * hermite_value(n1, u) * hermite_value(n2, u) * hermite_value(n3, u);
  }
  // G^3 dx = (4 pi t)^{-3/2} e^{-y^2/2} sqrt(2t/3) dy
  const double prefactor = std::pow(4.0 * std::numbers::pi * t, -1.5) * std::sqrt(2.0 * t / 3.0);
  return prefactor * sum;
}

}  // namespace mlkpz
