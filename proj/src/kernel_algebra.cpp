#include "mlkpz/kernel_algebra.hpp"

#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "mlkpz/hermite.hpp"

namespace mlkpz {

// ---- KernelCombo ------------------------------------------------------------

KernelCombo::KernelCombo(std::initializer_list<std::pair<const BasisKernel, Rational>> terms) {
  for (const auto& [kernel, c] : terms) add(kernel, c);
}

KernelCombo KernelCombo::single(BasisKernel kernel, Rational coefficient) {
  KernelCombo out;
  out.add(kernel, coefficient);
  return out;
}

void KernelCombo::add(BasisKernel kernel, const Rational& coefficient) {
  if (coefficient.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(kernel, coefficient);
  if (!inserted) {
    it->second += coefficient;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Rational KernelCombo::coefficient(BasisKernel kernel) const {
  auto it = terms_.find(kernel);
  return it == terms_.end() ? Rational(0) : it->second;
}

KernelCombo KernelCombo::reflect() const {
  KernelCombo out;
  for (const auto& [kernel, c] : terms_) out.terms_.emplace(kernel.reflect(), c);
  return out;
}

KernelCombo& KernelCombo::operator+=(const KernelCombo& other) {
  for (const auto& [kernel, c] : other.terms_) add(kernel, c);
  return *this;
}

KernelCombo& KernelCombo::operator-=(const KernelCombo& other) {
  for (const auto& [kernel, c] : other.terms_) add(kernel, -c);
  return *this;
}

KernelCombo& KernelCombo::operator*=(const Rational& scalar) {
  if (scalar.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [kernel, c] : terms_) c *= scalar;
  return *this;
}

std::string KernelCombo::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [kernel, c] : terms_) {
    const bool negative = c.sign() < 0;
    const Rational magnitude = negative ? -c : c;
    if (first) {
      if (negative) os << '-';
    } else {
      os << (negative ? " - " : " + ");
    }
    first = false;
    os << magnitude.to_fraction_string() << "·"
       << (kernel.family == KernelFamily::Direct ? "G_" : "Gt_") << kernel.index;
  }
  return os.str();
}

// ---- ConvPolynomial ---------------------------------------------------------

ConvPolynomial::ConvPolynomial(std::map<int, Rational> coefficients, bool g_prefactor)
    : coefficients_(std::move(coefficients)), g_prefactor_(g_prefactor) {
  for (const auto& [power, c] : coefficients_) {
    if (power < 0) throw std::invalid_argument("ConvPolynomial: negative power of P");
  }
  prune();
}

ConvPolynomial ConvPolynomial::delta() { return ConvPolynomial({{0, Rational(1)}}); }
ConvPolynomial ConvPolynomial::symbol_p() { return ConvPolynomial({{1, Rational(1)}}); }
ConvPolynomial ConvPolynomial::heat_kernel() { return ConvPolynomial({{0, Rational(1)}}, true); }

void ConvPolynomial::prune() {
  std::erase_if(coefficients_, [](const auto& kv) { return kv.second.is_zero(); });
}

ConvPolynomial ConvPolynomial::pow(int exponent) const {
  if (exponent < 0) throw std::invalid_argument("ConvPolynomial::pow: negative exponent");
  if (g_prefactor_ && exponent > 1) throw std::domain_error("ConvPolynomial::pow: G*G is not representable");
  ConvPolynomial out = delta();
  for (int e = 0; e < exponent; ++e) out *= *this;
  return out;
}

ConvPolynomial ConvPolynomial::laplacian() const {
  if (!g_prefactor_) throw std::domain_error("ConvPolynomial::laplacian: needs a G prefactor");
  return *this * symbol_p();
}

KernelCombo ConvPolynomial::to_kernels() const {
  if (!g_prefactor_) throw std::domain_error("ConvPolynomial::to_kernels: needs a G prefactor");
  KernelCombo out;
  for (const auto& [power, c] : coefficients_) out.add(BasisKernel::direct(power), c);
  return out;
}

ConvPolynomial& ConvPolynomial::operator+=(const ConvPolynomial& other) {
  if (!coefficients_.empty() && !other.coefficients_.empty() && g_prefactor_ != other.g_prefactor_) {
    throw std::domain_error("ConvPolynomial: adding G-prefixed and plain elements");
  }
  if (coefficients_.empty()) g_prefactor_ = other.g_prefactor_;
  for (const auto& [power, c] : other.coefficients_) coefficients_[power] += c;
  prune();
  return *this;
}

ConvPolynomial& ConvPolynomial::operator-=(const ConvPolynomial& other) {
  ConvPolynomial negated = other;
  for (auto& [power, c] : negated.coefficients_) c = -c;
  return *this += negated;
}

ConvPolynomial& ConvPolynomial::operator*=(const ConvPolynomial& other) {
  if (g_prefactor_ && other.g_prefactor_) {
    throw std::domain_error("ConvPolynomial: G*G is not representable");
  }
  std::map<int, Rational> product;
  for (const auto& [pa, ca] : coefficients_) {
    for (const auto& [pb, cb] : other.coefficients_) product[pa + pb] += ca * cb;
  }
  coefficients_ = std::move(product);
  g_prefactor_ = g_prefactor_ || other.g_prefactor_;
  prune();
  return *this;
}

// ---- Gbar and the mild formulation -------------------------------------------

ConvPolynomial gbar_polynomial(int j) {
  if (j < 0) throw std::invalid_argument("gbar_polynomial: negative index");
  if (j == 0) return ConvPolynomial::heat_kernel();
  const ConvPolynomial h = ConvPolynomial::delta() + ConvPolynomial::symbol_p();
  return ConvPolynomial::heat_kernel() * ConvPolynomial::symbol_p() * h.pow(j - 1);
}

KernelCombo expand_gbar(int j) { return gbar_polynomial(j).to_kernels(); }

bool mild_telescoping_check(int i, int k) {
  if (i < 1 || k < i) throw std::invalid_argument("mild_telescoping_check: need 1 <= i <= k");
  const ConvPolynomial g = ConvPolynomial::heat_kernel();
  const ConvPolynomial p = ConvPolynomial::symbol_p();
  ConvPolynomial lhs;
  for (int j = i; j <= k; ++j) {
    // G * d_x^2 Gbar_{j-i}: the Laplacian lands on Gbar's leading G
    lhs += g * p * ConvPolynomial(gbar_polynomial(j - i).coefficients());
  }
  const bool lemma = lhs == gbar_polynomial(k + 1 - i);

  const int m = k - i;
  const ConvPolynomial delta = ConvPolynomial::delta();
  const ConvPolynomial h = delta + p;
  ConvPolynomial geometric;
  for (int j = 0; j < m; ++j) geometric += h.pow(j);
  const bool telescope = (h - delta) * geometric == h.pow(m) - delta;
  return lemma && telescope;
}

bool resummation_identity_holds(int i) {
  if (i < 1) throw std::invalid_argument("resummation_identity_holds: need i >= 1");
  std::map<int, Rational> lhs;
  std::map<int, Rational> rhs;
  for (int j = 1; j <= i; ++j) {
    for (int m = 0; m <= i - j; ++m) lhs[m] += binom(i - j - 1, m - 1);
  }
  for (int m = 0; m <= i - 1; ++m) rhs[m] += binom(i - 1, m);
  std::erase_if(lhs, [](const auto& kv) { return kv.second.is_zero(); });
  std::erase_if(rhs, [](const auto& kv) { return kv.second.is_zero(); });
  return lhs == rhs;
}

// ---- D_{i,j} ----------------------------------------------------------------

KernelCombo dij_closed(int i, int j) {
  if (i < 0 || j < 0) throw std::invalid_argument("dij_closed: negative index");
  KernelCombo out;
  for (int k = 0; k <= i; ++k) {
    out.add(BasisKernel::reflected(k), -Rational::neg_half_pow(i + j - k + 1) * binom(i + j - k, j));
  }
  for (int k = 0; k <= j; ++k) {
    out.add(BasisKernel::direct(k), -Rational::neg_half_pow(i + j - k + 1) * binom(i + j - k, i));
  }
  return out;
}

KernelCombo dij_recursion(int i, int j) {
  if (i < 0 || j < 0) throw std::invalid_argument("dij_recursion: negative index");
  const Rational half(1, 2);
  // table[a][b] = D_{a,b}, filled in increasing a+b
  std::vector<std::vector<KernelCombo>> table(static_cast<std::size_t>(i) + 1,
                                              std::vector<KernelCombo>(static_cast<std::size_t>(j) + 1));
  for (int a = 0; a <= i; ++a) {
    for (int b = 0; b <= j; ++b) {
      KernelCombo& d = table[a][b];
      if (a == 0 && b == 0) {
        d = KernelCombo{{BasisKernel::direct(0), half}, {BasisKernel::reflected(0), half}};
      } else if (a == 0) {
        d = table[0][b - 1] * (-half) + KernelCombo::single(BasisKernel::direct(b), half);
      } else if (b == 0) {
        d = table[a - 1][0] * (-half) + KernelCombo::single(BasisKernel::reflected(a), half);
      } else {
        d = (table[a - 1][b] + table[a][b - 1]) * (-half);
      }
    }
  }
  return table[i][j];
}

KernelCombo dij_lattice_paths(int i, int j) {
  if (i < 0 || j < 0) throw std::invalid_argument("dij_lattice_paths: negative index");
  if (i + j > kLatticePathBudget) {
    throw std::out_of_range("dij_lattice_paths: i+j = " + std::to_string(i + j) +
                            " exceeds enumeration budget " + std::to_string(kLatticePathBudget));
  }
  const Rational half(1, 2);
  auto endpoint = [&](int a, int b) {
    if (a == 0 && b == 0) {
      return KernelCombo{{BasisKernel::direct(0), half}, {BasisKernel::reflected(0), half}};
    }
    if (a == 0) return KernelCombo::single(BasisKernel::direct(b), half);
    return KernelCombo::single(BasisKernel::reflected(a), half);
  };

  // Path weights depend only on length, so accumulate an integer count per
  // (endpoint, length) during the walk and scale once at the end.
  std::map<std::tuple<int, int, int>, long long> counts;
  std::function<void(int, int, int)> walk = [&](int a, int b, int length) {
    const bool on_boundary = a == 0 || b == 0;
    if (on_boundary) ++counts[{a, b, length}];
    if (a == 0 && b == 0) return;
    if (a > 0 && b > 0) {
      walk(a - 1, b, length + 1);
      walk(a, b - 1, length + 1);
    } else if (a > 0) {
      walk(a - 1, 0, length + 1);
    } else {
      walk(0, b - 1, length + 1);
    }
  };
  walk(i, j, 0);

  KernelCombo out;
  for (const auto& [key, count] : counts) {
    const auto [a, b, length] = key;
    out += endpoint(a, b) * (Rational::neg_half_pow(length) * Rational(static_cast<long>(count)));
  }
  return out;
}

// ---- numerics ---------------------------------------------------------------

double heat_kernel(double t, double x) {
  if (t <= 0.0) return 0.0;
  return std::exp(-x * x / (4.0 * t)) / std::sqrt(4.0 * std::numbers::pi * t);
}

double basis_kernel_value(int i, double t, double x) {
  if (i < 0) throw std::invalid_argument("basis_kernel_value: negative index");
  if (t <= 0.0) return 0.0;
  const double scale = std::ldexp(1.0, -i) / std::tgamma(static_cast<double>(i) + 1.0);
  return scale * hermite_value(2 * i, x / std::sqrt(2.0 * t)) * heat_kernel(t, x);
}

ScalingReport scaling_check(int i, const std::vector<SpaceTimePoint>& samples, double lambda) {
  if (!(lambda > 0.0)) throw std::invalid_argument("scaling_check: lambda must be positive");
  ScalingReport report;
  for (const SpaceTimePoint& p : samples) {
    if (!(p.t > 0.0)) throw std::invalid_argument("scaling_check: sample with t <= 0");
    const double lhs = basis_kernel_value(i, lambda * lambda * p.t, lambda * p.x);
    const double rhs = basis_kernel_value(i, p.t, p.x) / lambda;
    const double scale = std::max(std::abs(lhs), std::abs(rhs));
    double err = 0.0;
    if (scale > 0.0) err = std::abs(lhs - rhs) / scale;
    if (scale == 0.0 && lhs != rhs) err = std::numeric_limits<double>::infinity();
    if (&p == &samples.front() || err > report.worst_relative_error) {
      report.worst_relative_error = err;
      report.worst_point = p;
    }
  }
  report.ok = report.worst_relative_error <= kScalingTolerance;
  return report;
}

}  // namespace mlkpz
