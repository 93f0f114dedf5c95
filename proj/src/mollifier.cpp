#include "mlkpz/mollifier.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include "mlkpz/quadrature.hpp"

namespace mlkpz {

struct MollifierSpec::Rho2Table {
  std::once_flag once;
  std::size_t n = 0;  // points per axis on [0, 2]
  double h = 0.0;
  std::vector<double> values;  // quadrant t, x >= 0, row-major in t
};

namespace {

constexpr std::size_t kRho2Points = 65;
constexpr double kSeparableNorm = 35.0 / 32.0;

double cube(double v) { return v * v * v; }

double catmull_rom(double p0, double p1, double p2, double p3, double s) {
  return p1 + 0.5 * s * (p2 - p0 + s * (2.0 * p0 - 5.0 * p1 + 4.0 * p2 - p3 + s * (3.0 * (p1 - p2) + p3 - p0)));
}

// 1D self-convolution of the separable factor; the integrand is a polynomial
// on the overlap, so an 8-point rule is exact.
double separable_factor_conv(double t) {
  constexpr double a = MollifierSpec::kSeparableHalfWidth;
  const double lo = std::max(-a, t - a);
  const double hi = std::min(a, t + a);
  if (hi <= lo) return 0.0;
  const quad::Rule rule = quad::gauss_legendre(8, lo, hi);
  double sum = 0.0;
  for (std::size_t q = 0; q < rule.size(); ++q) {
    sum += rule.weights[q] * MollifierSpec::separable_factor(rule.nodes[q]) *
           MollifierSpec::separable_factor(t - rule.nodes[q]);
  }
  return sum;
}

}  // namespace

MollifierSpec MollifierSpec::radial_polynomial() {
  MollifierSpec spec;
  spec.kind_ = MollifierKind::RadialPolynomial;
  spec.rho2_ = std::make_shared<Rho2Table>();
  return spec;
}

MollifierSpec MollifierSpec::separable_polynomial() {
  MollifierSpec spec;
  spec.kind_ = MollifierKind::SeparablePolynomial;
  spec.rho2_ = std::make_shared<Rho2Table>();
  return spec;
}

MollifierSpec MollifierSpec::tabulated(std::size_t n, std::vector<double> samples) {
  if (n < 3 || samples.size() != n * n) throw std::invalid_argument("tabulated mollifier: need n*n samples, n >= 3");
  const double h = 2.0 / static_cast<double>(n - 1);
  const double even_tol = 1e-12 * *std::max_element(samples.begin(), samples.end());
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const double v = samples[i * n + j];
      if (!(v >= 0.0)) throw std::invalid_argument("tabulated mollifier: negative or NaN sample");
      const double t = -1.0 + h * static_cast<double>(i);
      const double x = -1.0 + h * static_cast<double>(j);
      if (v != 0.0 && t * t + x * x > 1.0) throw std::invalid_argument("tabulated mollifier: support leaves the unit ball");
      if (std::abs(v - samples[(n - 1 - i) * n + j]) > even_tol ||
          std::abs(v - samples[i * n + (n - 1 - j)]) > even_tol) {
        throw std::invalid_argument("tabulated mollifier: samples are not even");
      }
    }
  }
  MollifierSpec spec;
  spec.kind_ = MollifierKind::Tabulated;
  spec.table_n_ = n;
  spec.table_ = std::move(samples);
  // bilinear interpolation integrates exactly to the trapezoid sum
  double mass = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double wi = (i == 0 || i == n - 1) ? 0.5 : 1.0;
    for (std::size_t j = 0; j < n; ++j) {
      const double wj = (j == 0 || j == n - 1) ? 0.5 : 1.0;
      mass += wi * wj * spec.table_[i * n + j];
    }
  }
  mass *= h * h;
  if (!(mass > 0.0)) throw std::invalid_argument("tabulated mollifier: zero mass");
  spec.table_scale_ = 1.0 / mass;
  spec.rho2_ = std::make_shared<Rho2Table>();
  return spec;
}

std::string MollifierSpec::name() const {
  switch (kind_) {
    case MollifierKind::RadialPolynomial: return "radial_polynomial";
    case MollifierKind::SeparablePolynomial: return "separable_polynomial";
    case MollifierKind::Tabulated: return "tabulated";
  }
  return "unknown";
}

double MollifierSpec::separable_factor(double s) {
  const double u = s / kSeparableHalfWidth;
  if (std::abs(u) >= 1.0) return 0.0;
  return kSeparableNorm / kSeparableHalfWidth * cube(1.0 - u * u);
}

double MollifierSpec::operator()(double t, double x) const {
  switch (kind_) {
    case MollifierKind::RadialPolynomial: {
      const double r2 = t * t + x * x;
      return r2 >= 1.0 ? 0.0 : 4.0 / std::numbers::pi * cube(1.0 - r2);
    }
    case MollifierKind::SeparablePolynomial:
      return separable_factor(t) * separable_factor(x);
    case MollifierKind::Tabulated: {
      if (std::abs(t) >= 1.0 || std::abs(x) >= 1.0) return 0.0;
      const double h = 2.0 / static_cast<double>(table_n_ - 1);
      const double ft = (t + 1.0) / h;
      const double fx = (x + 1.0) / h;
      const auto i = std::min(static_cast<std::size_t>(ft), table_n_ - 2);
      const auto j = std::min(static_cast<std::size_t>(fx), table_n_ - 2);
      const double a = ft - static_cast<double>(i);
      const double b = fx - static_cast<double>(j);
      const auto at = [&](std::size_t p, std::size_t q) { return table_[p * table_n_ + q]; };
      const double v = (1 - a) * (1 - b) * at(i, j) + a * (1 - b) * at(i + 1, j) + (1 - a) * b * at(i, j + 1) +
                       a * b * at(i + 1, j + 1);
      return v * table_scale_;
    }
  }
  return 0.0;
}

double MollifierSpec::scaled(double eps, double t, double x) const {
  return (*this)(t / (eps * eps), x / eps) / (eps * eps * eps);
}

double MollifierSpec::mass() const {
  switch (kind_) {
    case MollifierKind::RadialPolynomial: {
      // polar coordinates; the radial integrand is a polynomial in r
      const quad::Rule r = quad::gauss_legendre(8, 0.0, 1.0);
      const quad::Rule th = quad::gauss_legendre(32, 0.0, 2.0 * std::numbers::pi);
      double sum = 0.0;
      for (std::size_t p = 0; p < r.size(); ++p) {
        for (std::size_t q = 0; q < th.size(); ++q) {
          sum += r.weights[p] * th.weights[q] * r.nodes[p] *
                 (*this)(r.nodes[p] * std::cos(th.nodes[q]), r.nodes[p] * std::sin(th.nodes[q]));
        }
      }
      return sum;
    }
    case MollifierKind::SeparablePolynomial: {
      const quad::Rule s = quad::gauss_legendre(8, -kSeparableHalfWidth, kSeparableHalfWidth);
      double one = 0.0;
      for (std::size_t p = 0; p < s.size(); ++p) one += s.weights[p] * separable_factor(s.nodes[p]);
      return one * one;
    }
    case MollifierKind::Tabulated: {
      // panels aligned with the cells; bilinear pieces are integrated exactly
      const quad::Rule g = quad::composite_legendre(2, table_n_ - 1, -1.0, 1.0);
      double sum = 0.0;
      for (std::size_t p = 0; p < g.size(); ++p) {
        for (std::size_t q = 0; q < g.size(); ++q) sum += g.weights[p] * g.weights[q] * (*this)(g.nodes[p], g.nodes[q]);
      }
      return sum;
    }
  }
  return 0.0;
}

bool MollifierSpec::is_even(double tolerance) const {
  for (int a = -10; a <= 10; ++a) {
    for (int b = -10; b <= 10; ++b) {
      const double t = 0.097 * a;
      const double x = 0.089 * b;
      const double v = (*this)(t, x);
      if (std::abs(v - (*this)(-t, x)) > tolerance || std::abs(v - (*this)(t, -x)) > tolerance) return false;
    }
  }
  return true;
}

double MollifierSpec::self_convolution(double t, double x) const {
  if (kind_ == MollifierKind::SeparablePolynomial) return separable_factor_conv(t) * separable_factor_conv(x);
  t = std::abs(t);
  x = std::abs(x);
  if (t >= 2.0 || x >= 2.0) return 0.0;
  Rho2Table& table = *rho2_;
  std::call_once(table.once, [&] {
    table.n = kRho2Points;
    table.h = 2.0 / static_cast<double>(table.n - 1);
    table.values.assign(table.n * table.n, 0.0);
    for (std::size_t i = 0; i < table.n; ++i) {
      const double ti = table.h * static_cast<double>(i);
      const double slo = std::max(-1.0, ti - 1.0);
      const quad::Rule rs = quad::composite_legendre(8, 12, slo, 1.0);
      for (std::size_t j = 0; j < table.n; ++j) {
        const double xj = table.h * static_cast<double>(j);
        const double ylo = std::max(-1.0, xj - 1.0);
        if (slo >= 1.0 || ylo >= 1.0) continue;
        const quad::Rule ry = quad::composite_legendre(8, 12, ylo, 1.0);
        double sum = 0.0;
        for (std::size_t p = 0; p < rs.size(); ++p) {
          for (std::size_t q = 0; q < ry.size(); ++q) {
            sum += rs.weights[p] * ry.weights[q] * (*this)(rs.nodes[p], ry.nodes[q]) *
                   (*this)(ti - rs.nodes[p], xj - ry.nodes[q]);
          }
        }
        table.values[i * table.n + j] = sum;
      }
    }
  });
  // bicubic Catmull-Rom; the quadrant is extended by evenness and by 0 beyond 2
  const auto at = [&](long p, long q) {
    p = std::abs(p);
    q = std::abs(q);
    const auto n = static_cast<long>(table.n);
    if (p >= n || q >= n) return 0.0;
    return table.values[static_cast<std::size_t>(p * n + q)];
  };
  const double ft = t / table.h;
  const double fx = x / table.h;
  const auto i = static_cast<long>(ft);
  const auto j = static_cast<long>(fx);
  const double a = ft - static_cast<double>(i);
  const double b = fx - static_cast<double>(j);
  std::array<double, 4> rows{};
  for (long r = -1; r <= 2; ++r) {
    rows[static_cast<std::size_t>(r + 1)] = catmull_rom(at(i + r, j - 1), at(i + r, j), at(i + r, j + 1), at(i + r, j + 2), b);
  }
  return std::max(0.0, catmull_rom(rows[0], rows[1], rows[2], rows[3], a));
}

double MollifierSpec::self_convolution_scaled(double eps, double t, double x) const {
  return self_convolution(t / (eps * eps), x / eps) / (eps * eps * eps);
}

}  // namespace mlkpz
