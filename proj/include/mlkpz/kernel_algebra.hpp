#pragma once

// Symbolic algebra of heat-kernel convolutions.
//
// G_k = G * (d_x^2 G)^{*k} = (t^k/k!) d_x^{2k} G, and the reflected kernels
// Gt_k(z) = G_k(-z). Everything here is an exact identity between finite
// rational combinations of these basis kernels; no kernel is ever convolved
// numerically.

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "mlkpz/rational.hpp"

namespace mlkpz {

enum class KernelFamily { Direct, Reflected };

struct BasisKernel {
  KernelFamily family = KernelFamily::Direct;
  int index = 0;

  static BasisKernel direct(int k) { return {KernelFamily::Direct, k}; }
  static BasisKernel reflected(int k) { return {KernelFamily::Reflected, k}; }
  BasisKernel reflect() const {
    return {family == KernelFamily::Direct ? KernelFamily::Reflected : KernelFamily::Direct, index};
  }

  friend auto operator<=>(const BasisKernel&, const BasisKernel&) = default;
};

/// Finite rational combination of basis kernels. Zero coefficients are never
/// stored.
class KernelCombo {
 public:
  using Terms = std::map<BasisKernel, Rational>;

  KernelCombo() = default;
  KernelCombo(std::initializer_list<std::pair<const BasisKernel, Rational>> terms);

  static KernelCombo single(BasisKernel kernel, Rational coefficient = Rational(1));

  void add(BasisKernel kernel, const Rational& coefficient);
  Rational coefficient(BasisKernel kernel) const;
  const Terms& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  std::size_t size() const { return terms_.size(); }

  /// Termwise G_k <-> Gt_k.
  KernelCombo reflect() const;

  KernelCombo& operator+=(const KernelCombo& other);
  KernelCombo& operator-=(const KernelCombo& other);
  KernelCombo& operator*=(const Rational& scalar);
  friend KernelCombo operator+(KernelCombo a, const KernelCombo& b) { return a += b; }
  friend KernelCombo operator-(KernelCombo a, const KernelCombo& b) { return a -= b; }
  friend KernelCombo operator*(KernelCombo a, const Rational& s) { return a *= s; }
  friend KernelCombo operator*(const Rational& s, KernelCombo a) { return a *= s; }
  friend bool operator==(const KernelCombo&, const KernelCombo&) = default;

  /// Canonical text form, e.g. "-1/4·G_0 + 1/2·G_1 - 1/4·Gt_0"; "0" when empty.
  std::string to_string() const;

 private:
  Terms terms_;
};

/// Polynomial in the formal convolution symbol P = d_x^2 G, with delta as the
/// unit, optionally carrying a G prefactor. G * P^i is the basis kernel G_i.
class ConvPolynomial {
 public:
  ConvPolynomial() = default;
  explicit ConvPolynomial(std::map<int, Rational> coefficients, bool g_prefactor = false);

  static ConvPolynomial delta();
  static ConvPolynomial symbol_p();
  static ConvPolynomial heat_kernel();  // G alone

  const std::map<int, Rational>& coefficients() const { return coefficients_; }
  bool has_g_prefactor() const { return g_prefactor_; }

  ConvPolynomial pow(int exponent) const;
  /// Applies d_x^2 to a G-prefixed element: G * q(P) -> G * P q(P).
  ConvPolynomial laplacian() const;
  /// Expands a G-prefixed element over the basis {G_k}.
  KernelCombo to_kernels() const;

  ConvPolynomial& operator+=(const ConvPolynomial& other);
  ConvPolynomial& operator-=(const ConvPolynomial& other);
  /// Throws std::domain_error when both factors carry G (G * G is not in the
  /// algebra).
  ConvPolynomial& operator*=(const ConvPolynomial& other);
  friend ConvPolynomial operator+(ConvPolynomial a, const ConvPolynomial& b) { return a += b; }
  friend ConvPolynomial operator-(ConvPolynomial a, const ConvPolynomial& b) { return a -= b; }
  friend ConvPolynomial operator*(ConvPolynomial a, const ConvPolynomial& b) { return a *= b; }
  friend bool operator==(const ConvPolynomial&, const ConvPolynomial&) = default;

 private:
  void prune();

  std::map<int, Rational> coefficients_;
  bool g_prefactor_ = false;
};

/// Gbar_j = G * P * (delta + P)^{j-1} for j >= 1, Gbar_0 = G, in the algebra.
ConvPolynomial gbar_polynomial(int j);

/// Gbar_j over the basis {G_k}: sum_{i=1}^{j} binom(j-1, i-1) G_i, and G_0 for
/// j = 0.
KernelCombo expand_gbar(int j);

/// Checks sum_{j=i}^{k} G * d_x^2 Gbar_{j-i} = Gbar_{k+1-i} together with the
/// underlying telescope (H - delta) * sum_{j<m} H^j = H^m - delta, H = delta + P.
bool mild_telescoping_check(int i, int k);

/// Checks, as an identity of coefficient vectors over generic H_m,
/// sum_{j=1}^{i} sum_{m=0}^{i-j} binom(i-j-1, m-1) H_m = sum_{m=0}^{i-1} binom(i-1, m) H_m.
bool resummation_identity_holds(int i);

/// D_{i,j} = G'_i * reflect(G'_j) by the lattice-path closed form.
KernelCombo dij_closed(int i, int j);
/// D_{i,j} by the three recursions and the base D_{0,0} = (G_0 + Gt_0)/2.
KernelCombo dij_recursion(int i, int j);

inline constexpr int kLatticePathBudget = 20;
/// D_{i,j} by explicit enumeration of every path in W(i,j). Throws
/// std::out_of_range when i + j exceeds kLatticePathBudget.
KernelCombo dij_lattice_paths(int i, int j);

// ---- numerical evaluation ---------------------------------------------------

/// Full-line heat kernel G(t,x) = exp(-x^2/(4t)) / sqrt(4 pi t), zero for t <= 0.
double heat_kernel(double t, double x);
/// G_i(t,x) = (t^i/i!) d_x^{2i} G(t,x) = H_{2i}(x/sqrt(2t)) G(t,x) / (2^i i!).
double basis_kernel_value(int i, double t, double x);

struct SpaceTimePoint {
  double t = 0.0;
  double x = 0.0;
};

struct ScalingReport {
  bool ok = true;
  SpaceTimePoint worst_point;
  double worst_relative_error = 0.0;
};

inline constexpr double kScalingTolerance = 1e-10;

/// Checks G_i(lambda^2 t, lambda x) = G_i(t,x) / lambda at every sample to
/// relative tolerance kScalingTolerance.
ScalingReport scaling_check(int i, const std::vector<SpaceTimePoint>& samples, double lambda);

}  // namespace mlkpz
