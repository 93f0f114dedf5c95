#pragma once

// Space-time mollifiers rho(t, x): even in both variables, supported in the
// unit ball, total mass 1. rho_eps(t,x) = eps^-3 rho(t/eps^2, x/eps).

#include <memory>
#include <string>
#include <vector>

namespace mlkpz {

enum class MollifierKind { RadialPolynomial, SeparablePolynomial, Tabulated };

inline constexpr double kMollifierMassTolerance = 1e-8;

class MollifierSpec {
 public:
  /// (4/pi) (1 - t^2 - x^2)^3 on the unit disk.
  static MollifierSpec radial_polynomial();
  /// psi(t) psi(x) with psi(s) = (35/32) a^-1 (1 - (s/a)^2)^3, a = 1/sqrt(2), so
  /// the support square sits inside the unit disk.
  static MollifierSpec separable_polynomial();
  /// Samples on a uniform (n x n) grid over [-1,1]^2, bilinearly interpolated
  /// and renormalized to unit mass. Throws std::invalid_argument if the samples
  /// are not even, are negative, or are nonzero outside the unit disk.
  static MollifierSpec tabulated(std::size_t n, std::vector<double> samples);

  MollifierKind kind() const { return kind_; }
  std::string name() const;

  double operator()(double t, double x) const;
  /// rho_eps(t, x)
  double scaled(double eps, double t, double x) const;

  /// Total mass by a quadrature that is exact for the built-in profiles.
  double mass() const;
  bool is_even(double tolerance = 1e-14) const;

  /// rho * rho, tabulated once on [-2,2]^2 and interpolated bicubically.
  double self_convolution(double t, double x) const;
  double self_convolution_scaled(double eps, double t, double x) const;

  /// One-dimensional factor of the separable profile, psi(s); throws for the
  /// other kinds.
  static double separable_factor(double s);
  static constexpr double kSeparableHalfWidth = 0.70710678118654752440;

 private:
  struct Rho2Table;

  MollifierKind kind_ = MollifierKind::RadialPolynomial;
  std::size_t table_n_ = 0;
  std::vector<double> table_;
  double table_scale_ = 1.0;
  std::shared_ptr<Rho2Table> rho2_;
};

}  // namespace mlkpz
