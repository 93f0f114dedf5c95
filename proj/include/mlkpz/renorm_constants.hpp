#pragma once

// Renormalization constants of the N-layer system.
//
// Wick part:  C1_n = sum_k w_k C(eps,k), w_k = (-2)^k T(n-1,k), with C(eps,k)
// mollifier dependent and kept symbolic.
// Log parts:  C2_n, C3_n = q / (4 sqrt(3) pi) * log(eps), q exact.

#include <map>
#include <stdexcept>
#include <string>

#include "mlkpz/mollifier.hpp"
#include "mlkpz/rational.hpp"

namespace mlkpz {

/// value * 1/(4 sqrt(3) pi) * log(eps)
struct LogConstant {
  Rational value;

  /// Coefficient of log(eps) as a double.
  double log_coefficient() const;
  friend bool operator==(const LogConstant&, const LogConstant&) = default;
};

struct WickStructure {
  int layer = 1;
  std::map<int, Rational> coefficients;  // k -> w_k

  friend bool operator==(const WickStructure&, const WickStructure&) = default;
};

/// T(i,k) = sum_{m2=0}^{i} sum_{m1=k}^{i} (-2)^{-(m1+m2)} binom(i,m1) binom(i,m2) binom(m1-k+m2, m2).
Rational wick_t(int i, int k);

/// k -> (-2)^k T(n-1,k). Cross-checked on every call against
/// wick_structure_unresummed; throws std::logic_error on disagreement.
WickStructure wick_structure(int n);

/// sum_{m1,m2} binom(n-1,m1) binom(n-1,m2) D_{m1,m2}(0), collecting G_k and
/// Gt_k together (both evaluate to C(eps,k) for an even mollifier).
WickStructure wick_structure_unresummed(int n);

class QuadratureNotConverged : public std::runtime_error {
 public:
  QuadratureNotConverged(const std::string& what, double estimate)
      : std::runtime_error(what), estimate_(estimate) {}
  double error_estimate() const { return estimate_; }

 private:
  double estimate_;
};

/// C(eps,k) = (t^k/k! d_x^{2k} G) * rho_eps^(2) at the origin, by space-time
/// quadrature. The error is estimated by doubling the resolution; throws
/// QuadratureNotConverged when the relative estimate exceeds 1e-7.
double c_eps_k(double eps, int k, const MollifierSpec& rho);

/// Log coefficient of the contracted <211> graph with kernel orders
/// (m3, m5, k1, k2). Three cases on d = m3 - k2: d in {-1,0}, d >= 1, d <= -2.
Rational tall_tree_log(int m3, int m5, int k1, int k2);
/// Log coefficient of the contracted <40> graph.
Rational wide_tree_log(int m5, int k1, int k2, int m6);

LogConstant c2_log(int n);
LogConstant c3_log(int n);
/// c3_log with the k1 <-> k2 mirror graphs combined into one term each.
LogConstant c3_log_symmetric(int n);

struct LayerConstants {
  WickStructure wick;
  LogConstant c2;
  LogConstant c3;
};

LayerConstants layer_constants(int n);

inline constexpr const char* kLogUnit = "1/(4*sqrt(3)*pi) * log(eps)";
inline constexpr int kConstantsFormatVersion = 1;

/// JSON document for layers first..last. The timestamp field is the only
/// run-dependent content; pass an empty string to omit it.
std::string constants_json(int first, int last, const std::string& timestamp);

}  // namespace mlkpz
