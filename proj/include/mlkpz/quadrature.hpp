#pragma once

#include <cstddef>
#include <vector>

namespace mlkpz::quad {

struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;

  std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre rule on [-1, 1]. Exact for polynomials of degree 2n-1.
Rule gauss_legendre(std::size_t n);

/// Gauss-Legendre rule mapped onto [a, b].
Rule gauss_legendre(std::size_t n, double a, double b);

/// Gauss-Hermite rule for the probabilists' weight exp(-y^2/2) on the real
/// line; the weights sum to sqrt(2*pi).
Rule gauss_hermite_prob(std::size_t n);

/// Composite Gauss-Legendre over [a, b] split into `panels` equal pieces.
Rule composite_legendre(std::size_t order, std::size_t panels, double a, double b);

}  // namespace mlkpz::quad
