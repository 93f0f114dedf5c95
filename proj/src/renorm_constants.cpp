#include "mlkpz/renorm_constants.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <vector>

#include "json.hpp"
#include "mlkpz/hermite.hpp"
#include "mlkpz/kernel_algebra.hpp"
#include "mlkpz/parallel.hpp"
#include "mlkpz/quadrature.hpp"
#include "mlkpz/trees.hpp"

namespace mlkpz {
namespace {

Rational inv_factorial(long n) { return Rational(mpq_class(mpz_class(1), factorial(n))); }

Rational sign_pow(int e) { return e % 2 == 0 ? Rational(1) : Rational(-1); }

Rational A(int n1, int n2, int n3) { return triple_integral(n1, n2, n3).coefficient; }

// sum_{s=0}^{k1} (-2)^{-(m5+k1-s+1)} binom(m5+k1-s, m5) f(s)
template <typename F>
Rational bottom_sum(int m5, int k1, F&& f) {
  Rational sum(0);
  for (int s = 0; s <= k1; ++s) {
    sum += Rational::neg_half_pow(m5 + k1 - s + 1) * binom(m5 + k1 - s, m5) * f(s);
  }
  return sum;
}

// mpz value of an integer-valued Rational
mpz_class as_integer(const Rational& r) { return r.numerator(); }

// (-2)^e for e >= 0 as an integer
mpz_class neg_two_pow(int e) {
  mpz_class v = 1;
  mpz_mul_2exp(v.get_mpz_t(), v.get_mpz_t(), static_cast<mp_bitcnt_t>(e));
  return e % 2 == 0 ? v : mpz_class(-v);
}

void require_layer(int n, const char* what) {
  if (n < 1) throw std::invalid_argument(std::string(what) + ": layer must be >= 1");
}

// Flat n^d table indexed by orders in [0, n).
struct OrderTable {
  int n = 0;
  std::vector<mpz_class> values;
  std::size_t index(std::initializer_list<int> orders) const {
    std::size_t idx = 0;
    for (int m : orders) idx = idx * static_cast<std::size_t>(n) + static_cast<std::size_t>(m);
    return idx;
  }
};

// c^{<20>}(n; a, b, l)
OrderTable table_20(int n) {
  OrderTable t{n, std::vector<mpz_class>(static_cast<std::size_t>(n * n * n))};
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      for (int l = 0; l < n; ++l) t.values[t.index({a, b, l})] = as_integer(coeff_20(n, a, b, l));
  return t;
}

// c^{<210>}(n; m1, m2, m3, m4, l)
OrderTable table_210(int n) {
  const auto size = static_cast<std::size_t>(std::pow(n, 5));
  OrderTable t{n, std::vector<mpz_class>(size)};
  for (int m1 = 0; m1 < n; ++m1)
    for (int m2 = 0; m2 < n; ++m2)
      for (int m3 = 0; m3 < n; ++m3)
        for (int m4 = 0; m4 < n; ++m4)
          for (int l = 0; l < n; ++l)
            t.values[t.index({m1, m2, m3, m4, l})] = as_integer(coeff_210(n, m1, m2, m3, m4, l));
  return t;
}

// The two-contraction bracket shared by both log constants:
// binom(m1+p-kp, m1) binom(m2+q-kq, m2) + binom(m1+q-kq, m1) binom(m2+p-kp, m2)
mpz_class bracket(int m1, int m2, int p, int kp, int q, int kq) {
  return binom_or_zero(m1 + p - kp, m1) * binom_or_zero(m2 + q - kq, m2) +
         binom_or_zero(m1 + q - kq, m1) * binom_or_zero(m2 + p - kp, m2);
}

// Sum of per-worker partial results of body(outer index) over n^4 outer tuples.
template <typename Body>
Rational sum_outer(int n, Body&& body) {
  const auto count = static_cast<std::size_t>(n) * n * n * n;
  const std::size_t workers = worker_count();
  std::vector<Rational> partial(std::max<std::size_t>(workers, 1), Rational(0));
  parallel_for(count, workers, [&](std::size_t idx, std::size_t w) {
    std::array<int, 4> o{};
    for (int d = 3; d >= 0; --d) {
      o[static_cast<std::size_t>(d)] = static_cast<int>(idx % static_cast<std::size_t>(n));
      idx /= static_cast<std::size_t>(n);
    }
    partial[w] += body(o[0], o[1], o[2], o[3]);
  });
  Rational total(0);
  for (const auto& p : partial) total += p;
  return total;
}

// inner sum of the <40> constant for fixed (m5, m6, k1, k2), over the common
// denominator (-2)^{emax}
Rational wide_inner(int n, const OrderTable& c20, int m5, int m6, int k1, int k2) {
  const int emax = 4 * (n - 1) + 2;
  mpz_class acc = 0;
  for (int m1 = 0; m1 < n; ++m1)
    for (int m2 = 0; m2 < n; ++m2) {
      const mpz_class& left = c20.values[c20.index({m1, m2, m5})];
      if (left == 0) continue;
      for (int m3 = k2; m3 < n; ++m3)
        for (int m4 = k1; m4 < n; ++m4) {
          const mpz_class& right = c20.values[c20.index({m3, m4, m6})];
          if (right == 0) continue;
          const mpz_class bk = bracket(m1, m2, m4, k1, m3, k2);
          if (bk == 0) continue;
          const int e = m1 + m2 + m3 + m4 - k1 - k2 + 2;
          acc += left * right * bk * neg_two_pow(emax - e);
        }
    }
  return Rational(mpq_class(acc, mpz_class(1))) * Rational::neg_half_pow(emax);
}

}  // namespace

double LogConstant::log_coefficient() const {
  return value.to_double() / (4.0 * std::sqrt(3.0) * std::numbers::pi);
}

Rational wick_t(int i, int k) {
  if (i < 0 || k < 0 || k > i) throw std::invalid_argument("wick_t: need 0 <= k <= i");
  Rational sum(0);
  for (int m2 = 0; m2 <= i; ++m2) {
    for (int m1 = k; m1 <= i; ++m1) {
      sum += Rational::neg_half_pow(m1 + m2) * binom(i, m1) * binom(i, m2) * binom(m1 - k + m2, m2);
    }
  }
  return sum;
}

WickStructure wick_structure_unresummed(int n) {
  require_layer(n, "wick_structure");
  WickStructure w{n, {}};
  for (int m1 = 0; m1 < n; ++m1) {
    for (int m2 = 0; m2 < n; ++m2) {
      const Rational weight = binom(n - 1, m1) * binom(n - 1, m2);
      const KernelCombo d = dij_closed(m1, m2);
      for (const auto& [kernel, c] : d.terms()) w.coefficients[kernel.index] += weight * c;
    }
  }
  std::erase_if(w.coefficients, [](const auto& kv) { return kv.second.is_zero(); });
  return w;
}

WickStructure wick_structure(int n) {
  require_layer(n, "wick_structure");
  WickStructure w{n, {}};
  for (int k = 0; k < n; ++k) {
    Rational c = wick_t(n - 1, k);
    c *= Rational::neg_half_pow(-k);
    if (!c.is_zero()) w.coefficients[k] = c;
  }
  if (w != wick_structure_unresummed(n)) {
    throw std::logic_error("wick_structure: resummed and unresummed routes disagree at layer " + std::to_string(n));
  }
  return w;
}

double c_eps_k(double eps, int k, const MollifierSpec& rho) {
  if (!(eps > 0.0)) throw std::invalid_argument("c_eps_k: eps must be positive");
  if (k < 0) throw std::invalid_argument("c_eps_k: k must be nonnegative");
  const double norm = std::ldexp(1.0, -k) / factorial(k).get_d();
  const double tmax = 2.0 * eps * eps;
  const double umax = 12.0;

  // G_k(t,x) dx = H_{2k}(u) phi(u) / (2^k k!) du with x = sqrt(2t) u
  const auto integrate = [&](std::size_t t_panels, std::size_t u_panels, double* abs_sum) {
    const quad::Rule rt = quad::composite_legendre(8, t_panels, 0.0, tmax);
    double total = 0.0;
    double mag = 0.0;
    for (std::size_t p = 0; p < rt.size(); ++p) {
      const double t = rt.nodes[p];
      const double root = std::sqrt(2.0 * t);
      const double ucut = std::min(umax, 2.0 * eps / root);
      const quad::Rule ru = quad::composite_legendre(8, u_panels, -ucut, ucut);
      double inner = 0.0;
      double inner_mag = 0.0;
      for (std::size_t q = 0; q < ru.size(); ++q) {
        const double u = ru.nodes[q];
        const double phi = std::exp(-0.5 * u * u) / std::sqrt(2.0 * std::numbers::pi);
        const double f = hermite_value(2 * k, u) * phi * rho.self_convolution_scaled(eps, t, root * u);
        inner += ru.weights[q] * f;
        inner_mag += ru.weights[q] * std::abs(f);
      }
      total += rt.weights[p] * inner;
      mag += rt.weights[p] * inner_mag;
    }
    if (abs_sum) *abs_sum = mag * norm;
    return total * norm;
  };

  double magnitude = 0.0;
  const double coarse = integrate(32, 48, nullptr);
  const double fine = integrate(64, 96, &magnitude);
  const double estimate = std::abs(fine - coarse);
  if (estimate > 1e-7 * magnitude) {
    throw QuadratureNotConverged("c_eps_k: quadrature did not converge (estimate " + std::to_string(estimate) +
                                     ", scale " + std::to_string(magnitude) + ")",
                                 estimate);
  }
  return fine;
}

Rational tall_tree_log(int m3, int m5, int k1, int k2) {
  if (m3 < 0 || m5 < 0 || k1 < 0 || k2 < 0) throw std::invalid_argument("tall_tree_log: negative order");
  const int d = m3 - k2;
  const Rational half(1, 2);
  if (d == -1 || d == 0) {
    const int a = std::min(2 * m3 + 1, 2 * k2);
    // t^{s+k2+m3} / ((2t)^s (2t)^a): the exponent must vanish
    if (k2 + m3 - a != 0) throw std::logic_error("tall_tree_log: residual power of t in case m3-k2 in {-1,0}");
    return half * bottom_sum(m5, k1, [&](int s) {
             return inv_factorial(s) * inv_factorial(k2) * inv_factorial(m3) * Rational::pow2(-(s + a)) *
                    A(2 * s, a, a);
           });
  }
  const auto pref = [&](int s) {
    return inv_factorial(s) * inv_factorial(m3) * inv_factorial(k2) * Rational::pow2(-(s + m3 + k2));
  };
  Rational a_part(0);
  Rational b_part(0);
  if (d >= 1) {
    for (int l = 1; l <= d; ++l) {
      a_part += sign_pow(l + 1) *
                bottom_sum(m5, k1, [&](int s) { return pref(s) * A(2 * s, 2 * m3 + 1 - l, 2 * k2 + l - 1); });
    }
    b_part = sign_pow(d) * half * bottom_sum(m5, k1, [&](int s) { return pref(s) * A(2 * s, m3 + k2, m3 + k2); });
  } else {
    for (int l = 1; l <= k2 - m3 - 1; ++l) {
      a_part += sign_pow(l + 1) *
                bottom_sum(m5, k1, [&](int s) { return pref(s) * A(2 * s, 2 * m3 + l, 2 * k2 - l); });
    }
    b_part = sign_pow(k2 - m3 - 1) * half *
             bottom_sum(m5, k1, [&](int s) { return pref(s) * A(2 * s, m3 + k2, m3 + k2); });
  }
  return a_part + b_part;
}

Rational wide_tree_log(int m5, int k1, int k2, int m6) {
  if (m5 < 0 || k1 < 0 || k2 < 0 || m6 < 0) throw std::invalid_argument("wide_tree_log: negative order");
  Rational sum(0);
  for (int s = 0; s <= m5; ++s) {
    sum += Rational::neg_half_pow(m6 + m5 - s + 1) * binom(m6 + m5 - s, m6) * inv_factorial(k1) *
           inv_factorial(k2) * inv_factorial(s) * Rational::pow2(-(k1 + k2 + s)) * A(2 * k1, 2 * k2, 2 * s);
  }
  return -sum;
}

LogConstant c2_log(int n) {
  require_layer(n, "c2_log");
  const OrderTable c210 = table_210(n);
  std::vector<mpz_class> bn(static_cast<std::size_t>(n));
  for (int m = 0; m < n; ++m) bn[static_cast<std::size_t>(m)] = binom_or_zero(n - 1, m);
  const int emax = 4 * (n - 1) + 2;

  const Rational total = sum_outer(n, [&](int m3, int m5, int k1, int k2) {
    mpz_class acc = 0;
    for (int m1 = 0; m1 < n; ++m1)
      for (int m2 = 0; m2 < n; ++m2)
        for (int m4 = k2; m4 < n; ++m4) {
          const mpz_class& c = c210.values[c210.index({m1, m2, m3, m4, m5})];
          if (c == 0) continue;
          for (int m6 = k1; m6 < n; ++m6) {
            const mpz_class bk = bracket(m1, m2, m6, k1, m4, k2);
            if (bk == 0) continue;
            const int e = m1 + m2 + m4 + m6 - k1 - k2 + 2;
            acc += c * bn[static_cast<std::size_t>(m6)] * bk * neg_two_pow(emax - e);
          }
        }
    if (acc == 0) return Rational(0);
    return Rational(mpq_class(acc, mpz_class(1))) * Rational::neg_half_pow(emax) * tall_tree_log(m3, m5, k1, k2);
  });
  return {Rational(4) * total};
}

LogConstant c3_log(int n) {
  require_layer(n, "c3_log");
  const OrderTable c20 = table_20(n);
  const Rational total = sum_outer(n, [&](int m5, int m6, int k1, int k2) {
    const Rational inner = wide_inner(n, c20, m5, m6, k1, k2);
    if (inner.is_zero()) return Rational(0);
    return inner * wide_tree_log(m5, k1, k2, m6);
  });
  return {Rational(2) * total};
}

LogConstant c3_log_symmetric(int n) {
  require_layer(n, "c3_log");
  const OrderTable c20 = table_20(n);
  // the mirror graphs (k1,k2) and (k2,k1) are equal; count each pair once, twice
  const Rational total = sum_outer(n, [&](int m5, int m6, int k1, int k2) {
    if (k1 > k2) return Rational(0);
    const Rational inner = wide_inner(n, c20, m5, m6, k1, k2);
    if (inner.is_zero()) return Rational(0);
    const Rational graph = wide_tree_log(m5, k1, k2, m6);
    return (k1 < k2 ? Rational(2) : Rational(1)) * inner * graph;
  });
  return {Rational(2) * total};
}

LayerConstants layer_constants(int n) { return {wick_structure(n), c2_log(n), c3_log(n)}; }

std::string constants_json(int first, int last, const std::string& timestamp) {
  if (first < 1 || last < first) throw std::invalid_argument("constants_json: need 1 <= first <= last");
  nlohmann::ordered_json doc;
  doc["version"] = kConstantsFormatVersion;
  if (!timestamp.empty()) doc["timestamp"] = timestamp;
  doc["unit"] = kLogUnit;
  nlohmann::ordered_json layers = nlohmann::ordered_json::array();
  for (int n = first; n <= last; ++n) {
    const LayerConstants lc = layer_constants(n);
    nlohmann::ordered_json entry;
    entry["layer"] = n;
    nlohmann::ordered_json wick = nlohmann::ordered_json::array();
    for (const auto& [k, c] : lc.wick.coefficients) wick.push_back({{"k", k}, {"coeff", c.to_fraction_string()}});
    entry["wick"] = wick;
    entry["c2_log"] = lc.c2.value.to_fraction_string();
    entry["c3_log"] = lc.c3.value.to_fraction_string();
    entry["c2_plus_c3"] = (lc.c2.value + lc.c3.value).to_fraction_string();
    entry["unit"] = kLogUnit;
    layers.push_back(entry);
  }
  doc["constants"] = layers;
  return doc.dump(2) + "\n";
}

}  // namespace mlkpz
