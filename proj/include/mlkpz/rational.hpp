#pragma once

// Exact rational scalar used throughout the combinatorics core.

#include <compare>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace mlkpz {

/// Arbitrary-precision fraction, always in lowest terms with a positive
/// denominator.
class Rational {
 public:
  Rational() = default;
  Rational(long value) : value_(value) {}  // NOLINT(google-explicit-constructor)
  Rational(int value) : value_(static_cast<long>(value)) {}  // NOLINT
  Rational(long numerator, long denominator);
  explicit Rational(const mpz_class& integer) : value_(integer) {}
  explicit Rational(mpq_class value);

  /// Parses "p/q" or "p". Throws std::invalid_argument on malformed input or a
  /// zero denominator.
  static Rational parse(std::string_view text);

  /// 2^exponent for any integer exponent.
  static Rational pow2(long exponent);
  /// (-2)^(-exponent), the ubiquitous lattice-path weight.
  static Rational neg_half_pow(long exponent);

  mpz_class numerator() const { return value_.get_num(); }
  mpz_class denominator() const { return value_.get_den(); }
  bool is_zero() const { return sgn(value_) == 0; }
  bool is_integer() const { return value_.get_den() == 1; }
  int sign() const { return sgn(value_); }
  double to_double() const { return value_.get_d(); }
  const mpq_class& raw() const { return value_; }

  /// "p/q" with the denominator always present ("3/1", "0/1").
  std::string to_fraction_string() const;
  /// "p/q", or "p" when the value is an integer.
  std::string to_string() const;

  Rational& operator+=(const Rational& other) {
    value_ += other.value_;
    return *this;
  }
  Rational& operator-=(const Rational& other) {
    value_ -= other.value_;
    return *this;
  }
  Rational& operator*=(const Rational& other) {
    value_ *= other.value_;
    return *this;
  }
  Rational& operator/=(const Rational& other);

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { return Rational(mpq_class(-a.value_)); }

  friend bool operator==(const Rational& a, const Rational& b) { return a.value_ == b.value_; }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    const int c = cmp(a.value_, b.value_);
    if (c < 0) return std::strong_ordering::less;
    if (c > 0) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

 private:
  mpq_class value_{0};
};

std::ostream& operator<<(std::ostream& os, const Rational& r);

/// Binomial coefficient with the convention binom(n,-1) = 0 for n >= 0 and
/// binom(-1,-1) = binom(0,0) = 1. Arguments below -1 are rejected with
/// std::invalid_argument.
Rational binom(long n, long k);

/// Integer binomial extended by zero: 1 for (-1,-1), 0 for any other negative
/// argument or k > n. Used by open-ended sums whose ranges the binomials cut
/// off.
mpz_class binom_or_zero(long n, long k);

mpz_class factorial(long n);

}  // namespace mlkpz

template <>
struct std::hash<mlkpz::Rational> {
  std::size_t operator()(const mlkpz::Rational& r) const;
};
