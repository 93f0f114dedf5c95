#include "mlkpz/rational.hpp"

#include <ostream>
#include <stdexcept>

namespace mlkpz {

Rational::Rational(long numerator, long denominator) {
  if (denominator == 0) throw std::invalid_argument("Rational: zero denominator");
  value_ = mpq_class(numerator, denominator);
  value_.canonicalize();
}

Rational::Rational(mpq_class value) : value_(std::move(value)) {
  if (value_.get_den() == 0) throw std::invalid_argument("Rational: zero denominator");
  value_.canonicalize();
}

Rational Rational::parse(std::string_view text) {
  std::string s(text);
  const auto slash = s.find('/');
  auto parse_int = [](const std::string& part) {
    if (part.empty()) throw std::invalid_argument("Rational::parse: empty integer");
    std::size_t start = (part[0] == '-' || part[0] == '+') ? 1 : 0;
    if (start == part.size()) throw std::invalid_argument("Rational::parse: bare sign");
    for (std::size_t i = start; i < part.size(); ++i) {
      if (part[i] < '0' || part[i] > '9') {
        throw std::invalid_argument("Rational::parse: not an integer: " + part);
      }
    }
    return mpz_class(part[0] == '+' ? part.substr(1) : part, 10);
  };
  if (slash == std::string::npos) return Rational(parse_int(s));
  const mpz_class num = parse_int(s.substr(0, slash));
  const mpz_class den = parse_int(s.substr(slash + 1));
  if (den == 0) throw std::invalid_argument("Rational::parse: zero denominator");
  return Rational(mpq_class(num, den));
}

Rational Rational::pow2(long exponent) {
  mpz_class p;
  if (exponent >= 0) {
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(exponent));
    return Rational(p);
  }
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(-exponent));
  return Rational(mpq_class(mpz_class(1), p));
}

Rational Rational::neg_half_pow(long exponent) {
  Rational r = pow2(-exponent);
  // (-2)^(-e) has sign (-1)^e
  if (exponent % 2 != 0) r = -r;
  return r;
}

Rational& Rational::operator/=(const Rational& other) {
  if (other.is_zero()) throw std::domain_error("Rational: division by zero");
  value_ /= other.value_;
  return *this;
}

std::string Rational::to_fraction_string() const {
  return value_.get_num().get_str() + "/" + value_.get_den().get_str();
}

std::string Rational::to_string() const {
  if (is_integer()) return value_.get_num().get_str();
  return to_fraction_string();
}

std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.to_string(); }

mpz_class binom_or_zero(long n, long k) {
  if (n == -1 && k == -1) return 1;
  if (n < 0 || k < 0 || k > n) return 0;
  mpz_class out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

Rational binom(long n, long k) {
  if (n < -1 || k < -1) {
    throw std::invalid_argument("binom: arguments must be >= -1 (got " + std::to_string(n) +
                                ", " + std::to_string(k) + ")");
  }
  return Rational(binom_or_zero(n, k));
}

mpz_class factorial(long n) {
  if (n < 0) throw std::invalid_argument("factorial: negative argument");
  mpz_class out;
  mpz_fac_ui(out.get_mpz_t(), static_cast<unsigned long>(n));
  return out;
}

}  // namespace mlkpz

std::size_t std::hash<mlkpz::Rational>::operator()(const mlkpz::Rational& r) const {
  const auto h1 = std::hash<std::string>{}(r.numerator().get_str(16));
  const auto h2 = std::hash<std::string>{}(r.denominator().get_str(16));
  return h1 ^ (h2 + 0x9e3779b97f4a7c15ULL + (h1 << 6) + (h1 >> 2));
}
