#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <concepts>
#include <cstdint>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>

#include "threshold/errors.hpp"

namespace threshold {

/// Exact rational number. Always canonical: gcd(|num|, den) = 1 and den >= 1.
class Scalar {
 public:
  Scalar() = default;

  template <std::signed_integral I>
  Scalar(I value) : q_(static_cast<long>(value)) {}  // NOLINT: implicit by design of the arithmetic

  Scalar(std::int64_t num, std::int64_t den) {
    if (den == 0) throw std::domain_error("Scalar: zero denominator");
    q_ = mpq_class(mpz_class(static_cast<long>(num)), mpz_class(static_cast<long>(den)));
    q_.canonicalize();
  }

  explicit Scalar(mpq_class q) : q_(std::move(q)) { q_.canonicalize(); }

  /// Parses "p", "p/q" or a decimal literal (see from_decimal).
  static Scalar parse(std::string_view text);

  /// Exact value of a finite decimal literal: [+-]digits[.digits][(e|E)[+-]digits].
  static Scalar from_decimal(std::string_view text);

  const mpq_class& raw() const noexcept { return q_; }

  std::string numerator() const { return q_.get_num().get_str(); }
  std::string denominator() const { return q_.get_den().get_str(); }

  /// "p" for integers, "p/q" otherwise.
  std::string to_string() const { return q_.get_str(); }

  int sign() const noexcept { return sgn(q_); }
  bool is_integer() const noexcept { return q_.get_den() == 1; }

  /// Denominator is a power of two.
  bool is_dyadic() const noexcept { return mpz_popcount(q_.get_den_mpz_t()) == 1; }

  double to_double() const { return q_.get_d(); }
  /// Nearest long double (truncated to 64 significant bits).
  long double to_long_double() const {
    if (sign() == 0) return 0.0L;
    mpz_class num = abs(q_.get_num());
    const mpz_class& den = q_.get_den();
    const long shift = 64 - (static_cast<long>(mpz_sizeinbase(num.get_mpz_t(), 2)) -
                             static_cast<long>(mpz_sizeinbase(den.get_mpz_t(), 2)));
    if (shift >= 0) {
      num <<= static_cast<mp_bitcnt_t>(shift);
    } else {
      num >>= static_cast<mp_bitcnt_t>(-shift);
    }
    const mpz_class quotient = num / den;  // between 2^63 and 2^65
    const mpz_class high = quotient >> 32;
    const mpz_class low = quotient - (high << 32);
    const long double mantissa = static_cast<long double>(high.get_ui()) * 4294967296.0L +
                                 static_cast<long double>(low.get_ui());
    const long double magnitude = std::ldexp(mantissa, static_cast<int>(-shift));
    return sign() < 0 ? -magnitude : magnitude;
  }

  Scalar operator-() const { return Scalar(mpq_class(-q_), Raw{}); }

  Scalar& operator+=(const Scalar& o) { q_ += o.q_; return *this; }
  Scalar& operator-=(const Scalar& o) { q_ -= o.q_; return *this; }
  Scalar& operator*=(const Scalar& o) { q_ *= o.q_; return *this; }
  Scalar& operator/=(const Scalar& o) {
    if (o.sign() == 0) throw std::domain_error("Scalar: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }

  friend bool operator==(const Scalar& a, const Scalar& b) { return a.q_ == b.q_; }
  friend std::strong_ordering operator<=>(const Scalar& a, const Scalar& b) {
    return cmp(a.q_, b.q_) <=> 0;
  }

  friend std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

 private:
  struct Raw {};
  Scalar(mpq_class q, Raw) : q_(std::move(q)) {}

  mpq_class q_;
};

/// Midpoint of two dyadic scalars is again dyadic; computed with a single shift.
inline Scalar midpoint(const Scalar& a, const Scalar& b) {
  mpq_class sum = a.raw() + b.raw();
  mpq_div_2exp(sum.get_mpq_t(), sum.get_mpq_t(), 1);
  return Scalar(std::move(sum));
}

struct FloorResult {
  mpz_class floor;
  bool is_exact_integer = false;
};

inline FloorResult floor_of(const Scalar& x) {
  FloorResult out;
  mpz_fdiv_q(out.floor.get_mpz_t(), x.raw().get_num_mpz_t(), x.raw().get_den_mpz_t());
  out.is_exact_integer = x.is_integer();
  return out;
}

/// 1 + floor(x): the smallest integer strictly greater than x.
inline std::int64_t floor_plus_one(const Scalar& x) {
  mpz_class v = floor_of(x).floor + 1;
  if (!v.fits_slong_p()) throw std::overflow_error("floor_plus_one: result exceeds 64 bits");
  return v.get_si();
}

inline Scalar Scalar::from_decimal(std::string_view text) {
  std::size_t i = 0;
  const std::size_t n = text.size();
  bool negative = false;
  if (i < n && (text[i] == '+' || text[i] == '-')) negative = text[i++] == '-';

  std::string digits;
  long scale = 0;  // value = digits * 10^(-scale)
  std::size_t int_digits = 0;
  while (i < n && text[i] >= '0' && text[i] <= '9') {
    digits.push_back(text[i++]);
    ++int_digits;
  }
  std::size_t frac_digits = 0;
  if (i < n && text[i] == '.') {
    ++i;
    while (i < n && text[i] >= '0' && text[i] <= '9') {
      digits.push_back(text[i++]);
      ++frac_digits;
    }
  }
  if (int_digits + frac_digits == 0) throw ParseError("malformed decimal literal '" + std::string(text) + "'", i);
  scale = static_cast<long>(frac_digits);

  if (i < n && (text[i] == 'e' || text[i] == 'E')) {
    ++i;
    bool exp_negative = false;
    if (i < n && (text[i] == '+' || text[i] == '-')) exp_negative = text[i++] == '-';
    const std::size_t exp_start = i;
    long exponent = 0;
    while (i < n && text[i] >= '0' && text[i] <= '9') {
      exponent = exponent * 10 + (text[i++] - '0');
      if (exponent > 100000) throw ParseError("decimal exponent out of range", exp_start);
    }
    if (i == exp_start) throw ParseError("missing exponent digits", i);
    scale -= exp_negative ? -exponent : exponent;
  }
  if (i != n) throw ParseError("unexpected character in decimal literal '" + std::string(text) + "'", i);

  mpz_class num(digits, 10);
  if (negative) num = -num;
  mpz_class pow10;
  mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(scale < 0 ? -scale : scale));
  mpq_class q = scale >= 0 ? mpq_class(num, pow10) : mpq_class(num * pow10);
  q.canonicalize();
  return Scalar(std::move(q));
}

inline Scalar Scalar::parse(std::string_view text) {
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return from_decimal(text);
  const Scalar num = from_decimal(text.substr(0, slash));
  const Scalar den = from_decimal(text.substr(slash + 1));
  if (!num.is_integer() || !den.is_integer()) throw ParseError("rational parts must be integers", slash);
  if (den.sign() == 0) throw ParseError("zero denominator", slash + 1);
  return num / den;
}

}  // namespace threshold
