#pragma once

#include <mpfr.h>

#include <string>

#include "replica/numeric.hpp"

namespace replica {

/// Binary floating-point value with its own precision, backed by MPFR.
/// Every operation rounds to nearest at the result precision, which is the
/// smaller precision of the operands (so an error of at most half an ulp per
/// operation). Precision is clamped to at least 64 bits.
class PrecisionReal {
 public:
  static constexpr mpfr_prec_t kMinBits = 64;

  explicit PrecisionReal(mpfr_prec_t bits = 128);
  PrecisionReal(long value, mpfr_prec_t bits);
  PrecisionReal(const Integer& value, mpfr_prec_t bits);
  PrecisionReal(const Rational& value, mpfr_prec_t bits);
  /// Decimal literal such as "0.25" or "-1e-30"; throws DomainError.
  PrecisionReal(const std::string& decimal, mpfr_prec_t bits);

  PrecisionReal(const PrecisionReal& other);
  PrecisionReal(PrecisionReal&& other) noexcept;
  PrecisionReal& operator=(const PrecisionReal& other);
  PrecisionReal& operator=(PrecisionReal&& other) noexcept;
  ~PrecisionReal();

  mpfr_prec_t precision() const { return mpfr_get_prec(value_); }
  /// Same value rounded to a new precision.
  PrecisionReal with_precision(mpfr_prec_t bits) const;

  static PrecisionReal pi(mpfr_prec_t bits);

  friend PrecisionReal operator+(const PrecisionReal& a, const PrecisionReal& b);
  friend PrecisionReal operator-(const PrecisionReal& a, const PrecisionReal& b);
  friend PrecisionReal operator*(const PrecisionReal& a, const PrecisionReal& b);
  friend PrecisionReal operator/(const PrecisionReal& a, const PrecisionReal& b);
  friend PrecisionReal operator+(const PrecisionReal& a, long b);
  friend PrecisionReal operator-(const PrecisionReal& a, long b);
  friend PrecisionReal operator*(const PrecisionReal& a, long b);
  friend PrecisionReal operator/(const PrecisionReal& a, long b);
  friend PrecisionReal operator+(long a, const PrecisionReal& b) { return b + a; }
  friend PrecisionReal operator-(long a, const PrecisionReal& b);
  friend PrecisionReal operator*(long a, const PrecisionReal& b) { return b * a; }
  friend PrecisionReal operator/(long a, const PrecisionReal& b);
  PrecisionReal operator-() const;

  PrecisionReal& operator+=(const PrecisionReal& b) { return *this = *this + b; }
  PrecisionReal& operator-=(const PrecisionReal& b) { return *this = *this - b; }
  PrecisionReal& operator*=(const PrecisionReal& b) { return *this = *this * b; }
  PrecisionReal& operator/=(const PrecisionReal& b) { return *this = *this / b; }

  friend bool operator<(const PrecisionReal& a, const PrecisionReal& b) { return mpfr_less_p(a.value_, b.value_); }
  friend bool operator>(const PrecisionReal& a, const PrecisionReal& b) { return b < a; }
  friend bool operator<=(const PrecisionReal& a, const PrecisionReal& b) { return mpfr_lessequal_p(a.value_, b.value_); }
  friend bool operator>=(const PrecisionReal& a, const PrecisionReal& b) { return b <= a; }
  friend bool operator==(const PrecisionReal& a, const PrecisionReal& b) { return mpfr_equal_p(a.value_, b.value_); }

  int sign() const { return mpfr_sgn(value_); }
  bool is_zero() const { return mpfr_zero_p(value_) != 0; }
  bool is_finite() const { return mpfr_number_p(value_) != 0; }

  double to_double() const { return mpfr_get_d(value_, MPFR_RNDN); }
  /// Decimal scientific notation with the given significant digits.
  std::string to_string(unsigned digits = 20) const;
  /// Fixed-point decimal with `decimals` digits after the point.
  std::string to_fixed(unsigned decimals) const;

  /// log10 |x|; -infinity for zero.
  double log10_abs() const;

  const __mpfr_struct* get() const { return value_; }
  __mpfr_struct* get() { return value_; }

 private:
  mpfr_t value_;
};

PrecisionReal abs(const PrecisionReal& x);
/// Principal square root; throws DomainError for a negative argument.
PrecisionReal sqrt(const PrecisionReal& x);
/// Real cube root (defined for negative x).
PrecisionReal cbrt(const PrecisionReal& x);
/// Real k-th root; negative x only for odd k.
PrecisionReal root(const PrecisionReal& x, unsigned long k);
PrecisionReal pow(const PrecisionReal& x, long e);
PrecisionReal gamma(const PrecisionReal& x);

/// Decimal digits of agreement: floor(-log10 |a - b|), capped at what the
/// precision can represent; 0 when they differ by 1 or more.
long digits_of_agreement(const PrecisionReal& a, const PrecisionReal& b);

/// Bits needed for d decimal digits.
mpfr_prec_t bits_for_digits(unsigned long digits);

}  // namespace replica
