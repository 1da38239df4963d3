#pragma once

#include <span>
#include <string>
#include <vector>

#include "replica/numeric.hpp"
#include "replica/polynomial.hpp"

namespace replica {

/// Formal power series over Q truncated at an inclusive order N: holds
/// exactly the coefficients of z^0 .. z^N.
///
/// Binary operations on series of different orders silently truncate to the
/// smaller order, as formal-series arithmetic does.
class Series {
 public:
  /// The zero series of order 0.
  Series() : coeffs_(1, Rational(0)) {}
  /// The zero series of the given order.
  explicit Series(std::size_t order) : coeffs_(order + 1, Rational(0)) {}
  /// Takes ownership of coefficients 0..N; the vector must not be empty.
  explicit Series(std::vector<Rational> coeffs);

  static Series one(std::size_t order);
  /// c * z^k truncated at order.
  static Series monomial(std::size_t order, std::size_t k, const Rational& c = 1);
  static Series from_integers(std::span<const Integer> coeffs);
  static Series from_polynomial(const Polynomial& p, std::size_t order);

  std::size_t order() const { return coeffs_.size() - 1; }
  const Rational& operator[](std::size_t k) const { return coeffs_[k]; }
  Rational& operator[](std::size_t k) { return coeffs_[k]; }
  /// Coefficient of z^k, zero beyond the order.
  Rational coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Rational(0); }
  std::span<const Rational> coeffs() const { return coeffs_; }

  Series truncated(std::size_t order) const;
  /// Index of the first nonzero coefficient, or order()+1 for the zero series.
  std::size_t valuation() const;
  bool is_integral() const;
  /// Coefficients as integers; throws InexactDivision on a non-integral entry.
  IntegerSequence to_integers() const;

  friend bool operator==(const Series& a, const Series& b) = default;

  std::string to_string(const std::string& var = "z") const;

 private:
  std::vector<Rational> coeffs_;
};

Series operator+(const Series& a, const Series& b);
Series operator-(const Series& a, const Series& b);
Series operator-(const Series& a);
Series operator*(const Series& a, const Series& b);
Series operator*(const Rational& c, const Series& a);

/// Cauchy product truncated at min(order a, order b).
Series mul(const Series& a, const Series& b);
/// a^e by repeated squaring.
Series pow(const Series& a, unsigned e);
/// Multiplicative inverse; throws ZeroConstantTerm when a_0 == 0.
Series recip(const Series& a);
/// outer(inner(z)) by Horner's scheme; the inner series must have zero
/// constant term (NonzeroInnerConstant otherwise). Order is min of the two.
Series compose(const Series& outer, const Series& inner);
/// Taylor expansion at z = 0 to the given order; PoleAtOrigin when the
/// denominator vanishes at 0.
Series expand(const RationalFunction& r, std::size_t order);
/// a * p / q computed by polynomial multiplication and a linear recurrence for
/// the division, O(N * deg). Requires q(0) != 0.
Series mul_rational(const Series& a, const RationalFunction& r);
/// Formal square root with positive rational constant term; throws
/// NonSquareConstant when a_0 is not the square of a positive rational.
Series sqrt(const Series& a);
/// Formal derivative; the order drops by one (order 0 stays a zero series of
/// order 0).
Series derive(const Series& a);
/// z * a'(z): coefficient k becomes k * a_k, order unchanged.
Series theta(const Series& a);
/// z^k * a, keeping the order of a.
Series shift_up(const Series& a, std::size_t k);

}  // namespace replica
