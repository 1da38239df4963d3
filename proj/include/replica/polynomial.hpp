#pragma once

#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "replica/numeric.hpp"

namespace replica {

/// Dense univariate polynomial with exact integer coefficients, lowest degree
/// first. Trailing zeros are stripped so the zero polynomial has no
/// coefficients.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<long> coeffs);
  explicit Polynomial(std::vector<Integer> coeffs);

  static Polynomial constant(const Integer& c);
  static Polynomial monomial(std::size_t degree, const Integer& c = 1);
  /// (a + b z)^e
  static Polynomial binomial_power(long a, long b, unsigned e);

  bool is_zero() const { return coeffs_.empty(); }
  /// Degree; -1 for the zero polynomial.
  long degree() const { return static_cast<long>(coeffs_.size()) - 1; }
  /// Index of the lowest nonzero coefficient; -1 for the zero polynomial.
  long valuation() const;

  Integer coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : Integer(0); }
  const Integer& leading() const { return coeffs_.back(); }
  std::span<const Integer> coeffs() const { return coeffs_; }

  Integer content() const;
  Polynomial primitive_part() const;
  Polynomial derivative() const;
  /// p(z) / z^k; the low coefficients must be zero.
  Polynomial divide_by_z_power(std::size_t k) const;
  /// p(z + s)
  Polynomial shifted(long s) const;

  template <typename T>
  T evaluate(const T& x) const {
    T acc = T(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + T(*it);
    return acc;
  }

  Integer operator()(const Integer& x) const;
  Rational operator()(const Rational& x) const;

  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator-(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(const Integer& c, const Polynomial& p);
  Polynomial operator-() const;
  friend bool operator==(const Polynomial& a, const Polynomial& b) = default;

  /// Exact division by an integer; throws InexactDivision otherwise.
  Polynomial divexact(const Integer& d) const;

  /// Human-readable form in the given variable, e.g. "1 + 4*z^2".
  std::string to_string(const std::string& var = "z") const;

 private:
  void normalize();
  std::vector<Integer> coeffs_;
};

Polynomial pow(const Polynomial& p, unsigned e);

/// Greatest common divisor over Z[z], primitive and with positive leading
/// coefficient (unit content of the inputs' gcd is carried separately).
Polynomial gcd(const Polynomial& a, const Polynomial& b);

/// Exact quotient a / b over Z[z]; throws InexactDivision when b does not
/// divide a.
Polynomial divexact(const Polynomial& a, const Polynomial& b);

/// Quotient of integer polynomials in canonical form: numerator and
/// denominator coprime in Z[z], integer contents coprime, and the lowest
/// nonzero denominator coefficient positive.
class RationalFunction {
 public:
  RationalFunction() : num_(), den_(Polynomial{1}) {}
  RationalFunction(Polynomial num);  // NOLINT: polynomials embed naturally
  RationalFunction(Polynomial num, Polynomial den);

  const Polynomial& numerator() const { return num_; }
  const Polynomial& denominator() const { return den_; }

  bool is_zero() const { return num_.is_zero(); }
  /// Order of vanishing at z = 0 (negative for a pole); throws for zero.
  long valuation() const;
  /// Coefficient of z^valuation in the expansion at 0.
  Rational leading_coefficient() const;
  /// Value at z = 0; throws PoleAtOrigin when the denominator vanishes there.
  Rational value_at_zero() const;

  /// z * r'(z) / r(z), the logarithmic derivative with respect to log z.
  RationalFunction log_derivative() const;
  /// r(z) / z^k for k <= valuation.
  RationalFunction divide_by_z_power(std::size_t k) const;

  template <typename T>
  T evaluate(const T& x) const {
    return num_.evaluate(x) / den_.evaluate(x);
  }

  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b);
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b);
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) = default;

  std::string to_string(const std::string& var = "z") const;

 private:
  void canonicalize();
  Polynomial num_;
  Polynomial den_;
};

RationalFunction pow(const RationalFunction& r, unsigned e);

}  // namespace replica
