#pragma once

#include <optional>
#include <string>
#include <vector>

#include "replica/numeric.hpp"
#include "replica/series.hpp"

namespace replica {

/// Polynomial in u, v with exact rational coefficients, truncated to total
/// degree D: products drop every monomial u^i v^j with i + j > D.
class BivariatePoly {
 public:
  explicit BivariatePoly(unsigned max_degree);

  static BivariatePoly constant(unsigned max_degree, const Rational& c);
  static BivariatePoly u(unsigned max_degree);
  static BivariatePoly v(unsigned max_degree);

  unsigned max_degree() const { return max_degree_; }

  /// Coefficient of u^i v^j (zero beyond the truncation).
  Rational coeff(unsigned i, unsigned j) const;
  void set(unsigned i, unsigned j, const Rational& c);

  bool is_zero() const;
  /// Lowest total degree carrying a nonzero coefficient; nullopt for zero.
  std::optional<unsigned> valuation() const;
  /// Highest total degree carrying a nonzero coefficient; nullopt for zero.
  std::optional<unsigned> total_degree() const;

  /// p(v, u)
  BivariatePoly swapped() const;
  /// p(t, t) as a series in t to order D.
  Series diagonal() const;
  /// Same polynomial truncated to a smaller total degree.
  BivariatePoly truncated(unsigned max_degree) const;

  friend BivariatePoly operator+(const BivariatePoly& a, const BivariatePoly& b);
  friend BivariatePoly operator-(const BivariatePoly& a, const BivariatePoly& b);
  friend BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b);
  friend BivariatePoly operator*(const Rational& c, const BivariatePoly& a);
  BivariatePoly& operator+=(const BivariatePoly& b) { return *this = *this + b; }
  friend bool operator==(const BivariatePoly& a, const BivariatePoly& b);

  std::string to_string() const;

 private:
  std::size_t index(unsigned i, unsigned j) const { return static_cast<std::size_t>(i) * (max_degree_ + 1) + j; }
  unsigned max_degree_;
  std::vector<Rational> coeffs_;  // (D+1)^2 grid, entries with i + j > D stay zero
};

BivariatePoly pow(const BivariatePoly& p, unsigned e);

/// Lowest total degree where a and b differ; nullopt when they agree up to
/// the smaller truncation.
std::optional<unsigned> first_difference(const BivariatePoly& a, const BivariatePoly& b);

/// P_n with exact coefficients, lowest degree first.
struct LegendrePoly {
  std::vector<Rational> coeffs;

  unsigned degree() const { return static_cast<unsigned>(coeffs.size()) - 1; }
  Rational operator()(const Rational& x) const;
  friend bool operator==(const LegendrePoly&, const LegendrePoly&) = default;
  std::string to_string(const std::string& var = "x") const;
};

/// 2^-n sum_k C(n,k)^2 (x-1)^k (x+1)^(n-k)
LegendrePoly legendre_poly(unsigned n);
/// 2F1(-n, n+1; 1; (1-x)/2) = sum_k C(n,k) C(n+k,k) ((x-1)/2)^k
LegendrePoly legendre_poly_hypergeometric(unsigned n);

/// B^n P_n(A/B) with A, B given as bivariate polynomials; a genuine
/// polynomial since deg P_n = n.
BivariatePoly homogenized_legendre(unsigned n, const BivariatePoly& a, const BivariatePoly& b);

/// C(2n,n)^2 / 16^n (U-V)^n P_n((U+V-2UV)/(U-V)) in the variables U = u, V = v.
BivariatePoly homogenized_term(unsigned n, unsigned max_degree);

/// 2F1(1/2,1/2;1;U) 2F1(1/2,1/2;1;V) truncated to total degree D.
BivariatePoly hypergeometric_product(unsigned max_degree);

/// Largest d <= D such that the sum of homogenized terms agrees with the
/// hypergeometric product in every total degree up to d; -1 if even the
/// constant terms differ.
long bailey_brafman_check(unsigned max_degree);

/// Both sides of the two-variable self-replicating identity for
/// F(x; z) = sum C(2n,n)^2 P_n(x) z^n, as polynomials in u, v:
///   left  F((u^2+v^2-2u^2v^2)/(u^2-v^2); (u^2-v^2)/16)
///   right F(((1+uv)(u+v)-4uv)/((1-uv)(u-v)); (1-uv)(u-v)/(4(1+u)^2(1+v)^2)) / ((1+u)(1+v))
struct LegendreSides {
  BivariatePoly left;
  BivariatePoly right;
};
LegendreSides legendre_identity_sides(unsigned max_degree);

/// Largest d <= D up to which both sides agree; -1 if the constants differ.
long leg_identity_check(unsigned max_degree);

}  // namespace replica
