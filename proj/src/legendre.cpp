#include "replica/legendre.hpp"

#include <algorithm>
#include <sstream>

namespace replica {

BivariatePoly::BivariatePoly(unsigned max_degree)
    : max_degree_(max_degree), coeffs_(static_cast<std::size_t>(max_degree + 1) * (max_degree + 1), Rational(0)) {}

BivariatePoly BivariatePoly::constant(unsigned max_degree, const Rational& c) {
  BivariatePoly p(max_degree);
  p.set(0, 0, c);
  return p;
}

BivariatePoly BivariatePoly::u(unsigned max_degree) {
  BivariatePoly p(max_degree);
  if (max_degree >= 1) p.set(1, 0, 1);
  return p;
}

BivariatePoly BivariatePoly::v(unsigned max_degree) {
  BivariatePoly p(max_degree);
  if (max_degree >= 1) p.set(0, 1, 1);
  return p;
}

Rational BivariatePoly::coeff(unsigned i, unsigned j) const {
  if (i + j > max_degree_) return 0;
  return coeffs_[index(i, j)];
}

void BivariatePoly::set(unsigned i, unsigned j, const Rational& c) {
  if (i + j > max_degree_) {
    if (c != 0) throw DomainError("monomial beyond the truncation degree " + std::to_string(max_degree_));
    return;
  }
  coeffs_[index(i, j)] = c;
}

bool BivariatePoly::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& q) { return q == 0; });
}

std::optional<unsigned> BivariatePoly::valuation() const {
  for (unsigned d = 0; d <= max_degree_; ++d) {
    for (unsigned i = 0; i <= d; ++i) {
      if (coeff(i, d - i) != 0) return d;
    }
  }
  return std::nullopt;
}

std::optional<unsigned> BivariatePoly::total_degree() const {
  for (unsigned d = max_degree_ + 1; d-- > 0;) {
    for (unsigned i = 0; i <= d; ++i) {
      if (coeff(i, d - i) != 0) return d;
    }
  }
  return std::nullopt;
}

BivariatePoly BivariatePoly::swapped() const {
  BivariatePoly r(max_degree_);
  for (unsigned i = 0; i <= max_degree_; ++i) {
    for (unsigned j = 0; i + j <= max_degree_; ++j) r.set(j, i, coeff(i, j));
  }
  return r;
}

Series BivariatePoly::diagonal() const {
  Series s(max_degree_);
  for (unsigned i = 0; i <= max_degree_; ++i) {
    for (unsigned j = 0; i + j <= max_degree_; ++j) s[i + j] += coeff(i, j);
  }
  return s;
}

BivariatePoly BivariatePoly::truncated(unsigned max_degree) const {
  BivariatePoly r(max_degree);
  for (unsigned i = 0; i <= max_degree; ++i) {
    for (unsigned j = 0; i + j <= max_degree; ++j) r.set(i, j, coeff(i, j));
  }
  return r;
}

BivariatePoly operator+(const BivariatePoly& a, const BivariatePoly& b) {
  BivariatePoly r(std::min(a.max_degree_, b.max_degree_));
  for (unsigned i = 0; i <= r.max_degree_; ++i) {
    for (unsigned j = 0; i + j <= r.max_degree_; ++j) r.coeffs_[r.index(i, j)] = a.coeff(i, j) + b.coeff(i, j);
  }
  return r;
}

BivariatePoly operator-(const BivariatePoly& a, const BivariatePoly& b) { return a + Rational(-1) * b; }

BivariatePoly operator*(const Rational& c, const BivariatePoly& a) {
  BivariatePoly r(a.max_degree_);
  for (std::size_t k = 0; k < a.coeffs_.size(); ++k) r.coeffs_[k] = c * a.coeffs_[k];
  return r;
}

BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b) {
  const unsigned D = std::min(a.max_degree_, b.max_degree_);
  BivariatePoly r(D);
  for (unsigned i1 = 0; i1 <= D; ++i1) {
    for (unsigned j1 = 0; i1 + j1 <= D; ++j1) {
      const Rational& x = a.coeffs_[a.index(i1, j1)];
      if (x == 0) continue;
      for (unsigned i2 = 0; i1 + j1 + i2 <= D; ++i2) {
        for (unsigned j2 = 0; i1 + j1 + i2 + j2 <= D; ++j2) {
          const Rational& y = b.coeffs_[b.index(i2, j2)];
          if (y != 0) r.coeffs_[r.index(i1 + i2, j1 + j2)] += x * y;
        }
      }
    }
  }
  return r;
}

bool operator==(const BivariatePoly& a, const BivariatePoly& b) {
  return a.max_degree_ == b.max_degree_ && a.coeffs_ == b.coeffs_;
}

std::string BivariatePoly::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (unsigned d = 0; d <= max_degree_; ++d) {
    for (unsigned i = d + 1; i-- > 0;) {
      const Rational c = coeff(i, d - i);
      if (c == 0) continue;
      os << (first ? "" : " + ") << c;
      if (i > 0) os << "*u" << (i > 1 ? "^" + std::to_string(i) : "");
      if (d - i > 0) os << "*v" << (d - i > 1 ? "^" + std::to_string(d - i) : "");
      first = false;
    }
  }
  if (first) os << "0";
  os << " + O(deg " << max_degree_ + 1 << ")";
  return os.str();
}

BivariatePoly pow(const BivariatePoly& p, unsigned e) {
  BivariatePoly result = BivariatePoly::constant(p.max_degree(), 1);
  BivariatePoly base = p;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

std::optional<unsigned> first_difference(const BivariatePoly& a, const BivariatePoly& b) {
  const unsigned D = std::min(a.max_degree(), b.max_degree());
  for (unsigned d = 0; d <= D; ++d) {
    for (unsigned i = 0; i <= d; ++i) {
      if (a.coeff(i, d - i) != b.coeff(i, d - i)) return d;
    }
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------

Rational LegendrePoly::operator()(const Rational& x) const {
  Rational acc = 0;
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) acc = acc * x + *it;
  return acc;
}

std::string LegendrePoly::to_string(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs.size(); ++k) {
    if (coeffs[k] == 0) continue;
    os << (first ? "" : " + ") << coeffs[k];
    if (k > 0) os << "*" << var << (k > 1 ? "^" + std::to_string(k) : "");
    first = false;
  }
  return first ? "0" : os.str();
}

namespace {

/// Coefficients of (x + s)^m, lowest degree first.
std::vector<Integer> shifted_power(long s, unsigned m) {
  std::vector<Integer> c(m + 1);
  for (unsigned k = 0; k <= m; ++k) c[k] = binomial(m, k) * power(Integer(s), m - k);
  return c;
}

}  // namespace

LegendrePoly legendre_poly(unsigned n) {
  std::vector<Integer> acc(n + 1, Integer(0));
  for (unsigned k = 0; k <= n; ++k) {
    const Integer b = binomial(n, k);
    const std::vector<Integer> lo = shifted_power(-1, k);
    const std::vector<Integer> hi = shifted_power(1, n - k);
    for (unsigned i = 0; i <= k; ++i) {
      for (unsigned j = 0; j <= n - k; ++j) acc[i + j] += b * b * lo[i] * hi[j];
    }
  }
  LegendrePoly p;
  const Integer scale = power(Integer(2), n);
  for (const Integer& c : acc) {
    Rational q(c, scale);
    q.canonicalize();
    p.coeffs.push_back(q);
  }
  return p;
}

LegendrePoly legendre_poly_hypergeometric(unsigned n) {
  LegendrePoly p{std::vector<Rational>(n + 1, Rational(0))};
  for (unsigned k = 0; k <= n; ++k) {
    Rational w(binomial(n, k) * binomial(n + k, k), power(Integer(2), k));
    w.canonicalize();
    const std::vector<Integer> t = shifted_power(-1, k);
    for (unsigned i = 0; i <= k; ++i) p.coeffs[i] += w * t[i];
  }
  return p;
}

BivariatePoly homogenized_legendre(unsigned n, const BivariatePoly& a, const BivariatePoly& b) {
  const LegendrePoly p = legendre_poly(n);
  const unsigned D = std::min(a.max_degree(), b.max_degree());
  std::vector<BivariatePoly> a_pow{BivariatePoly::constant(D, 1)};
  std::vector<BivariatePoly> b_pow{BivariatePoly::constant(D, 1)};
  for (unsigned k = 1; k <= n; ++k) {
    a_pow.push_back(a_pow.back() * a);
    b_pow.push_back(b_pow.back() * b);
  }
  BivariatePoly r(D);
  for (unsigned k = 0; k <= n; ++k) {
    if (p.coeffs[k] != 0) r += p.coeffs[k] * (a_pow[k] * b_pow[n - k]);
  }
  return r;
}

namespace {

Rational squared_central_over_16(unsigned n) {
  const Integer c = binomial(2 * static_cast<long>(n), n);
  Rational q(c * c, power(Integer(16), n));
  q.canonicalize();
  return q;
}

/// (1 + w)^(-m) for w = u or v, truncated to degree D.
BivariatePoly inverse_power(bool in_u, unsigned m, unsigned D) {
  BivariatePoly r(D);
  for (unsigned k = 0; k <= D; ++k) {
    const Integer c = binomial(-static_cast<long>(m), k);
    if (in_u) r.set(k, 0, c); else r.set(0, k, c);
  }
  return r;
}

}  // namespace

BivariatePoly homogenized_term(unsigned n, unsigned max_degree) {
  const BivariatePoly U = BivariatePoly::u(max_degree);
  const BivariatePoly V = BivariatePoly::v(max_degree);
  const BivariatePoly arg = U + V - Rational(2) * (U * V);
  return squared_central_over_16(n) * homogenized_legendre(n, arg, U - V);
}

BivariatePoly hypergeometric_product(unsigned max_degree) {
  BivariatePoly r(max_degree);
  for (unsigned i = 0; i <= max_degree; ++i) {
    for (unsigned j = 0; i + j <= max_degree; ++j) r.set(i, j, squared_central_over_16(i) * squared_central_over_16(j));
  }
  return r;
}

namespace {

long agreement_degree(const BivariatePoly& a, const BivariatePoly& b) {
  const auto diff = first_difference(a, b);
  if (!diff) return static_cast<long>(std::min(a.max_degree(), b.max_degree()));
  return static_cast<long>(*diff) - 1;
}

}  // namespace

long bailey_brafman_check(unsigned max_degree) {
  BivariatePoly sum(max_degree);
  // term n starts in total degree n
  for (unsigned n = 0; n <= max_degree; ++n) sum += homogenized_term(n, max_degree);
  return agreement_degree(sum, hypergeometric_product(max_degree));
}

LegendreSides legendre_identity_sides(unsigned D) {
  const BivariatePoly u = BivariatePoly::u(D);
  const BivariatePoly v = BivariatePoly::v(D);
  const BivariatePoly one = BivariatePoly::constant(D, 1);
  const BivariatePoly uu = u * u;
  const BivariatePoly vv = v * v;
  const BivariatePoly uv = u * v;

  // left: argument pair (A, B) of the homogenized terms, z = B/16; term n starts in degree 2n
  BivariatePoly left(D);
  {
    const BivariatePoly a = uu + vv - Rational(2) * (uu * vv);
    const BivariatePoly b = uu - vv;
    for (unsigned n = 0; 2 * n <= D; ++n) left += squared_central_over_16(n) * homogenized_legendre(n, a, b);
  }

  // right: z = B / (4 (1+u)^2 (1+v)^2), so term n carries 4^n / 16^n and (1+u)^(-2n-1) (1+v)^(-2n-1)
  BivariatePoly right(D);
  {
    const BivariatePoly a = (one + uv) * (u + v) - Rational(4) * uv;
    const BivariatePoly b = (one - uv) * (u - v);
    for (unsigned n = 0; n <= D; ++n) {
      const Rational weight = squared_central_over_16(n) * power(Rational(4), n);
      const BivariatePoly damping = inverse_power(true, 2 * n + 1, D) * inverse_power(false, 2 * n + 1, D);
      right += weight * (homogenized_legendre(n, a, b) * damping);
    }
  }
  return {std::move(left), std::move(right)};
}

long leg_identity_check(unsigned max_degree) {
  const LegendreSides s = legendre_identity_sides(max_degree);
  return agreement_degree(s.left, s.right);
}

}  // namespace replica
