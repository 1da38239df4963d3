#include "replica/series.hpp"

#include <algorithm>
#include <sstream>

namespace replica {

Series::Series(std::vector<Rational> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw DomainError("a truncated series needs at least the constant coefficient");
}

Series Series::one(std::size_t order) {
  Series s(order);
  s[0] = 1;
  return s;
}

Series Series::monomial(std::size_t order, std::size_t k, const Rational& c) {
  Series s(order);
  if (k <= order) s[k] = c;
  return s;
}

Series Series::from_integers(std::span<const Integer> coeffs) {
  std::vector<Rational> v(coeffs.begin(), coeffs.end());
  return Series(std::move(v));
}

Series Series::from_polynomial(const Polynomial& p, std::size_t order) {
  Series s(order);
  for (std::size_t k = 0; k <= order; ++k) s[k] = p.coeff(k);
  return s;
}

Series Series::truncated(std::size_t order) const {
  std::vector<Rational> v(order + 1, Rational(0));
  std::copy_n(coeffs_.begin(), std::min(order + 1, coeffs_.size()), v.begin());
  return Series(std::move(v));
}

std::size_t Series::valuation() const {
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] != 0) return k;
  }
  return coeffs_.size();
}

bool Series::is_integral() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](const Rational& q) { return is_integer(q); });
}

IntegerSequence Series::to_integers() const {
  IntegerSequence out;
  out.reserve(coeffs_.size());
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (!is_integer(coeffs_[k])) {
      throw InexactDivision("coefficient " + std::to_string(k) + " is not an integer: " + coeffs_[k].get_str());
    }
    out.push_back(coeffs_[k].get_num());
  }
  return out;
}

std::string Series::to_string(const std::string& var) const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << coeffs_[k];
    if (k == 1) os << "*" << var;
    if (k > 1) os << "*" << var << "^" << k;
  }
  if (first) os << "0";
  os << " + O(" << var << "^" << coeffs_.size() << ")";
  return os.str();
}

Series operator+(const Series& a, const Series& b) {
  Series r(std::min(a.order(), b.order()));
  for (std::size_t k = 0; k <= r.order(); ++k) r[k] = a[k] + b[k];
  return r;
}

Series operator-(const Series& a, const Series& b) {
  Series r(std::min(a.order(), b.order()));
  for (std::size_t k = 0; k <= r.order(); ++k) r[k] = a[k] - b[k];
  return r;
}

Series operator-(const Series& a) {
  Series r(a.order());
  for (std::size_t k = 0; k <= r.order(); ++k) r[k] = -a[k];
  return r;
}

Series operator*(const Series& a, const Series& b) { return mul(a, b); }

Series operator*(const Rational& c, const Series& a) {
  Series r(a.order());
  for (std::size_t k = 0; k <= r.order(); ++k) r[k] = c * a[k];
  return r;
}

Series mul(const Series& a, const Series& b) {
  const std::size_t n = std::min(a.order(), b.order());
  Series r(n);
  if (a.is_integral() && b.is_integral()) {
    Integer acc;
    for (std::size_t k = 0; k <= n; ++k) {
      acc = 0;
      for (std::size_t i = 0; i <= k; ++i) {
        if (a[i] == 0) continue;
        mpz_addmul(acc.get_mpz_t(), a[i].get_num_mpz_t(), b[k - i].get_num_mpz_t());
      }
      r[k] = acc;
    }
    return r;
  }
  for (std::size_t k = 0; k <= n; ++k) {
    Rational acc = 0;
    for (std::size_t i = 0; i <= k; ++i) {
      if (a[i] == 0 || b[k - i] == 0) continue;
      acc += a[i] * b[k - i];
    }
    r[k] = acc;
  }
  return r;
}

Series pow(const Series& a, unsigned e) {
  Series result = Series::one(a.order());
  Series base = a;
  while (e > 0) {
    if (e & 1U) result = mul(result, base);
    e >>= 1U;
    if (e > 0) base = mul(base, base);
  }
  return result;
}

Series recip(const Series& a) {
  if (a[0] == 0) throw ZeroConstantTerm("reciprocal of a series with zero constant term");
  const std::size_t n = a.order();
  Series r(n);
  const Rational inv0 = 1 / a[0];
  r[0] = inv0;
  for (std::size_t k = 1; k <= n; ++k) {
    Rational acc = 0;
    for (std::size_t i = 1; i <= k; ++i) {
      if (a[i] == 0) continue;
      acc += a[i] * r[k - i];
    }
    r[k] = -acc * inv0;
  }
  return r;
}

Series compose(const Series& outer, const Series& inner) {
  if (inner[0] != 0) throw NonzeroInnerConstant("inner series of a composition must vanish at 0");
  const std::size_t n = std::min(outer.order(), inner.order());
  // Only outer coefficients up to n can reach z^n since inner has valuation >= 1.
  const Series in = inner.truncated(n);
  Series acc(n);
  for (std::size_t k = n + 1; k-- > 0;) {
    acc = mul(acc, in);
    acc[0] += outer[k];
  }
  return acc;
}

Series mul_rational(const Series& a, const RationalFunction& r) {
  const Polynomial& p = r.numerator();
  const Polynomial& q = r.denominator();
  if (q.coeff(0) == 0) throw PoleAtOrigin("denominator vanishes at z = 0: " + r.to_string());
  const std::size_t n = a.order();
  const bool integral = a.is_integral() && (q.coeff(0) == 1 || q.coeff(0) == -1);
  Series w(n);
  for (std::size_t k = 0; k <= n; ++k) {
    Rational acc = 0;
    for (std::size_t j = 0; j <= std::min<std::size_t>(k, static_cast<std::size_t>(std::max(p.degree(), 0L))); ++j) {
      const Integer c = p.coeff(j);
      if (c == 0 || a[k - j] == 0) continue;
      acc += c * a[k - j];
    }
    w[k] = acc;
  }
  // y q = w  =>  y_k = (w_k - sum_{j>=1} q_j y_{k-j}) / q_0
  const Integer q0 = q.coeff(0);
  const auto dq = static_cast<std::size_t>(q.degree());
  Series y(n);
  for (std::size_t k = 0; k <= n; ++k) {
    if (integral) {
      Integer acc = w[k].get_num();
      for (std::size_t j = 1; j <= std::min(k, dq); ++j) {
        const Integer c = q.coeff(j);
        if (c != 0) mpz_submul(acc.get_mpz_t(), c.get_mpz_t(), y[k - j].get_num_mpz_t());
      }
      if (q0 < 0) acc = -acc;
      y[k] = acc;
    } else {
      Rational acc = w[k];
      for (std::size_t j = 1; j <= std::min(k, dq); ++j) {
        const Integer c = q.coeff(j);
        if (c != 0) acc -= c * y[k - j];
      }
      y[k] = acc / q0;
    }
  }
  return y;
}

Series expand(const RationalFunction& r, std::size_t order) {
  return mul_rational(Series::one(order), r);
}

Series sqrt(const Series& a) {
  const Rational& a0 = a[0];
  if (a0 <= 0) throw NonSquareConstant("constant term " + a0.get_str() + " has no positive rational square root");
  Integer sn;
  Integer sd;
  mpz_sqrt(sn.get_mpz_t(), a0.get_num_mpz_t());
  mpz_sqrt(sd.get_mpz_t(), a0.get_den_mpz_t());
  if (sn * sn != a0.get_num() || sd * sd != a0.get_den()) {
    throw NonSquareConstant("constant term " + a0.get_str() + " is not a rational square");
  }
  const std::size_t n = a.order();
  Series d(n);
  d[0] = Rational(sn, sd);
  const Rational twice_d0 = 2 * d[0];
  for (std::size_t k = 1; k <= n; ++k) {
    Rational acc = a[k];
    for (std::size_t i = 1; i < k; ++i) acc -= d[i] * d[k - i];
    d[k] = acc / twice_d0;
  }
  return d;
}

Series derive(const Series& a) {
  if (a.order() == 0) return Series(0);
  Series r(a.order() - 1);
  for (std::size_t k = 0; k <= r.order(); ++k) r[k] = a[k + 1] * static_cast<unsigned long>(k + 1);
  return r;
}

Series theta(const Series& a) {
  Series r(a.order());
  for (std::size_t k = 1; k <= r.order(); ++k) r[k] = a[k] * static_cast<unsigned long>(k);
  return r;
}

Series shift_up(const Series& a, std::size_t k) {
  Series r(a.order());
  for (std::size_t i = k; i <= a.order(); ++i) r[i] = a[i - k];
  return r;
}

}  // namespace replica
