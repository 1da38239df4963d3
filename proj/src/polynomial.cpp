#include "replica/polynomial.hpp"

#include <algorithm>
#include <sstream>

namespace replica {

Polynomial::Polynomial(std::initializer_list<long> coeffs) {
  coeffs_.reserve(coeffs.size());
  for (long c : coeffs) coeffs_.emplace_back(c);
  normalize();
}

Polynomial::Polynomial(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) { normalize(); }

Polynomial Polynomial::constant(const Integer& c) { return Polynomial(std::vector<Integer>{c}); }

Polynomial Polynomial::monomial(std::size_t degree, const Integer& c) {
  std::vector<Integer> v(degree + 1, Integer(0));
  v[degree] = c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::binomial_power(long a, long b, unsigned e) {
  std::vector<Integer> v(e + 1);
  for (unsigned k = 0; k <= e; ++k) {
    v[k] = binomial(e, k) * power(a, e - k) * power(b, k);
  }
  return Polynomial(std::move(v));
}

void Polynomial::normalize() {
  while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
}

long Polynomial::valuation() const {
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    if (coeffs_[k] != 0) return static_cast<long>(k);
  }
  return -1;
}

Integer Polynomial::content() const {
  Integer g = 0;
  for (const auto& c : coeffs_) g = gcd(g, c);
  return g;
}

Polynomial Polynomial::primitive_part() const {
  if (is_zero()) return *this;
  Integer g = content();
  if (leading() < 0) g = -g;
  return divexact(g);
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() <= 1) return {};
  std::vector<Integer> v(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) v[k - 1] = coeffs_[k] * static_cast<unsigned long>(k);
  return Polynomial(std::move(v));
}

Polynomial Polynomial::divide_by_z_power(std::size_t k) const {
  if (is_zero()) return {};
  if (static_cast<long>(k) > valuation()) throw InexactDivision("polynomial is not divisible by z^" + std::to_string(k));
  return Polynomial(std::vector<Integer>(coeffs_.begin() + static_cast<long>(k), coeffs_.end()));
}

Polynomial Polynomial::shifted(long s) const {
  // Horner in the shifted variable: p(z+s) = (...(c_d (z+s) + c_{d-1})(z+s) ...)
  Polynomial acc;
  const Polynomial lin{s, 1};
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * lin + Polynomial::constant(*it);
  return acc;
}

Integer Polynomial::operator()(const Integer& x) const { return evaluate<Integer>(x); }
Rational Polynomial::operator()(const Rational& x) const { return evaluate<Rational>(x); }

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<Integer> v(std::max(a.coeffs_.size(), b.coeffs_.size()));
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = a.coeff(k) + b.coeff(k);
  return Polynomial(std::move(v));
}

Polynomial operator-(const Polynomial& a, const Polynomial& b) { return a + (-b); }

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<Integer> v(a.coeffs_.size() + b.coeffs_.size() - 1, Integer(0));
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) v[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return Polynomial(std::move(v));
}

Polynomial operator*(const Integer& c, const Polynomial& p) {
  std::vector<Integer> v(p.coeffs_);
  for (auto& x : v) x *= c;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::operator-() const {
  std::vector<Integer> v(coeffs_);
  for (auto& x : v) x = -x;
  return Polynomial(std::move(v));
}

Polynomial Polynomial::divexact(const Integer& d) const {
  std::vector<Integer> v(coeffs_);
  for (auto& x : v) {
    if (x % d != 0) throw InexactDivision("coefficient " + x.get_str() + " not divisible by " + d.get_str());
    mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
  }
  return Polynomial(std::move(v));
}

std::string Polynomial::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (std::size_t k = 0; k < coeffs_.size(); ++k) {
    const Integer& c = coeffs_[k];
    if (c == 0) continue;
    Integer mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (k == 0) {
      os << mag;
      continue;
    }
    if (mag != 1) os << mag << "*";
    os << var;
    if (k > 1) os << "^" << k;
  }
  return os.str();
}

Polynomial pow(const Polynomial& p, unsigned e) {
  Polynomial result{1};
  Polynomial base = p;
  while (e > 0) {
    if (e & 1U) result = result * base;
    e >>= 1U;
    if (e > 0) base = base * base;
  }
  return result;
}

namespace {

// Pseudo-remainder of a by b: lc(b)^(deg a - deg b + 1) * a mod b.
Polynomial pseudo_remainder(Polynomial a, const Polynomial& b) {
  const long db = b.degree();
  const Integer lb = b.leading();
  while (!a.is_zero() && a.degree() >= db) {
    const long shift = a.degree() - db;
    Polynomial t = a.leading() * Polynomial::monomial(static_cast<std::size_t>(shift)) * b;
    a = lb * a - t;
  }
  return a;
}

}  // namespace

Polynomial gcd(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero()) return b.primitive_part();
  if (b.is_zero()) return a.primitive_part();
  Polynomial x = a.primitive_part();
  Polynomial y = b.primitive_part();
  if (x.degree() < y.degree()) std::swap(x, y);
  while (!y.is_zero()) {
    Polynomial r = pseudo_remainder(x, y);
    x = std::move(y);
    y = r.is_zero() ? r : r.primitive_part();
  }
  return x.primitive_part();
}

Polynomial divexact(const Polynomial& a, const Polynomial& b) {
  if (b.is_zero()) throw InexactDivision("division by the zero polynomial");
  if (a.is_zero()) return {};
  if (a.degree() < b.degree()) throw InexactDivision("divisor degree exceeds dividend degree");
  std::vector<Integer> rem(a.coeffs().begin(), a.coeffs().end());
  const std::size_t db = static_cast<std::size_t>(b.degree());
  std::vector<Integer> q(rem.size() - db, Integer(0));
  for (std::size_t k = q.size(); k-- > 0;) {
    const Integer& top = rem[k + db];
    if (top % b.leading() != 0) throw InexactDivision("polynomial quotient is not integral");
    q[k] = top / b.leading();
    for (std::size_t j = 0; j <= db; ++j) rem[k + j] -= q[k] * b.coeff(j);
  }
  for (const auto& c : rem) {
    if (c != 0) throw InexactDivision("polynomial division leaves a remainder");
  }
  return Polynomial(std::move(q));
}

RationalFunction::RationalFunction(Polynomial num) : num_(std::move(num)), den_(Polynomial{1}) {}

RationalFunction::RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw DomainError("rational function with zero denominator");
  canonicalize();
}

void RationalFunction::canonicalize() {
  if (num_.is_zero()) {
    den_ = Polynomial{1};
    return;
  }
  Polynomial g = gcd(num_, den_);
  if (g.degree() > 0) {
    num_ = replica::divexact(num_, g);
    den_ = replica::divexact(den_, g);
  }
  Integer c = gcd(num_.content(), den_.content());
  const Integer& low = den_.coeff(static_cast<std::size_t>(den_.valuation()));
  if (low < 0) c = -c;
  if (c != 1) {
    num_ = num_.divexact(c);
    den_ = den_.divexact(c);
  }
}

long RationalFunction::valuation() const {
  if (num_.is_zero()) throw DomainError("valuation of the zero function");
  return num_.valuation() - den_.valuation();
}

Rational RationalFunction::leading_coefficient() const {
  if (num_.is_zero()) return 0;
  Rational q(num_.coeff(static_cast<std::size_t>(num_.valuation())),
             den_.coeff(static_cast<std::size_t>(den_.valuation())));
  q.canonicalize();
  return q;
}

Rational RationalFunction::value_at_zero() const {
  if (den_.coeff(0) == 0) throw PoleAtOrigin("denominator vanishes at z = 0: " + to_string());
  Rational q(num_.coeff(0), den_.coeff(0));
  q.canonicalize();
  return q;
}

RationalFunction RationalFunction::log_derivative() const {
  if (num_.is_zero()) throw DomainError("logarithmic derivative of zero");
  // z (N'D - N D') / (N D)
  const Polynomial z{0, 1};
  return RationalFunction(z * (num_.derivative() * den_ - num_ * den_.derivative()), num_ * den_);
}

RationalFunction RationalFunction::divide_by_z_power(std::size_t k) const {
  return RationalFunction(num_, den_ * Polynomial::monomial(k));
}

RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
}

RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
  return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
}

RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
  if (b.is_zero()) throw DomainError("division by the zero rational function");
  return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
}

std::string RationalFunction::to_string(const std::string& var) const {
  if (den_ == Polynomial{1}) return num_.to_string(var);
  return "(" + num_.to_string(var) + ")/(" + den_.to_string(var) + ")";
}

RationalFunction pow(const RationalFunction& r, unsigned e) {
  return RationalFunction(pow(r.numerator(), e), pow(r.denominator(), e));
}

}  // namespace replica
