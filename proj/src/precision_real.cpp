#include "replica/precision_real.hpp"

#include <cmath>
#include <limits>
#include <memory>

namespace replica {

namespace {

mpfr_prec_t clamp(mpfr_prec_t bits) { return bits < PrecisionReal::kMinBits ? PrecisionReal::kMinBits : bits; }

mpfr_prec_t joint(const PrecisionReal& a, const PrecisionReal& b) { return std::min(a.precision(), b.precision()); }

}  // namespace

PrecisionReal::PrecisionReal(mpfr_prec_t bits) {
  mpfr_init2(value_, clamp(bits));
  mpfr_set_zero(value_, 1);
}

PrecisionReal::PrecisionReal(long value, mpfr_prec_t bits) : PrecisionReal(bits) {
  mpfr_set_si(value_, value, MPFR_RNDN);
}

PrecisionReal::PrecisionReal(const Integer& value, mpfr_prec_t bits) : PrecisionReal(bits) {
  mpfr_set_z(value_, value.get_mpz_t(), MPFR_RNDN);
}

PrecisionReal::PrecisionReal(const Rational& value, mpfr_prec_t bits) : PrecisionReal(bits) {
  mpfr_set_q(value_, value.get_mpq_t(), MPFR_RNDN);
}

PrecisionReal::PrecisionReal(const std::string& decimal, mpfr_prec_t bits) : PrecisionReal(bits) {
  char* end = nullptr;
  if (decimal.empty() || mpfr_strtofr(value_, decimal.c_str(), &end, 10, MPFR_RNDN), (end == nullptr || *end != '\0')) {
    throw DomainError("malformed decimal '" + decimal + "'");
  }
}

PrecisionReal::PrecisionReal(const PrecisionReal& other) {
  mpfr_init2(value_, other.precision());
  mpfr_set(value_, other.value_, MPFR_RNDN);
}

PrecisionReal::PrecisionReal(PrecisionReal&& other) noexcept {
  mpfr_init2(value_, other.precision());
  mpfr_swap(value_, other.value_);
}

PrecisionReal& PrecisionReal::operator=(const PrecisionReal& other) {
  if (this != &other) {
    mpfr_set_prec(value_, other.precision());
    mpfr_set(value_, other.value_, MPFR_RNDN);
  }
  return *this;
}

PrecisionReal& PrecisionReal::operator=(PrecisionReal&& other) noexcept {
  mpfr_swap(value_, other.value_);
  return *this;
}

PrecisionReal::~PrecisionReal() { mpfr_clear(value_); }

PrecisionReal PrecisionReal::with_precision(mpfr_prec_t bits) const {
  PrecisionReal r(bits);
  mpfr_set(r.value_, value_, MPFR_RNDN);
  return r;
}

PrecisionReal PrecisionReal::pi(mpfr_prec_t bits) {
  PrecisionReal r(bits);
  mpfr_const_pi(r.value_, MPFR_RNDN);
  return r;
}

#define REPLICA_BINARY(op, fn)                                                 \
  PrecisionReal operator op(const PrecisionReal& a, const PrecisionReal& b) {  \
    PrecisionReal r(joint(a, b));                                              \
    fn(r.value_, a.value_, b.value_, MPFR_RNDN);                               \
    return r;                                                                  \
  }                                                                            \
  PrecisionReal operator op(const PrecisionReal& a, long b) {                  \
    PrecisionReal r(a.precision());                                            \
    fn##_si(r.value_, a.value_, b, MPFR_RNDN);                                 \
    return r;                                                                  \
  }

REPLICA_BINARY(+, mpfr_add)
REPLICA_BINARY(-, mpfr_sub)
REPLICA_BINARY(*, mpfr_mul)
REPLICA_BINARY(/, mpfr_div)

#undef REPLICA_BINARY

PrecisionReal operator-(long a, const PrecisionReal& b) {
  PrecisionReal r(b.precision());
  mpfr_si_sub(r.value_, a, b.value_, MPFR_RNDN);
  return r;
}

PrecisionReal operator/(long a, const PrecisionReal& b) {
  PrecisionReal r(b.precision());
  mpfr_si_div(r.value_, a, b.value_, MPFR_RNDN);
  return r;
}

PrecisionReal PrecisionReal::operator-() const {
  PrecisionReal r(precision());
  mpfr_neg(r.value_, value_, MPFR_RNDN);
  return r;
}

std::string PrecisionReal::to_string(unsigned digits) const {
  if (!is_finite()) return mpfr_nan_p(value_) ? "nan" : (sign() > 0 ? "inf" : "-inf");
  char* raw = nullptr;
  const std::string fmt = "%." + std::to_string(digits > 0 ? digits - 1 : 0) + "Re";
  mpfr_asprintf(&raw, fmt.c_str(), value_);
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

std::string PrecisionReal::to_fixed(unsigned decimals) const {
  if (!is_finite()) return to_string();
  char* raw = nullptr;
  const std::string fmt = "%." + std::to_string(decimals) + "Rf";
  mpfr_asprintf(&raw, fmt.c_str(), value_);
  std::string out(raw);
  mpfr_free_str(raw);
  return out;
}

double PrecisionReal::log10_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  // exponent-aware so tiny values do not underflow a double
  long exp = 0;
  const double mant = mpfr_get_d_2exp(&exp, value_, MPFR_RNDN);
  return std::log10(std::fabs(mant)) + static_cast<double>(exp) * std::log10(2.0);
}

PrecisionReal abs(const PrecisionReal& x) {
  PrecisionReal r(x.precision());
  mpfr_abs(r.get(), x.get(), MPFR_RNDN);
  return r;
}

PrecisionReal sqrt(const PrecisionReal& x) {
  if (x.sign() < 0) throw DomainError("square root of a negative number " + x.to_string(10));
  PrecisionReal r(x.precision());
  mpfr_sqrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

PrecisionReal cbrt(const PrecisionReal& x) {
  PrecisionReal r(x.precision());
  mpfr_cbrt(r.get(), x.get(), MPFR_RNDN);
  return r;
}

PrecisionReal root(const PrecisionReal& x, unsigned long k) {
  if (k == 0) throw DomainError("zeroth root");
  if (x.sign() < 0 && k % 2 == 0) throw DomainError("even root of a negative number");
  PrecisionReal r(x.precision());
  mpfr_rootn_ui(r.get(), x.get(), k, MPFR_RNDN);
  return r;
}

PrecisionReal pow(const PrecisionReal& x, long e) {
  PrecisionReal r(x.precision());
  mpfr_pow_si(r.get(), x.get(), e, MPFR_RNDN);
  return r;
}

PrecisionReal gamma(const PrecisionReal& x) {
  PrecisionReal r(x.precision());
  mpfr_gamma(r.get(), x.get(), MPFR_RNDN);
  return r;
}

long digits_of_agreement(const PrecisionReal& a, const PrecisionReal& b) {
  const PrecisionReal diff = abs(a - b);
  const long cap = static_cast<long>(std::floor(static_cast<double>(std::min(a.precision(), b.precision())) *
                                                std::log10(2.0)));
  if (diff.is_zero()) return cap;
  const double l = diff.log10_abs();
  if (l >= 0) return 0;
  return std::min(cap, static_cast<long>(std::floor(-l)));
}

mpfr_prec_t bits_for_digits(unsigned long digits) {
  return static_cast<mpfr_prec_t>(std::ceil(static_cast<double>(digits) * std::log2(10.0))) + 1;
}

}  // namespace replica
