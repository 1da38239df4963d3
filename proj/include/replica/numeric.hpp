#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace replica {

using Integer = mpz_class;
using Rational = mpq_class;
using IntegerSequence = std::vector<Integer>;

/// Base of every error raised for bad input or a violated precondition.
/// The CLI maps these to exit code 2.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

#define REPLICA_DEFINE_ERROR(Name)                 \
  class Name : public DomainError {                \
   public:                                         \
    using DomainError::DomainError;                \
  }

REPLICA_DEFINE_ERROR(ZeroConstantTerm);
REPLICA_DEFINE_ERROR(NonzeroInnerConstant);
REPLICA_DEFINE_ERROR(PoleAtOrigin);
REPLICA_DEFINE_ERROR(NonSquareConstant);
REPLICA_DEFINE_ERROR(InexactDivision);
REPLICA_DEFINE_ERROR(UnknownFamily);
REPLICA_DEFINE_ERROR(InvalidEquation);
REPLICA_DEFINE_ERROR(InconsistentEquation);
REPLICA_DEFINE_ERROR(InsufficientTerms);
REPLICA_DEFINE_ERROR(UnsupportedLevel);
REPLICA_DEFINE_ERROR(DivergentTarget);
REPLICA_DEFINE_ERROR(NoConvergence);
REPLICA_DEFINE_ERROR(PrecisionError);

#undef REPLICA_DEFINE_ERROR

/// Binomial coefficient with the polynomial extension in the upper argument:
/// C(-m, k) = (-1)^k C(m+k-1, k). Zero for k < 0, and for 0 <= n < k.
inline Integer binomial(long n, long k) {
  if (k < 0) return 0;
  Integer r;
  Integer top = n;
  mpz_bin_ui(r.get_mpz_t(), top.get_mpz_t(), static_cast<unsigned long>(k));
  return r;
}

inline Integer power(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

inline Integer power(long base, unsigned long e) { return power(Integer(base), e); }

inline Rational power(const Rational& base, unsigned long e) {
  Rational r;
  mpz_pow_ui(r.get_num_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(r.get_den_mpz_t(), base.get_den_mpz_t(), e);
  return r;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

inline std::string to_string(const Integer& z) { return z.get_str(); }
inline std::string to_string(const Rational& q) { return q.get_str(); }

/// Parses "a", "-a" or "a/b"; throws DomainError on malformed input.
Rational parse_rational(const std::string& text);

/// Primes p with 2 <= p <= bound, ascending.
std::vector<unsigned long> primes_up_to(unsigned long bound);

}  // namespace replica
