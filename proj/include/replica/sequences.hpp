#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "replica/numeric.hpp"
#include "replica/polynomial.hpp"

namespace replica {

// ---------------------------------------------------------------------------
// Level-7 Apery-like numbers u_n

/// u_n = sum_k C(n,k)^2 C(n+k,n) C(2k,n).
Integer u_binomial(unsigned n);
/// u_n = sum_k (-1)^(n-k) C(3n+1,n-k) C(n+k,n)^3, the second binomial form.
Integer u_binomial_alternating(unsigned n);

/// Three-term recurrence
///   lead(n) a_{n+1} = middle(n) a_n + trail(n) a_{n-1},   n >= 0,
/// started from a_0 (a_{-1} never contributes because trail(0) must vanish).
/// Division by lead(n) is required to be exact at every step.
struct AperyRecurrence {
  Polynomial lead;
  Polynomial middle;
  Polynomial trail;
  Integer initial = 1;

  /// Terms a_0..a_N; throws InexactDivision when a step does not divide.
  IntegerSequence terms(std::size_t N) const;
};

/// (n+1)^3 u_{n+1} = (2n+1)(13n^2+13n+4) u_n + 3n(3n-1)(3n+1) u_{n-1}
AperyRecurrence level7_recurrence();

/// u_0..u_N from the Apery-like recurrence.
IntegerSequence u_recurrence(std::size_t N);

// ---------------------------------------------------------------------------
// Parametric families

/// Coefficients of the solution of
///   f(z/(1+mu z)^3) / (1+mu z)^2 = f(z^2/(1+lambda z)^3) / (1+lambda z)^2,
/// f(0) = 1, via the explicit binomial recursion for c_n(lambda, mu).
IntegerSequence c_lambda_mu(long lambda, long mu, std::size_t N);
/// Same recursion evaluated modulo m (residues in [0, m)). The recursion has
/// no divisions, so this equals c_lambda_mu reduced mod m.
IntegerSequence c_lambda_mu_mod(long lambda, long mu, std::size_t N, const Integer& m);

/// Coefficients of the solution of
///   f(z/(1+mu z)^2) / (1+mu z) = f(z^2/(1+lambda z)^2) / (1+lambda z).
IntegerSequence c_variant(long lambda, long mu, std::size_t N);
IntegerSequence c_variant_mod(long lambda, long mu, std::size_t N, const Integer& m);

// ---------------------------------------------------------------------------
// Named families

enum class FamilyKind {
  U7, F2, F3, F4, F5, FHat2, FHat3, FHat4, FHat5, GB, GC, G5, CLambdaMu, CVariant
};

struct FamilyId {
  FamilyKind kind = FamilyKind::U7;
  long lambda = 0;
  long mu = 0;

  /// Canonical tag: "u7", "f2", ..., "c:-4,2", "cvar:0,4".
  std::string tag() const;
  friend bool operator==(const FamilyId&, const FamilyId&) = default;
};

/// Accepts the canonical tags plus "f7" as an alias of "u7"; throws
/// UnknownFamily otherwise.
FamilyId parse_family(const std::string& tag);
/// Every non-parametric family tag.
std::vector<std::string> family_tags();

/// Terms 0..N by each family's defining binomial sums (squares and fourth
/// powers through series products). Prefixes are memoized per process.
IntegerSequence family_terms(const FamilyId& id, std::size_t N);
IntegerSequence family_terms(const std::string& tag, std::size_t N);

/// Terms 0..N reduced mod m. Division-free recursions (c, cvar) are run
/// directly mod m; the other families are reduced from the exact prefix.
IntegerSequence family_residues(const FamilyId& id, std::size_t N, const Integer& m);

/// Empties the memo tables (tests and long-running tools).
void clear_family_cache();

// ---------------------------------------------------------------------------

struct NotSplittable {
  std::size_t index;  ///< first n where d_n is not an integer
  Rational value;     ///< the forced non-integral d_n
};

/// Finds d with sum_k d_k d_{n-k} = c_n and d_0 = 1, provided every d_n is an
/// integer. Requires c_0 = 1.
std::variant<IntegerSequence, NotSplittable> convolution_split(const IntegerSequence& c);

}  // namespace replica
