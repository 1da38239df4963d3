#pragma once

#include <optional>
#include <string>
#include <vector>

#include "replica/numeric.hpp"
#include "replica/sequences.hpp"

namespace replica {

/// Little-endian base-p digits of n; [0] for n = 0.
std::vector<unsigned long> base_p_digits(unsigned long n, unsigned long p);

/// First n violating c(n) = prod c(n_i) (mod p) over the base-p digits n_i.
struct LucasFailure {
  std::size_t n = 0;
  Integer value;    ///< c(n) mod p
  Integer product;  ///< prod c(n_i) mod p
};

/// nullopt when the congruence holds for every n <= N. seq must have at least
/// N+1 terms (entries may be negative or already reduced mod any multiple of p).
std::optional<LucasFailure> lucas_check(const IntegerSequence& seq, unsigned long p, std::size_t N);

/// A pair (m, r) with c(m p^r) != c(m p^(r-1)) (mod p^(ell r)).
struct SuperFailure {
  unsigned long m = 0;
  unsigned r = 0;
  unsigned ell = 0;
  Integer high;  ///< c(m p^r) mod p^(ell r)
  Integer low;   ///< c(m p^(r-1)) mod p^(ell r)
};

/// Tests every m p^r <= N with 1 <= r <= r_max. ell = 0 always passes.
std::optional<SuperFailure> super_check(const IntegerSequence& seq, unsigned long p, unsigned ell, unsigned r_max,
                                        std::size_t N);

/// Largest ell in {0,1,2,3} passing super_check, plus the failure that
/// stopped it at ell+1 (absent when ell = 3).
struct EllVerdict {
  unsigned long p = 0;
  unsigned ell = 0;
  std::optional<SuperFailure> next_failure;
};

std::vector<EllVerdict> max_ell(const IntegerSequence& seq, const std::vector<unsigned long>& primes, std::size_t N,
                                unsigned r_max = 4);

/// Exponent r with p^r <= N < p^(r+1), capped at r_max.
unsigned effective_depth(unsigned long p, std::size_t N, unsigned r_max);

/// Product over primes of p^(ell * effective_depth): a modulus under which
/// every ell-level test on the grid can be decided from residues.
Integer grid_modulus(const std::vector<unsigned long>& primes, std::size_t N, unsigned r_max, unsigned ell);

struct PrimeVerdict {
  unsigned long p = 0;
  std::optional<LucasFailure> lucas;  ///< nullopt = pass
  unsigned max_ell = 0;
  std::optional<SuperFailure> next_failure;
};

struct CongruenceReport {
  std::string family;
  std::vector<unsigned long> primes;
  std::size_t N = 0;
  unsigned r_max = 4;
  std::vector<PrimeVerdict> verdicts;  ///< in prime order

  /// e.g. "p in {2,3,5}, n <= 2000, r <= 4"
  std::string grid_description() const;
  /// Rows "family,p,lucas,max_ell,N" with a header line.
  std::string to_csv() const;
};

struct CongruenceGrid {
  std::vector<unsigned long> primes = primes_up_to(50);
  std::size_t N = 2000;
  unsigned r_max = 4;
  unsigned jobs = 0;  ///< 0 = machine parallelism
};

/// Runs Lucas and max_ell for every prime of the grid on one family. Residues
/// are produced once for the whole grid, primes are tested concurrently, and
/// every reported counterexample is recomputed by a second route before it is
/// returned (InexactDivision-style logic errors surface as std::logic_error).
CongruenceReport congruence_report(const FamilyId& family, const CongruenceGrid& grid);

}  // namespace replica
