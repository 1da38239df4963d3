#pragma once

#include <optional>
#include <string>
#include <vector>

#include "replica/numeric.hpp"
#include "replica/polynomial.hpp"

namespace replica {

/// sum_{i=0..r} p_i(n) a_{n+i-offset} = 0, with integer polynomial
/// coefficients. Built through make(), which rejects a zero leading
/// polynomial.
struct RecurrenceGuess {
  std::vector<Polynomial> coefficients;  ///< p_0 .. p_r
  long offset = 0;
  std::size_t fitted = 0;                ///< equations used to determine it
  std::size_t held_out = 0;              ///< equations checked afterwards
  std::size_t nullspace_dimension = 1;   ///< > 1 means the choice was ambiguous

  static RecurrenceGuess make(std::vector<Polynomial> coefficients, long offset = 0);

  std::size_t order() const { return coefficients.size() - 1; }
  /// Largest degree among the p_i.
  long degree() const;
  /// e.g. "(n+2)^3 ... " rendered as "p2(n) a(n+2) + p1(n) a(n+1) + p0(n) a(n) = 0".
  std::string to_string() const;
};

/// Index n of the first equation that fails, checking every n >= offset whose
/// terms all lie in the given prefix; nullopt when all hold.
std::optional<long> verify_rec(const RecurrenceGuess& rec, const std::vector<Rational>& terms);
std::optional<long> verify_rec(const RecurrenceGuess& rec, const IntegerSequence& terms);

struct GuessOptions {
  std::size_t r_max = 3;
  std::size_t d_max = 4;
  std::size_t holdout = 20;
};

/// Outcome of a search: either a certified recurrence or the envelope that
/// was searched without success.
struct GuessResult {
  std::optional<RecurrenceGuess> recurrence;
  std::size_t r_max = 0;
  std::size_t d_max = 0;
  std::size_t terms = 0;
  std::size_t candidates_tried = 0;
};

/// Tries (r, d) by increasing r + d, then r, with 1 <= r <= r_max and
/// 0 <= d <= d_max. Needs (r_max+1)(d_max+1) + r_max + holdout terms;
/// otherwise throws InsufficientTerms. A candidate is accepted only if a
/// kernel vector of the fitting system also annihilates every held-out row.
GuessResult guess(const std::vector<Rational>& terms, const GuessOptions& options = {});
GuessResult guess(const IntegerSequence& terms, const GuessOptions& options = {});

/// Minimum prefix length guess() accepts for the given envelope.
std::size_t required_terms(const GuessOptions& options);

}  // namespace replica
