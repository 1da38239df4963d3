#pragma once

#include <optional>
#include <string>
#include <vector>

#include "replica/polynomial.hpp"
#include "replica/precision_real.hpp"
#include "replica/sequences.hpp"

namespace replica {

enum class Scheme { Quadratic, Quintic };

/// "quadratic-f7" / "quintic-f4"
std::string to_string(Scheme s);
Scheme parse_scheme(const std::string& text);

// ---------------------------------------------------------------------------
// Ramanujan-type series  sum_n t_n (a + b n) x^n

struct SeriesTarget {
  FamilyId family;  ///< u7 or fhat4 (the central binomial cubed)
  PrecisionReal a;
  PrecisionReal b;
  PrecisionReal x;
  std::string limit_tag;
};

struct SeriesEvaluation {
  PrecisionReal value;
  std::size_t terms = 0;    ///< number of summed terms (indices 0..terms-1)
  PrecisionReal tail_bound; ///< rigorous bound on the omitted tail
};

/// Radius of convergence of the supported families: 1/27 for u7, 1/64 for
/// C(2n,n)^3. Throws DomainError for any other family.
Rational convergence_radius(const FamilyId& family);

/// Sums the series until a geometric tail bound drops below 10^-(digits+2).
/// Throws DivergentTarget when |x| is not strictly inside the disc.
SeriesEvaluation eval_series(const SeriesTarget& target, unsigned digits);

/// Absolute sum of the terms with indices first..first+count-1; used to
/// audit a tail bound.
PrecisionReal partial_tail(const SeriesTarget& target, std::size_t first, std::size_t count, mpfr_prec_t bits);

// ---------------------------------------------------------------------------
// Branch roots of x = phi(z) near the origin

struct BranchRoot {
  PrecisionReal z;
  PrecisionReal residual;      ///< |phi(z) - x|
  PrecisionReal bracket;       ///< root certified in (-bracket, bracket)
  unsigned newton_steps = 0;
};

/// The real root of phi(z) = x that is closest to the origin, by Newton's
/// method from the local-valuation guess, certified by a sign change next to
/// the root and a single sign change across (-2|x/c|^(1/v), 2|x/c|^(1/v)),
/// where c z^v is the leading term of phi. Throws NoConvergence when Newton
/// stalls or the bracket is ambiguous.
BranchRoot solve_branch_root(const RationalFunction& phi, const PrecisionReal& x, mpfr_prec_t bits);

/// z / (1+4z)^3
RationalFunction quadratic_branch_map();
/// z (1-z)^5 / (1+4z)^5
RationalFunction quintic_branch_map();

// ---------------------------------------------------------------------------
// Iterations

struct IterationState {
  unsigned k = 0;
  PrecisionReal a;
  PrecisionReal b;
  PrecisionReal z;
  PrecisionReal x;
  double seconds = 0;  ///< time spent producing this state
};

struct IterationRun {
  Scheme scheme = Scheme::Quadratic;
  mpfr_prec_t precision = 0;  ///< requested P (the run uses P + 32 bits)
  std::vector<IterationState> states;
  /// First k with |a_k - a_{k-1}| below 2^-P |a_k|: later states add no
  /// information at this precision.
  std::optional<unsigned> exhausted_at;
  /// Largest relative gap between z_{k+1}/(1+4z_{k+1})^3 and z_k^2/(1+2z_k)^3
  /// (quadratic only).
  PrecisionReal x_update_deviation;
};

constexpr mpfr_prec_t kGuardBits = 32;

IterationRun run_quadratic(const PrecisionReal& a0, const PrecisionReal& b0, const PrecisionReal& x0, unsigned iters,
                           mpfr_prec_t bits);
IterationRun run_quintic(const PrecisionReal& a0, const PrecisionReal& b0, const PrecisionReal& x0, unsigned iters,
                         mpfr_prec_t bits);

/// Maximum relative deviation between b_k/b_0 and its closed form in x_k.
/// Throws DomainError when b_0 = 0.
PrecisionReal b_ratio_check(const IterationRun& run);

struct StepError {
  unsigned k = 0;
  PrecisionReal error;  ///< |a_k - xi|
  long digits = 0;      ///< digits_of_agreement(a_k, xi)
};

struct ConvergenceReport {
  std::vector<StepError> steps;
  /// err_{k+1} / err_k^order over the steps still above the precision floor.
  std::vector<double> rate_constants;
  /// Smallest c with digits_{k+1} >= order * digits_k - c over unsaturated steps.
  long digit_slack = 0;
  unsigned order = 2;
};

ConvergenceReport convergence_report(const IterationRun& run, const PrecisionReal& xi);

// ---------------------------------------------------------------------------
// Named initial data

struct AgmInit {
  std::string name;
  Scheme scheme = Scheme::Quadratic;
  FamilyId family;
  PrecisionReal a0;
  PrecisionReal b0;
  PrecisionReal x0;
  std::string limit_label;
  PrecisionReal limit;
  /// Data derived here rather than listed with the identity.
  bool derived = false;
  std::string note;

  SeriesTarget series() const { return {family, a0, b0, x0, limit_label}; }
  /// Throws PrecisionError when the data carry fewer than bits + guard bits.
  IterationRun run(unsigned iters, mpfr_prec_t bits) const;
};

/// ic, n21a, n21, bauer, table6-3, table6-7
std::vector<std::string> named_inits();
/// Throws DomainError for an unknown name.
AgmInit named_init(const std::string& name, mpfr_prec_t bits);

/// Steps after which the scheme's order predicts `digits` correct digits from
/// a one-digit start, plus one step of margin.
unsigned iterations_for_digits(unsigned digits, Scheme scheme);

}  // namespace replica
