#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "replica/numeric.hpp"

namespace replica {

enum class Shape { Alg0, Variant };
enum class Constraint { None, LambdaSquaredIsMu, LambdaIsMinusTwoMu };
enum class SweepTest { Lucas, Ell, Holonomic };

std::string to_string(Shape s);
std::string to_string(Constraint c);
std::string to_string(SweepTest t);
Shape parse_shape(const std::string& s);
Constraint parse_constraint(const std::string& s);
SweepTest parse_sweep_test(const std::string& s);

struct SweepSpec {
  Shape shape = Shape::Alg0;
  long lambda_min = -10;
  long lambda_max = 10;
  long mu_min = -10;  ///< ignored when the constraint fixes mu from lambda
  long mu_max = 10;
  Constraint constraint = Constraint::None;
  /// Tests a pair must pass, applied in this order (the filter order).
  std::vector<SweepTest> tests = {SweepTest::Ell};
  unsigned ell = 1;
  std::vector<unsigned long> primes = primes_up_to(50);
  std::size_t N = 400;
  unsigned r_max = 4;
  /// Survivors are re-tested with this many terms; 0 disables the pass.
  std::size_t confirm_N = 2000;
  /// Run each test on a small sub-grid first. A sub-grid failure is a
  /// failure of the full grid, so probes never change a verdict.
  bool probes = true;
  unsigned jobs = 0;

  /// Throws DomainError for empty ranges, N < 50 or an empty test list.
  void validate() const;
  /// (lambda, mu) pairs in sweep order, without lambda == mu.
  std::vector<std::pair<long, long>> pairs() const;
};

struct SweepRecord {
  Shape shape = Shape::Alg0;
  long lambda = 0;
  long mu = 0;
  bool pass = false;
  std::string failed_test;  ///< empty on pass
  std::string detail;       ///< counterexample description on failure
  std::size_t terms = 0;    ///< prefix length behind the verdict
  std::optional<bool> confirmed;
  std::string classification;

  /// "alg0:lambda,mu" / "variant:lambda,mu"; the resume key.
  std::string key() const;
};

/// Tests one pair with a fresh prefix, including the confirmation pass.
SweepRecord test_pair(const SweepSpec& spec, long lambda, long mu);

/// Runs every pair not in `skip` (keys as SweepRecord::key). Records are
/// handed to `emit` in pairs() order whatever the worker count, and also
/// returned in that order.
std::vector<SweepRecord> sweep(const SweepSpec& spec, const std::function<void(const SweepRecord&)>& emit = {},
                               const std::set<std::string>& skip = {});

/// Keys of records already present in a JSON-lines stream; malformed or
/// truncated lines are ignored so an interrupted run can resume.
std::set<std::string> read_emitted_keys(std::istream& in);

/// Known identification of a cubic-shape pair, or "unknown".
std::string classify_family(long lambda, long mu);
/// Known identification of a quadratic-shape (variant) pair, or "unknown".
std::string classify_variant(long lambda, long mu);

}  // namespace replica
