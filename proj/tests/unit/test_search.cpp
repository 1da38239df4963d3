#include "doctest.h"

#include <sstream>

#include "replica/json_io.hpp"
#include "replica/search.hpp"
#include "replica/sequences.hpp"

using namespace replica;

namespace {

std::set<long> passing_lambdas(const std::vector<SweepRecord>& recs) {
  std::set<long> out;
  for (const auto& r : recs) {
    if (r.pass) out.insert(r.lambda);
  }
  return out;
}

}  // namespace

TEST_CASE("classification of known pairs") {
  CHECK(classify_family(2, 4) == "level-7");
  CHECK(classify_family(16, 256) == "level-1-weight-8");
  CHECK(classify_family(-8, 4) == "nonholonomic-suspect");
  CHECK(classify_family(3, 7) == "unknown");
  CHECK(classify_variant(0, 4) == "C(2n,n)^2 (level 4)");
  CHECK(classify_variant(-5, 3) == "algebraic (4)^n C(2n,n)");
}

TEST_CASE("lambda^2 = mu sweep on a reduced grid") {
  SweepSpec spec;
  spec.constraint = Constraint::LambdaSquaredIsMu;
  spec.lambda_min = -6;
  spec.lambda_max = 6;
  spec.N = 150;
  spec.primes = primes_up_to(23);
  spec.confirm_N = 0;
  spec.jobs = 2;
  const auto recs = sweep(spec);
  CHECK(recs.size() == 11);  // lambda = 0 and 1 are degenerate
  CHECK(passing_lambdas(recs) == std::set<long>{-2, -1, 2, 4});
}

TEST_CASE("variant shape: (-alpha-2, alpha) pairs pass ell = 1") {
  SweepSpec spec;
  spec.shape = Shape::Variant;
  spec.N = 120;
  spec.primes = primes_up_to(23);
  spec.confirm_N = 0;
  for (long alpha = -8; alpha <= 8; ++alpha) {
    CAPTURE(alpha);
    CHECK(test_pair(spec, -alpha - 2, alpha).pass);
  }
  // the closed form behind that family
  for (long alpha : {-3L, 0L, 5L}) {
    const auto c = c_variant(-alpha - 2, alpha, 12);
    for (unsigned n = 0; n <= 12; ++n) CHECK(c[n] == power(Integer(alpha + 1), n) * binomial(2 * n, n));
  }
}

TEST_CASE("sweep order and output are independent of concurrency") {
  SweepSpec spec;
  spec.lambda_min = -3;
  spec.lambda_max = 3;
  spec.mu_min = -3;
  spec.mu_max = 3;
  spec.N = 80;
  spec.primes = primes_up_to(11);
  spec.confirm_N = 0;
  spec.jobs = 1;
  std::vector<std::string> serial;
  const auto a = sweep(spec, [&](const SweepRecord& r) { serial.push_back(to_json(r).dump()); });
  spec.jobs = 3;
  std::vector<std::string> parallel;
  const auto b = sweep(spec, [&](const SweepRecord& r) { parallel.push_back(to_json(r).dump()); });
  CHECK(serial == parallel);
  CHECK(serial.size() == 42);
  // every pass re-passes in isolation
  for (const auto& r : a) {
    if (r.pass) CHECK(test_pair(spec, r.lambda, r.mu).pass);
  }
}

TEST_CASE("resume skips emitted keys") {
  SweepSpec spec;
  spec.constraint = Constraint::LambdaIsMinusTwoMu;
  spec.mu_min = 1;
  spec.mu_max = 4;
  spec.N = 60;
  spec.primes = {2, 3, 5};
  spec.confirm_N = 0;
  std::ostringstream first;
  sweep(spec, [&](const SweepRecord& r) { first << to_json(r).dump() << "\n"; });
  std::string text = first.str();
  // keep two complete lines plus a truncated third
  std::size_t cut = 0;
  for (int i = 0; i < 2; ++i) cut = text.find('\n', cut) + 1;
  std::istringstream partial(text.substr(0, cut) + text.substr(cut, 10));
  const auto keys = read_emitted_keys(partial);
  CHECK(keys.size() == 2);
  const auto rest = sweep(spec, {}, keys);
  CHECK(rest.size() == 2);
  CHECK_FALSE(keys.count(rest[0].key()));
}

TEST_CASE("spec validation") {
  SweepSpec spec;
  spec.N = 10;
  CHECK_THROWS_AS(spec.validate(), DomainError);
  spec.N = 100;
  spec.lambda_min = 3;
  spec.lambda_max = 2;
  CHECK_THROWS_AS(spec.validate(), DomainError);
  CHECK_THROWS_AS(parse_shape("cubic"), DomainError);
}
