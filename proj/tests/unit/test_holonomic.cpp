#include "doctest.h"

#include "replica/holonomic.hpp"
#include "replica/sequences.hpp"

using namespace replica;

namespace {

// The level-7 three-term recurrence in its own indexing: coefficients of u_{n-1}, u_n, u_{n+1}.
RecurrenceGuess level7(long thirteen = 13) {
  const Polynomial trail = Polynomial{0, 3} * Polynomial{-1, 3} * Polynomial{1, 3};
  const Polynomial middle = Polynomial{1, 2} * Polynomial{4, thirteen, 13};
  return RecurrenceGuess::make({-trail, -middle, pow(Polynomial{1, 1}, 3)}, 1);
}

}  // namespace

TEST_CASE("verify_rec on the level-7 recurrence") {
  const auto u = u_recurrence(100);
  CHECK_FALSE(verify_rec(level7(), u).has_value());
  const auto bad = verify_rec(level7(14), u);
  REQUIRE(bad.has_value());
  CHECK(*bad == 1);
  CHECK_THROWS_AS(RecurrenceGuess::make({Polynomial{1}, Polynomial{}}), DomainError);
}

TEST_CASE("guess recovers the level-7 recurrence from 60 terms") {
  const auto u = u_recurrence(59);
  const GuessResult res = guess(u, {3, 4, 20});
  REQUIRE(res.recurrence.has_value());
  const auto& g = *res.recurrence;
  CHECK(g.order() == 2);
  CHECK(g.degree() == 3);
  // proportional to the level-7 recurrence shifted by one: p_2(n) = (n+2)^3 after content reduction
  CHECK(g.coefficients[2] == pow(Polynomial{2, 1}, 3));
  CHECK(g.coefficients[1] == -(Polynomial{3, 2} * Polynomial{30, 39, 13}));
  CHECK(g.coefficients[0] == -(Polynomial{3, 3} * Polynomial{2, 3} * Polynomial{4, 3}));
  CHECK_FALSE(verify_rec(g, u_recurrence(150)).has_value());
}

TEST_CASE("central binomial coefficients") {
  IntegerSequence c;
  for (unsigned n = 0; n < 40; ++n) c.push_back(binomial(2 * n, n));
  const auto res = guess(c, {2, 2, 20});
  REQUIRE(res.recurrence.has_value());
  const auto& g = *res.recurrence;
  CHECK(g.order() == 1);
  CHECK(g.coefficients[1] == Polynomial{1, 1});
  CHECK(g.coefficients[0] == Polynomial{-2, -4});
}

TEST_CASE("scale invariance") {
  IntegerSequence c;
  for (unsigned n = 0; n < 40; ++n) c.push_back(binomial(2 * n, n));
  std::vector<Rational> scaled;
  for (const auto& v : c) scaled.push_back(Rational(v) * Rational(-7, 3));
  const auto a = guess(c, {2, 2, 20});
  const auto b = guess(scaled, {2, 2, 20});
  REQUIRE(b.recurrence.has_value());
  CHECK(a.recurrence->coefficients == b.recurrence->coefficients);
}

TEST_CASE("insufficient terms and non-holonomic envelope") {
  CHECK_THROWS_AS(guess(u_recurrence(20), {3, 4, 20}), InsufficientTerms);
  // random-looking sequence: no recurrence in a small envelope
  IntegerSequence noise;
  Integer x = 12345;
  for (int i = 0; i < 60; ++i) {
    x = (x * 1103515245 + 12345) % 2147483648;
    noise.push_back(x);
  }
  const auto res = guess(noise, {2, 2, 20});
  CHECK_FALSE(res.recurrence.has_value());
  CHECK(res.candidates_tried == 6);
  CHECK(res.terms == 60);
}
