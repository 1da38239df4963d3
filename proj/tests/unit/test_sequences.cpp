#include "doctest.h"

#include "replica/sequences.hpp"
#include "test_support.hpp"

using namespace replica;
using replica::testing::ints;

TEST_CASE("level-7 numbers agree across all three definitions") {
  const IntegerSequence rec = u_recurrence(60);
  CHECK(IntegerSequence(rec.begin(), rec.begin() + 6) == ints({1, 4, 48, 760, 13840, 273504}));
  for (unsigned n = 0; n <= 60; ++n) {
    CHECK(u_binomial(n) == rec[n]);
    CHECK(u_binomial_alternating(n) == rec[n]);
  }
}

TEST_CASE("c(2,4) coincides with the level-7 numbers") {
  CHECK(c_lambda_mu(2, 4, 80) == u_recurrence(80));
}

TEST_CASE("c(lambda, mu) known prefixes") {
  CHECK(c_lambda_mu(-4, 2, 7) == ints({1, 12, 168, 2496, 38328, 600672, 9539808, 152891520}));
  CHECK(c_lambda_mu(-1, 1, 3) == ints({1, 4, 24, 160}));
  CHECK(c_lambda_mu(0, 0, 4) == ints({1, 0, 0, 0, 0}));
}

TEST_CASE("variant family known prefixes") {
  CHECK(c_variant(-2, 0, 3) == ints({1, 2, 6, 20}));
  CHECK(c_variant(0, -2, 3) == ints({1, -2, 6, -20}));
  CHECK(c_variant(0, 4, 3) == ints({1, 4, 36, 400}));
  CHECK(c_variant(-8, 16, 40) == family_terms("f2", 40));
}

TEST_CASE("modular recursions match exact values reduced") {
  const Integer m = Integer(2) * 2 * 2 * 3 * 3 * 5 * 7 * 11 * 13 * 1000003;
  for (auto [lambda, mu] : std::vector<std::pair<long, long>>{{2, 4}, {-4, 2}, {16, 256}, {0, 4}, {3, 0}, {-7, 5}}) {
    IntegerSequence exact = c_lambda_mu(lambda, mu, 120);
    for (auto& v : exact) v = ((v % m) + m) % m;
    CHECK(c_lambda_mu_mod(lambda, mu, 120, m) == exact);
    IntegerSequence var = c_variant(lambda, mu, 120);
    for (auto& v : var) v = ((v % m) + m) % m;
    CHECK(c_variant_mod(lambda, mu, 120, m) == var);
  }
}

TEST_CASE("named families") {
  CHECK(family_terms("u7", 4) == ints({1, 4, 48, 760, 13840}));
  CHECK(family_terms("f7", 2) == ints({1, 4, 48}));
  CHECK(family_terms("f2", 4) == ints({1, 24, 984, 47040, 2421720}));
  CHECK(family_terms("f4", 2) == ints({1, 8, 88}));
  CHECK(family_terms("f5", 2) == ints({1, 6, 114}));
  CHECK(family_terms("fhat4", 3) == ints({1, 8, 216, 8000}));
  CHECK(family_terms("fhat2", 2) == ints({1, 24, 2520}));
  CHECK(family_terms("fhat3", 2) == ints({1, 12, 540}));
  CHECK(family_terms("fhat5", 5) == ints({1, -5, 35, -275, 2275, -19255}));
  CHECK(family_terms("gb", 4) == ints({1, 3, 15, 93, 639}));
  CHECK(family_terms("gc", 4) == ints({1, 2, 10, 56, 346}));
  CHECK(family_terms("g5", 4) == ints({1, 3, 19, 147, 1251}));
  CHECK(family_terms("c:-4,2", 2) == ints({1, 12, 168}));
  CHECK(family_terms("cvar:0,4", 2) == ints({1, 4, 36}));
  CHECK_THROWS_AS(family_terms("nope", 3), UnknownFamily);
  CHECK_THROWS_AS(parse_family("c:1"), UnknownFamily);
  CHECK(parse_family("c:-4,2") == FamilyId{FamilyKind::CLambdaMu, -4, 2});
  CHECK(parse_family("c:-4,2").tag() == "c:-4,2");
}

TEST_CASE("family cache returns consistent prefixes") {
  clear_family_cache();
  const auto longer = family_terms("gc", 30);
  const auto shorter = family_terms("gc", 10);
  CHECK(IntegerSequence(longer.begin(), longer.begin() + 11) == shorter);
}

TEST_CASE("f3 square root is the binomial product") {
  const auto f3 = family_terms("f3", 20);
  const auto split = convolution_split(f3);
  REQUIRE(std::holds_alternative<IntegerSequence>(split));
  const auto& d = std::get<IntegerSequence>(split);
  for (unsigned n = 0; n <= 20; ++n) CHECK(d[n] == binomial(2 * n, n) * binomial(3 * n, n));
}

TEST_CASE("convolution split of c(-4,2) and a non-square") {
  const auto split = convolution_split(c_lambda_mu(-4, 2, 6));
  REQUIRE(std::holds_alternative<IntegerSequence>(split));
  CHECK(std::get<IntegerSequence>(split) == ints({1, 6, 66, 852, 11874, 172860, 2586108}));
  const auto bad = convolution_split(ints({1, 1, 0}));
  REQUIRE(std::holds_alternative<NotSplittable>(bad));
  CHECK(std::get<NotSplittable>(bad).index == 1);
  CHECK(std::get<NotSplittable>(bad).value == Rational(1, 2));
}

TEST_CASE("generic Apery recurrence rejects inexact steps") {
  AperyRecurrence r;
  r.lead = Polynomial{2};
  r.middle = Polynomial{1};
  r.trail = Polynomial{0};
  CHECK_THROWS_AS(r.terms(3), InexactDivision);
}
