#include "doctest.h"

#include <random>

#include "replica/selfrep.hpp"
#include "replica/sequences.hpp"
#include "test_support.hpp"

using namespace replica;
using replica::testing::ints;
using replica::testing::series_of;

namespace {

// Brute-force oracle: expand t * f(phi) term by term, sum_n c_n t phi^n,
// with no sharing between orders.
Series brute_side(const RationalFunction& t, const RationalFunction& phi, const Series& f, std::size_t N) {
  Series acc(N);
  for (std::size_t n = 0; n <= std::min(N, f.order()); ++n) {
    acc = acc + f[n] * expand(t * pow(phi, static_cast<unsigned>(n)), N);
  }
  return acc;
}

long brute_verify(const FunctionalEquation& eq, const Series& f, std::size_t N) {
  const Series l = brute_side(eq.t_left(), eq.phi_left(), f, N);
  const Series r = brute_side(eq.t_right(), eq.phi_right(), f, N);
  for (std::size_t k = 0; k <= N; ++k) {
    if (l[k] != r[k]) return static_cast<long>(k) - 1;
  }
  return static_cast<long>(N);
}

}  // namespace

TEST_CASE("solve the level-7 equation") {
  const Series f = solve(registry_equation("alg"), 4);
  CHECK(f.to_integers() == ints({1, 4, 48, 760, 13840}));
  CHECK(solve(registry_equation("f7"), 120).to_integers() == u_recurrence(120));
}

TEST_CASE("solve the level-4 equation gives the squared central-binomial series") {
  const Series f = solve(registry_equation("f4"), 3);
  CHECK(f.to_integers() == ints({1, 8, 88, 1088}));
  Series inner = series_of({1, 4, 36, 400});
  CHECK(testing::convolve(inner, inner) == f);
}

TEST_CASE("degenerate alg0(lambda, lambda)") {
  for (long lambda : {-3L, 0L, 5L}) {
    const std::string id = "alg0:" + std::to_string(lambda) + "," + std::to_string(lambda);
    CHECK(solve(registry_equation(id), 12) == Series::one(12));
  }
}

TEST_CASE("verify solutions and detect corruption") {
  const FunctionalEquation eq = registry_equation("alg");
  const Series u = Series::from_integers(u_recurrence(40));
  CHECK(verify(eq, u, 40) == 40);

  Series bad = u;
  bad[3] += 1;
  const long got = verify(eq, bad, 40);
  CHECK(got == brute_verify(eq, bad, 40));
  // c_3 enters the valuation-1 side at z^3 and the valuation-2 side at z^6
  CHECK(got == 2);

  const Series g5 = Series::from_integers(family_terms("g5", 30));
  CHECK(verify(registry_equation("g5"), g5, 30) == 30);
  const auto skew = FunctionalEquation::make(RationalFunction(Polynomial{2}), RationalFunction(Polynomial{0, 1}),
                                             RationalFunction(Polynomial{1}), RationalFunction(Polynomial{0, 0, 1}));
  CHECK(verify(skew, Series::one(5), 5) == -1);
}

TEST_CASE("every registry entry matches its independently generated family") {
  for (const auto& entry : registry()) {
    CAPTURE(entry.sample);
    const FunctionalEquation eq = registry_equation(entry.sample);
    const IntegerSequence expected = family_terms(registry_family(entry.sample), 50);
    const Series f = solve(eq, 50);
    CHECK(f.to_integers() == expected);
    CHECK(verify(eq, Series::from_integers(expected), 50) == 50);
  }
}

TEST_CASE("solve(alg0) agrees with the c(lambda, mu) recursion") {
  std::mt19937_64 rng(314159);
  std::uniform_int_distribution<long> d(-12, 12);
  for (int i = 0; i < 20; ++i) {
    const long lambda = d(rng);
    const long mu = d(rng);
    CAPTURE(lambda);
    CAPTURE(mu);
    const auto eq = registry_equation("alg0:" + std::to_string(lambda) + "," + std::to_string(mu));
    CHECK(solve(eq, 30).to_integers() == c_lambda_mu(lambda, mu, 30));
  }
}

TEST_CASE("uniqueness: perturbing one coefficient breaks verification") {
  const auto eq = registry_equation("gc");
  const Series f = solve(eq, 24);
  for (std::size_t k = 1; k <= 24; k += 3) {
    Series g = f;
    g[k] += Rational(1, 7);
    const long order = verify(eq, g, 24);
    CHECK(order < 24);
    CHECK(order == brute_verify(eq, g, 24));
  }
}

TEST_CASE("differentiated identity") {
  const auto alg = registry_equation("alg");
  const Series u = Series::from_integers(u_recurrence(20));
  CHECK(differentiated_identity(alg, u, 1, 0, 20) == 20);
  CHECK(differentiated_identity(alg, u, 0, 1, 20) == 20);
  CHECK(differentiated_identity(alg, u, Rational(-3, 7), Rational(5, 2), 20) == 20);

  const auto quintic = registry_equation("fhat4-quintic");
  const Series c = Series::from_integers(family_terms("fhat4", 15));
  CHECK(differentiated_identity(quintic, c, 1, 1, 15) == 15);

  Series bad = u;
  bad[4] -= 1;
  const long o1 = differentiated_identity(alg, bad, 1, 0, 20);
  const long o2 = differentiated_identity(alg, bad, 0, 1, 20);
  CHECK(differentiated_identity(alg, bad, 1, 1, 20) >= std::min(o1, o2));
}

TEST_CASE("differentiated identity weights match the explicit level-7 form") {
  // Left weight: (A - 8Bz/(1+4z)) + nB(1 - 12z/(1+4z)); right: (A - 4Bz/(1+2z)) + nB(2 - 6z/(1+2z)).
  const auto eq = registry_equation("alg");
  const std::size_t N = 12;
  const Series u = Series::from_integers(u_recurrence(N));
  const Rational A(2, 3), B(-5);
  auto side = [&](long a, long tau_num, long psi_const, long psi_num, unsigned v) {
    Series acc(N);
    for (std::size_t n = 0; n <= N; ++n) {
      const RationalFunction tau(Polynomial{0, tau_num}, Polynomial{1, a});
      const RationalFunction psi = RationalFunction(Polynomial{psi_const}) + RationalFunction(Polynomial{0, psi_num}, Polynomial{1, a});
      const RationalFunction weight = RationalFunction(Polynomial::constant(A.get_num()), Polynomial::constant(A.get_den())) +
                                      RationalFunction(Polynomial::constant(B.get_num())) *
                                          (tau + RationalFunction(Polynomial::constant(Integer(static_cast<unsigned long>(n)))) * psi);
      const RationalFunction term = weight * RationalFunction(Polynomial::monomial(v * n), pow(Polynomial{1, a}, 3 * static_cast<unsigned>(n) + 2));
      acc = acc + u[n] * expand(term, N);
    }
    return acc;
  };
  const Series lhs = side(4, -8, 1, -12, 1);
  const Series rhs = side(2, -4, 2, -6, 2);
  CHECK(lhs == rhs);
  CHECK(differentiated_identity(eq, u, A, B, N) == static_cast<long>(N));
}

TEST_CASE("invalid equations are rejected") {
  using RF = RationalFunction;
  CHECK_THROWS_AS(FunctionalEquation::make(RF(Polynomial{1}), RF(Polynomial{0, 0, 1}), RF(Polynomial{1}), RF(Polynomial{0, 0, 1})),
                  InvalidEquation);
  CHECK_THROWS_AS(FunctionalEquation::make(RF(Polynomial{1}), RF(Polynomial{0, 1}), RF(Polynomial{1}), RF(Polynomial{0, 1})),
                  InvalidEquation);
  CHECK_THROWS_AS(FunctionalEquation::make(RF(Polynomial{0, 1}), RF(Polynomial{0, 1}), RF(Polynomial{1}), RF(Polynomial{0, 0, 1})),
                  InvalidEquation);
  const auto skew = FunctionalEquation::make(RF(Polynomial{2}), RF(Polynomial{0, 1}), RF(Polynomial{1}), RF(Polynomial{0, 0, 1}));
  CHECK_THROWS_AS(solve(skew, 4), InconsistentEquation);
  CHECK_THROWS_AS(registry_equation("alg0"), UnknownFamily);
  CHECK_THROWS_AS(registry_equation("nope"), UnknownFamily);
  CHECK(registry().size() == 14);
}
