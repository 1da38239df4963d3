#include "doctest.h"

#include "replica/series.hpp"
#include "replica/sequences.hpp"
#include "test_support.hpp"

using namespace replica;
using replica::testing::series_of;

TEST_CASE("mul: difference of squares and geometric squares") {
  CHECK(mul(series_of({1, 1, 0}), series_of({1, -1, 0})) == series_of({1, 0, -1}));
  CHECK(mul(series_of({1, 1, 1, 1}), series_of({1, 1, 1, 1})) == series_of({1, 2, 3, 4}));
  // 1 + 12z + 420z^2 squared by hand: 1, 24, 2*420 + 144
  CHECK(mul(series_of({1, 12, 420}), series_of({1, 12, 420})) == series_of({1, 24, 984}));
}

TEST_CASE("mul truncates to the smaller order") {
  const Series r = mul(series_of({1, 1, 1, 1, 1}), series_of({1, 1}));
  CHECK(r.order() == 1);
  CHECK(r == series_of({1, 2}));
}

TEST_CASE("recip") {
  CHECK(recip(series_of({1})) == series_of({1}));
  CHECK(recip(series_of({1, 1, 0, 0})) == series_of({1, -1, 1, -1}));
  CHECK(recip(series_of({1, 4, 0})) == series_of({1, -4, 16}));
  CHECK_THROWS_AS(recip(series_of({0, 1})), ZeroConstantTerm);
}

TEST_CASE("compose") {
  const Series outer = series_of({3, -2, 7, 1, 5});
  CHECK(compose(outer, series_of({0, 1, 0, 0, 0})) == outer);
  CHECK(compose(series_of({1, 1, 1, 0, 0}), series_of({0, 0, 1, 0, 0})) == series_of({1, 0, 1, 0, 1}));
  // f_7 to order 1 composed with z/(1+4z)^3 = z - 12z^2 + O(z^3)
  const Series inner = expand(RationalFunction(Polynomial{0, 1}, pow(Polynomial{1, 4}, 3)), 2);
  CHECK(compose(series_of({1, 4, 0}), inner) == series_of({1, 4, -48}));
  CHECK_THROWS_AS(compose(outer, series_of({1, 1, 0, 0, 0})), NonzeroInnerConstant);
}

TEST_CASE("expand rational functions") {
  const RationalFunction r(Polynomial{0, 1}, pow(Polynomial{1, 4}, 3));
  const Series s = expand(r, 3);
  CHECK(s == series_of({0, 1, -12, 96}));
  // oracle: multiplying back by the denominator recovers z
  CHECK(mul(s, Series::from_polynomial(pow(Polynomial{1, 4}, 3), 3)) == series_of({0, 1, 0, 0}));
  CHECK(expand(RationalFunction(Polynomial{1}, Polynomial{1, -1}), 2) == series_of({1, 1, 1}));
  CHECK(expand(RationalFunction(Polynomial{1, -1}, Polynomial{1, 3}), 2) == series_of({1, -4, 12}));
  CHECK_THROWS_AS(expand(RationalFunction(Polynomial{1}, Polynomial{0, 1}), 2), PoleAtOrigin);
  // non-unit denominator constant goes through the rational path
  CHECK(expand(RationalFunction(Polynomial{1}, Polynomial{2, -1}), 2) ==
        Series({Rational(1, 2), Rational(1, 4), Rational(1, 8)}));
}

TEST_CASE("sqrt") {
  CHECK(sqrt(series_of({1})) == series_of({1}));
  CHECK(sqrt(series_of({1, 2, 1})) == series_of({1, 1, 0}));
  const Series c = Series::from_integers(c_lambda_mu(-4, 2, 6));
  CHECK(sqrt(c) == series_of({1, 6, 66, 852, 11874, 172860, 2586108}));
  CHECK(sqrt(series_of({4, 4, 1})) == series_of({2, 1, 0}));
  CHECK(sqrt(series_of({1, 1})) == Series({Rational(1), Rational(1, 2)}));
  CHECK_THROWS_AS(sqrt(series_of({2, 1})), NonSquareConstant);
  CHECK_THROWS_AS(sqrt(series_of({-1, 1})), NonSquareConstant);
}

TEST_CASE("derive") {
  CHECK(derive(series_of({1})) == series_of({0}));
  CHECK(derive(series_of({0, 0, 1})) == series_of({0, 2}));
  const Series u = Series::from_integers(u_recurrence(5));
  CHECK(derive(u)[0] == 4);
  CHECK(derive(u).order() == 4);
}

TEST_CASE("property: ring laws on random rational series") {
  std::mt19937_64 rng(20160405);
  for (int trial = 0; trial < 25; ++trial) {
    const std::size_t n = 1 + trial % 9;
    const Series a = testing::random_series(rng, n);
    const Series b = testing::random_series(rng, n);
    const Series c = testing::random_series(rng, n);
    CHECK(mul(a, b) == mul(b, a));
    CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
    CHECK(mul(a, b) == testing::convolve(a, b));
  }
}

TEST_CASE("property: reciprocal, square root and composition") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 2 + trial % 8;
    const Series unit = testing::random_series(rng, n, true);
    CHECK(mul(unit, recip(unit)) == Series::one(n));

    Series square_me = testing::random_series(rng, n);
    square_me[0] = Rational(1 + trial, 3);
    square_me[0].canonicalize();
    const Series sq = mul(square_me, square_me);
    const Series root = sqrt(sq);
    CHECK(mul(root, root) == sq);
    CHECK(root == square_me);

    const Series a = testing::random_series(rng, n);
    const Series b = testing::random_series(rng, n, false, true);
    const Series c = testing::random_series(rng, n, false, true);
    CHECK(compose(compose(a, b), c) == compose(a, compose(b, c)));
  }
}

TEST_CASE("property: expansion times denominator reproduces numerator") {
  const std::vector<RationalFunction> maps = {
      RationalFunction(Polynomial{0, 1, -1}, Polynomial{1, 3}),
      RationalFunction(Polynomial{2, 5, 0, -7}, Polynomial{3, -1, 4}),
      RationalFunction(Polynomial{0, 0, 1}, pow(Polynomial{1, -8}, 2)),
  };
  for (const auto& r : maps) {
    const std::size_t n = 12;
    const Series s = expand(r, n);
    const Series back = mul(s, Series::from_polynomial(r.denominator(), n));
    CHECK(back == Series::from_polynomial(r.numerator(), n));
  }
}
