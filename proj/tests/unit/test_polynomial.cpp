#include "doctest.h"

#include "replica/polynomial.hpp"

using namespace replica;

TEST_CASE("polynomial normal form and arithmetic") {
  CHECK(Polynomial{1, 2, 0, 0}.degree() == 1);
  CHECK(Polynomial{}.degree() == -1);
  CHECK(Polynomial{0, 0, 3}.valuation() == 2);
  CHECK(Polynomial{1, 1} * Polynomial{1, -1} == Polynomial{1, 0, -1});
  CHECK(pow(Polynomial{1, 4}, 3) == Polynomial{1, 12, 48, 64});
  CHECK(Polynomial::binomial_power(1, -1, 2) == Polynomial{1, -2, 1});
  CHECK(Polynomial{1, 1} - Polynomial{1, 1} == Polynomial{});
  CHECK(Polynomial{5, 0, 1}.derivative() == Polynomial{0, 2});
  CHECK(Polynomial{1, 2, 1}.shifted(-1) == Polynomial{0, 0, 1});
  CHECK(Polynomial{0, 0, 2, 6}.divide_by_z_power(2) == Polynomial{2, 6});
  CHECK(Polynomial{4, 6, 8}.content() == 2);
  CHECK(Polynomial{4, 6, 8}.primitive_part() == Polynomial{2, 3, 4});
  CHECK(Polynomial{4, 13, 13}(Integer(2)) == 82);
  CHECK(Polynomial{1, 1}(Rational(1, 2)) == Rational(3, 2));
  CHECK_THROWS_AS(Polynomial({3, 4}).divexact(Integer(2)), InexactDivision);
}

TEST_CASE("polynomial gcd and exact division") {
  const Polynomial a = Polynomial{1, 4} * Polynomial{1, -2} * Polynomial{3, 0, 1};
  const Polynomial b = Polynomial{1, 4} * Polynomial{1, 7};
  CHECK(gcd(a, b) == Polynomial{1, 4});
  CHECK(divexact(a, Polynomial{1, -2}) == Polynomial{1, 4} * Polynomial{3, 0, 1});
  CHECK_THROWS_AS(divexact(a, Polynomial{1, 5}), InexactDivision);
  CHECK(gcd(Polynomial{2, 4}, Polynomial{3, 6}) == Polynomial{1, 2});
}

TEST_CASE("rational functions are canonical") {
  const RationalFunction r(Polynomial{2, 2} * Polynomial{1, 3}, Polynomial{4, 4});
  CHECK(r.numerator() == Polynomial{1, 3});
  CHECK(r.denominator() == Polynomial{2});
  const RationalFunction s(Polynomial{0, 1}, Polynomial{-1, 4});
  CHECK(s.denominator() == Polynomial{1, -4});
  CHECK(s.numerator() == Polynomial{0, -1});
  CHECK(s.valuation() == 1);
  CHECK(s.leading_coefficient() == -1);
  CHECK_THROWS_AS(RationalFunction(Polynomial{1}, Polynomial{0, 1}).value_at_zero(), PoleAtOrigin);
}

TEST_CASE("logarithmic derivative") {
  // z d/dz log(z/(1+4z)^3) = 1 - 12z/(1+4z) = (1-8z)/(1+4z)
  const RationalFunction phi(Polynomial{0, 1}, pow(Polynomial{1, 4}, 3));
  CHECK(phi.log_derivative() == RationalFunction(Polynomial{1, -8}, Polynomial{1, 4}));
  const RationalFunction t(Polynomial{1}, pow(Polynomial{1, 2}, 2));
  CHECK(t.log_derivative() == RationalFunction(Polynomial{0, -4}, Polynomial{1, 2}));
}

TEST_CASE("rational function field operations") {
  const RationalFunction a(Polynomial{1}, Polynomial{1, 1});
  const RationalFunction b(Polynomial{1}, Polynomial{1, -1});
  CHECK(a + b == RationalFunction(Polynomial{2}, Polynomial{1, 0, -1}));
  CHECK(a * b == RationalFunction(Polynomial{1}, Polynomial{1, 0, -1}));
  CHECK(a / a == RationalFunction(Polynomial{1}));
  CHECK(a - a == RationalFunction(Polynomial{}));
  CHECK(a.evaluate(Rational(1)) == Rational(1, 2));
}
