#include "doctest.h"

#include "replica/modular.hpp"
#include "test_support.hpp"

using namespace replica;
using replica::testing::series_of;

namespace {

// Oracle: expand the eta quotient factor by factor with rational series
// division, independent of the library's in-place product.
Series z_oracle(unsigned level, std::size_t N) {
  const unsigned e = 24 / (level - 1);
  Series acc = Series::monomial(N, 1, 1);
  for (std::size_t j = 1; j <= N; ++j) {
    Polynomial num = Polynomial::monomial(0) - Polynomial::monomial(level * j);
    Polynomial den = Polynomial::monomial(0) - Polynomial::monomial(j);
    acc = mul_rational(acc, pow(RationalFunction(num, den), e));
  }
  return acc;
}

}  // namespace

TEST_CASE("z_level normalisation and small expansions") {
  for (unsigned level : supported_levels()) {
    const auto z = z_level(level, 12);
    CHECK(z.series[0] == 0);
    CHECK(z.series[1] == 1);
    CHECK(z.series.is_integral());
    CHECK(z.series == z_oracle(level, 12));
  }
  CHECK(z_level(7, 3).series == series_of({0, 1, 4, 14}));
  CHECK(z_level(4, 1).series == series_of({0, 1}));
  CHECK(z_level(7, 3).exponent == 4);
  CHECK_THROWS_AS(z_level(6, 5), UnsupportedLevel);
  CHECK_THROWS_AS(z_level(9, 5), UnsupportedLevel);
}

TEST_CASE("P_level") {
  for (unsigned level : supported_levels()) {
    const auto p = p_level(level, 10);
    CHECK(p.series[0] == 1);
    CHECK(p.series.is_integral());
  }
  CHECK(p_level(7, 5).series == series_of({1, 4, 12, 16, 28, 24}));
  CHECK(p_level(4, 5).series == series_of({1, 8, 24, 32, 24, 48}));
  // second route: q z'/z with the derivative and reciprocal taken directly
  const Series z = z_level(3, 7).series;
  Series dz(5);
  const Series d = derive(z);
  for (std::size_t k = 0; k <= 5; ++k) dz[k] = d[k];
  Series u(5);
  for (std::size_t k = 0; k <= 5; ++k) u[k] = z[k + 1];
  CHECK(p_level(3, 5).series == mul(dz, recip(u)));
}

TEST_CASE("the five parametrizations hold to order 40") {
  for (unsigned level : supported_levels()) {
    CAPTURE(level);
    CHECK(parametrization_check(level, 40) == 40);
  }
}
