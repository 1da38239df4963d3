#include "replica/modular.hpp"

#include <algorithm>

#include "replica/sequences.hpp"

namespace replica {

const std::vector<unsigned>& supported_levels() {
  static const std::vector<unsigned> levels = {2, 3, 4, 5, 7};
  return levels;
}

namespace {

void require_level(unsigned level) {
  const auto& ls = supported_levels();
  if (std::find(ls.begin(), ls.end(), level) == ls.end()) {
    throw UnsupportedLevel("level " + std::to_string(level) + " is not supported (use 2, 3, 4, 5 or 7)");
  }
}

// s *= (1 - q^j) in place, for integer series.
void times_one_minus(Series& s, std::size_t j) {
  for (std::size_t k = s.order(); k >= j; --k) {
    s[k] -= s[k - j];
    if (k == j) break;
  }
}

}  // namespace

QSeries z_level(unsigned level, std::size_t N) {
  require_level(level);
  if (N < 1) throw DomainError("z_level needs N >= 1");
  const unsigned e = 24 / (level - 1);
  // Unit part U = prod ((1-q^(lj))/(1-q^j))^e to order N-1; factors with
  // j > N-1 are 1 + O(q^N) and cannot contribute.
  const std::size_t order = N - 1;
  Series numerator = Series::one(order);
  Series denominator = Series::one(order);
  for (std::size_t j = 1; j <= order; ++j) {
    times_one_minus(denominator, j);
    if (level * j <= order) times_one_minus(numerator, level * j);
  }
  const Series unit = pow(mul(numerator, recip(denominator)), e);
  return {level, e, shift_up(unit.truncated(N), 1)};
}

QSeries p_level(unsigned level, std::size_t N) {
  const QSeries z = z_level(level, N + 1);
  // z = q U  =>  q z'/z = 1 + q U'/U
  Series unit(N);
  for (std::size_t k = 0; k <= N; ++k) unit[k] = z.series[k + 1];
  Series p = mul(theta(unit), recip(unit));
  p[0] += 1;
  return {level, z.exponent, p};
}

RationalFunction level_map(unsigned level) {
  require_level(level);
  switch (level) {
    case 2: return RationalFunction(Polynomial{0, 1}, Polynomial{1, 64});
    case 3: return RationalFunction(Polynomial{0, 1}, Polynomial{1, 27});
    case 4: return RationalFunction(Polynomial{0, 1}, Polynomial{1, 16});
    case 5: return RationalFunction(Polynomial{0, 1}, Polynomial{1, 22, 125});
    default: return RationalFunction(Polynomial{0, 1}, Polynomial{1, 13, 49});
  }
}

std::string level_family(unsigned level) {
  require_level(level);
  return level == 7 ? "u7" : "f" + std::to_string(level);
}

long parametrization_check(unsigned level, std::size_t N) {
  const Series p = p_level(level, N).series;
  const Series z = z_level(level, N).series;
  const Series x = compose(expand(level_map(level), N), z);
  const Series f = Series::from_integers(family_terms(level_family(level), N));
  const Series rhs = compose(f, x);
  for (std::size_t k = 0; k <= N; ++k) {
    if (p[k] != rhs[k]) return static_cast<long>(k) - 1;
  }
  return static_cast<long>(N);
}

}  // namespace replica
