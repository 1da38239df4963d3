#pragma once

#include <string>
#include <vector>

#include "replica/polynomial.hpp"
#include "replica/series.hpp"

namespace replica {

/// A formal q-expansion attached to one of the supported levels.
struct QSeries {
  unsigned level = 0;
  unsigned exponent = 0;  ///< 24 / (level - 1)
  Series series;
};

/// Levels with a parametrization: 2, 3, 4, 5, 7.
const std::vector<unsigned>& supported_levels();

/// z_l = q prod_{j>=1} ((1 - q^(l j)) / (1 - q^j))^(24/(l-1)) through q^N.
/// Throws UnsupportedLevel.
QSeries z_level(unsigned level, std::size_t N);

/// P_l = q d/dq log z_l through q^N.
QSeries p_level(unsigned level, std::size_t N);

/// The rational map x(z) with P_l = f_l(x(z_l)):
/// z/(1+64z), z/(1+27z), z/(1+16z), z/(1+22z+125z^2), z/(1+13z+49z^2).
RationalFunction level_map(unsigned level);

/// Family tag of f_l ("f2", "f3", "f4", "f5", "u7").
std::string level_family(unsigned level);

/// Largest n <= N with P_l = f_l(x(z_l)) through q^n (composition of
/// expanded series, -1 if the constant terms differ).
long parametrization_check(unsigned level, std::size_t N);

}  // namespace replica
