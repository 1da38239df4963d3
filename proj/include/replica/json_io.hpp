#pragma once

// JSON forms of the library's data. Big integers and rationals are always
// written as decimal strings so no consumer loses precision.

#include <string>

#include "json.hpp"
#include "replica/agm.hpp"
#include "replica/congruences.hpp"
#include "replica/holonomic.hpp"
#include "replica/legendre.hpp"
#include "replica/modular.hpp"
#include "replica/numeric.hpp"
#include "replica/polynomial.hpp"
#include "replica/search.hpp"
#include "replica/selfrep.hpp"
#include "replica/series.hpp"

namespace replica {

using Json = nlohmann::json;

Json to_json(const IntegerSequence& seq);
Json to_json(const Series& s);
Json to_json(const Polynomial& p);
Json to_json(const RationalFunction& r);

/// {"t_left": {"numerator": [...], "denominator": [...]}, "phi_left": ...,
///  "t_right": ..., "phi_right": ..., "m": 2}
Json to_json(const FunctionalEquation& eq);
/// Accepts integers or decimal strings as coefficients. "m", when present,
/// must equal the valuation of phi_right. Throws InvalidEquation.
FunctionalEquation equation_from_json(const Json& j);

Json to_json(const CongruenceReport& report);
Json to_json(const SweepRecord& rec);
Json to_json(const RecurrenceGuess& rec);
Json to_json(const GuessResult& res);

Json to_json(const QSeries& q);
Json to_json(const LegendrePoly& p);

/// High-precision values are written as scientific decimal strings with
/// `digits` significant digits.
Json to_json(const PrecisionReal& x, unsigned digits);
Json to_json(const IterationState& s, unsigned digits);
Json to_json(const SeriesEvaluation& e, unsigned digits);

/// Integer from a JSON number or decimal string.
Integer integer_from_json(const Json& j);

}  // namespace replica
