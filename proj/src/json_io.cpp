#include "replica/json_io.hpp"

namespace replica {

Json to_json(const IntegerSequence& seq) {
  Json arr = Json::array();
  for (const auto& v : seq) arr.push_back(v.get_str());
  return arr;
}

Json to_json(const Series& s) {
  Json arr = Json::array();
  for (std::size_t k = 0; k <= s.order(); ++k) arr.push_back(s[k].get_str());
  return arr;
}

Json to_json(const Polynomial& p) {
  Json arr = Json::array();
  for (const auto& c : p.coeffs()) arr.push_back(c.get_str());
  return arr;
}

Json to_json(const RationalFunction& r) {
  return Json{{"numerator", to_json(r.numerator())}, {"denominator", to_json(r.denominator())}};
}

Json to_json(const FunctionalEquation& eq) {
  return Json{{"t_left", to_json(eq.t_left())},
              {"phi_left", to_json(eq.phi_left())},
              {"t_right", to_json(eq.t_right())},
              {"phi_right", to_json(eq.phi_right())},
              {"m", eq.replication_order()}};
}

Integer integer_from_json(const Json& j) {
  if (j.is_number_integer()) return Integer(j.get<long>());
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    Integer z;
    if (s.empty() || z.set_str(s, 10) != 0) throw DomainError("malformed integer '" + s + "'");
    return z;
  }
  throw DomainError("expected an integer or a decimal string, got " + j.dump());
}

namespace {

Polynomial polynomial_from_json(const Json& j, const std::string& what) {
  if (!j.is_array()) throw InvalidEquation(what + " must be an array of integer coefficients");
  std::vector<Integer> coeffs;
  for (const auto& c : j) coeffs.push_back(integer_from_json(c));
  return Polynomial(std::move(coeffs));
}

RationalFunction rational_function_from_json(const Json& j, const std::string& what) {
  if (!j.is_object() || !j.contains("numerator")) {
    throw InvalidEquation(what + " must be an object with numerator (and optional denominator)");
  }
  const Polynomial num = polynomial_from_json(j.at("numerator"), what + ".numerator");
  const Polynomial den = j.contains("denominator") ? polynomial_from_json(j.at("denominator"), what + ".denominator")
                                                   : Polynomial{1};
  if (den.is_zero()) throw InvalidEquation(what + " has a zero denominator");
  return RationalFunction(num, den);
}

}  // namespace

FunctionalEquation equation_from_json(const Json& j) {
  try {
    for (const char* key : {"t_left", "phi_left", "t_right", "phi_right"}) {
      if (!j.contains(key)) throw InvalidEquation(std::string("equation file lacks '") + key + "'");
    }
    FunctionalEquation eq = FunctionalEquation::make(
        rational_function_from_json(j.at("t_left"), "t_left"), rational_function_from_json(j.at("phi_left"), "phi_left"),
        rational_function_from_json(j.at("t_right"), "t_right"),
        rational_function_from_json(j.at("phi_right"), "phi_right"));
    if (j.contains("m") && j.at("m").get<long>() != static_cast<long>(eq.replication_order())) {
      throw InvalidEquation("declared m = " + j.at("m").dump() + " but phi_right has valuation " +
                            std::to_string(eq.replication_order()));
    }
    return eq;
  } catch (const Json::exception& e) {
    throw InvalidEquation(std::string("malformed equation file: ") + e.what());
  } catch (const InvalidEquation&) {
    throw;
  } catch (const DomainError& e) {
    throw InvalidEquation(e.what());
  }
}

namespace {

Json to_json(const LucasFailure& f) {
  return Json{{"n", f.n}, {"value", f.value.get_str()}, {"digit_product", f.product.get_str()}};
}

Json to_json(const SuperFailure& f) {
  return Json{{"m", f.m}, {"r", f.r}, {"ell", f.ell}, {"high", f.high.get_str()}, {"low", f.low.get_str()}};
}

}  // namespace

Json to_json(const CongruenceReport& report) {
  Json verdicts = Json::array();
  for (const auto& v : report.verdicts) {
    Json item{{"p", v.p}, {"lucas", v.lucas ? to_json(*v.lucas) : Json("pass")}, {"max_ell", v.max_ell}};
    item["next_failure"] = v.next_failure ? to_json(*v.next_failure) : Json(nullptr);
    verdicts.push_back(std::move(item));
  }
  return Json{{"family", report.family},
              {"primes", report.primes},
              {"N", report.N},
              {"r_max", report.r_max},
              {"grid", report.grid_description()},
              {"verdicts", std::move(verdicts)}};
}

Json to_json(const SweepRecord& rec) {
  Json j{{"key", rec.key()},
         {"shape", to_string(rec.shape)},
         {"lambda", rec.lambda},
         {"mu", rec.mu},
         {"pass", rec.pass},
         {"terms", rec.terms},
         {"classification", rec.classification}};
  j["failed_test"] = rec.failed_test.empty() ? Json(nullptr) : Json(rec.failed_test);
  j["detail"] = rec.detail;
  j["confirmed"] = rec.confirmed ? Json(*rec.confirmed) : Json(nullptr);
  return j;
}

Json to_json(const RecurrenceGuess& rec) {
  Json polys = Json::array();
  for (const auto& p : rec.coefficients) polys.push_back(to_json(p));
  return Json{{"order", rec.order()},
              {"degree", rec.degree()},
              {"offset", rec.offset},
              {"coefficients", std::move(polys)},
              {"fitted", rec.fitted},
              {"held_out", rec.held_out},
              {"nullspace_dimension", rec.nullspace_dimension},
              {"ambiguous", rec.nullspace_dimension > 1},
              {"operator", rec.to_string()}};
}

Json to_json(const GuessResult& res) {
  Json j{{"r_max", res.r_max}, {"d_max", res.d_max}, {"terms", res.terms}, {"candidates_tried", res.candidates_tried}};
  j["recurrence"] = res.recurrence ? to_json(*res.recurrence) : Json(nullptr);
  return j;
}

Json to_json(const QSeries& q) {
  return Json{{"level", q.level}, {"exponent", q.exponent}, {"coefficients", to_json(q.series)}};
}

Json to_json(const LegendrePoly& p) {
  Json arr = Json::array();
  for (const auto& c : p.coeffs) arr.push_back(c.get_str());
  return Json{{"degree", p.degree()}, {"coefficients", std::move(arr)}};
}

Json to_json(const PrecisionReal& x, unsigned digits) { return x.to_string(digits); }

Json to_json(const IterationState& s, unsigned digits) {
  return Json{{"k", s.k},
              {"a", to_json(s.a, digits)},
              {"b", to_json(s.b, digits)},
              {"z", to_json(s.z, digits)},
              {"x", to_json(s.x, digits)},
              {"seconds", s.seconds}};
}

Json to_json(const SeriesEvaluation& e, unsigned digits) {
  return Json{{"value", to_json(e.value, digits)}, {"terms", e.terms}, {"tail_bound", to_json(e.tail_bound, 6)}};
}

}  // namespace replica
