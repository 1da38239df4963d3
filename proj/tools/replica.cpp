#include <cxxabi.h>

#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <sstream>
#include <typeinfo>

#include "CLI11.hpp"
#include "replica/agm.hpp"
#include "replica/congruences.hpp"
#include "replica/holonomic.hpp"
#include "replica/json_io.hpp"
#include "replica/legendre.hpp"
#include "replica/modular.hpp"
#include "replica/search.hpp"
#include "replica/selfrep.hpp"
#include "replica/sequences.hpp"

#ifndef REPLICA_DOCS_DIR
#define REPLICA_DOCS_DIR "docs"
#endif

namespace fs = std::filesystem;
using namespace replica;

namespace {

enum ExitCode : int { kOk = 0, kVerificationFailed = 1, kUsage = 2, kInternal = 3 };

std::string error_name(const std::exception& e) {
  int status = 0;
  std::unique_ptr<char, void (*)(void*)> name(abi::__cxa_demangle(typeid(e).name(), nullptr, nullptr, &status),
                                              std::free);
  std::string out = status == 0 && name ? name.get() : typeid(e).name();
  if (out.starts_with("replica::")) out.erase(0, 9);
  return out;
}

/// Relative paths land in $REPLICA_OUT_DIR when it is set.
fs::path resolve_output(const std::string& path) {
  fs::path p(path);
  if (const char* dir = std::getenv("REPLICA_OUT_DIR"); dir != nullptr && *dir != '\0' && p.is_relative()) {
    p = fs::path(dir) / p;
  }
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  return p;
}

class Sink {
 public:
  explicit Sink(const std::string& path, bool append = false) {
    if (path.empty() || path == "-") return;
    file_.open(resolve_output(path), append ? std::ios::app : std::ios::trunc);
    if (!file_) throw DomainError("cannot open output file '" + path + "'");
    out_ = &file_;
  }
  std::ostream& operator*() { return *out_; }

 private:
  std::ofstream file_;
  std::ostream* out_ = &std::cout;
};

std::pair<long, long> parse_pair(const std::string& text) {
  const auto comma = text.find(',');
  if (comma == std::string::npos) throw DomainError("expected 'lambda,mu', got '" + text + "'");
  try {
    std::size_t used_l = 0;
    std::size_t used_m = 0;
    const std::string l = text.substr(0, comma);
    const std::string m = text.substr(comma + 1);
    const long lambda = std::stol(l, &used_l);
    const long mu = std::stol(m, &used_m);
    if (used_l != l.size() || used_m != m.size()) throw std::invalid_argument("trailing characters");
    return {lambda, mu};
  } catch (const std::logic_error&) {
    throw DomainError("expected 'lambda,mu', got '" + text + "'");
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("cannot read '" + path + "'");
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw DomainError("'" + path + "' is not valid JSON: " + e.what());
  }
}

std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) throw DomainError("expected a JSON array of coefficients");
  std::vector<Rational> out;
  for (const auto& v : j) {
    if (v.is_number_integer()) out.emplace_back(v.get<long>());
    else if (v.is_string()) out.push_back(parse_rational(v.get<std::string>()));
    else throw DomainError("coefficient " + v.dump() + " is neither an integer nor a rational string");
  }
  if (out.empty()) throw DomainError("empty coefficient list");
  return out;
}

/// A family chosen by --family, --c or --cvar (exactly one).
struct FamilyChoice {
  std::string tag;
  std::string c_pair;
  std::string cvar_pair;

  void add_to(CLI::App* cmd) {
    auto* f = cmd->add_option("--family", tag, "family tag: u7, f2..f5, fhat2..fhat5, gb, gc, g5, c:L,M, cvar:L,M");
    auto* c = cmd->add_option("--c", c_pair, "c(lambda, mu) family, as L,M")->allow_extra_args(false);
    auto* v = cmd->add_option("--cvar", cvar_pair, "variant-shape family, as L,M");
    f->excludes(c, v);
    c->excludes(v);
  }
  bool given() const { return !tag.empty() || !c_pair.empty() || !cvar_pair.empty(); }
  FamilyId resolve() const {
    if (!c_pair.empty()) {
      const auto [l, m] = parse_pair(c_pair);
      return {FamilyKind::CLambdaMu, l, m};
    }
    if (!cvar_pair.empty()) {
      const auto [l, m] = parse_pair(cvar_pair);
      return {FamilyKind::CVariant, l, m};
    }
    if (tag.empty()) throw DomainError("one of --family, --c, --cvar is required");
    return parse_family(tag);
  }
};

// ---------------------------------------------------------------------------

struct Common {
  std::string output;
  std::string format;
  unsigned jobs = 0;
};

void check_format(const std::string& format, std::initializer_list<const char*> allowed) {
  for (const char* a : allowed) {
    if (format == a) return;
  }
  std::string list;
  for (const char* a : allowed) list += (list.empty() ? "" : ", ") + std::string(a);
  throw DomainError("format '" + format + "' is not available here (choose " + list + ")");
}

// gen ------------------------------------------------------------------------

struct GenArgs {
  FamilyChoice family;
  std::size_t terms = 10;
  std::string modulus;
  bool list = false;
};

int cmd_gen(const GenArgs& a, const Common& c) {
  const std::string format = c.format.empty() ? "text" : c.format;
  check_format(format, {"text", "json", "csv"});
  Sink sink(c.output);
  if (a.list) {
    for (const auto& t : family_tags()) *sink << t << "\n";
    *sink << "c:L,M\ncvar:L,M\n";
    return kOk;
  }
  const FamilyId id = a.family.resolve();
  IntegerSequence values;
  if (a.modulus.empty()) {
    values = family_terms(id, a.terms);
  } else {
    Integer m;
    if (m.set_str(a.modulus, 10) != 0 || m < 2) throw DomainError("modulus must be an integer >= 2");
    values = family_residues(id, a.terms, m);
  }
  if (format == "json") {
    Json j{{"family", id.tag()}, {"terms", a.terms}, {"values", to_json(values)}};
    j["modulus"] = a.modulus.empty() ? Json(nullptr) : Json(a.modulus);
    *sink << j.dump() << "\n";
  } else if (format == "csv") {
    *sink << "n,value\n";
    for (std::size_t n = 0; n < values.size(); ++n) *sink << n << "," << values[n] << "\n";
  } else {
    for (std::size_t n = 0; n < values.size(); ++n) *sink << (n ? " " : "") << values[n];
    *sink << "\n";
  }
  return kOk;
}

// verify-feq -----------------------------------------------------------------

struct VerifyArgs {
  std::string id;
  std::string file;
  std::string series;
  std::size_t order = 50;
  bool list = false;
};

int cmd_verify(const VerifyArgs& a, const Common& c) {
  const std::string format = c.format.empty() ? "json" : c.format;
  check_format(format, {"json", "text"});
  Sink sink(c.output);
  if (a.list) {
    for (const auto& e : registry()) {
      *sink << e.id << (e.parametric ? " (parametric, e.g. " + e.sample + ")" : "") << "  " << e.description << "\n";
    }
    return kOk;
  }
  if (a.id.empty() == a.file.empty()) throw DomainError("give exactly one of --id and --file");
  const FunctionalEquation eq = a.id.empty() ? equation_from_json(read_json_file(a.file)) : registry_equation(a.id);
  const Series f = a.series.empty() ? solve(eq, a.order) : Series(rationals_from_json(read_json_file(a.series)));
  const long verified = verify(eq, f, a.order);
  const bool pass = verified >= static_cast<long>(a.order);

  Json j{{"equation", a.id.empty() ? a.file : a.id},
         {"m", eq.replication_order()},
         {"order", a.order},
         {"verified", verified},
         {"pass", pass},
         {"source", a.series.empty() ? "solve" : a.series}};
  j["first_failure"] = pass ? Json(nullptr) : Json(verified + 1);
  Series head = f.truncated(std::min<std::size_t>(f.order(), 10));
  j["coefficients"] = to_json(head);
  if (format == "json") {
    *sink << j.dump() << "\n";
  } else {
    *sink << j["equation"].get<std::string>() << ": verified through z^" << verified << " of " << a.order
          << (pass ? " (pass)" : " (FAIL at z^" + std::to_string(verified + 1) + ")") << "\n";
  }
  return pass ? kOk : kVerificationFailed;
}

// congruence -----------------------------------------------------------------

struct CongruenceArgs {
  FamilyChoice family;
  std::vector<unsigned long> primes;
  unsigned long prime_max = 50;
  std::size_t terms = 2000;
  unsigned r_max = 4;
  unsigned ell = 0;
  bool require_lucas = false;
};

int cmd_congruence(const CongruenceArgs& a, const Common& c) {
  const std::string format = c.format.empty() ? "json" : c.format;
  check_format(format, {"json", "csv", "text"});
  const FamilyId id = a.family.resolve();
  CongruenceGrid grid;
  grid.primes = a.primes.empty() ? primes_up_to(a.prime_max) : a.primes;
  grid.N = a.terms;
  grid.r_max = a.r_max;
  grid.jobs = c.jobs;
  const CongruenceReport report = congruence_report(id, grid);

  bool pass = true;
  for (const auto& v : report.verdicts) {
    if (a.require_lucas && v.lucas) pass = false;
    if (a.ell > 0 && v.max_ell < a.ell) pass = false;
  }
  Sink sink(c.output);
  if (format == "csv") {
    *sink << report.to_csv();
  } else if (format == "text") {
    *sink << report.family << ": " << report.grid_description() << "\n";
    for (const auto& v : report.verdicts) {
      *sink << "  p=" << v.p << "  lucas=" << (v.lucas ? "fail at n=" + std::to_string(v.lucas->n) : "pass")
            << "  max_ell=" << v.max_ell << "\n";
    }
    if (a.ell > 0 || a.require_lucas) *sink << (pass ? "pass" : "FAIL") << "\n";
  } else {
    Json j = to_json(report);
    j["required_ell"] = a.ell;
    j["require_lucas"] = a.require_lucas;
    j["pass"] = pass;
    *sink << j.dump() << "\n";
  }
  return pass ? kOk : kVerificationFailed;
}

// search ---------------------------------------------------------------------

struct SearchArgs {
  std::string shape = "alg0";
  std::string constraint = "none";
  long range = 0;
  long lambda_min = -10, lambda_max = 10, mu_min = -10, mu_max = 10;
  std::vector<std::string> tests{"ell"};
  unsigned ell = 1;
  unsigned long prime_min = 2;
  unsigned long prime_max = 50;
  std::size_t terms = 400;
  unsigned r_max = 4;
  std::size_t confirm = 2000;
  bool no_probes = false;
  bool resume = false;
};

int cmd_search(const SearchArgs& a, const Common& c) {
  const std::string format = c.format.empty() ? "jsonl" : c.format;
  check_format(format, {"jsonl", "json", "text"});
  SweepSpec spec;
  spec.shape = parse_shape(a.shape);
  spec.constraint = parse_constraint(a.constraint);
  if (a.range > 0) {
    spec.lambda_min = spec.mu_min = -a.range;
    spec.lambda_max = spec.mu_max = a.range;
  } else {
    spec.lambda_min = a.lambda_min;
    spec.lambda_max = a.lambda_max;
    spec.mu_min = a.mu_min;
    spec.mu_max = a.mu_max;
  }
  spec.tests.clear();
  for (const auto& t : a.tests) spec.tests.push_back(parse_sweep_test(t));
  spec.ell = a.ell;
  spec.primes.clear();
  for (unsigned long p : primes_up_to(a.prime_max)) {
    if (p >= a.prime_min) spec.primes.push_back(p);
  }
  if (spec.primes.empty()) throw DomainError("the prime range is empty");
  spec.N = a.terms;
  spec.r_max = a.r_max;
  spec.confirm_N = a.confirm;
  spec.probes = !a.no_probes;
  spec.jobs = c.jobs;
  spec.validate();

  std::set<std::string> skip;
  bool needs_newline = false;
  if (a.resume) {
    if (c.output.empty() || format != "jsonl") throw DomainError("--resume needs --output with the jsonl format");
    std::ifstream previous(resolve_output(c.output), std::ios::binary);
    if (previous) {
      skip = read_emitted_keys(previous);
      previous.clear();
      previous.seekg(0, std::ios::end);
      if (previous.tellg() > 0) {
        previous.seekg(-1, std::ios::end);
        needs_newline = previous.get() != '\n';  // an interrupted run left a partial line
      }
    }
  }
  Sink sink(c.output, a.resume);
  if (needs_newline) *sink << "\n";
  std::vector<SweepRecord> records = sweep(
      spec, [&](const SweepRecord& r) {
        if (format == "jsonl") *sink << to_json(r).dump() << std::endl;
      },
      skip);

  Json survivors = Json::array();
  for (const auto& r : records) {
    if (r.pass) survivors.push_back(Json{{"lambda", r.lambda}, {"mu", r.mu}, {"classification", r.classification}});
  }
  if (format == "json") {
    Json all = Json::array();
    for (const auto& r : records) all.push_back(to_json(r));
    *sink << Json{{"shape", to_string(spec.shape)},
                  {"constraint", to_string(spec.constraint)},
                  {"records", std::move(all)},
                  {"survivors", survivors}}
                 .dump()
          << "\n";
  } else if (format == "text") {
    for (const auto& s : survivors) {
      *sink << "(" << s["lambda"] << "," << s["mu"] << ")  " << s["classification"].get<std::string>() << "\n";
    }
  } else {
    std::cerr << (skip.empty() ? "survivors:" : "survivors among new records:");
    for (const auto& s : survivors) std::cerr << " (" << s["lambda"] << "," << s["mu"] << ")";
    std::cerr << (skip.empty() ? "" : " [resumed; " + std::to_string(skip.size()) + " keys skipped]") << "\n";
  }
  return kOk;
}

// guess ----------------------------------------------------------------------

struct GuessArgs {
  FamilyChoice family;
  std::string file;
  std::size_t terms = 0;
  std::size_t r_max = 3;
  std::size_t d_max = 4;
  std::size_t holdout = 20;
};

int cmd_guess(const GuessArgs& a, const Common& c) {
  const std::string format = c.format.empty() ? "json" : c.format;
  check_format(format, {"json", "text"});
  const GuessOptions options{a.r_max, a.d_max, a.holdout};
  const std::size_t n = a.terms > 0 ? a.terms : required_terms(options);
  GuessResult result;
  std::string source;
  if (!a.file.empty()) {
    if (a.family.given()) throw DomainError("give either a family or --file");
    std::vector<Rational> terms = rationals_from_json(read_json_file(a.file));
    if (a.terms > 0 && terms.size() > a.terms) terms.resize(a.terms);
    result = guess(terms, options);
    source = a.file;
  } else {
    const FamilyId id = a.family.resolve();
    result = guess(family_terms(id, n - 1), options);
    source = id.tag();
  }
  Sink sink(c.output);
  if (format == "json") {
    Json j = to_json(result);
    j["source"] = source;
    *sink << j.dump() << "\n";
  } else {
    *sink << source << ": "
          << (result.recurrence ? result.recurrence->to_string()
                                : "no recurrence with order <= " + std::to_string(result.r_max) + " and degree <= " +
                                      std::to_string(result.d_max) + " fits " + std::to_string(result.terms) +
                                      " terms")
          << "\n";
  }
  return kOk;
}

// modular --------------------------------------------------------------------

struct ModularArgs {
  std::vector<unsigned> levels;
  std::size_t order = 40;
  std::size_t show = 10;
};

int cmd_modular(const ModularArgs& a, const Common& c) {
  const std::string format = c.format.empty() ? "json" : c.format;
  check_format(format, {"json", "text"});
  const std::vector<unsigned> levels = a.levels.empty() ? supported_levels() : a.levels;
  for (unsigned l : levels) level_map(l);  // rejects unsupported levels before any work
  bool pass = true;
  Json out = Json::array();
  for (unsigned l : levels) {
    const long verified = parametrization_check(l, a.order);
    pass = pass && verified >= static_cast<long>(a.order);
    const std::size_t shown = std::min(a.show, a.order);
    QSeries z = z_level(l, shown);
    QSeries p = p_level(l, shown);
    out.push_back(Json{{"level", l},
                       {"family", level_family(l)},
                       {"map", to_json(level_map(l))},
                       {"map_text", level_map(l).to_string()},
                       {"z", to_json(z)},
                       {"P", to_json(p)},
                       {"order", a.order},
                       {"verified", verified},
                       {"pass", verified >= static_cast<long>(a.order)}});
  }
  Sink sink(c.output);
  if (format == "json") {
    *sink << Json{{"levels", out}, {"pass", pass}}.dump() << "\n";
  } else {
    for (const auto& e : out) {
      *sink << "level " << e["level"] << ": P = " << e["family"].get<std::string>() << "(x(z)), x = "
            << e["map_text"].get<std::string>() << ", verified through q^" << e["verified"] << "\n";
    }
  }
  return pass ? kOk : kVerificationFailed;
}

// legendre -------------------------------------------------------------------

struct LegendreArgs {
  unsigned degree = 16;
  int poly = -1;
};

int cmd_legendre(const LegendreArgs& a, const Common& c) {
  const std::string format = c.format.empty() ? "json" : c.format;
  check_format(format, {"json", "text"});
  Sink sink(c.output);
  if (a.poly >= 0) {
    const LegendrePoly p = legendre_poly(static_cast<unsigned>(a.poly));
    if (format == "json") *sink << to_json(p).dump() << "\n";
    else *sink << "P_" << a.poly << "(x) = " << p.to_string() << "\n";
    return kOk;
  }
  const auto start = std::chrono::steady_clock::now();
  const long bb = bailey_brafman_check(a.degree);
  const long leg = leg_identity_check(a.degree);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  const bool pass = bb >= static_cast<long>(a.degree) && leg >= static_cast<long>(a.degree);
  if (format == "json") {
    *sink << Json{{"degree", a.degree},
                  {"bailey_brafman", bb},
                  {"leg_identity", leg},
                  {"pass", pass},
                  {"seconds", seconds}}
                 .dump()
          << "\n";
  } else {
    *sink << "product identity verified through total degree " << bb << "\n"
          << "two-variable identity verified through total degree " << leg << "\n";
  }
  return pass ? kOk : kVerificationFailed;
}

// agm ------------------------------------------------------------------------

struct AgmArgs {
  std::string init;
  std::string scheme;
  unsigned digits = 100;
  unsigned iters = 0;
  unsigned shown = 40;
  std::string constant_file;
};

int cmd_agm(const AgmArgs& a, const Common& c) {
  const std::string format = c.format.empty() ? "jsonl" : c.format;
  check_format(format, {"jsonl", "text"});
  if (a.digits == 0) throw DomainError("--digits must be positive");
  const mpfr_prec_t bits = bits_for_digits(a.digits) + 16;
  const AgmInit init = named_init(a.init, bits);
  if (!a.scheme.empty() && parse_scheme(a.scheme) != init.scheme) {
    throw DomainError("initial data '" + a.init + "' belong to the " + to_string(init.scheme) + " scheme");
  }
  const unsigned budget = a.iters > 0 ? a.iters : iterations_for_digits(a.digits, init.scheme) + 2;
  const IterationRun run = init.run(budget, bits);

  Sink sink(c.output);
  const PrecisionReal floor = pow(PrecisionReal(10L, bits), -static_cast<long>(a.digits));
  long digits = 0;
  std::size_t last = 0;
  for (const IterationState& s : run.states) {
    const PrecisionReal err = abs(s.a - init.limit);
    digits = std::min<long>(digits_of_agreement(s.a, init.limit), a.digits);
    const bool reached = err < floor;
    const std::string err_text = reached ? "< 1e-" + std::to_string(a.digits) : err.to_string(4);
    if (format == "jsonl") {
      *sink << Json{{"k", s.k},
                    {"digits_correct", digits},
                    {"a_k", s.a.to_string(a.shown)},
                    {"error", err_text},
                    {"seconds", s.seconds}}
                   .dump()
            << "\n";
    } else {
      *sink << "k=" << s.k << "  a_k=" << s.a.to_string(std::min(a.shown, 30U)) << "  |a_k - " << init.limit_label
            << "| " << err_text << "  (" << digits << " digits)\n";
    }
    last = s.k;
    if (reached && a.iters == 0) break;
  }
  const bool pass = digits >= static_cast<long>(a.digits);

  std::string constant_path;
  if (!a.constant_file.empty() || std::getenv("REPLICA_OUT_DIR") != nullptr) {
    const std::string name = a.constant_file.empty() ? "agm_" + a.init + ".txt" : a.constant_file;
    const fs::path p = resolve_output(name);
    std::ofstream out(p);
    if (!out) throw DomainError("cannot write '" + p.string() + "'");
    out << run.states[last].a.to_fixed(a.digits) << "\n";
    constant_path = p.string();
  }

  Json summary{{"summary", true},
               {"init", init.name},
               {"scheme", to_string(init.scheme)},
               {"limit", init.limit_label},
               {"derived", init.derived},
               {"note", init.note},
               {"precision_bits", bits},
               {"steps", last},
               {"digits_correct", digits},
               {"pass", pass}};
  summary["b_ratio_deviation"] = init.b0.is_zero() ? Json(nullptr) : Json(b_ratio_check(run).to_string(4));
  summary["exhausted_at"] = run.exhausted_at && *run.exhausted_at <= last ? Json(*run.exhausted_at) : Json(nullptr);
  summary["constant_file"] = constant_path.empty() ? Json(nullptr) : Json(constant_path);
  if (format == "jsonl") {
    *sink << summary.dump() << "\n";
  } else {
    *sink << init.name << " -> " << init.limit_label << ": " << digits << " digits after " << last << " steps"
          << (init.derived ? " (derived initial data)" : "") << "\n";
  }
  return pass ? kOk : kVerificationFailed;
}

// series ---------------------------------------------------------------------

struct SeriesArgs {
  std::string init;
  std::string family = "u7";
  std::string a, b, x;
  unsigned digits = 50;
};

int cmd_series(const SeriesArgs& s, const Common& c) {
  const std::string format = c.format.empty() ? "json" : c.format;
  check_format(format, {"json", "text"});
  const mpfr_prec_t bits = bits_for_digits(s.digits) + 64;
  std::optional<AgmInit> init;
  SeriesTarget target{FamilyId{}, PrecisionReal(bits), PrecisionReal(bits), PrecisionReal(bits), ""};
  if (!s.init.empty()) {
    init = named_init(s.init, bits);
    target = init->series();
  } else {
    if (s.a.empty() || s.b.empty() || s.x.empty()) throw DomainError("give --init or all of --a, --b, --x");
    target = {parse_family(s.family), PrecisionReal(parse_rational(s.a), bits), PrecisionReal(parse_rational(s.b), bits),
              PrecisionReal(parse_rational(s.x), bits), ""};
  }
  const SeriesEvaluation e = eval_series(target, s.digits);
  Json j = to_json(e, s.digits);
  j["family"] = target.family.tag();
  j["digits"] = s.digits;
  if (init) {
    j["init"] = init->name;
    j["limit"] = init->limit_label;
    j["digits_agreement"] = std::min<long>(digits_of_agreement(e.value, init->limit), s.digits);
  }
  Sink sink(c.output);
  if (format == "json") {
    *sink << j.dump() << "\n";
  } else {
    *sink << e.value.to_string(s.digits) << "  (" << e.terms << " terms, tail < " << e.tail_bound.to_string(3) << ")\n";
  }
  return kOk;
}

// paper-map ------------------------------------------------------------------

int cmd_map(const Common& c) {
  const char* env = std::getenv("REPLICA_DOCS_DIR");
  const fs::path path = fs::path(env != nullptr ? env : REPLICA_DOCS_DIR) / "equation_map.md";
  std::ifstream in(path);
  if (!in) throw DomainError("equation map not found at " + path.string() + " (set REPLICA_DOCS_DIR)");
  Sink sink(c.output);
  *sink << in.rdbuf();
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Self-replicating functional equations: sequences, congruences, recurrences, iterations"};
  app.set_config("--config", "", "TOML file whose keys mirror the flags");
  app.require_subcommand(1);
  app.fallthrough();
  Common common;
  app.add_option("-o,--output", common.output, "output file (default stdout; relative to $REPLICA_OUT_DIR if set)");
  app.add_option("--format", common.format, "json, jsonl, csv or text (per subcommand)");
  app.add_option("-j,--jobs", common.jobs, "worker threads (0 = machine parallelism)");

  int code = kOk;
  std::function<int()> action;

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "print terms of a sequence family");
  gen.family.add_to(g);
  g->add_option("-n,--terms", gen.terms, "last index N (prints terms 0..N)")->check(CLI::NonNegativeNumber);
  g->add_option("--mod", gen.modulus, "reduce modulo m");
  g->add_flag("--list", gen.list, "list family tags");
  g->callback([&] { action = [&] { return cmd_gen(gen, common); }; });

  VerifyArgs ver;
  auto* v = app.add_subcommand("verify-feq", "solve and verify a self-replicating functional equation");
  v->add_option("--id", ver.id, "registry id, e.g. alg, alg0:-4,2, f5");
  v->add_option("--file", ver.file, "equation as JSON");
  v->add_option("--series", ver.series, "verify this coefficient list (JSON array) instead of the solution");
  v->add_option("--order", ver.order, "order N");
  v->add_flag("--list", ver.list, "list registry ids");
  v->callback([&] { action = [&] { return cmd_verify(ver, common); }; });

  CongruenceArgs con;
  auto* cg = app.add_subcommand("congruence", "Lucas and supercongruence checks on a prime grid");
  con.family.add_to(cg);
  cg->add_option("--primes", con.primes, "explicit primes")->delimiter(',');
  cg->add_option("--prime-max", con.prime_max, "all primes up to this bound");
  cg->add_option("-n,--terms", con.terms, "terms checked");
  cg->add_option("--r-max", con.r_max, "largest r in c(m p^r) = c(m p^(r-1))");
  cg->add_option("--ell", con.ell, "require this level at every prime (exit 1 otherwise)");
  cg->add_flag("--lucas", con.require_lucas, "require Lucas congruences at every prime");
  cg->callback([&] { action = [&] { return cmd_congruence(con, common); }; });

  SearchArgs sea;
  auto* s = app.add_subcommand("search", "sweep (lambda, mu) pairs through congruence filters");
  s->add_option("--shape", sea.shape, "alg0 or variant");
  s->add_option("--constraint", sea.constraint, "none, lambda2-eq-mu, lambda-eq-minus-2mu");
  s->add_option("--range", sea.range, "|lambda|, |mu| <= R");
  s->add_option("--lambda-min", sea.lambda_min);
  s->add_option("--lambda-max", sea.lambda_max);
  s->add_option("--mu-min", sea.mu_min);
  s->add_option("--mu-max", sea.mu_max);
  s->add_option("--tests", sea.tests, "ordered filters: ell, lucas, holonomic")->delimiter(',');
  s->add_option("--ell", sea.ell, "supercongruence level for the ell filter");
  s->add_option("--prime-min", sea.prime_min);
  s->add_option("--prime-max", sea.prime_max);
  s->add_option("-n,--terms", sea.terms);
  s->add_option("--r-max", sea.r_max);
  s->add_option("--confirm", sea.confirm, "re-test survivors with this many terms (0 = off)");
  s->add_flag("--no-probes", sea.no_probes, "skip the sub-grid probes");
  s->add_flag("--resume", sea.resume, "skip keys already in --output");
  s->callback([&] { action = [&] { return cmd_search(sea, common); }; });

  GuessArgs gue;
  auto* gs = app.add_subcommand("guess", "guess a linear recurrence with polynomial coefficients");
  gue.family.add_to(gs);
  gs->add_option("--file", gue.file, "terms as a JSON array");
  gs->add_option("-n,--terms", gue.terms, "number of terms used (default: the minimum for the envelope)");
  gs->add_option("--r-max", gue.r_max);
  gs->add_option("--d-max", gue.d_max);
  gs->add_option("--holdout", gue.holdout);
  gs->callback([&] { action = [&] { return cmd_guess(gue, common); }; });

  ModularArgs mod;
  auto* m = app.add_subcommand("modular", "q-expansions and the level-l parametrizations");
  m->add_option("--level", mod.levels, "levels (default all)")->delimiter(',');
  m->add_option("--order", mod.order, "q-order checked");
  m->add_option("--show", mod.show, "coefficients printed per series");
  m->callback([&] { action = [&] { return cmd_modular(mod, common); }; });

  LegendreArgs leg;
  auto* l = app.add_subcommand("legendre", "formal checks of the Legendre generating-function identities");
  l->add_option("-D,--degree", leg.degree, "total degree");
  l->add_option("--poly", leg.poly, "print P_n instead");
  l->callback([&] { action = [&] { return cmd_legendre(leg, common); }; });

  AgmArgs agm;
  auto* ag = app.add_subcommand("agm", "run an AGM-type iteration from named initial data");
  ag->add_option("--init", agm.init, "ic, n21a, n21, bauer, table6-3, table6-7")->required();
  ag->add_option("--scheme", agm.scheme, "quadratic or quintic (must match the data)");
  ag->add_option("--digits", agm.digits, "target decimal digits");
  ag->add_option("--iters", agm.iters, "fixed step count (default: stop at the target)");
  ag->add_option("--show", agm.shown, "significant digits printed per a_k");
  ag->add_option("--constant-file", agm.constant_file, "write the final constant here");
  ag->callback([&] { action = [&] { return cmd_agm(agm, common); }; });

  SeriesArgs ser;
  auto* sr = app.add_subcommand("series", "evaluate a Ramanujan-type series sum t_n (a + b n) x^n");
  sr->add_option("--init", ser.init, "named data");
  sr->add_option("--family", ser.family, "u7 or fhat4");
  sr->add_option("--a", ser.a);
  sr->add_option("--b", ser.b);
  sr->add_option("--x", ser.x);
  sr->add_option("--digits", ser.digits);
  sr->callback([&] { action = [&] { return cmd_series(ser, common); }; });

  auto* pm = app.add_subcommand("paper-map", "print the table from identities to commands");
  pm->callback([&] { action = [&] { return cmd_map(common); }; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }
  try {
    code = action();
  } catch (const DomainError& e) {
    std::cerr << "error: " << error_name(e) << ": " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << error_name(e) << ": " << e.what() << "\n";
    return kInternal;
  }
  return code;
}
