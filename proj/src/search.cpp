#include "replica/search.hpp"

#include <istream>
#include <mutex>

#include "replica/congruences.hpp"
#include "replica/holonomic.hpp"
#include "replica/json_io.hpp"
#include "replica/parallel.hpp"
#include "replica/sequences.hpp"

namespace replica {

std::string to_string(Shape s) { return s == Shape::Alg0 ? "alg0" : "variant"; }

std::string to_string(Constraint c) {
  switch (c) {
    case Constraint::None: return "none";
    case Constraint::LambdaSquaredIsMu: return "lambda^2=mu";
    case Constraint::LambdaIsMinusTwoMu: return "lambda=-2mu";
  }
  return "none";
}

std::string to_string(SweepTest t) {
  switch (t) {
    case SweepTest::Lucas: return "lucas";
    case SweepTest::Ell: return "ell";
    case SweepTest::Holonomic: return "holonomic";
  }
  return "ell";
}

Shape parse_shape(const std::string& s) {
  if (s == "alg0") return Shape::Alg0;
  if (s == "variant") return Shape::Variant;
  throw DomainError("unknown shape '" + s + "' (expected alg0 or variant)");
}

Constraint parse_constraint(const std::string& s) {
  if (s == "none") return Constraint::None;
  if (s == "lambda^2=mu" || s == "lambda2=mu" || s == "lambda2-eq-mu" || s == "square") return Constraint::LambdaSquaredIsMu;
  if (s == "lambda=-2mu" || s == "lambda-eq-minus-2mu" || s == "minus-two") return Constraint::LambdaIsMinusTwoMu;
  throw DomainError("unknown constraint '" + s + "' (expected none, lambda2-eq-mu or lambda-eq-minus-2mu)");
}

SweepTest parse_sweep_test(const std::string& s) {
  if (s == "lucas") return SweepTest::Lucas;
  if (s == "ell") return SweepTest::Ell;
  if (s == "holonomic") return SweepTest::Holonomic;
  throw DomainError("unknown sweep test '" + s + "' (expected lucas, ell or holonomic)");
}

void SweepSpec::validate() const {
  if (lambda_min > lambda_max) throw DomainError("empty lambda range");
  if (constraint == Constraint::None && mu_min > mu_max) throw DomainError("empty mu range");
  if (constraint == Constraint::LambdaIsMinusTwoMu && mu_min > mu_max) throw DomainError("empty mu range");
  if (N < 50) throw DomainError("term budget N must be at least 50 for meaningful filtering");
  if (tests.empty()) throw DomainError("no sweep tests requested");
  if (primes.empty()) throw DomainError("empty prime set");
  if (ell > 3) throw DomainError("ell must be in 0..3");
}

std::vector<std::pair<long, long>> SweepSpec::pairs() const {
  std::vector<std::pair<long, long>> out;
  switch (constraint) {
    case Constraint::None:
      for (long l = lambda_min; l <= lambda_max; ++l) {
        for (long m = mu_min; m <= mu_max; ++m) {
          if (l != m) out.emplace_back(l, m);
        }
      }
      break;
    case Constraint::LambdaSquaredIsMu:
      for (long l = lambda_min; l <= lambda_max; ++l) {
        if (l != l * l) out.emplace_back(l, l * l);
      }
      break;
    case Constraint::LambdaIsMinusTwoMu:
      for (long m = mu_min; m <= mu_max; ++m) {
        if (m != 0) out.emplace_back(-2 * m, m);
      }
      break;
  }
  return out;
}

std::string SweepRecord::key() const {
  return to_string(shape) + ":" + std::to_string(lambda) + "," + std::to_string(mu);
}

std::string classify_family(long lambda, long mu) {
  if (lambda == mu) return "degenerate";
  if (lambda == 2 && mu == 4) return "level-7";
  if (lambda == -2 && mu == 4) return "level-3";
  if (lambda == -1 && mu == 1) return "algebraic 2^n C(2n,n)";
  if (lambda == 4 && mu == 16) return "level-3-weight-4";
  if (lambda == 16 && mu == 256) return "level-1-weight-8";
  if (mu % 2 == 0 && lambda == -2 * mu) return "nonholonomic-suspect";
  return "unknown";
}

std::string classify_variant(long lambda, long mu) {
  if (lambda == mu) return "degenerate";
  if (lambda == 0 && mu == 4) return "C(2n,n)^2 (level 4)";
  if (lambda == -8 && mu == 16) return "level-2 f2";
  if (lambda == -mu - 2) return "algebraic (" + std::to_string(mu + 1) + ")^n C(2n,n)";
  return "unknown";
}

namespace {

FamilyId family_of(Shape shape, long lambda, long mu) {
  return {shape == Shape::Alg0 ? FamilyKind::CLambdaMu : FamilyKind::CVariant, lambda, mu};
}

std::string describe(const LucasFailure& f, unsigned long p) {
  return "lucas p=" + std::to_string(p) + " n=" + std::to_string(f.n) + ": c(n)=" + f.value.get_str() +
         " vs digit product " + f.product.get_str() + " (mod p)";
}

std::string describe(const SuperFailure& f, unsigned long p) {
  return "ell=" + std::to_string(f.ell) + " p=" + std::to_string(p) + " m=" + std::to_string(f.m) +
         " r=" + std::to_string(f.r);
}

// One test on one grid; returns a failure description or nothing.
std::optional<std::string> run_test(SweepTest test, const SweepSpec& spec, long lambda, long mu,
                                    const std::vector<unsigned long>& primes, std::size_t N) {
  const FamilyId family = family_of(spec.shape, lambda, mu);
  switch (test) {
    case SweepTest::Lucas: {
      Integer m = 1;
      for (unsigned long p : primes) m *= p;
      const IntegerSequence res = family_residues(family, N, m);
      for (unsigned long p : primes) {
        if (auto f = lucas_check(res, p, N)) return describe(*f, p);
      }
      return std::nullopt;
    }
    case SweepTest::Ell: {
      const Integer m = grid_modulus(primes, N, spec.r_max, spec.ell);
      const IntegerSequence res = family_residues(family, N, m);
      for (unsigned long p : primes) {
        if (auto f = super_check(res, p, spec.ell, spec.r_max, N)) return describe(*f, p);
      }
      return std::nullopt;
    }
    case SweepTest::Holonomic: {
      const GuessOptions opts{3, 4, 20};
      const std::size_t count = std::max<std::size_t>(required_terms(opts), std::min<std::size_t>(N, 120));
      const IntegerSequence terms = spec.shape == Shape::Alg0 ? c_lambda_mu(lambda, mu, count - 1)
                                                               : c_variant(lambda, mu, count - 1);
      if (guess(terms, opts).recurrence) return std::nullopt;
      return std::string("no recurrence with order <= 3, degree <= 4 in ") + std::to_string(count) + " terms";
    }
  }
  return std::nullopt;
}

constexpr std::size_t kProbeTerms = 64;
constexpr unsigned long kProbePrimeBound = 13;

std::optional<std::pair<std::string, std::string>> run_all(const SweepSpec& spec, long lambda, long mu,
                                                           std::size_t N) {
  std::vector<unsigned long> probe_primes;
  for (unsigned long p : spec.primes) {
    if (p <= kProbePrimeBound) probe_primes.push_back(p);
  }
  for (SweepTest t : spec.tests) {
    // Probe grids are subsets of the full grid (Lucas/ell only).
    if (spec.probes && t != SweepTest::Holonomic && N > kProbeTerms && !probe_primes.empty()) {
      if (auto f = run_test(t, spec, lambda, mu, probe_primes, kProbeTerms)) return std::make_pair(to_string(t), *f);
    }
    if (auto f = run_test(t, spec, lambda, mu, spec.primes, N)) return std::make_pair(to_string(t), *f);
  }
  return std::nullopt;
}

}  // namespace

SweepRecord test_pair(const SweepSpec& spec, long lambda, long mu) {
  SweepRecord rec;
  rec.shape = spec.shape;
  rec.lambda = lambda;
  rec.mu = mu;
  rec.terms = spec.N;
  rec.classification = spec.shape == Shape::Alg0 ? classify_family(lambda, mu) : classify_variant(lambda, mu);
  if (auto f = run_all(spec, lambda, mu, spec.N)) {
    rec.failed_test = f->first;
    rec.detail = f->second;
    return rec;
  }
  rec.pass = true;
  if (spec.confirm_N > spec.N) {
    SweepSpec confirm = spec;
    confirm.probes = false;
    if (auto f = run_all(confirm, lambda, mu, spec.confirm_N)) {
      rec.pass = false;
      rec.confirmed = false;
      rec.failed_test = f->first;
      rec.detail = f->second + " (confirmation, N=" + std::to_string(spec.confirm_N) + ")";
    } else {
      rec.confirmed = true;
    }
    rec.terms = spec.confirm_N;
  }
  return rec;
}

std::vector<SweepRecord> sweep(const SweepSpec& spec, const std::function<void(const SweepRecord&)>& emit,
                               const std::set<std::string>& skip) {
  spec.validate();
  std::vector<std::pair<long, long>> todo;
  for (const auto& [l, m] : spec.pairs()) {
    SweepRecord probe;
    probe.shape = spec.shape;
    probe.lambda = l;
    probe.mu = m;
    if (!skip.count(probe.key())) todo.emplace_back(l, m);
  }
  std::vector<std::optional<SweepRecord>> slots(todo.size());
  std::mutex mutex;
  std::size_t next_emit = 0;
  parallel_for(todo.size(), spec.jobs, [&](std::size_t i) {
    SweepRecord rec = test_pair(spec, todo[i].first, todo[i].second);
    std::lock_guard lock(mutex);
    slots[i] = std::move(rec);
    // deterministic streaming: flush the completed prefix in order
    while (next_emit < slots.size() && slots[next_emit]) {
      if (emit) emit(*slots[next_emit]);
      ++next_emit;
    }
  });
  std::vector<SweepRecord> out;
  out.reserve(slots.size());
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

std::set<std::string> read_emitted_keys(std::istream& in) {
  std::set<std::string> keys;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    try {
      const auto j = nlohmann::json::parse(line);
      if (j.contains("key") && j["key"].is_string()) keys.insert(j["key"].get<std::string>());
    } catch (const nlohmann::json::exception&) {
      // a partially written final line is simply re-run
    }
  }
  return keys;
}

}  // namespace replica
