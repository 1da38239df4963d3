#include "replica/agm.hpp"

#include <chrono>
#include <cmath>

namespace replica {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

/// 2^e at the given precision.
PrecisionReal two_power(long e, mpfr_prec_t bits) {
  PrecisionReal r(1L, bits);
  mpfr_mul_2si(r.get(), r.get(), e, MPFR_RNDN);
  return r;
}

PrecisionReal horner(const Polynomial& p, const PrecisionReal& z) {
  PrecisionReal acc(0L, z.precision());
  for (long k = p.degree(); k >= 0; --k) {
    acc = acc * z + PrecisionReal(p.coeff(static_cast<std::size_t>(k)), z.precision());
  }
  return acc;
}

PrecisionReal max_of(const PrecisionReal& a, const PrecisionReal& b) { return a < b ? b : a; }

PrecisionReal relative_gap(const PrecisionReal& value, const PrecisionReal& reference) {
  const PrecisionReal gap = abs(value - reference);
  return reference.is_zero() ? gap : gap / abs(reference);
}

}  // namespace

std::string to_string(Scheme s) { return s == Scheme::Quadratic ? "quadratic-f7" : "quintic-f4"; }

Scheme parse_scheme(const std::string& text) {
  if (text == "quadratic" || text == "quadratic-f7") return Scheme::Quadratic;
  if (text == "quintic" || text == "quintic-f4") return Scheme::Quintic;
  throw DomainError("unknown scheme '" + text + "' (expected quadratic or quintic)");
}

// ---------------------------------------------------------------------------

Rational convergence_radius(const FamilyId& family) {
  if (family.kind == FamilyKind::U7) return Rational(1, 27);
  if (family.kind == FamilyKind::FHat4) return Rational(1, 64);
  throw DomainError("series evaluation supports u7 and fhat4, not " + family.tag());
}

namespace {

struct TailModel {
  PrecisionReal q;        // |x| / radius
  PrecisionReal abs_a;
  PrecisionReal abs_b;
  PrecisionReal geo;      // q / (1 - q)
  PrecisionReal geo2;     // q / (1 - q)^2
};

TailModel tail_model(const SeriesTarget& t, mpfr_prec_t bits) {
  const Rational radius = convergence_radius(t.family);
  TailModel m{abs(t.x.with_precision(bits)) / PrecisionReal(radius, bits), abs(t.a.with_precision(bits)),
              abs(t.b.with_precision(bits)), PrecisionReal(bits), PrecisionReal(bits)};
  if (m.q >= PrecisionReal(1L, bits)) {
    throw DivergentTarget("|x| = " + abs(t.x).to_string(12) + " is not strictly inside the disc of radius " +
                          radius.get_str() + " for " + t.family.tag() + "; no geometric tail bound exists");
  }
  const PrecisionReal rest = 1L - m.q;
  m.geo = m.q / rest;
  m.geo2 = m.geo / rest;
  return m;
}

/// Bound for sum_{k>n} |t_k (a+bk) x^k| given |t_n x^n|, using t_{k+1} <= t_k / radius.
PrecisionReal tail_after(const TailModel& m, const PrecisionReal& term_size, std::size_t n) {
  return term_size * ((m.abs_a + m.abs_b * static_cast<long>(n)) * m.geo + m.abs_b * m.geo2);
}

}  // namespace

SeriesEvaluation eval_series(const SeriesTarget& target, unsigned digits) {
  const mpfr_prec_t bits = bits_for_digits(digits + 2) + kGuardBits;
  const TailModel model = tail_model(target, bits);
  const PrecisionReal eps = PrecisionReal(std::string("1e-") + std::to_string(digits + 2), bits);

  const double q = model.q.to_double();
  const double per_term = q > 0 ? -std::log10(q) : 1.0;
  std::size_t budget = static_cast<std::size_t>(static_cast<double>(digits + 2) / per_term) + 32;

  const PrecisionReal a = target.a.with_precision(bits);
  const PrecisionReal b = target.b.with_precision(bits);
  const PrecisionReal x = target.x.with_precision(bits);
  for (;;) {
    const IntegerSequence t = family_terms(target.family, budget);
    PrecisionReal sum(0L, bits);
    PrecisionReal xp(1L, bits);
    for (std::size_t n = 0; n <= budget; ++n) {
      const PrecisionReal tx = PrecisionReal(t[n], bits) * xp;
      sum += tx * (a + b * static_cast<long>(n));
      const PrecisionReal bound = tail_after(model, abs(tx), n);
      if (bound < eps) return {sum, n + 1, bound};
      xp *= x;
    }
    budget *= 2;
  }
}

PrecisionReal partial_tail(const SeriesTarget& target, std::size_t first, std::size_t count, mpfr_prec_t bits) {
  convergence_radius(target.family);
  const IntegerSequence t = family_terms(target.family, first + count);
  const PrecisionReal a = target.a.with_precision(bits);
  const PrecisionReal b = target.b.with_precision(bits);
  const PrecisionReal x = target.x.with_precision(bits);
  PrecisionReal sum(0L, bits);
  PrecisionReal xp = pow(x, static_cast<long>(first));
  for (std::size_t n = first; n < first + count; ++n) {
    sum += abs(PrecisionReal(t[n], bits) * xp * (a + b * static_cast<long>(n)));
    xp *= x;
  }
  return sum;
}

// ---------------------------------------------------------------------------

RationalFunction quadratic_branch_map() { return RationalFunction(Polynomial{0, 1}, pow(Polynomial{1, 4}, 3)); }

RationalFunction quintic_branch_map() {
  return RationalFunction(Polynomial{0, 1} * pow(Polynomial{1, -1}, 5), pow(Polynomial{1, 4}, 5));
}

BranchRoot solve_branch_root(const RationalFunction& phi, const PrecisionReal& x, mpfr_prec_t bits) {
  const Polynomial& num = phi.numerator();
  const Polynomial& den = phi.denominator();
  if (den.coeff(0) == 0) throw PoleAtOrigin("branch map has a pole at the origin: " + phi.to_string());
  const long v = num.valuation();
  if (v < 1) throw DomainError("branch map must vanish at the origin: " + phi.to_string());

  const PrecisionReal xs = x.with_precision(bits);
  if (xs.is_zero()) return {PrecisionReal(bits), PrecisionReal(bits), PrecisionReal(bits), 0};

  const PrecisionReal ratio = xs / PrecisionReal(phi.leading_coefficient(), bits);
  if (v % 2 == 0 && ratio.sign() < 0) {
    throw NoConvergence("no real branch of " + phi.to_string() + " reaches x = " + xs.to_string(12));
  }
  PrecisionReal z = root(ratio, static_cast<unsigned long>(v));
  const PrecisionReal bracket = 2L * abs(z);

  const Polynomial dnum = num.derivative();
  const Polynomial dden = den.derivative();
  auto g = [&](const PrecisionReal& t) { return horner(num, t) - xs * horner(den, t); };
  auto dg = [&](const PrecisionReal& t) { return horner(dnum, t) - xs * horner(dden, t); };

  const PrecisionReal tol = two_power(-bits + 4, bits);
  unsigned steps = 0;
  bool converged = false;
  constexpr unsigned kBudget = 200;
  while (steps < kBudget) {
    const PrecisionReal slope = dg(z);
    if (slope.is_zero()) throw NoConvergence("Newton hit a critical point of " + phi.to_string());
    const PrecisionReal delta = g(z) / slope;
    z -= delta;
    ++steps;
    if (abs(delta) <= tol * abs(z)) {
      converged = true;
      break;
    }
  }
  if (!converged) throw NoConvergence("Newton did not settle within " + std::to_string(kBudget) + " steps");

  const PrecisionReal residual = abs(horner(num, z) / horner(den, z) - xs);
  if (residual > two_power(-bits + 32, bits) * abs(xs)) {
    throw NoConvergence("residual " + residual.to_string(6) + " too large for x = " + xs.to_string(12));
  }
  if (abs(z) >= bracket) {
    throw NoConvergence("root " + z.to_string(12) + " left the branch interval of half-width " + bracket.to_string(6));
  }
  // sign change straddling the root
  const PrecisionReal nudge = abs(z) * two_power(-bits / 2, bits);
  if ((g(z - nudge) * g(z + nudge)).sign() >= 0) {
    throw NoConvergence("no sign change of phi - x around z = " + z.to_string(12));
  }
  // exactly one crossing over the bracket, sampled on a uniform grid
  constexpr long kSamples = 64;
  int crossings = 0;
  int previous = g(-bracket).sign();
  for (long i = 1; i <= kSamples; ++i) {
    const PrecisionReal t = -bracket + bracket * (2 * i) / kSamples;
    const int s = g(t).sign();
    if (s != 0 && previous != 0 && s != previous) ++crossings;
    if (s != 0) previous = s;
  }
  if (crossings != 1) {
    throw NoConvergence("ambiguous branch: " + std::to_string(crossings) + " sign changes in (-" +
                        bracket.to_string(6) + ", " + bracket.to_string(6) + ")");
  }
  return {z, residual, bracket, steps};
}

// ---------------------------------------------------------------------------

namespace {

void mark_exhaustion(IterationRun& run, mpfr_prec_t bits) {
  if (run.exhausted_at || run.states.size() < 2) return;
  const IterationState& now = run.states.back();
  const IterationState& before = run.states[run.states.size() - 2];
  if (abs(now.a - before.a) <= two_power(-bits, bits) * abs(now.a)) run.exhausted_at = now.k;
}

}  // namespace

IterationRun run_quadratic(const PrecisionReal& a0, const PrecisionReal& b0, const PrecisionReal& x0, unsigned iters,
                           mpfr_prec_t bits) {
  const mpfr_prec_t w = bits + kGuardBits;
  IterationRun run;
  run.scheme = Scheme::Quadratic;
  run.precision = bits;
  run.x_update_deviation = PrecisionReal(0L, w);

  auto start = Clock::now();
  PrecisionReal a = a0.with_precision(w);
  PrecisionReal b = b0.with_precision(w);
  PrecisionReal x = x0.with_precision(w);
  PrecisionReal z = solve_branch_root(quadratic_branch_map(), x, w).z;
  run.states.push_back({0, a, b, z, x, seconds_since(start)});

  for (unsigned k = 0; k < iters; ++k) {
    start = Clock::now();
    const PrecisionReal radicand = 1L + 8L * z;
    if (radicand.sign() < 0) throw DomainError("negative radicand 1+8z at step " + std::to_string(k));
    const PrecisionReal m = 1L - 8L * z;
    if (m.sign() <= 0) throw DomainError("1-8z is not positive at step " + std::to_string(k));
    const PrecisionReal u = 1L + 4L * z;
    const PrecisionReal v = 1L + 2L * z;
    const PrecisionReal u2 = u * u;
    const PrecisionReal v3 = v * v * v;

    PrecisionReal a_next = a * u2 / (v * v) + b * 4L * z * u2 / (v3 * m);
    PrecisionReal b_next = 2L * b * u2 * u * (1L - z) / (v3 * m);
    PrecisionReal z_next = 2L * z * z / (1L + 6L * z + v * sqrt(radicand));
    PrecisionReal x_next = z_next / pow(1L + 4L * z_next, 3);

    const PrecisionReal predicted = z * z / v3;
    run.x_update_deviation = max_of(run.x_update_deviation, relative_gap(x_next, predicted));

    a = std::move(a_next);
    b = std::move(b_next);
    z = std::move(z_next);
    x = std::move(x_next);
    run.states.push_back({k + 1, a, b, z, x, seconds_since(start)});
    mark_exhaustion(run, bits);
  }
  return run;
}

IterationRun run_quintic(const PrecisionReal& a0, const PrecisionReal& b0, const PrecisionReal& x0, unsigned iters,
                         mpfr_prec_t bits) {
  const mpfr_prec_t w = bits + kGuardBits;
  const RationalFunction map = quintic_branch_map();
  IterationRun run;
  run.scheme = Scheme::Quintic;
  run.precision = bits;
  run.x_update_deviation = PrecisionReal(0L, w);

  auto start = Clock::now();
  PrecisionReal a = a0.with_precision(w);
  PrecisionReal b = b0.with_precision(w);
  PrecisionReal x = x0.with_precision(w);
  PrecisionReal z = solve_branch_root(map, x, w).z;
  run.states.push_back({0, a, b, z, x, seconds_since(start)});

  for (unsigned k = 0; k < iters; ++k) {
    start = Clock::now();
    const PrecisionReal u = 1L + 4L * z;
    const PrecisionReal u2 = u * u;
    const PrecisionReal z2 = z * z;
    const PrecisionReal den = 1L - 22L * z - 4L * z2;
    if (den.sign() <= 0) throw DomainError("1-22z-4z^2 is not positive at step " + std::to_string(k));

    PrecisionReal a_next = a * u2 + 8L * b * z * (1L - z) * u2 / den;
    PrecisionReal b_next = 5L * b * u2 * (1L + 2L * z - 4L * z2) / den;
    PrecisionReal x_next = pow(z, 5) * (1L - z) / u;

    a = std::move(a_next);
    b = std::move(b_next);
    x = std::move(x_next);
    z = solve_branch_root(map, x, w).z;
    run.states.push_back({k + 1, a, b, z, x, seconds_since(start)});
    mark_exhaustion(run, bits);
  }
  return run;
}

PrecisionReal b_ratio_check(const IterationRun& run) {
  if (run.states.empty()) throw DomainError("empty iteration run");
  const IterationState& first = run.states.front();
  if (first.b.is_zero()) throw DomainError("b_0 = 0: the b-ratio identity is vacuous");
  const mpfr_prec_t w = first.b.precision();

  auto shape = [&](const PrecisionReal& x) {
    if (run.scheme == Scheme::Quadratic) return 1L - 26L * x - 27L * x * x;
    return 1L - 64L * x;
  };
  const long base = run.scheme == Scheme::Quadratic ? 2 : 5;
  const PrecisionReal shape0 = shape(first.x);

  PrecisionReal worst(0L, w);
  for (const IterationState& s : run.states) {
    const PrecisionReal lhs = s.b / first.b;
    const PrecisionReal rhs = pow(PrecisionReal(base, w), static_cast<long>(s.k)) * sqrt(shape(s.x) / shape0);
    worst = max_of(worst, relative_gap(lhs, rhs));
  }
  return worst;
}

ConvergenceReport convergence_report(const IterationRun& run, const PrecisionReal& xi) {
  ConvergenceReport report;
  report.order = run.scheme == Scheme::Quadratic ? 2 : 5;
  for (const IterationState& s : run.states) {
    report.steps.push_back({s.k, abs(s.a - xi), digits_of_agreement(s.a, xi)});
  }
  // Steps whose error is within 2^16 ulps of the working floor are saturated.
  const double floor_log10 = -static_cast<double>(run.precision) * std::log10(2.0) + 16 * std::log10(2.0);
  for (std::size_t i = 0; i + 1 < report.steps.size(); ++i) {
    const double now = report.steps[i].error.log10_abs();
    const double next = report.steps[i + 1].error.log10_abs();
    if (!(next > floor_log10) || !std::isfinite(now)) break;
    report.rate_constants.push_back(std::pow(10.0, next - report.order * now));
    const long slack = static_cast<long>(report.order) * report.steps[i].digits - report.steps[i + 1].digits;
    report.digit_slack = std::max(report.digit_slack, slack);
  }
  return report;
}

// ---------------------------------------------------------------------------

IterationRun AgmInit::run(unsigned iters, mpfr_prec_t bits) const {
  if (a0.precision() < bits + kGuardBits) {
    throw PrecisionError("initial data '" + name + "' were built at " + std::to_string(a0.precision()) +
                         " bits, fewer than the " + std::to_string(bits + kGuardBits) + " the run needs");
  }
  return scheme == Scheme::Quadratic ? run_quadratic(a0, b0, x0, iters, bits) : run_quintic(a0, b0, x0, iters, bits);
}

std::vector<std::string> named_inits() { return {"ic", "n21a", "n21", "bauer", "table6-3", "table6-7"}; }

AgmInit named_init(const std::string& name, mpfr_prec_t bits) {
  const mpfr_prec_t w = bits + kGuardBits;
  const PrecisionReal pi = PrecisionReal::pi(w);
  auto q = [&](long n, long d) { return PrecisionReal(Rational(n, d), w); };
  auto r = [&](long n) { return sqrt(PrecisionReal(n, w)); };
  const FamilyId u7{FamilyKind::U7};
  const FamilyId central_cubed{FamilyKind::FHat4};

  if (name == "ic") {
    return {name, Scheme::Quadratic, u7, q(4, 125), q(21, 125), q(1, 125), "1/(8pi)", 1L / (8L * pi), false,
            "sum u_n (4+21n)/5^(3n+3) = 1/(8pi); the iteration from these data converges to the same constant"};
  }
  if (name == "n21a" || name == "n21") {
    const PrecisionReal s21 = r(21);
    const PrecisionReal s7 = r(7);
    const PrecisionReal x0 = (3L * s21 - 14L) / 56L;
    if (name == "n21a") {
      const PrecisionReal d = 5L - s21;
      const PrecisionReal big_k = 128L * (s7 - r(3)) / (49L * d * d);
      const PrecisionReal limit = sqrt(pi) / pow(gamma(q(5, 6)), 3);
      return {name, Scheme::Quadratic, u7, 3L / cbrt(big_k), PrecisionReal(0L, w), x0, "sqrt(pi)/Gamma(5/6)^3",
              limit, false, "b_0 = 0 with a_0 = 3 K^(-1/3)"};
    }
    const PrecisionReal scale = 16L * s7;
    return {name, Scheme::Quadratic, u7, (6L * s21 - 20L) / scale, 15L * (s21 - 2L) / scale, x0, "1/(2pi)",
            1L / (2L * pi), true,
            "weights (6 sqrt21 - 20, 15 (sqrt21 - 2)) of the series with value 8 sqrt7/pi, divided by 16 sqrt7"};
  }
  if (name == "bauer") {
    return {name, Scheme::Quintic, central_cubed, q(1, 4), q(1, 1), q(-1, 64), "1/(2pi)", 1L / (2L * pi), false,
            "sum C(2n,n)^3 (1/4 + n) (-1/64)^n"};
  }
  if (name == "table6-3") {
    return {name, Scheme::Quintic, central_cubed, q(1, 6), q(1, 1), q(1, 256), "2/(3pi)", 2L / (3L * pi), false,
            "sum C(2n,n)^3 (1/6 + n) / 256^n"};
  }
  if (name == "table6-7") {
    return {name, Scheme::Quintic, central_cubed, q(5, 42), q(1, 1), q(1, 4096), "8/(21pi)", 8L / (21L * pi), false,
            "sum C(2n,n)^3 (5/42 + n) / 4096^n"};
  }
  std::string known;
  for (const auto& n : named_inits()) known += (known.empty() ? "" : ", ") + n;
  throw DomainError("unknown initial data '" + name + "' (known: " + known + ")");
}

unsigned iterations_for_digits(unsigned digits, Scheme scheme) {
  const double order = scheme == Scheme::Quadratic ? 2.0 : 5.0;
  const double d = std::max(2.0, static_cast<double>(digits));
  return static_cast<unsigned>(std::ceil(std::log(d) / std::log(order))) + 1;
}

}  // namespace replica
