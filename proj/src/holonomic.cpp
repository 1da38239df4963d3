#include "replica/holonomic.hpp"

#include <algorithm>
#include <cstdint>
#include <sstream>

namespace replica {

RecurrenceGuess RecurrenceGuess::make(std::vector<Polynomial> coefficients, long offset) {
  if (coefficients.empty() || coefficients.back().is_zero()) {
    throw DomainError("recurrence needs a nonzero leading coefficient polynomial");
  }
  RecurrenceGuess g;
  g.coefficients = std::move(coefficients);
  g.offset = offset;
  return g;
}

long RecurrenceGuess::degree() const {
  long d = -1;
  for (const auto& p : coefficients) d = std::max(d, p.degree());
  return d;
}

std::string RecurrenceGuess::to_string() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = coefficients.size(); i-- > 0;) {
    if (coefficients[i].is_zero()) continue;
    if (!first) os << " + ";
    first = false;
    const long shift = static_cast<long>(i) - offset;
    os << "(" << coefficients[i].to_string("n") << ")*a(n";
    if (shift > 0) os << "+" << shift;
    if (shift < 0) os << shift;
    os << ")";
  }
  os << " = 0";
  return os.str();
}

std::optional<long> verify_rec(const RecurrenceGuess& rec, const std::vector<Rational>& terms) {
  if (rec.coefficients.empty() || rec.coefficients.back().is_zero()) {
    throw DomainError("recurrence needs a nonzero leading coefficient polynomial");
  }
  const long r = static_cast<long>(rec.order());
  const long size = static_cast<long>(terms.size());
  Rational acc;
  for (long n = rec.offset; n + r - rec.offset < size; ++n) {
    acc = 0;
    const Integer nn(n);
    for (long i = 0; i <= r; ++i) {
      const long idx = n + i - rec.offset;
      if (idx < 0) continue;
      acc += Rational(rec.coefficients[static_cast<std::size_t>(i)](nn)) * terms[static_cast<std::size_t>(idx)];
    }
    if (acc != 0) return n;
  }
  return std::nullopt;
}

std::optional<long> verify_rec(const RecurrenceGuess& rec, const IntegerSequence& terms) {
  return verify_rec(rec, std::vector<Rational>(terms.begin(), terms.end()));
}

std::size_t required_terms(const GuessOptions& o) { return (o.r_max + 1) * (o.d_max + 1) + o.r_max + o.holdout; }

namespace {

// Arithmetic modulo the Mersenne prime 2^61 - 1.
constexpr std::uint64_t kPrime = (std::uint64_t{1} << 61) - 1;

std::uint64_t mulmod(std::uint64_t a, std::uint64_t b) {
  const unsigned __int128 t = static_cast<unsigned __int128>(a) * b;
  std::uint64_t lo = static_cast<std::uint64_t>(t & kPrime);
  std::uint64_t hi = static_cast<std::uint64_t>(t >> 61);
  std::uint64_t s = lo + hi;
  if (s >= kPrime) s -= kPrime;
  return s;
}

std::uint64_t powmod(std::uint64_t a, std::uint64_t e) {
  std::uint64_t r = 1;
  while (e > 0) {
    if (e & 1) r = mulmod(r, a);
    a = mulmod(a, a);
    e >>= 1;
  }
  return r;
}

std::uint64_t reduce_integer(const Integer& z) {
  static const Integer P = [] {
    Integer p = 1;
    p <<= 61;
    return Integer(p - 1);
  }();
  Integer r;
  mpz_mod(r.get_mpz_t(), z.get_mpz_t(), P.get_mpz_t());
  return r.get_ui();
}

// nullopt when the denominator vanishes mod p.
std::optional<std::uint64_t> reduce_rational(const Rational& q) {
  const std::uint64_t den = reduce_integer(q.get_den());
  if (den == 0) return std::nullopt;
  return mulmod(reduce_integer(q.get_num()), powmod(den, kPrime - 2));
}

struct Candidate {
  std::size_t r;
  std::size_t d;
};

// Rank of a matrix mod p together with the original indices of a maximal
// set of independent rows.
std::vector<std::size_t> independent_rows_mod_p(std::vector<std::vector<std::uint64_t>> m, std::size_t cols) {
  std::vector<std::size_t> rows_used;
  std::vector<std::size_t> original(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) original[i] = i;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < m.size(); ++c) {
    std::size_t pivot = rank;
    while (pivot < m.size() && m[pivot][c] == 0) ++pivot;
    if (pivot == m.size()) continue;
    std::swap(m[rank], m[pivot]);
    std::swap(original[rank], original[pivot]);
    const std::uint64_t inv = powmod(m[rank][c], kPrime - 2);
    for (std::size_t i = rank + 1; i < m.size(); ++i) {
      if (m[i][c] == 0) continue;
      const std::uint64_t f = mulmod(m[i][c], inv);
      for (std::size_t k = c; k < cols; ++k) {
        const std::uint64_t sub = mulmod(f, m[rank][k]);
        m[i][k] = m[i][k] >= sub ? m[i][k] - sub : m[i][k] + kPrime - sub;
      }
    }
    rows_used.push_back(original[rank]);
    ++rank;
  }
  return rows_used;
}

// Kernel basis of an integer matrix via fraction-free (Bareiss) elimination
// followed by rational back substitution; vectors are returned primitive.
std::vector<std::vector<Integer>> integer_kernel(std::vector<std::vector<Integer>> a, std::size_t cols) {
  const std::size_t rows = a.size();
  std::vector<std::size_t> pivot_cols;
  Integer prev = 1;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t pivot = rank;
    while (pivot < rows && a[pivot][c] == 0) ++pivot;
    if (pivot == rows) continue;
    std::swap(a[rank], a[pivot]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      for (std::size_t k = c + 1; k < cols; ++k) {
        Integer v = a[rank][c] * a[i][k] - a[i][c] * a[rank][k];
        mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
        a[i][k] = std::move(v);
      }
      a[i][c] = 0;
    }
    prev = a[rank][c];
    pivot_cols.push_back(c);
    ++rank;
  }
  std::vector<bool> is_pivot(cols, false);
  for (std::size_t c : pivot_cols) is_pivot[c] = true;

  std::vector<std::vector<Integer>> basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Rational> x(cols, Rational(0));
    x[free] = 1;
    for (std::size_t k = rank; k-- > 0;) {
      const std::size_t pc = pivot_cols[k];
      Rational s = 0;
      for (std::size_t c = pc + 1; c < cols; ++c) {
        if (x[c] != 0 && a[k][c] != 0) s += Rational(a[k][c]) * x[c];
      }
      x[pc] = -s / Rational(a[k][pc]);
    }
    Integer lcm = 1;
    for (const auto& q : x) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Integer> v(cols);
    Integer g = 0;
    for (std::size_t c = 0; c < cols; ++c) {
      v[c] = Rational(x[c] * lcm).get_num();
      mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), v[c].get_mpz_t());
    }
    if (g > 1) {
      for (auto& e : v) mpz_divexact(e.get_mpz_t(), e.get_mpz_t(), g.get_mpz_t());
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

std::vector<Rational> row(const std::vector<Rational>& terms, std::size_t n, const Candidate& cand) {
  std::vector<Rational> out;
  out.reserve((cand.r + 1) * (cand.d + 1));
  for (std::size_t i = 0; i <= cand.r; ++i) {
    Rational v = terms[n + i];
    for (std::size_t j = 0; j <= cand.d; ++j) {
      out.push_back(v);
      v *= static_cast<unsigned long>(n);
    }
  }
  return out;
}

std::optional<RecurrenceGuess> try_candidate(const std::vector<Rational>& terms, const Candidate& cand,
                                             std::size_t holdout) {
  const std::size_t cols = (cand.r + 1) * (cand.d + 1);
  const std::size_t equations = terms.size() - cand.r;
  const std::size_t fit = equations - holdout;

  std::vector<std::vector<Rational>> rows;
  rows.reserve(equations);
  for (std::size_t n = 0; n < equations; ++n) rows.push_back(row(terms, n, cand));

  // Rank mod p over the fitting rows. Full column rank mod p certifies a
  // trivial kernel over Q as well.
  std::vector<std::vector<std::uint64_t>> modp(fit, std::vector<std::uint64_t>(cols));
  bool reducible = true;
  for (std::size_t n = 0; n < fit && reducible; ++n) {
    for (std::size_t c = 0; c < cols; ++c) {
      const auto v = reduce_rational(rows[n][c]);
      if (!v) {
        reducible = false;
        break;
      }
      modp[n][c] = *v;
    }
  }
  std::vector<std::size_t> chosen;
  if (reducible) {
    chosen = independent_rows_mod_p(std::move(modp), cols);
    if (chosen.size() == cols) return std::nullopt;
  } else {
    for (std::size_t n = 0; n < fit; ++n) chosen.push_back(n);
  }

  std::vector<std::vector<Integer>> mat;
  for (std::size_t idx : chosen) {
    Integer lcm = 1;
    for (const auto& q : rows[idx]) mpz_lcm(lcm.get_mpz_t(), lcm.get_mpz_t(), q.get_den_mpz_t());
    std::vector<Integer> ints(cols);
    for (std::size_t c = 0; c < cols; ++c) ints[c] = Rational(rows[idx][c] * lcm).get_num();
    mat.push_back(std::move(ints));
  }
  auto basis = integer_kernel(std::move(mat), cols);
  if (basis.empty()) return std::nullopt;

  auto support = [](const std::vector<Integer>& v) {
    std::vector<std::size_t> s;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] != 0) s.push_back(i);
    }
    return s;
  };
  std::stable_sort(basis.begin(), basis.end(),
                   [&](const auto& x, const auto& y) { return support(x) < support(y); });

  for (const auto& v : basis) {
    std::vector<Polynomial> polys;
    for (std::size_t i = 0; i <= cand.r; ++i) {
      std::vector<Integer> coeffs(v.begin() + static_cast<long>(i * (cand.d + 1)),
                                  v.begin() + static_cast<long>((i + 1) * (cand.d + 1)));
      polys.emplace_back(std::move(coeffs));
    }
    if (polys.back().is_zero()) continue;
    if (polys.back().leading() < 0) {
      for (auto& p : polys) p = -p;
    }
    bool ok = true;
    for (std::size_t n = 0; n < equations && ok; ++n) {
      Rational acc = 0;
      for (std::size_t c = 0; c < cols; ++c) {
        if (v[c] != 0) acc += Rational(v[c]) * rows[n][c];
      }
      ok = acc == 0;
    }
    if (!ok) continue;
    RecurrenceGuess g = RecurrenceGuess::make(std::move(polys), 0);
    g.fitted = fit;
    g.held_out = holdout;
    g.nullspace_dimension = basis.size();
    return g;
  }
  return std::nullopt;
}

}  // namespace

GuessResult guess(const std::vector<Rational>& terms, const GuessOptions& options) {
  if (options.r_max < 1) throw DomainError("r_max must be at least 1");
  const std::size_t need = required_terms(options);
  if (terms.size() < need) {
    throw InsufficientTerms("guessing up to order " + std::to_string(options.r_max) + " and degree " +
                            std::to_string(options.d_max) + " needs " + std::to_string(need) + " terms, got " +
                            std::to_string(terms.size()));
  }
  std::vector<Candidate> candidates;
  for (std::size_t r = 1; r <= options.r_max; ++r) {
    for (std::size_t d = 0; d <= options.d_max; ++d) candidates.push_back({r, d});
  }
  std::stable_sort(candidates.begin(), candidates.end(), [](const Candidate& a, const Candidate& b) {
    return a.r + a.d != b.r + b.d ? a.r + a.d < b.r + b.d : a.r < b.r;
  });

  GuessResult result;
  result.r_max = options.r_max;
  result.d_max = options.d_max;
  result.terms = terms.size();
  for (const auto& cand : candidates) {
    ++result.candidates_tried;
    if (auto g = try_candidate(terms, cand, options.holdout)) {
      result.recurrence = std::move(g);
      return result;
    }
  }
  return result;
}

GuessResult guess(const IntegerSequence& terms, const GuessOptions& options) {
  return guess(std::vector<Rational>(terms.begin(), terms.end()), options);
}

}  // namespace replica
