#include "replica/sequences.hpp"

#include <map>
#include <mutex>
#include <shared_mutex>

#include "replica/series.hpp"

namespace replica {

Integer u_binomial(unsigned n) {
  Integer sum = 0;
  for (unsigned k = 0; k <= n; ++k) {
    const Integer b = binomial(n, k);
    sum += b * b * binomial(n + k, n) * binomial(2 * k, n);
  }
  return sum;
}

Integer u_binomial_alternating(unsigned n) {
  Integer sum = 0;
  for (unsigned k = 0; k <= n; ++k) {
    const Integer b = binomial(n + k, n);
    Integer term = binomial(3 * n + 1, n - k) * b * b * b;
    if ((n - k) % 2 == 1) term = -term;
    sum += term;
  }
  return sum;
}

IntegerSequence AperyRecurrence::terms(std::size_t N) const {
  if (trail(Integer(0)) != 0) throw DomainError("recurrence trail polynomial must vanish at n = 0");
  IntegerSequence a;
  a.reserve(N + 1);
  a.push_back(initial);
  for (std::size_t n = 0; n < N; ++n) {
    const Integer idx(static_cast<unsigned long>(n));
    Integer rhs = middle(idx) * a[n];
    if (n > 0) rhs += trail(idx) * a[n - 1];
    const Integer d = lead(idx);
    if (d == 0 || rhs % d != 0) {
      throw InexactDivision("recurrence step n = " + std::to_string(n) + " does not divide exactly");
    }
    Integer next;
    mpz_divexact(next.get_mpz_t(), rhs.get_mpz_t(), d.get_mpz_t());
    a.push_back(std::move(next));
  }
  return a;
}

AperyRecurrence level7_recurrence() {
  AperyRecurrence r;
  r.lead = pow(Polynomial{1, 1}, 3);
  r.middle = Polynomial{1, 2} * Polynomial{4, 13, 13};
  r.trail = Polynomial{0, 3} * Polynomial{-1, 3} * Polynomial{1, 3};
  r.initial = 1;
  return r;
}

IntegerSequence u_recurrence(std::size_t N) { return level7_recurrence().terms(N); }

IntegerSequence c_lambda_mu(long lambda, long mu, std::size_t N) {
  // c_n = sum_{k<=n/2} C(n+k+1,3k+1)(-lambda)^(n-2k) c_k
  //     - sum_{k<n}    C(n+2k+1,3k+1)(-mu)^(n-k)     c_k
  IntegerSequence c{1};
  c.reserve(N + 1);
  std::vector<Integer> left;   // k -> C(n+k+1,3k+1)(-lambda)^(n-2k)
  std::vector<Integer> right;  // k -> C(n+2k+1,3k+1)(-mu)^(n-k)
  Integer acc;
  for (std::size_t n = 1; n <= N; ++n) {
    const long nn = static_cast<long>(n);
    // advance existing running terms from n-1 to n
    for (std::size_t k = 0; k < left.size(); ++k) {
      const long kk = static_cast<long>(k);
      Integer& v = left[k];
      v *= -lambda;
      v *= nn + kk + 1;
      mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(nn - 2 * kk));
    }
    for (std::size_t k = 0; k < right.size(); ++k) {
      const long kk = static_cast<long>(k);
      Integer& v = right[k];
      v *= -mu;
      v *= nn + 2 * kk + 1;
      mpz_divexact_ui(v.get_mpz_t(), v.get_mpz_t(), static_cast<unsigned long>(nn - kk));
    }
    // k = n/2 enters the left sum with C(3k+1,3k+1) = 1, except k = 0 which
    // entered at n = 0 and has just been advanced.
    if (left.empty()) {
      left.emplace_back(-2 * lambda);
    }
    if (n % 2 == 0 && left.size() == n / 2) left.emplace_back(1);
    // k = n-1 enters the right sum with C(3k+2,3k+1)(-mu) = (3k+2)(-mu)
    right.push_back(Integer(-mu) * (3 * (nn - 1) + 2));

    acc = 0;
    for (std::size_t k = 0; k < left.size(); ++k) {
      mpz_addmul(acc.get_mpz_t(), left[k].get_mpz_t(), c[k].get_mpz_t());
    }
    for (std::size_t k = 0; k < right.size(); ++k) {
      mpz_submul(acc.get_mpz_t(), right[k].get_mpz_t(), c[k].get_mpz_t());
    }
    c.push_back(acc);
  }
  return c;
}

IntegerSequence c_variant(long lambda, long mu, std::size_t N) {
  // c_n = sum_{k<=n/2} C(n,2k)(-lambda)^(n-2k) c_k - sum_{k<n} C(n+k,2k)(-mu)^(n-k) c_k
  IntegerSequence c{1};
  c.reserve(N + 1);
  std::vector<Integer> left;
  std::vector<Integer> right;
  Integer acc;
  for (std::size_t n = 1; n <= N; ++n) {
    const long nn = static_cast<long>(n);
    for (std::size_t k = 0; k < left.size(); ++k) {
      const long kk = static_cast<long>(k);
      left[k] *= -lambda;
      left[k] *= nn;
      mpz_divexact_ui(left[k].get_mpz_t(), left[k].get_mpz_t(), static_cast<unsigned long>(nn - 2 * kk));
    }
    for (std::size_t k = 0; k < right.size(); ++k) {
      const long kk = static_cast<long>(k);
      right[k] *= -mu;
      right[k] *= nn + kk;
      mpz_divexact_ui(right[k].get_mpz_t(), right[k].get_mpz_t(), static_cast<unsigned long>(nn - kk));
    }
    if (left.empty()) left.emplace_back(-lambda);  // C(1,0)(-lambda)^1
    if (n % 2 == 0 && left.size() == n / 2) left.emplace_back(1);
    // k = n-1: C(2n-1, 2n-2)(-mu) = (2n-1)(-mu)
    right.push_back(Integer(-mu) * (2 * nn - 1));

    acc = 0;
    for (std::size_t k = 0; k < left.size(); ++k) mpz_addmul(acc.get_mpz_t(), left[k].get_mpz_t(), c[k].get_mpz_t());
    for (std::size_t k = 0; k < right.size(); ++k) mpz_submul(acc.get_mpz_t(), right[k].get_mpz_t(), c[k].get_mpz_t());
    c.push_back(acc);
  }
  return c;
}

namespace {

// Divides a series (mod m) by (1 + a z) in place: y_j = x_j - a y_{j-1}.
void divide_linear_mod(std::vector<Integer>& s, long a, const Integer& m) {
  const Integer factor = a;
  for (std::size_t j = 1; j < s.size(); ++j) {
    mpz_submul(s[j].get_mpz_t(), s[j - 1].get_mpz_t(), factor.get_mpz_t());
    mpz_mod(s[j].get_mpz_t(), s[j].get_mpz_t(), m.get_mpz_t());
  }
}

// Solves f(z/(1+mu z)^b) / (1+mu z)^a = f(z^2/(1+lambda z)^b) / (1+lambda z)^a
// modulo m by pushing each solved coefficient's contributions forward. Both
// sides' k-th terms are z^k E_k and z^(2k) F_k with E_k = (1+mu z)^-(a+bk),
// F_k = (1+lambda z)^-(a+bk); the diagonal coefficient E_k[0] is 1.
IntegerSequence two_shape_solve_mod(long lambda, long mu, unsigned a, unsigned b, std::size_t N, const Integer& m) {
  if (m <= 0) throw DomainError("modulus must be positive");
  std::vector<Integer> acc_left(N + 1, Integer(0));
  std::vector<Integer> acc_right(N + 1, Integer(0));
  std::vector<Integer> e(N + 1, Integer(0));
  std::vector<Integer> f(N + 1, Integer(0));
  e[0] = 1;
  f[0] = 1;
  for (unsigned i = 0; i < a; ++i) {
    divide_linear_mod(e, mu, m);
    divide_linear_mod(f, lambda, m);
  }
  IntegerSequence c(N + 1);
  for (std::size_t k = 0; k <= N; ++k) {
    if (k == 0) {
      c[0] = 1;
    } else {
      c[k] = acc_right[k] - acc_left[k];
    }
    mpz_mod(c[k].get_mpz_t(), c[k].get_mpz_t(), m.get_mpz_t());
    for (std::size_t j = 1; k + j <= N; ++j) {
      mpz_addmul(acc_left[k + j].get_mpz_t(), c[k].get_mpz_t(), e[j].get_mpz_t());
    }
    for (std::size_t j = 0; 2 * k + j <= N; ++j) {
      mpz_addmul(acc_right[2 * k + j].get_mpz_t(), c[k].get_mpz_t(), f[j].get_mpz_t());
    }
    if (k + 1 <= N) {
      e.resize(N - k);  // E_{k+1} is needed to order N-(k+1)
      for (unsigned i = 0; i < b; ++i) divide_linear_mod(e, mu, m);
    }
    if (2 * (k + 1) <= N) {
      f.resize(N - 2 * (k + 1) + 1);
      for (unsigned i = 0; i < b; ++i) divide_linear_mod(f, lambda, m);
    }
    if (k + 1 <= N) {
      mpz_mod(acc_left[k + 1].get_mpz_t(), acc_left[k + 1].get_mpz_t(), m.get_mpz_t());
      mpz_mod(acc_right[k + 1].get_mpz_t(), acc_right[k + 1].get_mpz_t(), m.get_mpz_t());
    }
  }
  return c;
}

}  // namespace

IntegerSequence c_lambda_mu_mod(long lambda, long mu, std::size_t N, const Integer& m) {
  return two_shape_solve_mod(lambda, mu, 2, 3, N, m);
}

IntegerSequence c_variant_mod(long lambda, long mu, std::size_t N, const Integer& m) {
  return two_shape_solve_mod(lambda, mu, 1, 2, N, m);
}

// ---------------------------------------------------------------------------

std::string FamilyId::tag() const {
  switch (kind) {
    case FamilyKind::U7: return "u7";
    case FamilyKind::F2: return "f2";
    case FamilyKind::F3: return "f3";
    case FamilyKind::F4: return "f4";
    case FamilyKind::F5: return "f5";
    case FamilyKind::FHat2: return "fhat2";
    case FamilyKind::FHat3: return "fhat3";
    case FamilyKind::FHat4: return "fhat4";
    case FamilyKind::FHat5: return "fhat5";
    case FamilyKind::GB: return "gb";
    case FamilyKind::GC: return "gc";
    case FamilyKind::G5: return "g5";
    case FamilyKind::CLambdaMu: return "c:" + std::to_string(lambda) + "," + std::to_string(mu);
    case FamilyKind::CVariant: return "cvar:" + std::to_string(lambda) + "," + std::to_string(mu);
  }
  return "?";
}

namespace {

const std::map<std::string, FamilyKind>& plain_families() {
  static const std::map<std::string, FamilyKind> table = {
      {"u7", FamilyKind::U7},       {"f2", FamilyKind::F2},       {"f3", FamilyKind::F3},
      {"f4", FamilyKind::F4},       {"f5", FamilyKind::F5},       {"fhat2", FamilyKind::FHat2},
      {"fhat3", FamilyKind::FHat3}, {"fhat4", FamilyKind::FHat4}, {"fhat5", FamilyKind::FHat5},
      {"gb", FamilyKind::GB},       {"gc", FamilyKind::GC},       {"g5", FamilyKind::G5},
  };
  return table;
}

long parse_long(const std::string& s, const std::string& context) {
  try {
    std::size_t used = 0;
    const long v = std::stol(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UnknownFamily("malformed parameter '" + s + "' in family '" + context + "'");
  }
}

}  // namespace

FamilyId parse_family(const std::string& tag) {
  if (tag == "f7") return {FamilyKind::U7, 0, 0};
  if (auto it = plain_families().find(tag); it != plain_families().end()) return {it->second, 0, 0};
  const auto colon = tag.find(':');
  if (colon != std::string::npos) {
    const std::string head = tag.substr(0, colon);
    const std::string params = tag.substr(colon + 1);
    const auto comma = params.find(',');
    if ((head == "c" || head == "cvar") && comma != std::string::npos) {
      const long lambda = parse_long(params.substr(0, comma), tag);
      const long mu = parse_long(params.substr(comma + 1), tag);
      return {head == "c" ? FamilyKind::CLambdaMu : FamilyKind::CVariant, lambda, mu};
    }
  }
  throw UnknownFamily("unknown family '" + tag + "'");
}

std::vector<std::string> family_tags() {
  std::vector<std::string> out;
  for (const auto& [name, kind] : plain_families()) out.push_back(name);
  return out;
}

namespace {

// Hypergeometric term sequence t_0 = 1, t_{n+1} = t_n * num(n) / den(n),
// with every step exact.
IntegerSequence hypergeometric_terms(std::size_t N, const Polynomial& num, const Polynomial& den) {
  IntegerSequence t{1};
  t.reserve(N + 1);
  for (std::size_t n = 0; n < N; ++n) {
    const Integer idx(static_cast<unsigned long>(n));
    Integer v = t[n] * num(idx);
    const Integer d = den(idx);
    if (v % d != 0) throw InexactDivision("hypergeometric term ratio is not integral");
    mpz_divexact(v.get_mpz_t(), v.get_mpz_t(), d.get_mpz_t());
    t.push_back(std::move(v));
  }
  return t;
}

// C(2n,n): ratio 2(2n+1)/(n+1)
const Polynomial kCentralNum = Polynomial{2, 4};
const Polynomial kCentralDen = Polynomial{1, 1};

IntegerSequence squared(const IntegerSequence& a, unsigned power) {
  Series s = Series::from_integers(a);
  return replica::pow(s, power).to_integers();
}

IntegerSequence franel_like(std::size_t N, FamilyKind kind) {
  // Row-wise sums over k with C(n,k) updated incrementally.
  IntegerSequence out;
  out.reserve(N + 1);
  Integer row;
  for (std::size_t n = 0; n <= N; ++n) {
    Integer sum = 0;
    Integer b = 1;       // C(n,k)
    Integer extra = 1;   // C(2k,k) or C(n+k,k)
    for (std::size_t k = 0; k <= n; ++k) {
      switch (kind) {
        case FamilyKind::GC: sum += b * b * b; break;
        case FamilyKind::GB:
        case FamilyKind::G5: sum += b * b * extra; break;
        default: break;
      }
      if (k == n) break;
      b *= static_cast<unsigned long>(n - k);
      mpz_divexact_ui(b.get_mpz_t(), b.get_mpz_t(), static_cast<unsigned long>(k + 1));
      if (kind == FamilyKind::GB) {
        extra *= static_cast<unsigned long>(2 * (2 * k + 1));
        mpz_divexact_ui(extra.get_mpz_t(), extra.get_mpz_t(), static_cast<unsigned long>(k + 1));
      } else if (kind == FamilyKind::G5) {
        extra *= static_cast<unsigned long>(n + k + 1);
        mpz_divexact_ui(extra.get_mpz_t(), extra.get_mpz_t(), static_cast<unsigned long>(k + 1));
      }
    }
    out.push_back(std::move(sum));
  }
  return out;
}

IntegerSequence compute_family(const FamilyId& id, std::size_t N) {
  switch (id.kind) {
    case FamilyKind::U7: return u_recurrence(N);
    case FamilyKind::F2:  // (sum C(2n,n) C(4n,2n) x^n)^2, inner ratio 4(4n+1)(4n+3)/(n+1)^2
      return squared(hypergeometric_terms(N, Polynomial{12, 64, 64}, Polynomial{1, 2, 1}), 2);
    case FamilyKind::F3:  // inner C(2n,n) C(3n,n), ratio 3(3n+1)(3n+2)/(n+1)^2
      return squared(hypergeometric_terms(N, Polynomial{6, 27, 27}, Polynomial{1, 2, 1}), 2);
    case FamilyKind::F4:  // inner C(2n,n)^2
      return squared(hypergeometric_terms(N, kCentralNum * kCentralNum, kCentralDen * kCentralDen), 2);
    case FamilyKind::F5: {
      const IntegerSequence central = hypergeometric_terms(N, kCentralNum, kCentralDen);
      IntegerSequence g = franel_like(N, FamilyKind::G5);
      for (std::size_t n = 0; n <= N; ++n) g[n] *= central[n];
      return g;
    }
    case FamilyKind::FHat2:  // C(2n,n)^2 C(4n,2n): ratio 4(2n+1)^2 (4n+1)(4n+3) / (n+1)^4 ... as C(2n,n) * inner of f2
    {
      const IntegerSequence central = hypergeometric_terms(N, kCentralNum, kCentralDen);
      IntegerSequence t = hypergeometric_terms(N, Polynomial{12, 64, 64}, Polynomial{1, 2, 1});
      for (std::size_t n = 0; n <= N; ++n) t[n] *= central[n];
      return t;
    }
    case FamilyKind::FHat3: {
      const IntegerSequence central = hypergeometric_terms(N, kCentralNum, kCentralDen);
      IntegerSequence t = hypergeometric_terms(N, Polynomial{6, 27, 27}, Polynomial{1, 2, 1});
      for (std::size_t n = 0; n <= N; ++n) t[n] *= central[n];
      return t;
    }
    case FamilyKind::FHat4:
      return hypergeometric_terms(N, pow(kCentralNum, 3), pow(kCentralDen, 3));
    case FamilyKind::FHat5: {
      IntegerSequence out;
      out.reserve(N + 1);
      for (std::size_t n = 0; n <= N; ++n) {
        const long nn = static_cast<long>(n);
        Integer sum = 0;
        for (long k = 0; k <= nn; ++k) {
          const Integer b = binomial(nn, k);
          Integer term = b * b * b * binomial(4 * nn - 5 * k, 3 * nn);
          if ((nn - k) % 2 != 0) term = -term;
          sum += term;
        }
        out.push_back(std::move(sum));
      }
      return out;
    }
    case FamilyKind::GB:
    case FamilyKind::GC:
    case FamilyKind::G5: return franel_like(N, id.kind);
    case FamilyKind::CLambdaMu: return c_lambda_mu(id.lambda, id.mu, N);
    case FamilyKind::CVariant: return c_variant(id.lambda, id.mu, N);
  }
  throw UnknownFamily("unhandled family");
}

struct FamilyCache {
  std::shared_mutex mutex;
  std::map<std::string, IntegerSequence> prefixes;
};

FamilyCache& cache() {
  static FamilyCache c;
  return c;
}

}  // namespace

IntegerSequence family_terms(const FamilyId& id, std::size_t N) {
  const std::string key = id.tag();
  auto& c = cache();
  {
    std::shared_lock lock(c.mutex);
    auto it = c.prefixes.find(key);
    if (it != c.prefixes.end() && it->second.size() > N) {
      return IntegerSequence(it->second.begin(), it->second.begin() + static_cast<long>(N + 1));
    }
  }
  IntegerSequence terms = compute_family(id, N);
  {
    std::unique_lock lock(c.mutex);
    auto& slot = c.prefixes[key];
    if (slot.size() < terms.size()) slot = terms;
  }
  return terms;
}

IntegerSequence family_terms(const std::string& tag, std::size_t N) { return family_terms(parse_family(tag), N); }

IntegerSequence family_residues(const FamilyId& id, std::size_t N, const Integer& m) {
  if (id.kind == FamilyKind::CLambdaMu) return c_lambda_mu_mod(id.lambda, id.mu, N, m);
  if (id.kind == FamilyKind::CVariant) return c_variant_mod(id.lambda, id.mu, N, m);
  IntegerSequence t = family_terms(id, N);
  for (auto& v : t) mpz_mod(v.get_mpz_t(), v.get_mpz_t(), m.get_mpz_t());
  return t;
}

void clear_family_cache() {
  auto& c = cache();
  std::unique_lock lock(c.mutex);
  c.prefixes.clear();
}

std::variant<IntegerSequence, NotSplittable> convolution_split(const IntegerSequence& c) {
  if (c.empty() || c[0] != 1) throw DomainError("convolution split needs c_0 = 1");
  IntegerSequence d{1};
  for (std::size_t n = 1; n < c.size(); ++n) {
    Integer acc = c[n];
    for (std::size_t k = 1; k < n; ++k) acc -= d[k] * d[n - k];
    if (acc % 2 != 0) return NotSplittable{n, Rational(acc, 2)};
    d.push_back(acc / 2);
  }
  return d;
}

}  // namespace replica
