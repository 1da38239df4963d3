#include "replica/congruences.hpp"

#include <sstream>
#include <stdexcept>

#include "replica/parallel.hpp"

namespace replica {

std::vector<unsigned long> base_p_digits(unsigned long n, unsigned long p) {
  if (p < 2) throw DomainError("base must be at least 2");
  std::vector<unsigned long> digits;
  do {
    digits.push_back(n % p);
    n /= p;
  } while (n > 0);
  return digits;
}

namespace {

Integer mod(const Integer& a, const Integer& m) {
  Integer r;
  mpz_mod(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

void require_terms(const IntegerSequence& seq, std::size_t N) {
  if (seq.size() < N + 1) {
    throw DomainError("sequence has " + std::to_string(seq.size()) + " terms, need " + std::to_string(N + 1));
  }
}

}  // namespace

std::optional<LucasFailure> lucas_check(const IntegerSequence& seq, unsigned long p, std::size_t N) {
  require_terms(seq, N);
  const Integer P(p);
  std::vector<Integer> small(std::min<std::size_t>(p, N + 1));
  for (std::size_t d = 0; d < small.size(); ++d) small[d] = mod(seq[d], P);
  Integer product;
  for (std::size_t n = 0; n <= N; ++n) {
    product = 1;
    for (unsigned long d : base_p_digits(n, p)) {
      product *= small[d];
      product %= P;
    }
    const Integer value = mod(seq[n], P);
    if (value != product) return LucasFailure{n, value, product};
  }
  return std::nullopt;
}

std::optional<SuperFailure> super_check(const IntegerSequence& seq, unsigned long p, unsigned ell, unsigned r_max,
                                        std::size_t N) {
  require_terms(seq, N);
  if (ell == 0) return std::nullopt;
  unsigned long pr = 1;
  for (unsigned r = 1; r <= r_max; ++r) {
    if (pr > N / p) break;
    const unsigned long prev = pr;
    pr *= p;
    const Integer modulus = power(Integer(p), static_cast<unsigned long>(ell) * r);
    for (unsigned long m = 1; m * pr <= N; ++m) {
      if (mpz_congruent_p(seq[m * pr].get_mpz_t(), seq[m * prev].get_mpz_t(), modulus.get_mpz_t()) == 0) {
        return SuperFailure{m, r, ell, mod(seq[m * pr], modulus), mod(seq[m * prev], modulus)};
      }
    }
  }
  return std::nullopt;
}

std::vector<EllVerdict> max_ell(const IntegerSequence& seq, const std::vector<unsigned long>& primes, std::size_t N,
                                unsigned r_max) {
  std::vector<EllVerdict> out;
  for (unsigned long p : primes) {
    EllVerdict v{p, 0, std::nullopt};
    for (unsigned ell = 1; ell <= 3; ++ell) {
      auto failure = super_check(seq, p, ell, r_max, N);
      if (failure) {
        v.next_failure = std::move(failure);
        break;
      }
      v.ell = ell;
    }
    out.push_back(std::move(v));
  }
  return out;
}

unsigned effective_depth(unsigned long p, std::size_t N, unsigned r_max) {
  unsigned r = 0;
  unsigned long pr = 1;
  while (r < r_max && pr <= N / p) {
    pr *= p;
    ++r;
  }
  return r;
}

Integer grid_modulus(const std::vector<unsigned long>& primes, std::size_t N, unsigned r_max, unsigned ell) {
  Integer m = 1;
  for (unsigned long p : primes) m *= power(Integer(p), static_cast<unsigned long>(ell) * effective_depth(p, N, r_max));
  return m;
}

std::string CongruenceReport::grid_description() const {
  std::ostringstream os;
  os << "p in {";
  for (std::size_t i = 0; i < primes.size(); ++i) os << (i ? "," : "") << primes[i];
  os << "}, n <= " << N << ", r <= " << r_max;
  return os.str();
}

std::string CongruenceReport::to_csv() const {
  std::ostringstream os;
  os << "family,p,lucas,max_ell,N\n";
  for (const auto& v : verdicts) {
    os << family << ',' << v.p << ',' << (v.lucas ? "fail@" + std::to_string(v.lucas->n) : std::string("pass")) << ','
       << v.max_ell << ',' << N << '\n';
  }
  return os.str();
}

namespace {

// Recomputes the residues a counterexample depends on from a fresh run
// modulo the single prime power involved, and confirms the failure.
void reverify(const FamilyId& family, unsigned long p, const LucasFailure& f) {
  const IntegerSequence r = family_residues(family, f.n, Integer(p));
  Integer product = 1;
  for (unsigned long d : base_p_digits(f.n, p)) product = (product * r[d]) % Integer(p);
  if (mod(r[f.n], Integer(p)) == product) {
    throw std::logic_error("Lucas counterexample at n = " + std::to_string(f.n) + " did not re-verify");
  }
}

void reverify(const FamilyId& family, unsigned long p, const SuperFailure& f) {
  const Integer modulus = power(Integer(p), static_cast<unsigned long>(f.ell) * f.r);
  unsigned long high = f.m;
  for (unsigned i = 0; i < f.r; ++i) high *= p;
  const IntegerSequence r = family_residues(family, high, modulus);
  if (mpz_congruent_p(r[high].get_mpz_t(), r[high / p].get_mpz_t(), modulus.get_mpz_t()) != 0) {
    throw std::logic_error("supercongruence counterexample did not re-verify");
  }
}

}  // namespace

CongruenceReport congruence_report(const FamilyId& family, const CongruenceGrid& grid) {
  CongruenceReport report;
  report.family = family.tag();
  report.primes = grid.primes;
  report.N = grid.N;
  report.r_max = grid.r_max;

  // One residue pass for the whole grid; Lucas needs at least one factor p.
  Integer modulus = 1;
  for (unsigned long p : grid.primes) {
    modulus *= power(Integer(p), std::max(1U, 3 * effective_depth(p, grid.N, grid.r_max)));
  }
  const IntegerSequence residues = family_residues(family, grid.N, modulus);

  report.verdicts.resize(grid.primes.size());
  parallel_for(grid.primes.size(), grid.jobs, [&](std::size_t i) {
    const unsigned long p = grid.primes[i];
    PrimeVerdict v;
    v.p = p;
    v.lucas = lucas_check(residues, p, grid.N);
    if (v.lucas) reverify(family, p, *v.lucas);
    auto ell = max_ell(residues, {p}, grid.N, grid.r_max).front();
    v.max_ell = ell.ell;
    v.next_failure = ell.next_failure;
    if (v.next_failure) reverify(family, p, *v.next_failure);
    report.verdicts[i] = std::move(v);
  });
  return report;
}

}  // namespace replica
