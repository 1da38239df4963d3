#include "replica/selfrep.hpp"

#include <algorithm>

#include "replica/sequences.hpp"

namespace replica {

FunctionalEquation FunctionalEquation::make(RationalFunction t_left, RationalFunction phi_left,
                                            RationalFunction t_right, RationalFunction phi_right) {
  if (phi_left.is_zero() || phi_left.valuation() != 1) {
    throw InvalidEquation("phi_L must have valuation 1, got " + phi_left.to_string());
  }
  if (phi_right.is_zero() || phi_right.valuation() < 2) {
    throw InvalidEquation("phi_R must have valuation at least 2, got " + phi_right.to_string());
  }
  for (const RationalFunction* t : {&t_left, &t_right}) {
    if (t->is_zero() || t->valuation() != 0) {
      throw InvalidEquation("multiplier must be finite and nonzero at z = 0, got " + t->to_string());
    }
  }
  FunctionalEquation eq;
  eq.m_ = static_cast<unsigned>(phi_right.valuation());
  eq.t_left_ = std::move(t_left);
  eq.phi_left_ = std::move(phi_left);
  eq.t_right_ = std::move(t_right);
  eq.phi_right_ = std::move(phi_right);
  return eq;
}

namespace {

// acc += a * b, staying on integers when both factors are integers.
void add_product(Integer& int_acc, Rational& rat_acc, const Rational& a, const Rational& b) {
  if (a == 0 || b == 0) return;
  if (is_integer(a) && is_integer(b)) {
    mpz_addmul(int_acc.get_mpz_t(), a.get_num_mpz_t(), b.get_num_mpz_t());
  } else {
    rat_acc += a * b;
  }
}

}  // namespace

Series solve(const FunctionalEquation& eq, std::size_t N) {
  const Rational tl0 = eq.t_left().value_at_zero();
  const Rational tr0 = eq.t_right().value_at_zero();
  if (tl0 != tr0) {
    throw InconsistentEquation("t_L(0) = " + tl0.get_str() + " differs from t_R(0) = " + tr0.get_str() +
                               "; no solution with f(0) = 1");
  }
  const unsigned m = eq.replication_order();
  // phi = z^v s(z) with s(0) != 0; the k-th term of each side is z^(vk) t s^k.
  const RationalFunction s_left = eq.phi_left().divide_by_z_power(1);
  const RationalFunction s_right = eq.phi_right().divide_by_z_power(m);

  // Pending contributions of already known coefficients to order n.
  std::vector<Integer> left_int(N + 1), right_int(N + 1);
  std::vector<Rational> left_rat(N + 1), right_rat(N + 1);

  Series e = expand(eq.t_left(), N);   // t_L s_L^k, to order N - k
  Series g = expand(eq.t_right(), N);  // t_R s_R^k, to order N - m k
  Series f(N);
  for (std::size_t k = 0; k <= N; ++k) {
    if (k == 0) {
      f[0] = 1;
    } else {
      const Rational rhs = Rational(right_int[k]) + right_rat[k];
      const Rational lhs = Rational(left_int[k]) + left_rat[k];
      // e[0] = t_L(0) s_L(0)^k is the coefficient of c_k at order k
      f[k] = (rhs - lhs) / e[0];
    }
    for (std::size_t j = 1; k + j <= N; ++j) add_product(left_int[k + j], left_rat[k + j], f[k], e[j]);
    if (m * k <= N) {
      for (std::size_t j = 0; m * k + j <= N; ++j) {
        if (m * k + j > k) add_product(right_int[m * k + j], right_rat[m * k + j], f[k], g[j]);
      }
    }
    if (k < N) e = mul_rational(e.truncated(N - k - 1), s_left);
    if (m * (k + 1) <= N) g = mul_rational(g.truncated(N - m * (k + 1)), s_right);
  }
  return f;
}

namespace {

long agreement_order(const Series& lhs, const Series& rhs) {
  const std::size_t n = std::min(lhs.order(), rhs.order());
  for (std::size_t k = 0; k <= n; ++k) {
    if (lhs[k] != rhs[k]) return static_cast<long>(k) - 1;
  }
  return static_cast<long>(n);
}

Series side(const RationalFunction& t, const RationalFunction& phi, const Series& f, std::size_t N) {
  return mul(expand(t, N), compose(f.truncated(N), expand(phi, N)));
}

}  // namespace

long verify(const FunctionalEquation& eq, const Series& f, std::size_t N) {
  N = std::min(N, f.order());
  return agreement_order(side(eq.t_left(), eq.phi_left(), f, N), side(eq.t_right(), eq.phi_right(), f, N));
}

long differentiated_identity(const FunctionalEquation& eq, const Series& f, const Rational& A, const Rational& B,
                             std::size_t N) {
  N = std::min(N, f.order());
  const Series fN = f.truncated(N);
  const Series df = theta(fN);
  auto weighted = [&](const RationalFunction& t, const RationalFunction& phi) {
    const Series inner = expand(phi, N);
    const Series tau = expand(t.log_derivative(), N);
    const Series psi = expand(phi.log_derivative(), N);
    Series weight = B * tau;
    weight[0] += A;
    Series body = mul(weight, compose(fN, inner)) + mul(B * psi, compose(df, inner));
    return mul(expand(t, N), body);
  };
  return agreement_order(weighted(eq.t_left(), eq.phi_left()), weighted(eq.t_right(), eq.phi_right()));
}

// ---------------------------------------------------------------------------

namespace {

using RF = RationalFunction;
using P = Polynomial;

P bp(long a, long b, unsigned e) { return Polynomial::binomial_power(a, b, e); }
P z_pow(std::size_t k) { return Polynomial::monomial(k); }

FunctionalEquation cubic_shape(long lambda, long mu) {
  return FunctionalEquation::make(RF(P{1}, bp(1, mu, 2)), RF(z_pow(1), bp(1, mu, 3)), RF(P{1}, bp(1, lambda, 2)),
                                  RF(z_pow(2), bp(1, lambda, 3)));
}

FunctionalEquation variant_shape(long lambda, long mu) {
  return FunctionalEquation::make(RF(P{1}, bp(1, mu, 1)), RF(z_pow(1), bp(1, mu, 2)), RF(P{1}, bp(1, lambda, 1)),
                                  RF(z_pow(2), bp(1, lambda, 2)));
}

std::pair<long, long> parse_pair(const std::string& params) {
  const FamilyId parsed = parse_family("c:" + params);  // same "lambda,mu" grammar
  return {parsed.lambda, parsed.mu};
}

}  // namespace

const std::vector<RegistryEntry>& registry() {
  static const std::vector<RegistryEntry> entries = {
      {"alg", "level-7 cubic shape; solution u_n", false, "alg"},
      {"alg0", "cubic shape with (1+mu z), (1+lambda z); solution c_n(lambda,mu)", true, "alg0:-4,2"},
      {"variant", "quadratic shape with (1+mu z), (1+lambda z)", true, "variant:0,4"},
      {"f2", "level 2; solution (sum C(2n,n)C(4n,2n) z^n)^2", false, "f2"},
      {"f3", "level 3; solution (sum C(2n,n)C(3n,n) z^n)^2", false, "f3"},
      {"f4", "level 4; solution (sum C(2n,n)^2 z^n)^2", false, "f4"},
      {"f5", "level 5; solution C(2n,n) sum C(n,k)^2 C(n+k,k)", false, "f5"},
      {"fhat2-cubic", "cubic replication of C(2n,n)^2 C(4n,2n)", false, "fhat2-cubic"},
      {"fhat4-cubic", "cubic replication of C(2n,n)^3", false, "fhat4-cubic"},
      {"fhat4-quintic", "quintic replication of C(2n,n)^3", false, "fhat4-quintic"},
      {"fhat5", "quadratic replication of the level-5 hatted family", false, "fhat5"},
      {"gb", "quadratic replication of sum C(n,k)^2 C(2k,k)", false, "gb"},
      {"gc", "cubic replication of sum C(n,k)^3", false, "gc"},
      {"g5", "quintic replication of sum C(n,k)^2 C(n+k,k)", false, "g5"},
  };
  return entries;
}

FunctionalEquation registry_equation(const std::string& raw_id) {
  const std::string id = raw_id == "f7" ? "alg" : raw_id;
  if (id == "alg") return cubic_shape(2, 4);
  if (id.rfind("alg0:", 0) == 0) {
    const auto [lambda, mu] = parse_pair(id.substr(5));
    return cubic_shape(lambda, mu);
  }
  if (id.rfind("variant:", 0) == 0) {
    const auto [lambda, mu] = parse_pair(id.substr(8));
    return variant_shape(lambda, mu);
  }
  if (id == "f2") {
    return FunctionalEquation::make(RF(P{1}, P{1, 16}), RF(z_pow(1), bp(1, 16, 2)), RF(P{1}, P{1, -8}),
                                    RF(z_pow(2), bp(1, -8, 2)));
  }
  if (id == "f3") {
    return FunctionalEquation::make(RF(P{1}, bp(1, 4, 2)), RF(z_pow(1), bp(1, 4, 3)), RF(P{1}, bp(1, -2, 2)),
                                    RF(z_pow(2), bp(1, -2, 3)));
  }
  if (id == "f4") {
    return FunctionalEquation::make(RF(P{1}, bp(1, 4, 2)), RF(z_pow(1), bp(1, 4, 2)), RF(P{1}), RF(z_pow(2)));
  }
  if (id == "f5") {
    return FunctionalEquation::make(RF(P{1}, P{1, 8}), RF(z_pow(1), P{1, 4} * bp(1, 8, 2)), RF(P{1}, P{1, 2}),
                                    RF(z_pow(2), P{1, 4} * bp(1, 2, 2)));
  }
  if (id == "fhat2-cubic") {
    return FunctionalEquation::make(RF(P{1}, P{1, 27}), RF(z_pow(1), bp(1, 27, 4)), RF(P{1}, P{1, 3}),
                                    RF(z_pow(3), bp(1, 3, 4)));
  }
  if (id == "fhat4-cubic") {
    return FunctionalEquation::make(RF(P{1}, P{1, 8}), RF(z_pow(1) * bp(1, -1, 3), bp(1, 8, 3)), RF(P{1}),
                                    RF(z_pow(3) * P{1, -1}, P{1, 8}));
  }
  if (id == "fhat4-quintic") {
    return FunctionalEquation::make(RF(P{1}, bp(1, 4, 2)), RF(z_pow(1) * bp(1, -1, 5), bp(1, 4, 5)), RF(P{1}),
                                    RF(z_pow(5) * P{1, -1}, P{1, 4}));
  }
  if (id == "fhat5") {
    return FunctionalEquation::make(RF(P{1}, P{1, -5}), RF(z_pow(1) * bp(1, -1, 2), bp(1, -5, 2)), RF(P{1}),
                                    RF(z_pow(2) * P{1, -1}, P{1, -5}));
  }
  if (id == "gb") {
    return FunctionalEquation::make(RF(P{1}, P{1, 3}), RF(P{0, 1, -1}, P{1, 3}), RF(P{1}), RF(z_pow(2)));
  }
  if (id == "gc") {
    const P den{1, 2, 4};
    return FunctionalEquation::make(RF(P{1}, den), RF(P{0, 1, -1, 1}, den), RF(P{1}), RF(z_pow(3)));
  }
  if (id == "g5") {
    const P den{1, 3, 4, 2, 1};
    return FunctionalEquation::make(RF(P{1}, den), RF(P{0, 1, -2, 4, -3, 1}, den), RF(P{1}), RF(z_pow(5)));
  }
  if (id == "alg0" || id == "variant") {
    throw UnknownFamily("registry shape '" + id + "' needs parameters, e.g. '" + id + ":-4,2'");
  }
  throw UnknownFamily("unknown registry equation '" + raw_id + "'");
}

std::string registry_family(const std::string& raw_id) {
  const std::string id = raw_id == "f7" ? "alg" : raw_id;
  if (id == "alg") return "u7";
  if (id.rfind("alg0:", 0) == 0) return "c:" + id.substr(5);
  if (id.rfind("variant:", 0) == 0) return "cvar:" + id.substr(8);
  if (id == "fhat2-cubic") return "fhat2";
  if (id == "fhat4-cubic" || id == "fhat4-quintic") return "fhat4";
  for (const char* plain : {"f2", "f3", "f4", "f5", "fhat5", "gb", "gc", "g5"}) {
    if (id == plain) return id;
  }
  throw UnknownFamily("unknown registry equation '" + raw_id + "'");
}

}  // namespace replica
