#pragma once

#include <string>
#include <vector>

#include "replica/numeric.hpp"
#include "replica/polynomial.hpp"
#include "replica/series.hpp"

namespace replica {

/// One self-replicating identity
///     t_L(z) f(phi_L(z)) = t_R(z) f(phi_R(z)),
/// where phi_L has valuation 1 and phi_R has valuation m >= 2. Construct
/// through make(), which checks these shape conditions.
class FunctionalEquation {
 public:
  /// Throws InvalidEquation when phi_L does not have valuation 1, phi_R has
  /// valuation below 2, or either multiplier has a zero or a pole at z = 0.
  static FunctionalEquation make(RationalFunction t_left, RationalFunction phi_left, RationalFunction t_right,
                                 RationalFunction phi_right);

  const RationalFunction& t_left() const { return t_left_; }
  const RationalFunction& phi_left() const { return phi_left_; }
  const RationalFunction& t_right() const { return t_right_; }
  const RationalFunction& phi_right() const { return phi_right_; }
  /// Valuation of phi_R.
  unsigned replication_order() const { return m_; }

  friend bool operator==(const FunctionalEquation&, const FunctionalEquation&) = default;

 private:
  FunctionalEquation() = default;
  RationalFunction t_left_, phi_left_, t_right_, phi_right_;
  unsigned m_ = 2;
};

/// The unique f with f(0) = 1 solving the equation through z^N, found by
/// peeling one coefficient per order. Throws InconsistentEquation when
/// t_L(0) != t_R(0), since then no such f exists.
Series solve(const FunctionalEquation& eq, std::size_t N);

/// Largest n <= min(N, order of f) such that both sides, expanded by direct
/// composition, agree through z^n; -1 when even the constant terms differ.
long verify(const FunctionalEquation& eq, const Series& f, std::size_t N);

/// Applies A + B z d/dz to both sides and compares:
///   t[(A + B tau) f(phi) + B psi (theta f)(phi)],  tau = z t'/t, psi = z phi'/phi.
/// Returns the verified order as in verify().
long differentiated_identity(const FunctionalEquation& eq, const Series& f, const Rational& A, const Rational& B,
                             std::size_t N);

// ---------------------------------------------------------------------------
// Named equations

struct RegistryEntry {
  std::string id;           ///< "alg", "alg0", "variant", "f2", ...
  std::string description;  ///< one line, human readable
  bool parametric = false;  ///< needs ":lambda,mu"
  std::string sample;       ///< a fully instantiated id, e.g. "alg0:-4,2"
};

/// The fourteen registered shapes, in a fixed order.
const std::vector<RegistryEntry>& registry();

/// Builds a registered equation. Parametric shapes take "alg0:lambda,mu" and
/// "variant:lambda,mu"; "f7" is an alias of "alg". Throws UnknownFamily.
FunctionalEquation registry_equation(const std::string& id);

/// Family tag (see parse_family) whose terms solve the given registry id.
std::string registry_family(const std::string& id);

}  // namespace replica
