#pragma once

#include <functional>
#include <string>
#include <vector>

#include "polyharm/polynomial.hpp"
#include "polyharm/types.hpp"

namespace polyharm {

/// Map C^n -> C^p given in one holomorphic chart of each side.
///
/// Built-ins carry a closed-form complex Jacobian. Maps made with
/// from_values() only have a value evaluator; their real Jacobian is taken by
/// central differences, which is also what the Cauchy-Riemann checkers use, so
/// a non-holomorphic map can be represented and rejected.
class HolomorphicMap {
 public:
  using ValueFn = std::function<CVector(const CVector&)>;
  using JacobianFn = std::function<CMatrix(const CVector&)>;

  HolomorphicMap(int n, int p, ValueFn value, JacobianFn jacobian = {}, std::string name = "");

  static HolomorphicMap identity(int n);
  /// z -> c z on C^n.
  static HolomorphicMap scaled(int n, Complex c);
  static HolomorphicMap coordinate(int n, int a);
  static HolomorphicMap pair_sum(int n, int k, int l);
  static HolomorphicMap product(int n, int a, int b);
  static HolomorphicMap i_product(int n, int a, int b);
  /// z_a^k.
  static HolomorphicMap power(int n, int a, int k);
  static HolomorphicMap polynomial(std::vector<Polynomial> components, std::string name = "");
  /// num / den, raising PoleAtPoint where |den| < guard.
  static HolomorphicMap rational(Polynomial num, Polynomial den, double guard = 1e-12);
  /// outer o inner.
  static HolomorphicMap compose(const HolomorphicMap& outer, const HolomorphicMap& inner);
  static HolomorphicMap from_values(int n, int p, ValueFn value, std::string name = "");

  int domain_dim() const { return n_; }
  int codomain_dim() const { return p_; }
  const std::string& name() const { return name_; }
  bool has_closed_form() const { return static_cast<bool>(jacobian_); }

  /// Throws PoleAtPoint when the value is not finite.
  CVector operator()(const CVector& z) const;
  Vector real_value(const Vector& xy) const;

  /// Complex Jacobian (p x n). Falls back to central differences along the
  /// real directions, which is only meaningful for holomorphic maps.
  CMatrix jacobian(const CVector& z) const;

  /// Real Jacobian (2p x 2n) at real coordinates (x, y). Exact for built-ins;
  /// central differences with relative step `step` otherwise.
  Matrix real_jacobian(const Vector& xy, double step = 1e-5) const;

 private:
  int n_ = 0;
  int p_ = 0;
  ValueFn value_;
  JacobianFn jacobian_;
  std::string name_;
};

/// {z_A} u {z_k + z_l, k < l} u {z_A z_B, A <= B} u {i z_A z_B, A <= B}.
std::vector<HolomorphicMap> standard_family(int n);

/// Central-difference real Jacobian of a real map (relative step).
Matrix finite_difference_jacobian(const std::function<Vector(const Vector&)>& f, const Vector& x,
                                  double step = 1e-5);

}  // namespace polyharm
