#pragma once

#include <cstddef>
#include <functional>

#include "polyharm/holomorphic.hpp"
#include "polyharm/riemannian.hpp"
#include "polyharm/simplicial.hpp"
#include "polyharm/types.hpp"

namespace polyharm {

/// Piecewise-linear map given by its values at the vertices, in the real
/// coordinates of a target chart.
class PLMap {
 public:
  /// `values` is V x target_dim.
  PLMap(const SimplicialComplex& complex, Matrix values);

  const SimplicialComplex& complex() const { return *complex_; }
  int target_dim() const { return static_cast<int>(values_.cols()); }
  const Matrix& values() const { return values_; }
  Vector value(VertexId v) const { return values_.row(v).transpose(); }
  Vector value_at(const SimplexPoint& p) const;

  /// Differential in the simplex's affine frame (target_dim x n); column i is
  /// phi(v_{i+1}) - phi(v_0).
  Matrix frame_differential(std::size_t simplex) const;

  /// Differential in embedding coordinates (target_dim x ambient): the
  /// minimum-norm solution of D * (v_i - v_0) = phi(v_i) - phi(v_0).
  /// Throws DegenerateSimplex.
  Matrix differential(std::size_t simplex) const;

  /// Vertex-wise sampling of a real map defined on embedding coordinates.
  static PLMap interpolate(const SimplicialComplex& complex,
                           const std::function<Vector(const Vector&)>& f);

 private:
  const SimplicialComplex* complex_;
  Matrix values_;
};

/// Smooth map R^m -> R^t used for pointwise checks.
class AnalyticMap {
 public:
  using ValueFn = std::function<Vector(const Vector&)>;
  using JacobianFn = std::function<Matrix(const Vector&)>;

  AnalyticMap(int domain_dim, int target_dim, ValueFn value, JacobianFn jacobian = {});

  int domain_dim() const { return m_; }
  int target_dim() const { return t_; }
  bool has_closed_form() const { return static_cast<bool>(jacobian_); }

  Vector operator()(const Vector& x) const;
  /// Closed form when given, else central differences.
  Matrix jacobian(const Vector& x) const;
  Matrix finite_difference_jacobian(const Vector& x, double step = 1e-5) const;

  /// Euclidean Laplacian of each component by the 5-point second difference
  /// with one Richardson step (error O(h^4)).
  Vector finite_difference_laplacian(const Vector& x, double step = 1e-3) const;

 private:
  int m_ = 0;
  int t_ = 0;
  ValueFn value_;
  JacobianFn jacobian_;
};

/// Chain rule: rows of d(psi o phi) = real Jacobian of psi at the image point
/// times the rows of d(phi). Throws PoleAtPoint.
Matrix compose_gradients(const HolomorphicMap& psi, const Matrix& base_gradients,
                         const Vector& base_point);

}  // namespace polyharm
