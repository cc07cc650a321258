#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <vector>

#include <Eigen/SparseCholesky>
#include <Eigen/SparseCore>

#include "polyharm/maps.hpp"
#include "polyharm/riemannian.hpp"
#include "polyharm/simplicial.hpp"
#include "polyharm/target.hpp"

namespace polyharm {

using SparseMatrix = Eigen::SparseMatrix<double>;
using BoundaryValues = std::map<VertexId, Vector>;

/// Hat-basis stiffness S[p][q] = int <grad l_p, grad l_q> dmu_g together with
/// the data needed for Christoffel loads. Immutable after assembly.
class StiffnessSystem {
 public:
  /// Throws NotAdmissible when the complex fails the chainability test.
  static StiffnessSystem assemble(const SimplicialComplex& complex, const PiecewiseMetric& metric,
                                  int quadrature_order = 0);

  const SimplicialComplex& complex() const { return *complex_; }
  const SparseMatrix& matrix() const { return stiffness_; }
  /// int l_p dmu_g.
  const Vector& lumped_mass() const { return mass_; }
  const std::vector<VertexId>& boundary() const { return boundary_; }
  const std::vector<VertexId>& interior() const { return interior_; }
  bool is_boundary(VertexId v) const { return is_boundary_[v] != 0; }
  double volume(std::size_t simplex) const { return volume_[simplex]; }
  const Matrix& inverse_metric(std::size_t simplex) const { return inverse_metric_[simplex]; }

  /// load_k(p) = sum over simplices of (vol / (n+1)) Gamma^k_ab(phi(barycenter))
  /// <grad phi^a, grad phi^b>; V x 2n. Throws ImageLeftChart.
  Matrix christoffel_load(const PLMap& map, const ChartedTarget& target) const;

  /// Every off-diagonal entry of S is <= 0 (hypothesis of the discrete
  /// maximum principle).
  bool has_nonpositive_off_diagonal() const;

  /// sqrt(sum_k r_k^T S_II^-1 r_k) over interior rows (boundary = complex
  /// boundary). Energy norm of the correction that would cancel r.
  double dual_norm(const Matrix& residual) const;

 private:
  const SimplicialComplex* complex_ = nullptr;
  SparseMatrix stiffness_;
  Vector mass_;
  std::vector<VertexId> boundary_, interior_;
  std::vector<char> is_boundary_;
  std::vector<double> volume_;
  std::vector<Matrix> inverse_metric_;
  std::shared_ptr<Eigen::SimplicialLDLT<SparseMatrix>> interior_factor_;
  std::vector<int> interior_index_;
};

/// Solves S u = 0 on the vertices without prescribed values. Every boundary
/// vertex needs a value (MissingBoundaryValues); on a closed complex with no
/// data, `mean_zero_gauge` returns the zero solution of width `width`.
PLMap solve_harmonic_function(const StiffnessSystem& system, const BoundaryValues& boundary_values,
                              bool mean_zero_gauge = false, int width = 1);

struct SolveOptions {
  int max_iter = 200;
  double tol = 1e-8;
  double damping = 0.7;
};

struct HarmonicMapResult {
  PLMap map;
  int iterations = 0;
  std::vector<double> history;
};

/// Damped fixed point u <- S_II^-1 (load(u) - S_IB u_B) starting from the
/// flat harmonic extension; a step that does not reduce the residual is
/// replaced by a backtracking search on the target energy. Throws
/// NonConvergenceError (with the residual history) and ImageLeftChart.
HarmonicMapResult solve_harmonic_map(const StiffnessSystem& system, const ChartedTarget& target,
                                     const BoundaryValues& boundary_values,
                                     const SolveOptions& options = {});

struct HarmonicResidual {
  /// (S phi^k)(p) - load_k(p) on interior vertices, zero on the boundary.
  Matrix per_vertex;
  double inf_norm = 0.0;
  /// sum_p mass_p |r(p)|_1.
  double weighted_l1 = 0.0;
};

/// Weak harmonic map equation tested against every interior hat function.
/// A null target means flat coordinates.
HarmonicResidual weak_harmonic_residual(const StiffnessSystem& system, const ChartedTarget* target,
                                        const PLMap& map);

}  // namespace polyharm
