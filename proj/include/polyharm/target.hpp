#pragma once

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "polyharm/holomorphic.hpp"
#include "polyharm/types.hpp"

namespace polyharm {

/// Christoffel symbols Gamma^k_{ab} of a 2n-dimensional chart.
class Christoffel {
 public:
  explicit Christoffel(int dim) : dim_(dim), data_(static_cast<std::size_t>(dim) * dim * dim, 0.0) {}

  int dim() const { return dim_; }
  double& operator()(int k, int a, int b) { return data_[(k * dim_ + a) * dim_ + b]; }
  double operator()(int k, int a, int b) const { return data_[(k * dim_ + a) * dim_ + b]; }
  double max_abs() const;

 private:
  int dim_;
  std::vector<double> data_;
};

/// Hermitian manifold of complex dimension n in a single holomorphic chart,
/// real coordinates ordered (x_1..x_n, y_1..y_n).
class ChartedTarget {
 public:
  using MetricFn = std::function<Matrix(const Vector&)>;
  using ChristoffelFn = std::function<Christoffel(const Vector&)>;

  /// Flat C^n.
  static ChartedTarget flat(int n);
  /// CP^1 in the affine chart with h = 4 / (1 + |z|^2)^2 * identity.
  static ChartedTarget fubini_study_cp1(double chart_radius = 1e3);
  /// Constant Hermitian metric (Kahler). Throws NotSPD or InvalidArgument if
  /// `h` is not J-invariant.
  static ChartedTarget constant(const Matrix& h);
  /// User target: Christoffel symbols by finite differences of `h`; the
  /// Kahler flag must be established with kahler_form_residual().
  static ChartedTarget custom(int n, MetricFn h, bool is_kahler, std::string name);

  int complex_dim() const { return n_; }
  int real_dim() const { return 2 * n_; }
  const std::string& name() const { return name_; }
  bool is_hermitian() const { return hermitian_; }
  bool is_kahler() const { return kahler_; }
  bool is_flat() const { return flat_; }

  /// Image points must lie strictly inside |z| < chart_radius.
  bool contains(const Vector& z) const;
  void require_in_chart(const Vector& z) const;

  Matrix metric(const Vector& z) const;
  /// Throws TargetMetricSingular.
  Matrix inverse_metric(const Vector& z) const;
  Christoffel christoffel(const Vector& z) const;

  /// max |h(JU, JV) - h(U, V)| over the coordinate frame.
  double hermitian_residual(const Vector& z) const;
  /// max |d_c h_ab - h_kb Gamma^k_ac - h_ak Gamma^k_bc| with d_c h by central
  /// differences.
  double metric_compatibility_residual(const Vector& z, double step = 1e-5) const;
  /// max |d omega| for the Kahler form omega(U, V) = h(JU, V), by central
  /// differences.
  double kahler_form_residual(const Vector& z, double step = 1e-5) const;

 private:
  int n_ = 1;
  std::string name_;
  MetricFn metric_;
  ChristoffelFn christoffel_;
  bool hermitian_ = true;
  bool kahler_ = true;
  bool flat_ = false;
  double radius_ = std::numeric_limits<double>::infinity();
};

/// Christoffel symbols of the Levi-Civita connection from central differences
/// of a metric evaluator.
Christoffel finite_difference_christoffel(const ChartedTarget::MetricFn& h, const Vector& z,
                                          double step = 1e-5);

/// max over outputs and A of |d_xA f1 - d_yA f2| + |d_yA f1 + d_xA f2|.
double cauchy_riemann_residual(const HolomorphicMap& f, const CVector& z, double step = 1e-5);

/// Same for the anti-holomorphic equations (f depends on conj(z) only):
/// |d_xA f1 + d_yA f2| + |d_yA f1 - d_xA f2|.
double anti_cauchy_riemann_residual(const HolomorphicMap& f, const CVector& z, double step = 1e-5);

/// Cauchy-Riemann residual restricted to the coordinates listed in `which`.
double cauchy_riemann_residual(const HolomorphicMap& f, const CVector& z,
                               const std::vector<int>& which, double step = 1e-5);

/// max over j, A, B of |d^2 f^j / dx_A dy_B - d^2 f^j / dx_B dy_A| by mixed
/// central second differences.
double kahler_symmetry_residual(const HolomorphicMap& f, const CVector& z, double step = 1e-4);

}  // namespace polyharm
