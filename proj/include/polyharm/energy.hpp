#pragma once

#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

#include "polyharm/holomorphic.hpp"
#include "polyharm/maps.hpp"
#include "polyharm/riemannian.hpp"
#include "polyharm/target.hpp"

namespace polyharm {

/// Volume of the unit ball in R^m.
double unit_ball_volume(int m);

/// c_m = omega_m / (m + 2): the ratio between the epsilon-ball energy density
/// and |grad phi|^2 for affine maps.
double ks_constant(int m);

struct DensityEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
};

/// Monte Carlo estimate of
///   e_eps(x) = int_{B(x, eps)} |phi(x) - phi(x')|^2 / eps^(m+2) dmu_g(x')
/// with the ball taken inside the simplex of x (the metric is frozen at x)
/// and the chart distance on the target. Throws NonpositiveEpsilon and
/// BallLeavesSimplex.
DensityEstimate approx_energy_density(const SimplicialComplex& complex, const PiecewiseMetric& metric,
                                      const PLMap& map, const SimplexPoint& x, double eps,
                                      std::size_t sample_count, std::uint64_t seed = 42);

enum class Normalization { GradientSquared, KsRaw };

std::string to_string(Normalization n);
Normalization parse_normalization(const std::string& s);

struct EnergyReport {
  /// Mean energy density per top simplex.
  std::vector<double> density;
  /// density * volume.
  std::vector<double> contribution;
  double total = 0.0;
  /// c_m; multiply gradient-squared values by it to get the raw KS limit.
  double ks_constant = 0.0;
  Normalization normalization = Normalization::GradientSquared;
};

/// e = sum_ab h_ab(phi) <grad phi^a, grad phi^b> integrated simplex by
/// simplex. A null target means flat euclidean chart coordinates. Throws
/// TargetMetricSingular and NotSPD.
EnergyReport dirichlet_energy(const SimplicialComplex& complex, const PiecewiseMetric& metric,
                              const PLMap& map, const ChartedTarget* target = nullptr,
                              int quadrature_order = 0,
                              Normalization normalization = Normalization::GradientSquared);

struct CompositeBound {
  double lhs = 0.0;
  double rhs = 0.0;
  double lipschitz = 0.0;
  bool holds = false;
};

/// E(psi o phi) <= lambda^2 E(phi), lambda the largest operator norm of
/// psi's real Jacobian over the image points (vertices and barycenters).
/// The composite energy uses composed gradients at barycenters.
CompositeBound composite_energy_bound_check(const SimplicialComplex& complex,
                                            const PiecewiseMetric& metric, const PLMap& map,
                                            const HolomorphicMap& psi);

}  // namespace polyharm
