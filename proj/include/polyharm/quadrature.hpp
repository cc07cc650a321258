#pragma once

#include <vector>

#include "polyharm/types.hpp"

namespace polyharm {

/// Quadrature on the reference n-simplex. Points are barycentric (n+1
/// entries) and weights sum to one, so a rule approximates the mean value.
struct QuadratureRule {
  std::vector<Vector> points;
  std::vector<double> weights;
};

/// order 1: barycenter. order 2 on triangles: the classical 3-point rule.
/// Higher orders use collapsed Gauss-Legendre products exact to `order`.
QuadratureRule simplex_quadrature(int n, int order);

/// Gauss-Legendre nodes and weights on [0, 1].
void gauss_legendre(int count, std::vector<double>& nodes, std::vector<double>& weights);

}  // namespace polyharm
