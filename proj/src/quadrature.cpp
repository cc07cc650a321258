#include "polyharm/quadrature.hpp"

#include <cmath>
#include <numbers>

#include "polyharm/error.hpp"

namespace polyharm {

void gauss_legendre(int count, std::vector<double>& nodes, std::vector<double>& weights) {
  nodes.assign(count, 0.0);
  weights.assign(count, 0.0);
  for (int i = 0; i < count; ++i) {
    // Newton on P_count starting from the Chebyshev-like guess.
    double x = std::cos(std::numbers::pi * (i + 0.75) / (count + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= count; ++k) {
        const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = pk;
      }
      dp = count * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    nodes[i] = 0.5 * (1.0 - x);
    weights[i] = 1.0 / ((1.0 - x * x) * dp * dp);
  }
}

QuadratureRule simplex_quadrature(int n, int order) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "quadrature dimension must be positive");
  if (order < 1) fail(ErrorCode::InvalidArgument, "quadrature order must be positive");
  QuadratureRule rule;
  if (order == 1) {
    rule.points.push_back(Vector::Constant(n + 1, 1.0 / (n + 1)));
    rule.weights.push_back(1.0);
    return rule;
  }
  if (order == 2 && n == 2) {
    for (int i = 0; i < 3; ++i) {
      Vector b = Vector::Constant(3, 1.0 / 6.0);
      b[i] = 2.0 / 3.0;
      rule.points.push_back(b);
      rule.weights.push_back(1.0 / 3.0);
    }
    return rule;
  }

  const int q = (order + n) / 2 + 1;
  std::vector<double> x, w;
  gauss_legendre(q, x, w);
  double total = 0.0;
  std::vector<int> idx(n, 0);
  while (true) {
    // Collapsed coordinates: t_1 = s_1, t_i = s_i * prod_{j<i} (1 - s_j).
    Vector t(n);
    double weight = 1.0, remaining = 1.0;
    for (int i = 0; i < n; ++i) {
      const double s = x[idx[i]];
      t[i] = remaining * s;
      weight *= w[idx[i]];
      if (i < n - 1) weight *= std::pow(1.0 - s, n - 1 - i);
      remaining *= 1.0 - s;
    }
    Vector b(n + 1);
    b[0] = 1.0 - t.sum();
    b.tail(n) = t;
    rule.points.push_back(b);
    rule.weights.push_back(weight);
    total += weight;

    int k = 0;
    while (k < n && ++idx[k] == q) idx[k++] = 0;
    if (k == n) break;
  }
  for (double& wt : rule.weights) wt /= total;
  return rule;
}

}  // namespace polyharm
