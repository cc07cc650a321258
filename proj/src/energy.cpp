#include "polyharm/energy.hpp"

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Cholesky>
#include <Eigen/SVD>

#include "polyharm/error.hpp"
#include "polyharm/quadrature.hpp"

namespace polyharm {

double unit_ball_volume(int m) {
  return std::pow(std::numbers::pi, 0.5 * m) / std::tgamma(0.5 * m + 1.0);
}

double ks_constant(int m) { return unit_ball_volume(m) / (m + 2.0); }

std::string to_string(Normalization n) {
  return n == Normalization::GradientSquared ? "gradient_squared" : "ks_raw";
}

Normalization parse_normalization(const std::string& s) {
  if (s == "gradient_squared") return Normalization::GradientSquared;
  if (s == "ks_raw") return Normalization::KsRaw;
  fail(ErrorCode::InvalidArgument, "unknown normalization '" + s + "'");
}

DensityEstimate approx_energy_density(const SimplicialComplex& complex, const PiecewiseMetric& metric,
                                      const PLMap& map, const SimplexPoint& x, double eps,
                                      std::size_t sample_count, std::uint64_t seed) {
  if (!(eps > 0.0)) fail(ErrorCode::NonpositiveEpsilon, "epsilon must be positive");
  if (sample_count < 2) fail(ErrorCode::InvalidArgument, "need at least two samples");
  const int m = complex.dimension();
  if (x.simplex >= complex.top_count() || x.barycentric.size() != m + 1)
    fail(ErrorCode::PointOffComplex, "bad simplex point");

  const Matrix g = metric.at(x.simplex, x.barycentric);
  const Matrix ginv = g.inverse();
  const Vector t = frame_coordinates(x.barycentric);

  // The g-ball {u : u^T g u < eps^2} around t must stay in the standard
  // simplex: support in direction a is eps * sqrt(a^T g^-1 a).
  for (int i = 0; i < m; ++i)
    if (t[i] < eps * std::sqrt(ginv(i, i)))
      fail(ErrorCode::BallLeavesSimplex, "ball crosses face t_" + std::to_string(i + 1) + " = 0");
  if (1.0 - t.sum() < eps * std::sqrt(ginv.sum()))
    fail(ErrorCode::BallLeavesSimplex, "ball crosses the face opposite vertex 0");

  // u = eps L^-T w with g = L L^T maps the unit ball onto the g-ball and the
  // factor |det L^-T| cancels sqrt(det g) in dmu_g.
  const Eigen::LLT<Matrix> llt(g);
  const Matrix to_frame = llt.matrixU().solve(Matrix::Identity(m, m));
  const Matrix d = map.frame_differential(x.simplex) * to_frame;

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  double sum = 0.0, sum2 = 0.0;
  Vector w(m);
  for (std::size_t k = 0; k < sample_count; ++k) {
    for (int i = 0; i < m; ++i) w[i] = normal(rng);
    w *= std::pow(uniform(rng), 1.0 / m) / w.norm();
    const double f = (d * w).squaredNorm();
    sum += f;
    sum2 += f * f;
  }
  const double n = static_cast<double>(sample_count);
  const double mean = sum / n;
  const double var = std::max(0.0, (sum2 / n - mean * mean) * n / (n - 1.0));
  // eps^(m+2) cancels against omega_m eps^m and the eps^2 in |D u|^2.
  const double omega = unit_ball_volume(m);
  return {omega * mean, omega * std::sqrt(var / n), sample_count};
}

EnergyReport dirichlet_energy(const SimplicialComplex& complex, const PiecewiseMetric& metric,
                              const PLMap& map, const ChartedTarget* target, int quadrature_order,
                              Normalization normalization) {
  const int m = complex.dimension();
  if (target && target->real_dim() != map.target_dim())
    fail(ErrorCode::DimensionMismatch, "map values do not match the target chart");
  const bool constant_data =
      metric.mode() == PiecewiseMetric::Mode::Constant && (target == nullptr || target->is_flat());
  const int order = quadrature_order > 0 ? quadrature_order : (constant_data ? 1 : 2);
  const QuadratureRule rule = simplex_quadrature(m, order);
  double reference = 1.0;
  for (int i = 2; i <= m; ++i) reference /= i;

  EnergyReport report;
  report.ks_constant = ks_constant(m);
  report.normalization = normalization;
  const double scale = normalization == Normalization::KsRaw ? report.ks_constant : 1.0;
  for (std::size_t s = 0; s < complex.top_count(); ++s) {
    const Matrix d = map.frame_differential(s);
    double contribution = 0.0, volume = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const Matrix g = metric.at(s, rule.points[q]);
      const Eigen::LLT<Matrix> llt(g);
      if (llt.info() != Eigen::Success) fail(ErrorCode::NotSPD, "domain metric");
      const Matrix gram = d * llt.solve(d.transpose());
      double e = 0.0;
      if (target) {
        const Vector image = map.value_at({s, rule.points[q]});
        const Matrix h = target->metric(image);
        if (!h.allFinite() || Eigen::LLT<Matrix>(h).info() != Eigen::Success)
          fail(ErrorCode::TargetMetricSingular, "target metric at an image point");
        e = (h.cwiseProduct(gram)).sum();
      } else {
        e = gram.trace();
      }
      const double dv = rule.weights[q] * std::sqrt(g.determinant()) * reference;
      contribution += e * dv;
      volume += dv;
    }
    report.density.push_back(scale * contribution / volume);
    report.contribution.push_back(scale * contribution);
  }
  for (double c : report.contribution) report.total += c;
  return report;
}

CompositeBound composite_energy_bound_check(const SimplicialComplex& complex,
                                            const PiecewiseMetric& metric, const PLMap& map,
                                            const HolomorphicMap& psi) {
  if (map.target_dim() != 2 * psi.domain_dim())
    fail(ErrorCode::DimensionMismatch, "map values do not match the domain of " + psi.name());
  auto op_norm = [&](const Vector& z) {
    const Matrix j = psi.real_jacobian(z);
    return Eigen::JacobiSVD<Matrix>(j).singularValues()[0];
  };
  CompositeBound out;
  for (std::size_t v = 0; v < complex.vertex_count(); ++v)
    out.lipschitz = std::max(out.lipschitz, op_norm(map.value(static_cast<VertexId>(v))));

  double composed = 0.0, plain = 0.0;
  for (std::size_t s = 0; s < complex.top_count(); ++s) {
    const SimplexPoint b = barycenter(complex, s);
    const Vector image = map.value_at(b);
    out.lipschitz = std::max(out.lipschitz, op_norm(image));
    const Matrix g = metric.at(s, b.barycentric);
    const Matrix d = map.frame_differential(s);
    const Matrix cd = compose_gradients(psi, d, image);
    const Eigen::LLT<Matrix> llt(g);
    const double vol = simplex_volume(complex, metric, s, 1);
    plain += vol * (d * llt.solve(d.transpose())).trace();
    composed += vol * (cd * llt.solve(cd.transpose())).trace();
  }
  out.lhs = composed;
  out.rhs = out.lipschitz * out.lipschitz * plain;
  out.holds = out.lhs <= out.rhs * (1.0 + 1e-9);
  return out;
}

}  // namespace polyharm
