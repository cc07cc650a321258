#include "polyharm/maps.hpp"

#include <Eigen/QR>

#include "polyharm/error.hpp"

namespace polyharm {

PLMap::PLMap(const SimplicialComplex& complex, Matrix values)
    : complex_(&complex), values_(std::move(values)) {
  if (static_cast<std::size_t>(values_.rows()) != complex.vertex_count())
    fail(ErrorCode::DimensionMismatch, "map needs one value per vertex");
  if (!values_.allFinite()) fail(ErrorCode::InvalidArgument, "map values must be finite");
}

Vector PLMap::value_at(const SimplexPoint& p) const {
  const Simplex& s = complex_->top(p.simplex);
  Vector out = Vector::Zero(values_.cols());
  for (std::size_t i = 0; i < s.size(); ++i) out += p.barycentric[i] * values_.row(s[i]).transpose();
  return out;
}

Matrix PLMap::frame_differential(std::size_t simplex) const {
  const Simplex& s = complex_->top(simplex);
  const int n = complex_->dimension();
  Matrix d(values_.cols(), n);
  for (int i = 0; i < n; ++i) d.col(i) = (values_.row(s[i + 1]) - values_.row(s[0])).transpose();
  return d;
}

Matrix PLMap::differential(std::size_t simplex) const {
  const Simplex& s = complex_->top(simplex);
  const int n = complex_->dimension();
  const auto ambient = static_cast<Eigen::Index>(complex_->ambient_dimension());
  Matrix edges(ambient, n);
  const auto& x0 = complex_->coordinates(s[0]);
  for (int i = 0; i < n; ++i) {
    const auto& xi = complex_->coordinates(s[i + 1]);
    for (Eigen::Index a = 0; a < ambient; ++a) edges(a, i) = xi[a] - x0[a];
  }
  Eigen::ColPivHouseholderQR<Matrix> qr(edges);
  if (qr.rank() < n)
    fail(ErrorCode::DegenerateSimplex, "simplex " + to_string(s) + " has zero euclidean volume");
  // D = F (E^T E)^-1 E^T, the minimum-norm solution of D E = F.
  const Matrix gram = edges.transpose() * edges;
  return frame_differential(simplex) * gram.ldlt().solve(edges.transpose());
}

PLMap PLMap::interpolate(const SimplicialComplex& complex,
                         const std::function<Vector(const Vector&)>& f) {
  Matrix values;
  for (std::size_t v = 0; v < complex.vertex_count(); ++v) {
    const auto& c = complex.coordinates(static_cast<VertexId>(v));
    const Vector x = Eigen::Map<const Vector>(c.data(), static_cast<Eigen::Index>(c.size()));
    const Vector y = f(x);
    if (v == 0) values.resize(complex.vertex_count(), y.size());
    values.row(v) = y.transpose();
  }
  return PLMap(complex, std::move(values));
}

AnalyticMap::AnalyticMap(int domain_dim, int target_dim, ValueFn value, JacobianFn jacobian)
    : m_(domain_dim), t_(target_dim), value_(std::move(value)), jacobian_(std::move(jacobian)) {}

Vector AnalyticMap::operator()(const Vector& x) const {
  if (x.size() != m_) fail(ErrorCode::DimensionMismatch, "analytic map argument length");
  Vector y = value_(x);
  if (!y.allFinite()) fail(ErrorCode::PoleAtPoint, "analytic map is not finite here");
  return y;
}

Matrix AnalyticMap::jacobian(const Vector& x) const {
  if (!jacobian_) return finite_difference_jacobian(x);
  Matrix j = jacobian_(x);
  if (!j.allFinite()) fail(ErrorCode::PoleAtPoint, "analytic map derivative is not finite here");
  return j;
}

Matrix AnalyticMap::finite_difference_jacobian(const Vector& x, double step) const {
  return polyharm::finite_difference_jacobian([this](const Vector& p) { return (*this)(p); }, x,
                                              step);
}

Vector AnalyticMap::finite_difference_laplacian(const Vector& x, double step) const {
  const Vector f0 = (*this)(x);
  auto second_difference = [&](double h) {
    Vector lap = Vector::Zero(f0.size());
    for (int i = 0; i < m_; ++i) {
      Vector xp = x, xm = x;
      xp[i] += h;
      xm[i] -= h;
      lap += ((*this)(xp) - 2.0 * f0 + (*this)(xm)) / (h * h);
    }
    return lap;
  };
  return (4.0 * second_difference(0.5 * step) - second_difference(step)) / 3.0;
}

Matrix compose_gradients(const HolomorphicMap& psi, const Matrix& base_gradients,
                         const Vector& base_point) {
  if (base_gradients.rows() != 2 * psi.domain_dim() || base_point.size() != 2 * psi.domain_dim())
    fail(ErrorCode::DimensionMismatch, "gradient rows must match the domain of " + psi.name());
  psi.real_value(base_point);  // raises PoleAtPoint off the domain
  return psi.real_jacobian(base_point) * base_gradients;
}

}  // namespace polyharm
