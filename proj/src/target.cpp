#include "polyharm/target.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Cholesky>

#include "polyharm/error.hpp"
#include "polyharm/riemannian.hpp"

namespace polyharm {

double Christoffel::max_abs() const {
  double m = 0.0;
  for (double v : data_) m = std::max(m, std::abs(v));
  return m;
}

namespace {

// Central difference of the metric along coordinate c.
Matrix metric_derivative(const ChartedTarget::MetricFn& h, const Vector& z, int c, double step) {
  const double s = step * std::max(1.0, std::abs(z[c]));
  Vector zp = z, zm = z;
  zp[c] += s;
  zm[c] -= s;
  return (h(zp) - h(zm)) / (2.0 * s);
}

}  // namespace

Christoffel finite_difference_christoffel(const ChartedTarget::MetricFn& h, const Vector& z,
                                          double step) {
  const int dim = static_cast<int>(z.size());
  std::vector<Matrix> dh;
  for (int c = 0; c < dim; ++c) dh.push_back(metric_derivative(h, z, c, step));
  const Matrix hinv = h(z).inverse();
  Christoffel gamma(dim);
  for (int k = 0; k < dim; ++k)
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        double sum = 0.0;
        for (int l = 0; l < dim; ++l)
          sum += hinv(k, l) * (dh[a](l, b) + dh[b](l, a) - dh[l](a, b));
        gamma(k, a, b) = 0.5 * sum;
      }
  return gamma;
}

ChartedTarget ChartedTarget::flat(int n) {
  if (n < 1) fail(ErrorCode::InvalidArgument, "target dimension must be positive");
  ChartedTarget t;
  t.n_ = n;
  t.name_ = "flat:" + std::to_string(n);
  t.metric_ = [n](const Vector&) { return Matrix(Matrix::Identity(2 * n, 2 * n)); };
  t.christoffel_ = [n](const Vector&) { return Christoffel(2 * n); };
  t.flat_ = true;
  return t;
}

ChartedTarget ChartedTarget::fubini_study_cp1(double chart_radius) {
  ChartedTarget t;
  t.n_ = 1;
  t.name_ = "cp1";
  t.radius_ = chart_radius;
  t.metric_ = [](const Vector& z) {
    const double r2 = z.squaredNorm();
    return Matrix(4.0 / ((1.0 + r2) * (1.0 + r2)) * Matrix::Identity(2, 2));
  };
  // Conformal metric e^{2 sigma} I with sigma = log 2 - log(1 + |z|^2):
  // Gamma^k_ij = delta_ki s_j + delta_kj s_i - delta_ij s_k.
  t.christoffel_ = [](const Vector& z) {
    const double r2 = z.squaredNorm();
    const double s[2] = {-2.0 * z[0] / (1.0 + r2), -2.0 * z[1] / (1.0 + r2)};
    Christoffel gamma(2);
    for (int k = 0; k < 2; ++k)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j)
          gamma(k, i, j) = (k == i ? s[j] : 0.0) + (k == j ? s[i] : 0.0) - (i == j ? s[k] : 0.0);
    return gamma;
  };
  return t;
}

ChartedTarget ChartedTarget::constant(const Matrix& h) {
  if (h.rows() % 2 != 0 || !is_spd(h)) fail(ErrorCode::NotSPD, "constant target metric");
  const int n = static_cast<int>(h.rows() / 2);
  const Matrix j = complex_structure(n);
  if ((j.transpose() * h * j - h).cwiseAbs().maxCoeff() > 1e-10 * h.cwiseAbs().maxCoeff())
    fail(ErrorCode::InvalidArgument, "constant target metric is not Hermitian");
  ChartedTarget t;
  t.n_ = n;
  t.name_ = "constant";
  t.metric_ = [h](const Vector&) { return h; };
  t.christoffel_ = [n](const Vector&) { return Christoffel(2 * n); };
  t.flat_ = true;
  return t;
}

ChartedTarget ChartedTarget::custom(int n, MetricFn h, bool is_kahler, std::string name) {
  ChartedTarget t;
  t.n_ = n;
  t.name_ = std::move(name);
  t.metric_ = h;
  t.christoffel_ = [h](const Vector& z) { return finite_difference_christoffel(h, z); };
  t.kahler_ = is_kahler;
  return t;
}

bool ChartedTarget::contains(const Vector& z) const {
  return z.size() == 2 * n_ && z.allFinite() && z.norm() < radius_;
}

void ChartedTarget::require_in_chart(const Vector& z) const {
  if (!contains(z)) fail(ErrorCode::ImageLeftChart, "point outside the chart of " + name_);
}

Matrix ChartedTarget::metric(const Vector& z) const {
  if (z.size() != 2 * n_) fail(ErrorCode::DimensionMismatch, "chart point length");
  return metric_(z);
}

Matrix ChartedTarget::inverse_metric(const Vector& z) const {
  const Matrix h = metric(z);
  Eigen::LLT<Matrix> llt(h);
  if (llt.info() != Eigen::Success || !h.allFinite())
    fail(ErrorCode::TargetMetricSingular, "target metric of " + name_ + " is singular here");
  return llt.solve(Matrix::Identity(h.rows(), h.cols()));
}

Christoffel ChartedTarget::christoffel(const Vector& z) const {
  if (z.size() != 2 * n_) fail(ErrorCode::DimensionMismatch, "chart point length");
  if (!z.allFinite() || z.norm() >= radius_)
    fail(ErrorCode::ChartBoundary, "point outside the chart of " + name_);
  return christoffel_(z);
}

double ChartedTarget::hermitian_residual(const Vector& z) const {
  const Matrix h = metric(z);
  const Matrix j = complex_structure(n_);
  return (j.transpose() * h * j - h).cwiseAbs().maxCoeff();
}

double ChartedTarget::metric_compatibility_residual(const Vector& z, double step) const {
  const int dim = 2 * n_;
  const Matrix h = metric(z);
  const Christoffel gamma = christoffel(z);
  double worst = 0.0;
  for (int c = 0; c < dim; ++c) {
    const Matrix dh = metric_derivative(metric_, z, c, step);
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        double contraction = 0.0;
        for (int k = 0; k < dim; ++k) contraction += h(k, b) * gamma(k, a, c) + h(a, k) * gamma(k, b, c);
        worst = std::max(worst, std::abs(dh(a, b) - contraction));
      }
  }
  return worst;
}

double ChartedTarget::kahler_form_residual(const Vector& z, double step) const {
  const int dim = 2 * n_;
  const Matrix jt = complex_structure(n_).transpose();
  std::vector<Matrix> domega;
  for (int c = 0; c < dim; ++c) domega.push_back(jt * metric_derivative(metric_, z, c, step));
  double worst = 0.0;
  for (int a = 0; a < dim; ++a)
    for (int b = 0; b < dim; ++b)
      for (int c = 0; c < dim; ++c)
        worst = std::max(worst, std::abs(domega[a](b, c) + domega[b](c, a) + domega[c](a, b)));
  return worst;
}

namespace {

// Central-difference partials of f along x_A and y_A: returns (d_x f, d_y f).
std::pair<CVector, CVector> partials(const HolomorphicMap& f, const CVector& z, int a, double step) {
  const double hx = step * std::max(1.0, std::abs(z[a].real()));
  const double hy = step * std::max(1.0, std::abs(z[a].imag()));
  CVector zp = z, zm = z;
  zp[a] += Complex(hx, 0.0);
  zm[a] -= Complex(hx, 0.0);
  const CVector dx = (f(zp) - f(zm)) / (2.0 * hx);
  zp = z;
  zm = z;
  zp[a] += Complex(0.0, hy);
  zm[a] -= Complex(0.0, hy);
  const CVector dy = (f(zp) - f(zm)) / (2.0 * hy);
  return {dx, dy};
}

template <typename Residual>
double max_over(const HolomorphicMap& f, const CVector& z, const std::vector<int>& which, double step,
                Residual residual) {
  if (z.size() != f.domain_dim()) fail(ErrorCode::DimensionMismatch, "point length");
  f(z);  // PoleAtPoint
  double worst = 0.0;
  for (int a : which) {
    const auto [dx, dy] = partials(f, z, a, step);
    for (Eigen::Index j = 0; j < dx.size(); ++j) worst = std::max(worst, residual(dx[j], dy[j]));
  }
  return worst;
}

std::vector<int> all_coordinates(int n) {
  std::vector<int> w(n);
  for (int a = 0; a < n; ++a) w[a] = a;
  return w;
}

double holomorphic_defect(Complex dx, Complex dy) {
  return std::abs(dx.real() - dy.imag()) + std::abs(dy.real() + dx.imag());
}

double antiholomorphic_defect(Complex dx, Complex dy) {
  return std::abs(dx.real() + dy.imag()) + std::abs(dy.real() - dx.imag());
}

}  // namespace

double cauchy_riemann_residual(const HolomorphicMap& f, const CVector& z, double step) {
  return max_over(f, z, all_coordinates(f.domain_dim()), step, holomorphic_defect);
}

double cauchy_riemann_residual(const HolomorphicMap& f, const CVector& z,
                               const std::vector<int>& which, double step) {
  return max_over(f, z, which, step, holomorphic_defect);
}

double anti_cauchy_riemann_residual(const HolomorphicMap& f, const CVector& z, double step) {
  return max_over(f, z, all_coordinates(f.domain_dim()), step, antiholomorphic_defect);
}

double kahler_symmetry_residual(const HolomorphicMap& f, const CVector& z, double step) {
  const int n = f.domain_dim();
  if (z.size() != n) fail(ErrorCode::DimensionMismatch, "point length");
  f(z);
  // Mixed partial d^2 f / dx_A dy_B.
  auto mixed = [&](int a, int b) {
    const double hx = step * std::max(1.0, std::abs(z[a].real()));
    const double hy = step * std::max(1.0, std::abs(z[b].imag()));
    auto at = [&](double sx, double sy) {
      CVector w = z;
      w[a] += Complex(sx * hx, 0.0);
      w[b] += Complex(0.0, sy * hy);
      return f(w);
    };
    return CVector((at(1, 1) - at(1, -1) - at(-1, 1) + at(-1, -1)) / (4.0 * hx * hy));
  };
  double worst = 0.0;
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      const CVector d = mixed(a, b) - mixed(b, a);
      for (Eigen::Index j = 0; j < d.size(); ++j)
        worst = std::max({worst, std::abs(d[j].real()), std::abs(d[j].imag())});
    }
  return worst;
}

}  // namespace polyharm
