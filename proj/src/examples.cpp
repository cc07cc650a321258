#include "polyharm/examples.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "polyharm/error.hpp"
#include "polyharm/meshes.hpp"
#include "polyharm/target.hpp"

namespace polyharm {

EtaSpec eta_spec(int k, int s, int r) {
  if (k < 1 || s < 1 || r < 1) fail(ErrorCode::InvalidArgument, "k, s and r must be positive");
  EtaSpec spec;
  spec.k = k;
  spec.s = s;
  for (int i = 0; i < r; ++i)
    spec.components.push_back({Polynomial::variable(k, i % k), Polynomial::variable(k, k - 1),
                               Polynomial::variable(s, i % s), Polynomial::variable(s, s - 1)});
  return spec;
}

EtaMap build_eta(EtaSpec spec) {
  if (spec.k < 1 || spec.s < 1 || spec.components.empty())
    fail(ErrorCode::InvalidArgument, "eta needs positive k, s and at least one component");
  for (std::size_t i = 0; i < spec.components.size(); ++i) {
    const EtaComponent& c = spec.components[i];
    const std::string where = "component " + std::to_string(i + 1);
    if (c.F.variables() != spec.k || c.G.variables() != spec.k || c.P.variables() != spec.s ||
        c.Q.variables() != spec.s)
      fail(ErrorCode::DimensionMismatch, where + ": polynomial variable counts");
    if (c.G.is_zero() || c.Q.is_zero()) fail(ErrorCode::ZeroDenominatorPolynomial, where);
    if (!c.F.is_homogeneous() || !c.G.is_homogeneous() || !c.P.is_homogeneous() ||
        !c.Q.is_homogeneous())
      fail(ErrorCode::DegreeMismatch, where + ": polynomials must be homogeneous");
    if (c.F.degree() != c.G.degree() || c.P.degree() != c.Q.degree())
      fail(ErrorCode::DegreeMismatch, where + ": deg F = deg G and deg P = deg Q are required");
  }
  return EtaMap(std::move(spec));
}

bool EtaMap::holomorphic_data() const {
  for (const EtaComponent& c : spec_.components)
    if (c.P.degree() > 0 || c.Q.degree() > 0) return false;
  return true;
}

namespace {

struct EtaParts {
  CVector u, w;  // w = conj(v)
};

EtaParts split(const CVector& uv, int k, int s) {
  if (uv.size() != k + s) fail(ErrorCode::DimensionMismatch, "eta argument length");
  return {uv.head(k), uv.tail(s).conjugate()};
}

}  // namespace

CVector EtaMap::operator()(const CVector& uv) const {
  const EtaParts p = split(uv, k(), s());
  CVector out(r());
  for (int i = 0; i < r(); ++i) {
    const EtaComponent& c = spec_.components[i];
    const Complex g = c.G(p.u), q = c.Q(p.w);
    if (!(std::abs(g) >= spec_.guard) || !(std::abs(q) >= spec_.guard))
      fail(ErrorCode::PoleAtPoint, "eta denominator vanishes");
    out[i] = c.F(p.u) * c.P(p.w) / (g * q);
  }
  return out;
}

CMatrix EtaMap::holomorphic_derivative(const CVector& uv) const {
  (*this)(uv);
  const EtaParts p = split(uv, k(), s());
  CMatrix d(r(), k());
  for (int i = 0; i < r(); ++i) {
    const EtaComponent& c = spec_.components[i];
    const Complex f = c.F(p.u), g = c.G(p.u), ratio = c.P(p.w) / c.Q(p.w);
    d.row(i) = ((c.F.gradient(p.u) * g - c.G.gradient(p.u) * f) / (g * g) * ratio).transpose();
  }
  return d;
}

CMatrix EtaMap::antiholomorphic_derivative(const CVector& uv) const {
  (*this)(uv);
  const EtaParts p = split(uv, k(), s());
  CMatrix d(r(), s());
  for (int i = 0; i < r(); ++i) {
    const EtaComponent& c = spec_.components[i];
    const Complex pv = c.P(p.w), q = c.Q(p.w), ratio = c.F(p.u) / c.G(p.u);
    d.row(i) = ((c.P.gradient(p.w) * q - c.Q.gradient(p.w) * pv) / (q * q) * ratio).transpose();
  }
  return d;
}

Matrix EtaMap::real_jacobian(const Vector& xy) const {
  const CVector uv = to_complex(xy);
  const CMatrix a = holomorphic_derivative(uv);
  const CMatrix b = antiholomorphic_derivative(uv);
  const int n = k() + s(), t = r();
  Matrix j(2 * t, 2 * n);
  for (int i = 0; i < t; ++i) {
    // d/dx = a, d/dy = i a in u; d/dx = b, d/dy = -i b in v.
    for (int c = 0; c < k(); ++c) {
      j(i, c) = a(i, c).real();
      j(t + i, c) = a(i, c).imag();
      j(i, n + c) = -a(i, c).imag();
      j(t + i, n + c) = a(i, c).real();
    }
    for (int c = 0; c < s(); ++c) {
      j(i, k() + c) = b(i, c).real();
      j(t + i, k() + c) = b(i, c).imag();
      j(i, n + k() + c) = b(i, c).imag();
      j(t + i, n + k() + c) = -b(i, c).real();
    }
  }
  return j;
}

AnalyticMap EtaMap::analytic() const {
  const EtaMap self = *this;
  return AnalyticMap(
      2 * (k() + s()), 2 * r(), [self](const Vector& xy) { return to_real(self(to_complex(xy))); },
      [self](const Vector& xy) { return self.real_jacobian(xy); });
}

HolomorphicMap EtaMap::as_function() const {
  const EtaMap self = *this;
  return HolomorphicMap::from_values(
      k() + s(), r(), [self](const CVector& uv) { return self(uv); }, "eta");
}

std::vector<Vector> eta_sample_points(const EtaMap& eta, std::size_t count, std::uint64_t seed,
                                      double margin) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> modulus(0.3, 1.0), angle(0.0, 2.0 * std::numbers::pi);
  const int n = eta.k() + eta.s();
  std::vector<Vector> points;
  std::size_t attempts = 0;
  while (points.size() < count) {
    if (++attempts > 1000 * (count + 1))
      fail(ErrorCode::PoleAtPoint, "could not place sample points away from the poles");
    CVector z(n);
    for (int a = 0; a < n; ++a) z[a] = std::polar(modulus(rng), angle(rng));
    const EtaParts p = split(z, eta.k(), eta.s());
    bool ok = true;
    for (const EtaComponent& c : eta.spec().components)
      ok = ok && std::abs(c.G(p.u)) >= margin && std::abs(c.Q(p.w)) >= margin;
    if (ok) points.push_back(to_real(z));
  }
  return points;
}

SuiteReport eta_phwc_suite(const AnalyticMap& map, const std::vector<Vector>& points,
                           const EtaSuiteOptions& options, const Matrix* domain_structure) {
  if (map.target_dim() % 2 != 0) fail(ErrorCode::DimensionMismatch, "target must be complex");
  const int r = map.target_dim() / 2;
  const ChartedTarget flat = ChartedTarget::flat(r);
  const Matrix jt = complex_structure(r);

  double gradient = 0.0, phwc = 0.0, commutator = 0.0, laplacian = 0.0, cr = 0.0;
  for (const Vector& x : points) {
    const Matrix closed = map.jacobian(x);
    gradient = std::max(
        gradient, (closed - map.finite_difference_jacobian(x, options.fd_step)).cwiseAbs().maxCoeff());
    const std::vector<GradientSample> s = {sample_analytic(map, x)};
    phwc = std::max(phwc, phwc_residual(s).normalized_inf_norm);
    const double scale = std::max(1.0, (closed * closed.transpose()).cwiseAbs().maxCoeff());
    commutator = std::max(commutator, commutator_form_residual(s, flat).front() / scale);
    laplacian = std::max(
        laplacian, map.finite_difference_laplacian(x, options.laplacian_step).cwiseAbs().maxCoeff());
    if (domain_structure)
      cr = std::max(cr, (jt * closed - closed * *domain_structure).cwiseAbs().maxCoeff());
  }
  SuiteReport suite("eta_phwc");
  suite.less("gradient vs finite differences", gradient, options.gradient_tol);
  suite.less("phwc residual", phwc, options.conformal_tol);
  suite.less("commutator residual", commutator, options.conformal_tol);
  suite.less("finite-difference laplacian", laplacian, options.laplacian_tol);
  suite.details()["points"] = points.size();
  if (domain_structure) {
    suite.details()["holomorphic"] = cr <= 1e-10;
    suite.details()["cauchy_riemann_residual"] = cr;
  }
  return suite;
}

CauchyRiemannSummary eta_cauchy_riemann(const EtaMap& eta, const std::vector<Vector>& points) {
  const HolomorphicMap f = eta.as_function();
  std::vector<int> u(eta.k());
  for (int a = 0; a < eta.k(); ++a) u[a] = a;
  CauchyRiemannSummary out;
  for (const Vector& x : points) {
    const CVector z = to_complex(x);
    out.u_variables = std::max(out.u_variables, cauchy_riemann_residual(f, z, u));
    out.full = std::max(out.full, cauchy_riemann_residual(f, z));
    out.anti = std::max(out.anti, anti_cauchy_riemann_residual(f, z));
  }
  return out;
}

AnalyticMap sum_map(const AnalyticMap& a, const AnalyticMap& b) {
  if (a.target_dim() != b.target_dim())
    fail(ErrorCode::DimensionMismatch, "summands must share the target dimension");
  const int ma = a.domain_dim(), mb = b.domain_dim();
  return AnalyticMap(
      ma + mb, a.target_dim(),
      [a, b, ma, mb](const Vector& x) { return Vector(a(x.head(ma)) + b(x.tail(mb))); },
      [a, b, ma, mb](const Vector& x) {
        Matrix j(a.target_dim(), ma + mb);
        j << a.jacobian(x.head(ma)), b.jacobian(x.tail(mb));
        return j;
      });
}

SuiteReport sum_map_suite(const AnalyticMap& a, const AnalyticMap& b,
                          const std::vector<Vector>& points_a, const std::vector<Vector>& points_b) {
  if (points_a.size() != points_b.size())
    fail(ErrorCode::DimensionMismatch, "paired sample lists differ in length");
  const AnalyticMap sum = sum_map(a, b);
  double worst_excess = -1e300, block_a = 0.0, block_b = 0.0, total = 0.0;
  for (std::size_t i = 0; i < points_a.size(); ++i) {
    Vector x(points_a[i].size() + points_b[i].size());
    x << points_a[i], points_b[i];
    const Matrix ja = a.jacobian(points_a[i]), jb = b.jacobian(points_b[i]);
    const double ra = phwc_sample_residual(ja * ja.transpose());
    const double rb = phwc_sample_residual(jb * jb.transpose());
    const Matrix js = sum.jacobian(x);
    const double rs = phwc_sample_residual(js * js.transpose());
    worst_excess = std::max(worst_excess, rs - ra - rb);
    block_a = std::max(block_a, ra);
    block_b = std::max(block_b, rb);
    total = std::max(total, rs);
  }
  SuiteReport suite("sum_map");
  suite.less_equal("sum residual minus block residuals", worst_excess, 1e-10);
  suite.details()["sum_residual"] = total;
  suite.details()["first_block_residual"] = block_a;
  suite.details()["second_block_residual"] = block_b;
  return suite;
}

CoveringExample build_covering(const std::string& spec, int n) {
  CoveringExample out;
  out.name = spec;
  if (spec == "torus_cover") {
    meshes::FlatTorus total = meshes::flat_torus(2 * n, n, 2.0, 1.0);
    meshes::FlatTorus base = meshes::flat_torus(n, n, 1.0, 1.0);
    out.total = std::move(total.complex);
    out.base = std::move(base.complex);
    out.total_metric = PiecewiseMetric::constant(out.total, std::move(total.metrics));
    out.base_metric = PiecewiseMetric::constant(out.base, std::move(base.metrics));
    for (std::size_t v = 0; v < out.total.vertex_count(); ++v) {
      const int i = static_cast<int>(v) % (2 * n), j = static_cast<int>(v) / (2 * n);
      out.projection.push_back(i % n + n * j);
    }
    for (std::size_t v = 0; v < out.base.vertex_count(); ++v) {
      const int i = static_cast<int>(v) % n, j = static_cast<int>(v) / n;
      out.section.push_back(i + 2 * n * j);
    }
    out.is_covering = true;
    return out;
  }
  if (spec == "reflection_fold") {
    out.total = meshes::rectangle(2 * n, n, -1.0, 1.0, 0.0, 1.0);
    out.base = meshes::rectangle(n, n, 0.0, 1.0, 0.0, 1.0);
    out.total_metric = PiecewiseMetric::induced(out.total);
    out.base_metric = PiecewiseMetric::induced(out.base);
    for (std::size_t v = 0; v < out.total.vertex_count(); ++v) {
      const int i = static_cast<int>(v) % (2 * n + 1), j = static_cast<int>(v) / (2 * n + 1);
      out.projection.push_back(std::abs(i - n) + (n + 1) * j);
      if (i == n) out.fixed.push_back(static_cast<VertexId>(v));
    }
    for (std::size_t v = 0; v < out.base.vertex_count(); ++v) {
      const int i = static_cast<int>(v) % (n + 1), j = static_cast<int>(v) / (n + 1);
      out.section.push_back(i + n + (2 * n + 1) * j);
    }
    out.warnings.push_back("reflection_fold is not a covering: the edge x = 0 is fixed by the reflection");
    return out;
  }
  fail(ErrorCode::UnknownSpec, "unknown covering '" + spec + "'");
}

PLMap torus_example_map(const CoveringExample& covering, bool phm) {
  const std::size_t nv = covering.base.vertex_count();
  const int n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(nv))));
  Matrix values(static_cast<Eigen::Index>(nv), 2);
  if (phm) {
    values.col(0).setConstant(0.3);
    values.col(1).setConstant(-0.2);
    return PLMap(covering.base, values);
  }
  if (n % 2 != 0) fail(ErrorCode::InvalidArgument, "the triangle wave needs an even grid");
  auto tri = [n](int i) { return static_cast<double>(std::min(i, n - i)) / n; };
  for (std::size_t v = 0; v < nv; ++v) {
    const int i = static_cast<int>(v) % n, j = static_cast<int>(v) / n;
    values(static_cast<Eigen::Index>(v), 0) = tri(i);
    values(static_cast<Eigen::Index>(v), 1) = 2.0 * tri(j);
  }
  return PLMap(covering.base, values);
}

}  // namespace polyharm
