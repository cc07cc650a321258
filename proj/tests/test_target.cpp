#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "polyharm/error.hpp"
#include "polyharm/target.hpp"

using namespace polyharm;

namespace {

CVector point(std::initializer_list<Complex> z) {
  CVector v(static_cast<Eigen::Index>(z.size()));
  Eigen::Index i = 0;
  for (const auto& c : z) v(i++) = c;
  return v;
}

Vector real_point(double x, double y) {
  Vector v(2);
  v << x, y;
  return v;
}

// Closed-form symbols of h = e^{2f} I with f = log 2 - log(1 + |z|^2):
// Gamma^k_ab = delta_ka f_b + delta_kb f_a - delta_ab f_k.
double fs_symbol(const Vector& z, int k, int a, int b) {
  const double r2 = z.squaredNorm();
  const Vector df = -2.0 * z / (1.0 + r2);
  return (k == a ? df(b) : 0.0) + (k == b ? df(a) : 0.0) - (a == b ? df(k) : 0.0);
}

}  // namespace

TEST_CASE("Cauchy-Riemann residuals") {
  CHECK(cauchy_riemann_residual(HolomorphicMap::power(1, 0, 2), point({{1.0, 1.0}})) < 1e-8);

  const auto conj = HolomorphicMap::from_values(1, 1, [](const CVector& z) { return CVector(z.conjugate()); }, "conj");
  CHECK(cauchy_riemann_residual(conj, point({{0.3, -0.7}})) == doctest::Approx(2.0).epsilon(1e-8));
  CHECK(anti_cauchy_riemann_residual(conj, point({{0.3, -0.7}})) < 1e-8);

  std::mt19937_64 rng(4);
  std::normal_distribution<double> normal;
  const auto product = HolomorphicMap::product(2, 0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const CVector z = point({{normal(rng), normal(rng)}, {normal(rng), normal(rng)}});
    CHECK(cauchy_riemann_residual(product, z) < 1e-8);
    // The closed-form derivative of z1 z2 is (z2, z1).
    const CMatrix j = product.jacobian(z);
    CHECK(std::abs(j(0, 0) - z(1)) < 1e-14);
    CHECK(std::abs(j(0, 1) - z(0)) < 1e-14);
  }

  // Mixed map: holomorphic in z1, conjugate in z2.
  const auto mixed = HolomorphicMap::from_values(
      2, 1, [](const CVector& z) { return point({z(0) * std::conj(z(1))}); }, "mixed");
  const CVector z = point({{0.5, 0.2}, {0.7, -0.3}});
  CHECK(cauchy_riemann_residual(mixed, z, std::vector<int>{0}) < 1e-8);
  CHECK(cauchy_riemann_residual(mixed, z) > 0.1);
}

TEST_CASE("Kahler symmetries") {
  const CVector z2 = point({{0.4, -0.2}, {0.9, 0.6}});
  CHECK(kahler_symmetry_residual(HolomorphicMap::product(2, 0, 1), z2) < 1e-6);
  CHECK(kahler_symmetry_residual(HolomorphicMap::i_product(2, 1, 1), z2) < 1e-6);
  CHECK(kahler_symmetry_residual(HolomorphicMap::power(1, 0, 3), point({{0.8, -1.1}})) < 1e-6);

  // f = x_1 y_2: d^2 f / dx_1 dy_2 = 1 while d^2 f / dx_2 dy_1 = 0.
  const auto bad = HolomorphicMap::from_values(
      2, 1, [](const CVector& z) { return point({Complex(z(0).real() * z(1).imag(), 0.0)}); }, "x1 y2");
  CHECK(kahler_symmetry_residual(bad, z2) >= 0.5);
}

TEST_CASE("Christoffel symbols") {
  const auto flat = ChartedTarget::flat(2);
  Vector z4(4);
  z4 << 0.1, 0.2, -0.3, 0.4;
  CHECK(flat.christoffel(z4).max_abs() == 0.0);

  const auto cp1 = ChartedTarget::fubini_study_cp1();
  CHECK(cp1.christoffel(real_point(0.0, 0.0)).max_abs() == 0.0);

  for (const Vector& z : {real_point(1.0, 0.0), real_point(-0.4, 0.7)}) {
    const auto gamma = cp1.christoffel(z);
    const auto fd = oracle::christoffel([&](const Vector& p) { return cp1.metric(p); }, z, 1e-5);
    for (int k = 0; k < 2; ++k)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          CHECK(std::abs(gamma(k, a, b) - fd[(k * 2 + a) * 2 + b]) < 1e-6);
          CHECK(std::abs(gamma(k, a, b) - fs_symbol(z, k, a, b)) < 1e-14);
          CHECK(gamma(k, a, b) == gamma(k, b, a));
        }
    CHECK(cp1.metric_compatibility_residual(z) < 1e-6);
    CHECK(cp1.hermitian_residual(z) < 1e-12);
    CHECK(cp1.kahler_form_residual(z) < 1e-6);
  }
  CHECK(cp1.is_kahler());
  CHECK_FALSE(cp1.is_flat());
}

TEST_CASE("constant and custom targets") {
  Matrix h = Matrix::Identity(2, 2);
  h(0, 0) = 2.0;
  CHECK_THROWS_AS(ChartedTarget::constant(h), Error);
  const Matrix herm = 3.0 * Matrix::Identity(2, 2);
  const auto c = ChartedTarget::constant(herm);
  CHECK(c.christoffel(real_point(1, 2)).max_abs() == 0.0);
  CHECK(c.is_kahler());

  // Conformal metric on C: Hermitian and Kahler in complex dimension one.
  const auto custom = ChartedTarget::custom(
      1, [](const Vector& z) { return Matrix((1.0 + z(0) * z(0)) * Matrix::Identity(2, 2)); }, true,
      "custom");
  const Vector z = real_point(0.3, -0.2);
  const auto gamma = custom.christoffel(z);
  const auto fd = oracle::christoffel([&](const Vector& p) { return custom.metric(p); }, z, 1e-5);
  for (int i = 0; i < 8; ++i) CHECK(std::abs(gamma(i / 4, (i / 2) % 2, i % 2) - fd[i]) < 1e-6);
  CHECK(custom.kahler_form_residual(z) < 1e-6);
}

TEST_CASE("chart membership") {
  const auto cp1 = ChartedTarget::fubini_study_cp1(10.0);
  CHECK(cp1.contains(real_point(3.0, 4.0)));
  CHECK_FALSE(cp1.contains(real_point(30.0, 0.0)));
  try {
    cp1.require_in_chart(real_point(30.0, 0.0));
    FAIL("expected ImageLeftChart");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ImageLeftChart);
  }
}

TEST_CASE("standard holomorphic family") {
  const auto family = standard_family(2);
  CHECK(family.size() == 9);
  std::mt19937_64 rng(8);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 5; ++trial) {
    const CVector z = point({{normal(rng), normal(rng)}, {normal(rng), normal(rng)}});
    for (const auto& f : family) {
      CHECK(cauchy_riemann_residual(f, z) < 1e-8);
      // The closed-form real Jacobian matches central differences.
      const Vector x = to_real(z);
      const Matrix fd = oracle::jacobian([&](const Vector& p) { return f.real_value(p); }, x, 1e-6);
      CHECK((fd - f.real_jacobian(x)).cwiseAbs().maxCoeff() < 1e-7);
    }
    for (const auto& f : family)
      for (const auto& g : standard_family(1))
        CHECK(cauchy_riemann_residual(HolomorphicMap::compose(g, f), z) < 1e-7);
  }
}
