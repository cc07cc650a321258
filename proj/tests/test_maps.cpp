#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "polyharm/error.hpp"
#include "polyharm/maps.hpp"
#include "polyharm/meshes.hpp"

using namespace polyharm;

namespace {

Matrix vertex_matrix(const SimplicialComplex& c, const std::function<Vector(const Vector&)>& f) {
  return PLMap::interpolate(c, f).values();
}

}  // namespace

TEST_CASE("differentials of affine maps are exact") {
  const auto tri = meshes::unit_right_triangle();
  const PLMap identity = PLMap::interpolate(tri, [](const Vector& x) { return x; });
  CHECK((identity.differential(0) - Matrix::Identity(2, 2)).norm() < 1e-15);

  const PLMap constant = PLMap::interpolate(tri, [](const Vector&) { return Vector::Constant(2, 3.0); });
  CHECK(constant.differential(0).norm() == 0.0);

  const auto square = meshes::warped_square(4, 0.1);
  const PLMap affine = PLMap::interpolate(square, [](const Vector& x) {
    Vector v(2);
    v << x(0) + x(1), 2.0 * x(1);
    return v;
  });
  Matrix expected(2, 2);
  expected << 1, 1, 0, 2;
  for (std::size_t t = 0; t < square.top_count(); ++t) {
    const Matrix d = affine.differential(t);
    CHECK((d - expected).cwiseAbs().maxCoeff() < 1e-12);
    const auto& s = square.top(t);
    for (std::size_t i = 1; i < s.size(); ++i) {
      const auto& p = square.coordinates(s[i]);
      const auto& q = square.coordinates(s[0]);
      const Vector edge = Vector::Map(p.data(), 2) - Vector::Map(q.data(), 2);
      CHECK((d * edge - (affine.value(s[i]) - affine.value(s[0]))).norm() < 1e-12);
    }
  }
}

TEST_CASE("differential is linear in the vertex values") {
  const auto square = meshes::unit_square(3);
  std::mt19937_64 rng(5);
  std::normal_distribution<double> normal;
  Matrix a(square.vertex_count(), 2), b(square.vertex_count(), 2);
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    a(i) = normal(rng);
    b(i) = normal(rng);
  }
  const PLMap pa(square, a), pb(square, b), pc(square, 2.0 * a - 3.0 * b);
  for (std::size_t t = 0; t < square.top_count(); ++t)
    CHECK((pc.differential(t) - 2.0 * pa.differential(t) + 3.0 * pb.differential(t)).norm() < 1e-12);
}

TEST_CASE("differential of an embedded simplex is tangent") {
  const auto page = meshes::book(3);
  const PLMap lift = PLMap::interpolate(page, [](const Vector& x) {
    Vector v(2);
    v << x(0), x(1) + x(2);
    return v;
  });
  for (std::size_t t = 0; t < page.top_count(); ++t) CHECK(lift.differential(t).rows() == 2);
}

TEST_CASE("degenerate simplices") {
  const auto flat = SimplicialComplex::build({{0, 0}, {1, 0}, {2, 0}}, {{0, 1, 2}});
  const PLMap map(flat, Matrix::Zero(3, 2));
  CHECK_THROWS_AS(map.differential(0), Error);
}

TEST_CASE("chain rule through holomorphic maps") {
  const Matrix base = Matrix::Identity(2, 2);
  Vector point(2);
  point << 1.0, 0.0;
  CHECK((compose_gradients(HolomorphicMap::identity(1), base, point) - base).norm() == 0.0);

  Matrix doubled(2, 2);
  doubled << 2, 0, 0, 2;
  CHECK((compose_gradients(HolomorphicMap::power(1, 0, 2), base, point) - doubled).norm() < 1e-14);

  const auto constant =
      HolomorphicMap::polynomial({Polynomial::constant(1, Complex(2.0, -1.0))}, "constant");
  CHECK(compose_gradients(constant, base, point).norm() == 0.0);

  // psi2 o psi1 against applying them one after the other.
  std::mt19937_64 rng(11);
  std::normal_distribution<double> normal;
  const auto psi1 = HolomorphicMap::product(2, 0, 1);
  const auto psi2 = HolomorphicMap::power(1, 0, 3);
  const auto both = HolomorphicMap::compose(psi2, psi1);
  for (int trial = 0; trial < 20; ++trial) {
    Matrix rows(4, 3);
    for (Eigen::Index i = 0; i < rows.size(); ++i) rows(i) = normal(rng);
    Vector z(4);
    for (int i = 0; i < 4; ++i) z(i) = 0.5 * normal(rng);
    const Matrix step = compose_gradients(psi1, rows, z);
    const Matrix chained = compose_gradients(psi2, step, psi1.real_value(z));
    CHECK((compose_gradients(both, rows, z) - chained).cwiseAbs().maxCoeff() < 1e-12);
  }

  const auto inverse = HolomorphicMap::rational(Polynomial::constant(1, 1.0), Polynomial::variable(1, 0));
  CHECK_THROWS_AS(compose_gradients(inverse, base, Vector::Zero(2)), Error);
}

TEST_CASE("analytic maps") {
  const AnalyticMap cubic(
      2, 2,
      [](const Vector& x) {
        Vector v(2);
        v << x(0) * x(0) * x(1), std::sin(x(1));
        return v;
      },
      [](const Vector& x) {
        Matrix j(2, 2);
        j << 2 * x(0) * x(1), x(0) * x(0), 0, std::cos(x(1));
        return j;
      });
  Vector p(2);
  p << 0.7, -0.4;
  CHECK(cubic.has_closed_form());
  const double e1 = (cubic.finite_difference_jacobian(p, 1e-3) - cubic.jacobian(p)).norm();
  const double e2 = (cubic.finite_difference_jacobian(p, 5e-4) - cubic.jacobian(p)).norm();
  CHECK(e1 / e2 == doctest::Approx(4.0).epsilon(0.05));
  const Matrix oracle_j = oracle::jacobian([&](const Vector& x) { return cubic(x); }, p, 1e-6);
  CHECK((oracle_j - cubic.jacobian(p)).norm() < 1e-8);

  // Laplacian of (x^2 y, sin y) is (2 y, -sin y).
  const Vector lap = cubic.finite_difference_laplacian(p);
  CHECK(std::abs(lap(0) - 2 * p(1)) < 1e-8);
  CHECK(std::abs(lap(1) + std::sin(p(1))) < 1e-8);
}

TEST_CASE("value at barycentric points") {
  const auto tri = meshes::unit_right_triangle();
  const Matrix values = vertex_matrix(tri, [](const Vector& x) {
    Vector v(1);
    v << 3.0 * x(0) - x(1) + 1.0;
    return v;
  });
  const PLMap map(tri, values);
  Vector b(3);
  b << 0.2, 0.5, 0.3;
  CHECK(map.value_at({0, b})(0) == doctest::Approx(3.0 * 0.5 - 0.3 + 1.0));
}
