#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "polyharm/error.hpp"
#include "polyharm/meshes.hpp"
#include "polyharm/riemannian.hpp"

using namespace polyharm;

namespace {

SimplexPoint at_vertex(const SimplicialComplex& c, VertexId v) {
  for (std::size_t t = 0; t < c.top_count(); ++t) {
    const auto& s = c.top(t);
    for (std::size_t i = 0; i < s.size(); ++i)
      if (s[i] == v) {
        Vector b = Vector::Zero(static_cast<Eigen::Index>(s.size()));
        b(static_cast<Eigen::Index>(i)) = 1.0;
        return {t, b};
      }
  }
  FAIL("vertex not found");
  return {};
}

Matrix diag2(double a, double b) {
  Matrix g = Matrix::Zero(2, 2);
  g(0, 0) = a;
  g(1, 1) = b;
  return g;
}

}  // namespace

TEST_CASE("ellipticity constants") {
  CHECK(ellipticity_constant(Matrix::Identity(2, 2)) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(ellipticity_constant(diag2(4.0, 0.25)) == 2.0);

  std::mt19937_64 rng(42);
  std::normal_distribution<double> normal;
  for (int trial = 0; trial < 50; ++trial) {
    Matrix a(3, 3);
    for (int i = 0; i < 9; ++i) a(i / 3, i % 3) = normal(rng);
    const Matrix g = a * a.transpose() + 0.1 * Matrix::Identity(3, 3);
    const auto ev = oracle::jacobi_eigenvalues(g);
    const double expected = std::max(std::sqrt(ev.back()), 1.0 / std::sqrt(ev.front()));
    CHECK(std::abs(ellipticity_constant(g) - expected) <= 1e-12 * expected);
  }

  CHECK_THROWS_AS(ellipticity_constant(diag2(1.0, -1.0)), Error);
  Matrix asym = Matrix::Identity(2, 2);
  asym(0, 1) = 0.5;
  CHECK_FALSE(is_spd(asym));
}

TEST_CASE("volumes") {
  const auto tri = meshes::unit_right_triangle();
  CHECK(simplex_volume(tri, PiecewiseMetric::reference(tri), 0) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(simplex_volume(tri, PiecewiseMetric::constant(tri, {diag2(4.0, 4.0)}), 0) ==
        doctest::Approx(2.0).epsilon(1e-15));

  // (1 + x^2) I, with x the barycentric weight of vertex (1, 0).
  const auto conformal = PiecewiseMetric::smooth(tri, [](std::size_t, const Vector& b) {
    return Matrix((1.0 + b(1) * b(1)) * Matrix::Identity(2, 2));
  });
  const double exact = oracle::integrate_triangle([](double x, double) { return 1.0 + x * x; }, {0, 0},
                                                  {1, 0}, {0, 1}, 1e-13);
  CHECK(std::abs(exact - 7.0 / 12.0) < 1e-12);
  CHECK(std::abs(simplex_volume(tri, conformal, 0, 2) - exact) < 1e-8 * exact);

  const auto stretched = PiecewiseMetric::smooth(tri, [](std::size_t, const Vector& b) {
    return diag2(1.0 + b(1) * b(1), 1.0);
  });
  const double root = oracle::integrate_triangle(
      [](double x, double) { return std::sqrt(1.0 + x * x); }, {0, 0}, {1, 0}, {0, 1}, 1e-13);
  CHECK(std::abs(simplex_volume(tri, stretched, 0, 12) - root) < 1e-8 * root);

  const auto cube = meshes::unit_cube(1);
  const auto induced = PiecewiseMetric::induced(cube);
  double total = 0.0, scaled = 0.0;
  const auto big = induced.scaled(9.0);
  for (std::size_t t = 0; t < cube.top_count(); ++t) {
    total += simplex_volume(cube, induced, t);
    scaled += simplex_volume(cube, big, t);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(scaled == doctest::Approx(27.0).epsilon(1e-14));
}

TEST_CASE("gradient inner products") {
  const auto tri = meshes::unit_right_triangle();
  const auto flat = PiecewiseMetric::reference(tri);
  const auto aniso = PiecewiseMetric::constant(tri, {diag2(4.0, 0.25)});
  const Vector e1 = Vector::Unit(2, 0), e2 = Vector::Unit(2, 1), ones = Vector::Ones(2);
  CHECK(gradient_inner(flat, 0, e1, e1) == 1.0);
  CHECK(gradient_inner(aniso, 0, e1, e2) == 0.0);
  CHECK(gradient_inner(aniso, 0, ones, ones) == doctest::Approx(4.25).epsilon(1e-15));

  std::mt19937_64 rng(7);
  std::normal_distribution<double> normal;
  Matrix a(2, 2);
  for (int i = 0; i < 4; ++i) a(i / 2, i % 2) = normal(rng);
  const auto general = PiecewiseMetric::constant(tri, {Matrix(a * a.transpose() + Matrix::Identity(2, 2))});
  const Vector u(Vector::Random(2)), v(Vector::Random(2)), w(Vector::Random(2));
  CHECK(gradient_inner(general, 0, u, v) == doctest::Approx(gradient_inner(general, 0, v, u)));
  CHECK(gradient_inner(general, 0, 2.0 * u + w, v) ==
        doctest::Approx(2.0 * gradient_inner(general, 0, u, v) + gradient_inner(general, 0, w, v)));
  CHECK(gradient_inner(general, 0, u, u) > 0.0);
}

TEST_CASE("face compatibility") {
  const auto square = meshes::unit_square(2);
  CHECK(PiecewiseMetric::induced(square).is_continuous(square));
  std::vector<Matrix> per(square.top_count(), Matrix::Identity(2, 2));
  per[0] = diag2(4.0, 0.25);
  CHECK_FALSE(PiecewiseMetric::constant(square, per).is_continuous(square));
  CHECK(PiecewiseMetric::constant(square, per).global_ellipticity() == 2.0);
}

TEST_CASE("intrinsic distance on the unit square") {
  const auto square = meshes::unit_square(1);
  const auto metric = PiecewiseMetric::induced(square);
  const auto a = at_vertex(square, 0), b = at_vertex(square, 3);
  double previous = 1e300;
  for (int level = 0; level <= 4; ++level) {
    const double d = intrinsic_distance(square, metric, a, b, level).upper_bound;
    CHECK(d <= previous + 1e-15);
    CHECK(d >= std::sqrt(2.0) - 1e-12);
    previous = d;
  }
  CHECK(std::abs(previous - std::sqrt(2.0)) < 2e-2);
  CHECK(intrinsic_distance(square, metric, a, a, 3).upper_bound == 0.0);

  const double d = intrinsic_distance(square, metric, a, b, 3).upper_bound;
  const double scaled = intrinsic_distance(square, metric.scaled(6.25), a, b, 3).upper_bound;
  CHECK(std::abs(scaled - 2.5 * d) <= 1e-12 * scaled);
}

TEST_CASE("intrinsic distance across a fold") {
  const auto folded = SimplicialComplex::build({{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0.5}},
                                               {{0, 1, 2}, {1, 2, 3}});
  const auto metric = PiecewiseMetric::induced(folded);
  const double exact = oracle::unfolded_distance({0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {1, 1, 0.5});
  const double d = intrinsic_distance(folded, metric, at_vertex(folded, 0), at_vertex(folded, 3), 4)
                       .upper_bound;
  CHECK(d >= exact - 1e-12);
  CHECK(d - exact < 2e-2);
}

TEST_CASE("distance symmetry and triangle inequality") {
  const auto square = meshes::unit_square(3, 0.3);
  const auto metric = PiecewiseMetric::induced(square);
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  auto random_point = [&] {
    Vector b(3);
    for (int i = 0; i < 3; ++i) b(i) = unit(rng) + 0.05;
    return SimplexPoint{static_cast<std::size_t>(rng() % square.top_count()), b / b.sum()};
  };
  for (int trial = 0; trial < 5; ++trial) {
    const auto p = random_point(), q = random_point(), r = random_point();
    const double pq = intrinsic_distance(square, metric, p, q, 2).upper_bound;
    const double qp = intrinsic_distance(square, metric, q, p, 2).upper_bound;
    const double qr = intrinsic_distance(square, metric, q, r, 2).upper_bound;
    const double pr = intrinsic_distance(square, metric, p, r, 2).upper_bound;
    CHECK(pq == doctest::Approx(qp).epsilon(1e-12));
    CHECK(pr <= pq + qr + 5e-2);
  }
}

TEST_CASE("points off the complex") {
  const auto tri = meshes::unit_right_triangle();
  const auto metric = PiecewiseMetric::reference(tri);
  const SimplexPoint good{0, Vector::Constant(3, 1.0 / 3.0)};
  CHECK_THROWS_AS(intrinsic_distance(tri, metric, good, {1, good.barycentric}, 1), Error);
  CHECK_THROWS_AS(intrinsic_distance(tri, metric, good, {0, Vector::Constant(2, 0.5)}, 1), Error);
  Vector neg(3);
  neg << 1.5, -0.25, -0.25;
  try {
    intrinsic_distance(tri, metric, good, {0, neg}, 1);
    FAIL("expected PointOffComplex");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::PointOffComplex);
  }
}
