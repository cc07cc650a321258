#include <doctest.h>

#include <cmath>

#include "oracles.hpp"
#include "polyharm/error.hpp"
#include "polyharm/examples.hpp"

using namespace polyharm;

namespace {

Polynomial var(int n, int i) { return Polynomial::variable(n, i); }

CVector uv_point(Complex u1, Complex u2, Complex v1, Complex v2) {
  CVector z(4);
  z << u1, u2, v1, v2;
  return z;
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error raised");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("the standard eta instance") {
  const EtaMap eta = build_eta(eta_spec(2, 2, 1));
  CHECK(eta.k() == 2);
  CHECK(eta.s() == 2);
  CHECK(eta.r() == 1);
  CHECK_FALSE(eta.holomorphic_data());
  const CVector z = uv_point({0.5, 0.2}, {-0.4, 0.7}, {0.9, -0.3}, {0.2, 0.6});
  const Complex expected = (z(0) / z(1)) * (std::conj(z(2)) / std::conj(z(3)));
  CHECK(std::abs(eta(z)(0) - expected) < 1e-15);
  CHECK_THROWS_AS(eta(uv_point(1.0, 0.0, 1.0, 1.0)), Error);

  const auto points = eta_sample_points(eta, 100, 42);
  CHECK(points.size() == 100);
  for (const Vector& x : points) {
    const Matrix fd = oracle::jacobian([&](const Vector& p) { return to_real(eta(to_complex(p))); }, x, 1e-6);
    CHECK((fd - eta.real_jacobian(x)).cwiseAbs().maxCoeff() < 1e-6);
  }
  CHECK(eta_phwc_suite(eta.analytic(), points).passed());

  const auto cr = eta_cauchy_riemann(eta, points);
  CHECK(cr.u_variables < 1e-6);
  CHECK(cr.full > 0.1);
  CHECK(cr.anti > 0.1);
}

TEST_CASE("degenerate and holomorphic instances") {
  EtaSpec same{2, 2, {{var(2, 0), var(2, 0), var(2, 1), var(2, 1)}}};
  const EtaMap one = build_eta(same);
  const CVector z = uv_point({0.5, 0.2}, {-0.4, 0.7}, {0.9, -0.3}, {0.2, 0.6});
  CHECK(std::abs(one(z)(0) - 1.0) < 1e-15);
  CHECK(one.real_jacobian(to_real(z)).norm() < 1e-14);

  EtaSpec holo{2, 2,
               {{var(2, 0), var(2, 1), Polynomial::constant(2, 2.0), Polynomial::constant(2, 1.0)},
                {Polynomial(2, {{1.0, {2, 0}}}), Polynomial(2, {{1.0, {1, 1}}, {0.5, {0, 2}}}),
                 Polynomial::constant(2, 1.0), Polynomial::constant(2, 1.0)}}};
  const EtaMap h = build_eta(holo);
  CHECK(h.holomorphic_data());
  const Matrix j = complex_structure(4);
  const auto suite = eta_phwc_suite(h.analytic(), eta_sample_points(h, 50), {}, &j);
  CHECK(suite.passed());
  CHECK(suite.details()["holomorphic"] == true);

  const EtaMap mixed = build_eta(eta_spec(2, 2, 1));
  const auto flagged = eta_phwc_suite(mixed.analytic(), eta_sample_points(mixed, 10), {}, &j);
  CHECK(flagged.details()["holomorphic"] == false);
}

TEST_CASE("eta construction errors") {
  CHECK(code_of([] { build_eta({2, 2, {{Polynomial(2, {{1.0, {2, 0}}}), var(2, 1), var(2, 0), var(2, 1)}}}); }) ==
        ErrorCode::DegreeMismatch);
  CHECK(code_of([] {
          build_eta({2, 2, {{Polynomial(2, {{1.0, {2, 0}}, {1.0, {1, 0}}}), Polynomial(2, {{1.0, {0, 2}}}),
                             var(2, 0), var(2, 1)}}});
        }) == ErrorCode::DegreeMismatch);
  CHECK(code_of([] { build_eta({2, 2, {{var(2, 0), Polynomial(2, {}), var(2, 0), var(2, 1)}}}); }) ==
        ErrorCode::ZeroDenominatorPolynomial);
  CHECK(code_of([] { build_eta({2, 2, {{var(3, 0), var(3, 1), var(2, 0), var(2, 1)}}}); }) ==
        ErrorCode::DimensionMismatch);
}

TEST_CASE("conjugating the anti-holomorphic data") {
  const Polynomial p(2, {{Complex(1.0, 0.5), {1, 0}}, {Complex(0.0, 1.0), {0, 1}}});
  const Polynomial q(2, {{Complex(2.0, -1.0), {0, 1}}});
  const EtaMap eta = build_eta({2, 2, {{var(2, 0), var(2, 1), p, q}}});
  const EtaMap flipped = build_eta({2, 2, {{var(2, 0), var(2, 1), p.conjugate_coefficients(), q.conjugate_coefficients()}}});
  const CVector z = uv_point({0.5, 0.2}, {-0.4, 0.7}, {0.9, -0.3}, {0.2, 0.6});
  const CVector v = z.tail(2);
  const Complex expected = z(0) / z(1) * std::conj(p(v) / q(v));
  CHECK(std::abs(flipped(z)(0) - expected) < 1e-14);
  CHECK(std::abs(eta(z)(0) - z(0) / z(1) * p(v.conjugate()) / q(v.conjugate())) < 1e-14);
}

TEST_CASE("sums of pseudo harmonic morphisms") {
  const EtaMap eta = build_eta(eta_spec(2, 2, 1));
  const auto a = eta_sample_points(eta, 40, 42);
  const auto b = eta_sample_points(eta, 40, 43);
  const auto sum = sum_map(eta.analytic(), eta.analytic());
  std::vector<Vector> joint;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Vector x(16);
    x << a[i], b[i];
    joint.push_back(x);
  }
  CHECK(eta_phwc_suite(sum, joint).passed());
  CHECK(sum_map_suite(eta.analytic(), eta.analytic(), a, b).passed());

  const AnalyticMap zero(8, 2, [](const Vector&) { return Vector(Vector::Zero(2)); },
                         [](const Vector&) { return Matrix(Matrix::Zero(2, 8)); });
  const auto reduced = sum_map(eta.analytic(), zero);
  for (std::size_t i = 0; i < 5; ++i) {
    Vector x(16);
    x << a[i], b[i];
    CHECK((reduced(x) - eta.analytic()(a[i])).norm() == 0.0);
    CHECK((reduced.jacobian(x).leftCols(8) - eta.real_jacobian(a[i])).norm() == 0.0);
  }

  const AnalyticMap stretch(2, 2, [](const Vector& x) {
    Vector v(2);
    v << x(0), 2.0 * x(1);
    return v;
  });
  std::vector<Vector> planes(a.size(), Vector::Constant(2, 0.3));
  const auto planted = sum_map_suite(eta.analytic(), stretch, a, planes);
  CHECK(planted.passed());
  CHECK(planted.details()["sum_residual"].get<double>() > 1.0);
  CHECK(planted.details()["first_block_residual"].get<double>() < 1e-8);
  CHECK(planted.details()["second_block_residual"].get<double>() == doctest::Approx(3.0).epsilon(1e-8));

  CHECK_THROWS_AS(sum_map(eta.analytic(), AnalyticMap(2, 3, [](const Vector& x) { return Vector(Vector::Zero(3) + x(0) * Vector::Ones(3)); })),
                  Error);
}

TEST_CASE("covering constructions") {
  const auto cov = build_covering("torus_cover", 4);
  CHECK(cov.is_covering);
  CHECK(cov.total.top_count() == 2 * cov.base.top_count());
  for (std::size_t v = 0; v < cov.base.vertex_count(); ++v)
    CHECK(cov.projection[cov.section[v]] == static_cast<VertexId>(v));
  std::vector<int> sheets(cov.base.vertex_count(), 0);
  for (VertexId b : cov.projection) ++sheets[b];
  for (int s : sheets) CHECK(s == 2);

  const auto fold = build_covering("reflection_fold", 4);
  CHECK_FALSE(fold.is_covering);
  CHECK(fold.warnings.size() == 1);
  for (std::size_t v = 0; v < fold.base.vertex_count(); ++v) {
    const auto& x = fold.base.coordinates(v);
    CHECK(x[0] >= 0.0);
    CHECK(x[0] <= 1.0);
    CHECK(fold.projection[fold.section[v]] == static_cast<VertexId>(v));
  }
  CHECK(fold.fixed.size() == 5);
  for (VertexId v : fold.fixed) CHECK(std::abs(fold.total.coordinates(v)[0]) < 1e-15);

  CHECK(code_of([] { build_covering("klein_bottle"); }) == ErrorCode::UnknownSpec);
}

TEST_CASE("torus example maps") {
  const auto cov = build_covering("torus_cover", 4);
  const PLMap constant = torus_example_map(cov, true);
  CHECK((constant.values().rowwise() - constant.values().row(0)).norm() == 0.0);
  const PLMap waves = torus_example_map(cov, false);
  for (std::size_t t = 0; t < cov.base.top_count(); ++t) {
    const Matrix d = waves.frame_differential(t);
    CHECK(d.cwiseAbs().maxCoeff() > 0.0);
  }
}
