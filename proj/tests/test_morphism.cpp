#include <doctest.h>

#include <cmath>
#include <random>

#include "polyharm/error.hpp"
#include "polyharm/examples.hpp"
#include "polyharm/meshes.hpp"
#include "polyharm/morphism.hpp"

using namespace polyharm;

namespace {

// Affine map of the plane into C^n with real coordinate rows (x-block, y-block).
PLMap affine(const SimplicialComplex& c, const Matrix& rows, const Vector& offset) {
  return PLMap::interpolate(c, [&](const Vector& x) { return Vector(rows * x.head(2) + offset); });
}

Matrix rows2(double a, double b, double c, double d) {
  Matrix m(2, 2);
  m << a, b, c, d;
  return m;
}

std::vector<GradientSample> plane_samples(const Matrix& rows) {
  static const auto tri = meshes::unit_right_triangle();
  static const auto metric = PiecewiseMetric::induced(tri);
  return samples_from_plmap(tri, metric, affine(tri, rows, Vector::Zero(rows.rows())));
}

BoundaryValues boundary_of(const SimplicialComplex& c, const PLMap& data) {
  BoundaryValues out;
  for (VertexId v : c.boundary_vertices()) out[v] = data.value(v);
  return out;
}

}  // namespace

TEST_CASE("coordinate form of pseudo-horizontal conformality") {
  CHECK(phwc_residual(plane_samples(rows2(1, 0, 0, 1))).inf_norm == 0.0);
  const auto stretched = phwc_residual(plane_samples(rows2(1, 0, 0, 2)));
  CHECK(stretched.inf_norm == 3.0);
  CHECK(stretched.normalized_inf_norm == 0.75);
  CHECK_FALSE(stretched.verdict);
  CHECK(phwc_residual(plane_samples(rows2(1, 0, 0, -1))).inf_norm == 0.0);

  GradientSample odd;
  odd.rows = Matrix::Identity(3, 2);
  odd.metric = Matrix::Identity(2, 2);
  odd.image = Vector::Zero(3);
  CHECK_THROWS_AS(phwc_residual({odd}), Error);
}

TEST_CASE("horizontal weak conformality and dilation") {
  const auto flat1 = ChartedTarget::flat(1);
  // c z with c = 2 - i: rows [[Re c, -Im c], [Im c, Re c]].
  const auto scaled = hwc_residual(plane_samples(rows2(2, 1, -1, 2)), flat1);
  CHECK(scaled.dilation[0] == doctest::Approx(5.0).epsilon(1e-15));
  CHECK(scaled.inf_norm < 1e-14);

  const auto cube = meshes::unit_cube(1);
  const auto proj = PLMap::interpolate(cube, [](const Vector& x) { return Vector(x.head(2)); });
  const auto r3 = hwc_residual(samples_from_plmap(cube, PiecewiseMetric::induced(cube), proj), flat1);
  for (double l : r3.dilation) CHECK(l == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(r3.inf_norm < 1e-14);

  // (z, 0) into C^2: Gram diag(1, 0, 1, 0), lambda = 2 / 4.
  Matrix rows = Matrix::Zero(4, 2);
  rows(0, 0) = 1.0;
  rows(2, 1) = 1.0;
  const auto half = hwc_residual(plane_samples(rows), ChartedTarget::flat(2));
  CHECK(half.dilation[0] == doctest::Approx(0.5));
  CHECK(half.inf_norm == doctest::Approx(0.5));
  CHECK(phwc_residual(plane_samples(rows)).inf_norm == 0.0);
}

TEST_CASE("algebraic suites") {
  const auto hwc = hwc_implies_phwc_suite(1000, 3, 42);
  CHECK(hwc.passed());
  const auto agree = commutator_agreement_suite(1000, 42);
  CHECK(agree.passed());
  CHECK(dump_json(hwc.to_json()) == dump_json(hwc_implies_phwc_suite(1000, 3, 42).to_json()));

  std::mt19937_64 rng(42);
  const Matrix h = sampling::random_hermitian(2, rng);
  const Matrix g = sampling::random_spd(5, rng);
  GradientSample s = sampling::hwc_sample(h, g, 0.7, rng);
  s.image = Vector::Zero(4);
  const auto target = ChartedTarget::constant(h);
  const auto r = hwc_residual({s}, target);
  CHECK(r.inf_norm < 1e-10);
  CHECK(r.dilation[0] == doctest::Approx(0.7).epsilon(1e-10));
  CHECK(r.dilation[0] >= -1e-10);
  CHECK(phwc_residual({s}).inf_norm < 1e-10);
  CHECK(commutator_form_residual({s}, target)[0] < 1e-10);
}

TEST_CASE("commutator form") {
  const auto flat1 = ChartedTarget::flat(1);
  CHECK(commutator_form_residual(plane_samples(rows2(1, 0, 0, 1)), flat1)[0] == 0.0);
  CHECK(commutator_form_residual(plane_samples(rows2(1, 0, 0, 2)), flat1)[0] > 1.0);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    GradientSample s = sampling::phwc_sample(2, 2, rng);
    CHECK(phwc_residual({s}).inf_norm < 1e-10);
    CHECK(commutator_form_residual({s}, ChartedTarget::flat(2))[0] < 1e-9);
    const GradientSample bad = sampling::generic_sample(2, 4, rng);
    CHECK(phwc_residual({bad}).inf_norm > 1e-3);
    CHECK(commutator_form_residual({bad}, ChartedTarget::flat(2))[0] > 1e-3);
  }
}

TEST_CASE("holomorphic function families") {
  std::mt19937_64 rng(5);
  std::vector<GradientSample> good;
  for (int i = 0; i < 50; ++i) good.push_back(sampling::phwc_sample(2, 3, rng));
  CHECK(phwc_via_functions(good, standard_family(2)).inf_norm < 1e-9);

  const auto stretched = plane_samples(rows2(1, 0, 0, 2));
  CHECK(phwc_via_functions(stretched, {HolomorphicMap::identity(1)}).inf_norm == doctest::Approx(3.0));

  // (z, conj z): each coordinate alone is conformal, the pair sum is not.
  Matrix rows = Matrix::Zero(4, 2);
  rows(0, 0) = 1.0;
  rows(2, 1) = 1.0;
  rows(1, 0) = 1.0;
  rows(3, 1) = -1.0;
  const auto planted = plane_samples(rows);
  const std::vector<HolomorphicMap> coords{HolomorphicMap::coordinate(2, 0), HolomorphicMap::coordinate(2, 1)};
  CHECK(phwc_via_functions(planted, coords).inf_norm == 0.0);
  CHECK(phwc_via_functions(planted, standard_family(2)).inf_norm > 1.0);
  CHECK(phwc_residual(planted).inf_norm > 1.0);
}

TEST_CASE("postcomposition with holomorphic maps") {
  std::mt19937_64 rng(17);
  std::vector<GradientSample> samples;
  for (int i = 0; i < 30; ++i) samples.push_back(sampling::phwc_sample(2, 2, rng));
  const auto psi = HolomorphicMap::polynomial(
      {Polynomial(2, {{1.0, {1, 1}}}), Polynomial(2, {{1.0, {2, 0}}})}, "(z1 z2, z1^2)");
  const auto r = postcompose_preserves_phwc(samples, psi);
  CHECK(r.pass);
  CHECK(r.output_residual < 1e-9);

  std::vector<GradientSample> mixed;
  for (int i = 0; i < 10; ++i) mixed.push_back(sampling::generic_sample(2, 3, rng));
  const auto id = postcompose_preserves_phwc(mixed, HolomorphicMap::identity(2));
  CHECK(id.output_residual == id.input_residual);
  const auto bounded = postcompose_preserves_phwc(mixed, psi);
  CHECK(bounded.pass);

  const auto conj = HolomorphicMap::from_values(2, 2, [](const CVector& z) { return CVector(z.conjugate()); }, "conj");
  try {
    postcompose_preserves_phwc(samples, conj);
    FAIL("expected NotHolomorphic");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotHolomorphic);
  }
}

TEST_CASE("pseudo harmonic morphism checks") {
  const auto mesh = meshes::unit_square(6);
  const auto metric = PiecewiseMetric::induced(mesh);
  const auto system = StiffnessSystem::assemble(mesh, metric);
  const auto flat1 = ChartedTarget::flat(1);
  const auto family = standard_family(1);
  Vector offset(2);
  offset << 0.3, -0.1;

  const PLMap holo = affine(mesh, rows2(1, -0.5, 0.5, 1), offset);
  const PLMap solved = solve_harmonic_function(system, boundary_of(mesh, holo));
  const auto yes = phm_check(system, metric, solved, flat1, family);
  CHECK(yes.verdict);
  CHECK(yes.family.inf_norm < 1e-9);

  const PLMap stretch = affine(mesh, rows2(1, 0, 0, 2), offset);
  const auto no = phm_check(system, metric, solve_harmonic_function(system, boundary_of(mesh, stretch)), flat1, family);
  CHECK_FALSE(no.verdict);
  CHECK(no.harmonic.verdict);
  CHECK(no.phwc.inf_norm == doctest::Approx(3.0).epsilon(1e-12));

  // Fold along x = 1/2: conformal on one side, anti-conformal on the other.
  const PLMap fold = PLMap::interpolate(mesh, [](const Vector& x) {
    Vector v(2);
    v << std::abs(x(0) - 0.5), x(1);
    return v;
  });
  const auto folded = phm_check(system, metric, fold, flat1, family);
  CHECK(folded.phwc.verdict);
  CHECK_FALSE(folded.harmonic.verdict);
  CHECK_FALSE(folded.verdict);

  Matrix perturbed = holo.values();
  std::mt19937_64 rng(1);
  std::normal_distribution<double> normal;
  for (VertexId v : system.interior()) perturbed.row(v) += 1e-3 * Eigen::Vector2d(normal(rng), normal(rng)).transpose();
  const auto noisy = phm_check(system, metric, PLMap(mesh, perturbed), flat1, family);
  CHECK(noisy.harmonic.inf_norm > 1e-8);
  CHECK_FALSE(noisy.verdict);

  CHECK(noisy.to_json().contains("harmonic"));
}

TEST_CASE("pullback harmonicity table") {
  std::vector<SimplicialComplex> meshes_;
  for (int k : {8, 16, 32}) meshes_.push_back(meshes::warped_square(k, 0.1));
  std::vector<StiffnessSystem> systems;
  std::vector<PLMap> holo, stretch;
  for (const auto& m : meshes_) {
    systems.push_back(StiffnessSystem::assemble(m, PiecewiseMetric::induced(m)));
    holo.push_back(affine(m, rows2(1, -0.5, 0.5, 1), Vector::Constant(2, 0.2)));
    stretch.push_back(affine(m, rows2(1, 0, 0, 2), Vector::Zero(2)));
  }
  const auto flat1 = ChartedTarget::flat(1);
  const std::vector<HolomorphicMap> family{HolomorphicMap::identity(1), HolomorphicMap::power(1, 0, 2),
                                           HolomorphicMap::i_product(1, 0, 0)};
  std::vector<PullbackLevel> good, bad;
  for (std::size_t i = 0; i < meshes_.size(); ++i) {
    const double h = 1.0 / (8 << i);
    good.push_back({h, &systems[i], &holo[i]});
    bad.push_back({h, &systems[i], &stretch[i]});
  }
  const auto table = pullback_harmonicity_table(good, flat1, family);
  CHECK(table[0].residual[2] < 1e-12);
  for (std::size_t f = 1; f < 3; ++f)
    for (double order : table[f].order) CHECK(order >= 1.0);
  CHECK(pullback_harmonicity_suite(table).passed());
  CHECK(pullback_table_csv(table).rfind("function,h,residual,inf_norm,order\n", 0) == 0);

  const auto witness = pullback_harmonicity_table(bad, flat1, family);
  for (double r : witness[1].residual) CHECK(r > 0.1);
  CHECK_FALSE(pullback_harmonicity_suite(witness).passed());

  const auto hermitian = ChartedTarget::custom(
      1, [](const Vector& z) { return Matrix((1.0 + z(0) * z(0)) * Matrix::Identity(2, 2)); }, false, "h");
  try {
    pullback_harmonicity_table(good, hermitian, family);
    FAIL("expected NotKahler");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotKahler);
  }
}

TEST_CASE("coverings and factorization") {
  const auto cov = build_covering("torus_cover", 4);
  const auto matched = verify_covering(cov.data());
  CHECK(matched.size() == cov.total.top_count());
  CHECK(cov.total.top_count() == 2 * cov.base.top_count());

  const auto flat1 = ChartedTarget::flat(1);
  const auto family = standard_family(1);
  const auto phm = factorization_suite(cov.data(), torus_example_map(cov, true), flat1, family);
  CHECK(phm.suite.passed());
  CHECK(phm.base.verdict);
  CHECK(phm.total.verdict);
  const auto non = factorization_suite(cov.data(), torus_example_map(cov, false), flat1, family);
  CHECK(non.suite.passed());
  CHECK_FALSE(non.base.verdict);
  CHECK_FALSE(non.total.verdict);
  CHECK(non.base.phwc.inf_norm == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(non.max_phwc_difference <= 1e-10);
  CHECK(non.max_harmonic_difference <= 1e-10);

  const PiecewiseMetric scaled = cov.total_metric.scaled(1.21);
  CoveringData broken = cov.data();
  broken.total_metric = &scaled;
  try {
    verify_covering(broken);
    FAIL("expected NotACovering");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotACovering);
  }

  const auto fold = build_covering("reflection_fold", 4);
  CHECK_FALSE(fold.is_covering);
  CHECK_FALSE(fold.warnings.empty());
  CHECK_THROWS_AS(verify_covering(fold.data()), Error);
}
