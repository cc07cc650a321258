#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "polyharm/harmonic.hpp"
#include "polyharm/holomorphic.hpp"
#include "polyharm/maps.hpp"
#include "polyharm/report.hpp"
#include "polyharm/riemannian.hpp"
#include "polyharm/target.hpp"

namespace polyharm {

/// Differential of a map at one point of the domain.
///
/// `rows` holds d(phi^alpha) for alpha over the target's real coordinates
/// (x_1..x_n, y_1..y_n), expressed in some domain frame whose metric is
/// `metric`; inner products of gradients are rows^T metric^-1 rows.
struct GradientSample {
  static constexpr std::size_t free_point = std::numeric_limits<std::size_t>::max();

  std::size_t simplex = free_point;
  Vector location;  // barycentric, or domain coordinates for free points
  Matrix rows;
  Matrix metric;
  Vector image;
  double weight = 1.0;  // mu_g-measure represented by the sample

  /// Gram matrix of the gradients: rows metric^-1 rows^T.
  Matrix gram() const;
};

/// One sample per top simplex at its barycenter, weighted by volume. PL
/// gradients are constant per simplex, so this covers the map exactly.
std::vector<GradientSample> samples_from_plmap(const SimplicialComplex& complex,
                                               const PiecewiseMetric& metric, const PLMap& map);

/// Sample of an analytic map on flat R^m.
GradientSample sample_analytic(const AnalyticMap& map, const Vector& x);

/// Same sample with rows replaced by those of psi o phi.
GradientSample compose_sample(const HolomorphicMap& psi, const GradientSample& sample);

struct ResidualReport {
  std::string kind;
  std::vector<double> residual;    // raw, per sample
  std::vector<double> normalized;  // residual / max(1, max_alpha |grad phi^alpha|^2)
  std::vector<double> dilation;    // hwc only
  double inf_norm = 0.0;
  double normalized_inf_norm = 0.0;
  double weighted_l1 = 0.0;
  double tolerance = 0.0;
  bool verdict = false;

  Json to_json() const;
};

/// Builds the norms and the verdict (normalized inf-norm <= tolerance).
ResidualReport finalize_report(std::string kind, std::vector<double> residual,
                               std::vector<double> scale, const std::vector<GradientSample>& samples,
                               double tolerance);

/// Pseudo-horizontal weak conformality in coordinates: per sample
///   max_{A,B} |<X_B, X_A> - <Y_B, Y_A>| + |<Y_B, X_A> + <X_B, Y_A>|
/// with X_A = grad(x_A o phi), Y_A = grad(y_A o phi). Throws DimensionMismatch.
ResidualReport phwc_residual(const std::vector<GradientSample>& samples, double tolerance = 1e-8);

/// Horizontal weak conformality <grad phi^a, grad phi^b> = lambda h^{ab}(phi)
/// with lambda = tr(G) / tr(h^-1). Throws TargetMetricSingular.
ResidualReport hwc_residual(const std::vector<GradientSample>& samples, const ChartedTarget& target,
                            double tolerance = 1e-8);

/// max_{A,B} residual of the coordinate identities, restricted to one block
/// of domain columns (used to localize violations of block maps).
double phwc_sample_residual(const Matrix& gram);

/// |[d phi d phi^*, J]|_inf with d phi^* = g^-1 d phi^T h(phi).
std::vector<double> commutator_form_residual(const std::vector<GradientSample>& samples,
                                             const ChartedTarget& target);

/// max over the family of the pseudo-conformality residual of f o phi,
/// evaluated through composed gradients. Throws PoleAtPoint.
ResidualReport phwc_via_functions(const std::vector<GradientSample>& samples,
                                  const std::vector<HolomorphicMap>& family,
                                  double tolerance = 1e-8);

struct PostcomposeResult {
  bool pass = false;
  double input_residual = 0.0;
  double output_residual = 0.0;
  double bound = 0.0;
};

/// Checks that psi o phi stays pseudo-horizontally weakly conformal: zero in
/// gives zero out, and in general out <= K in + 1e-9 where K is 4 times the
/// largest squared row sum of |d psi| over the image points. Refuses psi with
/// Cauchy-Riemann residual above `cr_tolerance` at an image point
/// (NotHolomorphic).
PostcomposeResult postcompose_preserves_phwc(const std::vector<GradientSample>& samples,
                                             const HolomorphicMap& psi,
                                             double cr_tolerance = 1e-6);

struct PhmReport {
  HarmonicResidual harmonic_residual;
  ResidualReport harmonic;
  ResidualReport phwc;
  ResidualReport family;
  bool verdict = false;

  Json to_json() const;
};

struct PhmTolerances {
  double conformal = 1e-8;
  double harmonic = 1e-8;
};

/// Harmonic (weak equation on interior hats) and pseudo-horizontally weakly
/// conformal (barycenter samples).
PhmReport phm_check(const StiffnessSystem& system, const PiecewiseMetric& metric, const PLMap& map,
                    const ChartedTarget& target, const std::vector<HolomorphicMap>& family,
                    const PhmTolerances& tolerances = {});

/// One refinement level for the pullback suite.
struct PullbackLevel {
  double h = 0.0;
  const StiffnessSystem* system = nullptr;
  const PLMap* map = nullptr;
};

struct PullbackRow {
  std::string function;
  std::vector<double> h;
  std::vector<double> residual;  // dual norm of the weak residual of f o phi
  std::vector<double> inf_norm;  // max interior row of S (f o phi)
  std::vector<double> order;     // log2 ratios between consecutive levels
};

/// Residuals of the vertex-sampled f o phi, for each f in the family and
/// each level. Throws NotKahler when the target is not Kahler and
/// PoleAtPoint.
std::vector<PullbackRow> pullback_harmonicity_table(const std::vector<PullbackLevel>& levels,
                                                    const ChartedTarget& target,
                                                    const std::vector<HolomorphicMap>& family);

/// Asserts order >= min_order between consecutive levels for every function
/// (rows already below `exact_floor` at every level count as exact).
SuiteReport pullback_harmonicity_suite(const std::vector<PullbackRow>& table, double min_order = 1.0,
                                       double exact_floor = 1e-12);

std::string pullback_table_csv(const std::vector<PullbackRow>& table);

/// A simplicial covering map between two complexes with their metrics.
struct CoveringData {
  const SimplicialComplex* total = nullptr;
  const PiecewiseMetric* total_metric = nullptr;
  const SimplicialComplex* base = nullptr;
  const PiecewiseMetric* base_metric = nullptr;
  std::vector<VertexId> projection;  // total vertex -> base vertex
};

/// Top-simplex correspondence of a covering. Throws NotACovering when a top
/// simplex is not mapped bijectively onto a base top simplex, a vertex star is
/// not mapped isomorphically, or a sheet is not isometric (1e-12).
std::vector<std::size_t> verify_covering(const CoveringData& covering);

struct FactorizationResult {
  PhmReport base;
  PhmReport total;
  double max_phwc_difference = 0.0;
  double max_harmonic_difference = 0.0;
  SuiteReport suite;
};

/// Pulls phi back along the covering, runs phm_check on both and compares
/// residuals on matched simplices and vertices (1e-10).
FactorizationResult factorization_suite(const CoveringData& covering, const PLMap& base_map,
                                        const ChartedTarget& target,
                                        const std::vector<HolomorphicMap>& family,
                                        const PhmTolerances& tolerances = {});

/// Sample generators used by the algebraic suites.
namespace sampling {

/// Random SPD m x m array (seeded).
Matrix random_spd(int m, std::mt19937_64& rng);
/// Random J-invariant SPD 2n x 2n array.
Matrix random_hermitian(int n, std::mt19937_64& rng);

/// Rows with Gram = lambda h^-1 (exact HWC), built from h^-1/2 O g^1/2 with
/// O having orthonormal rows. Needs m >= 2n when lambda > 0.
GradientSample hwc_sample(const Matrix& h, const Matrix& g, double lambda, std::mt19937_64& rng);

/// Rows whose Gram commutes with J: holomorphic and anti-holomorphic blocks
/// on separate pairs of domain coordinates, carried to a random domain metric.
GradientSample phwc_sample(int n, int domain_pairs, std::mt19937_64& rng);

/// Unstructured rows.
GradientSample generic_sample(int n, int m, std::mt19937_64& rng);

}  // namespace sampling

/// HWC => PHWC on constructed samples, the n = 1 converse and the n = 2
/// PHWC-not-HWC witness.
SuiteReport hwc_implies_phwc_suite(std::size_t random_count, int n = 3, std::uint64_t seed = 42);

/// Joint zero/nonzero verdicts of the commutator and coordinate forms.
SuiteReport commutator_agreement_suite(std::size_t random_count, std::uint64_t seed = 42);

}  // namespace polyharm
