#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "polyharm/holomorphic.hpp"
#include "polyharm/maps.hpp"
#include "polyharm/morphism.hpp"
#include "polyharm/polynomial.hpp"
#include "polyharm/report.hpp"
#include "polyharm/riemannian.hpp"
#include "polyharm/simplicial.hpp"

namespace polyharm {

/// eta_i(u, v) = F_i(u) P_i(conj v) / (G_i(u) Q_i(conj v)).
struct EtaComponent {
  Polynomial F, G;  // on C^k
  Polynomial P, Q;  // on C^s, evaluated at conj(v)
};

struct EtaSpec {
  int k = 0;
  int s = 0;
  std::vector<EtaComponent> components;
  double guard = 1e-12;  // |G|, |Q| below this count as a pole
};

/// Component i uses F = u_(i mod k), G = u_k, P = w_(i mod s), Q = w_s
/// (1-based); for k = s = 2, r = 1 this is (u1 / u2)(conj v1 / conj v2).
EtaSpec eta_spec(int k, int s, int r);

/// Real coordinates of the domain follow to_real() of (u_1..u_k, v_1..v_s).
class EtaMap {
 public:
  int k() const { return spec_.k; }
  int s() const { return spec_.s; }
  int r() const { return static_cast<int>(spec_.components.size()); }
  const EtaSpec& spec() const { return spec_; }

  /// All P_i and Q_i are constant, so eta is holomorphic.
  bool holomorphic_data() const;

  /// Throws PoleAtPoint.
  CVector operator()(const CVector& uv) const;
  /// d eta / du (r x k) and d eta / d conj(v) (r x s).
  CMatrix holomorphic_derivative(const CVector& uv) const;
  CMatrix antiholomorphic_derivative(const CVector& uv) const;
  /// 2r x 2(k+s) real Jacobian.
  Matrix real_jacobian(const Vector& xy) const;

  AnalyticMap analytic() const;
  /// The same function seen as a map C^{k+s} -> C^r (for Cauchy-Riemann
  /// checks; it is not holomorphic in v).
  HolomorphicMap as_function() const;

 private:
  friend EtaMap build_eta(EtaSpec spec);
  explicit EtaMap(EtaSpec spec) : spec_(std::move(spec)) {}
  EtaSpec spec_;
};

/// Throws DegreeMismatch (unequal or inhomogeneous degrees),
/// ZeroDenominatorPolynomial and DimensionMismatch.
EtaMap build_eta(EtaSpec spec);

/// Points of C^{k+s} (as real coordinates) with every coordinate modulus in
/// [0.3, 1] and |G_i(u)|, |Q_i(conj v)| >= margin, drawn with a fixed seed.
std::vector<Vector> eta_sample_points(const EtaMap& eta, std::size_t count, std::uint64_t seed = 42,
                                      double margin = 0.1);

struct EtaSuiteOptions {
  double fd_step = 1e-6;
  double gradient_tol = 1e-6;
  double conformal_tol = 1e-8;
  double laplacian_step = 1e-3;
  double laplacian_tol = 1e-4;
};

/// Closed-form gradients against central differences, PHWC and commutator
/// residuals and the finite-difference Laplacian of every component at each
/// point. With a domain complex structure the report also records whether the
/// map is holomorphic.
SuiteReport eta_phwc_suite(const AnalyticMap& map, const std::vector<Vector>& points,
                           const EtaSuiteOptions& options = {},
                           const Matrix* domain_structure = nullptr);

struct CauchyRiemannSummary {
  double u_variables = 0.0;  // max CR residual restricted to u
  double full = 0.0;         // max CR residual over all variables
  double anti = 0.0;         // max anti-CR residual over all variables
};

/// Maxima over the points of the finite-difference Cauchy-Riemann residuals.
CauchyRiemannSummary eta_cauchy_riemann(const EtaMap& eta, const std::vector<Vector>& points);

/// (x, y) -> a(x) + b(y) on the concatenated domain; block Jacobian [Da | Db].
/// Throws DimensionMismatch.
AnalyticMap sum_map(const AnalyticMap& a, const AnalyticMap& b);

/// The sum's PHWC residual is at most the sum of the blocks' residuals; the
/// details record the largest residual per block.
SuiteReport sum_map_suite(const AnalyticMap& a, const AnalyticMap& b,
                          const std::vector<Vector>& points_a, const std::vector<Vector>& points_b);

/// Two complexes, their metrics and a vertex projection. The metrics refer to
/// the complexes stored in the same object, so it is not copied around.
struct CoveringExample {
  std::string name;
  SimplicialComplex total;
  SimplicialComplex base;
  PiecewiseMetric total_metric;
  PiecewiseMetric base_metric;
  std::vector<VertexId> projection;  // total -> base
  std::vector<VertexId> section;     // base -> total, projection o section = id
  std::vector<VertexId> fixed;       // total vertices on a reflection line
  std::vector<std::string> warnings;
  bool is_covering = false;

  CoveringData data() const { return {&total, &total_metric, &base, &base_metric, projection}; }
};

/// "torus_cover": flat torus with 2n x n cells over the n x n torus
/// (translation by half the long period). "reflection_fold": the grid on
/// [-1,1] x [0,1] folded onto [0,1] x [0,1]; emitted with a warning since it
/// is not a covering. Throws UnknownSpec.
CoveringExample build_covering(const std::string& spec, int n = 4);

/// Vertex values on the base torus of a torus_cover: a constant map when
/// `phm`, otherwise the triangle waves u = tri(x), v = 2 tri(y) whose
/// gradients are (+-1, 0) and (0, +-2) on every simplex. Needs n even.
PLMap torus_example_map(const CoveringExample& covering, bool phm);

}  // namespace polyharm
