#include "polyharm/morphism.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>
#include <Eigen/QR>

#include "polyharm/error.hpp"

namespace polyharm {

Matrix GradientSample::gram() const {
  const Eigen::LLT<Matrix> llt(metric);
  if (llt.info() != Eigen::Success) fail(ErrorCode::NotSPD, "domain metric of a gradient sample");
  return rows * llt.solve(rows.transpose());
}

std::vector<GradientSample> samples_from_plmap(const SimplicialComplex& complex,
                                               const PiecewiseMetric& metric, const PLMap& map) {
  std::vector<GradientSample> out(complex.top_count());
  for (std::size_t s = 0; s < complex.top_count(); ++s) {
    const SimplexPoint b = barycenter(complex, s);
    GradientSample& sample = out[s];
    sample.simplex = s;
    sample.location = b.barycentric;
    sample.rows = map.frame_differential(s);
    sample.metric = metric.at_barycenter(s);
    sample.image = map.value_at(b);
    sample.weight = simplex_volume(complex, metric, s);
  }
  return out;
}

GradientSample sample_analytic(const AnalyticMap& map, const Vector& x) {
  GradientSample sample;
  sample.location = x;
  sample.rows = map.jacobian(x);
  sample.metric = Matrix::Identity(map.domain_dim(), map.domain_dim());
  sample.image = map(x);
  return sample;
}

GradientSample compose_sample(const HolomorphicMap& psi, const GradientSample& sample) {
  GradientSample out = sample;
  out.rows = compose_gradients(psi, sample.rows, sample.image);
  out.image = psi.real_value(sample.image);
  return out;
}

namespace {

Json number_array(const std::vector<double>& values) {
  Json a = Json::array();
  for (double v : values) a.push_back(v);
  return a;
}

void require_even_rows(const GradientSample& s) {
  if (s.rows.rows() % 2 != 0 || s.rows.rows() == 0)
    fail(ErrorCode::DimensionMismatch, "gradient rows must come in (x, y) pairs");
  if (s.metric.rows() != s.rows.cols() || s.metric.cols() != s.rows.cols())
    fail(ErrorCode::DimensionMismatch, "domain metric does not match the gradient columns");
}

double max_diagonal(const Matrix& gram) { return gram.diagonal().maxCoeff(); }

}  // namespace

Json ResidualReport::to_json() const {
  Json j;
  j["kind"] = kind;
  j["verdict"] = verdict;
  j["tolerance"] = tolerance;
  j["inf_norm"] = inf_norm;
  j["normalized_inf_norm"] = normalized_inf_norm;
  j["weighted_l1"] = weighted_l1;
  j["residual"] = number_array(residual);
  j["normalized"] = number_array(normalized);
  if (!dilation.empty()) j["dilation"] = number_array(dilation);
  return j;
}

ResidualReport finalize_report(std::string kind, std::vector<double> residual,
                               std::vector<double> scale, const std::vector<GradientSample>& samples,
                               double tolerance) {
  ResidualReport r;
  r.kind = std::move(kind);
  r.tolerance = tolerance;
  r.normalized.resize(residual.size());
  for (std::size_t i = 0; i < residual.size(); ++i) {
    r.normalized[i] = residual[i] / std::max(1.0, scale[i]);
    r.inf_norm = std::max(r.inf_norm, residual[i]);
    r.normalized_inf_norm = std::max(r.normalized_inf_norm, r.normalized[i]);
    r.weighted_l1 += (i < samples.size() ? samples[i].weight : 1.0) * residual[i];
  }
  r.residual = std::move(residual);
  r.verdict = r.normalized_inf_norm <= tolerance;
  return r;
}

double phwc_sample_residual(const Matrix& gram) {
  const Eigen::Index n = gram.rows() / 2;
  double worst = 0.0;
  for (Eigen::Index a = 0; a < n; ++a)
    for (Eigen::Index b = 0; b < n; ++b) {
      const double first = std::abs(gram(b, a) - gram(n + b, n + a));
      const double second = std::abs(gram(n + b, a) + gram(b, n + a));
      worst = std::max(worst, first + second);
    }
  return worst;
}

ResidualReport phwc_residual(const std::vector<GradientSample>& samples, double tolerance) {
  std::vector<double> residual(samples.size()), scale(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    require_even_rows(samples[i]);
    const Matrix g = samples[i].gram();
    residual[i] = phwc_sample_residual(g);
    scale[i] = max_diagonal(g);
  }
  return finalize_report("phwc", std::move(residual), std::move(scale), samples, tolerance);
}

ResidualReport hwc_residual(const std::vector<GradientSample>& samples, const ChartedTarget& target,
                            double tolerance) {
  std::vector<double> residual(samples.size()), scale(samples.size()), dilation(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const GradientSample& s = samples[i];
    if (s.rows.rows() != target.real_dim())
      fail(ErrorCode::DimensionMismatch, "gradient rows do not match the target chart");
    const Matrix g = s.gram();
    const Matrix hinv = target.inverse_metric(s.image);
    const double lambda = g.trace() / hinv.trace();
    dilation[i] = lambda;
    residual[i] = (g - lambda * hinv).cwiseAbs().maxCoeff();
    scale[i] = max_diagonal(g);
  }
  ResidualReport r = finalize_report("hwc", std::move(residual), std::move(scale), samples, tolerance);
  r.dilation = std::move(dilation);
  return r;
}

std::vector<double> commutator_form_residual(const std::vector<GradientSample>& samples,
                                             const ChartedTarget& target) {
  const Matrix j = complex_structure(target.complex_dim());
  std::vector<double> out(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const GradientSample& s = samples[i];
    if (s.rows.rows() != target.real_dim())
      fail(ErrorCode::DimensionMismatch, "gradient rows do not match the target chart");
    target.inverse_metric(s.image);  // TargetMetricSingular
    const Matrix c = s.gram() * target.metric(s.image);
    out[i] = (c * j - j * c).cwiseAbs().maxCoeff();
  }
  return out;
}

ResidualReport phwc_via_functions(const std::vector<GradientSample>& samples,
                                  const std::vector<HolomorphicMap>& family, double tolerance) {
  std::vector<double> residual(samples.size(), 0.0), scale(samples.size(), 0.0);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    for (const HolomorphicMap& f : family) {
      const Matrix composed = compose_gradients(f, samples[i].rows, samples[i].image);
      GradientSample c = samples[i];
      c.rows = composed;
      const Matrix g = c.gram();
      residual[i] = std::max(residual[i], phwc_sample_residual(g));
      scale[i] = std::max(scale[i], max_diagonal(g));
    }
  }
  return finalize_report("phwc_via_functions", std::move(residual), std::move(scale), samples,
                         tolerance);
}

PostcomposeResult postcompose_preserves_phwc(const std::vector<GradientSample>& samples,
                                             const HolomorphicMap& psi, double cr_tolerance) {
  PostcomposeResult out;
  double row_sum = 0.0;
  std::vector<GradientSample> composed;
  composed.reserve(samples.size());
  for (const GradientSample& s : samples) {
    const CVector z = to_complex(s.image);
    const double cr = cauchy_riemann_residual(psi, z);
    if (cr > cr_tolerance)
      fail(ErrorCode::NotHolomorphic,
           psi.name() + " fails the Cauchy-Riemann equations (residual " + std::to_string(cr) + ")");
    const CMatrix jac = psi.jacobian(z);
    row_sum = std::max(row_sum, jac.cwiseAbs().rowwise().sum().maxCoeff());
    composed.push_back(compose_sample(psi, s));
  }
  out.input_residual = phwc_residual(samples).inf_norm;
  out.output_residual = phwc_residual(composed).inf_norm;
  out.bound = 4.0 * row_sum * row_sum * out.input_residual + 1e-9;
  out.pass = out.output_residual <= out.bound;
  return out;
}

Json PhmReport::to_json() const {
  Json j;
  j["verdict"] = verdict;
  j["harmonic"] = harmonic.to_json();
  j["phwc"] = phwc.to_json();
  if (!family.kind.empty()) j["family"] = family.to_json();
  return j;
}

PhmReport phm_check(const StiffnessSystem& system, const PiecewiseMetric& metric, const PLMap& map,
                    const ChartedTarget& target, const std::vector<HolomorphicMap>& family,
                    const PhmTolerances& tolerances) {
  const SimplicialComplex& complex = system.complex();
  if (map.target_dim() != target.real_dim())
    fail(ErrorCode::DimensionMismatch, "map values do not match the target chart");
  PhmReport report;
  report.harmonic_residual = weak_harmonic_residual(system, &target, map);

  const Matrix& r = report.harmonic_residual.per_vertex;
  std::vector<double> per_vertex(complex.vertex_count()), ones(complex.vertex_count(), 1.0);
  std::vector<GradientSample> weights(complex.vertex_count());
  for (std::size_t v = 0; v < complex.vertex_count(); ++v) {
    per_vertex[v] = r.row(static_cast<Eigen::Index>(v)).cwiseAbs().maxCoeff();
    weights[v].weight = system.lumped_mass()[static_cast<Eigen::Index>(v)];
  }
  report.harmonic =
      finalize_report("harmonic", std::move(per_vertex), std::move(ones), weights, tolerances.harmonic);

  const std::vector<GradientSample> samples = samples_from_plmap(complex, metric, map);
  report.phwc = phwc_residual(samples, tolerances.conformal);
  if (!family.empty()) report.family = phwc_via_functions(samples, family, tolerances.conformal);
  report.verdict = report.harmonic.verdict && report.phwc.verdict;
  return report;
}

std::vector<PullbackRow> pullback_harmonicity_table(const std::vector<PullbackLevel>& levels,
                                                    const ChartedTarget& target,
                                                    const std::vector<HolomorphicMap>& family) {
  if (!target.is_kahler())
    fail(ErrorCode::NotKahler, "pullback of holomorphic functions needs a Kahler target");
  std::vector<PullbackRow> table(family.size());
  for (std::size_t f = 0; f < family.size(); ++f) table[f].function = family[f].name();

  for (const PullbackLevel& level : levels) {
    const SimplicialComplex& complex = level.system->complex();
    const Matrix& values = level.map->values();
    for (std::size_t f = 0; f < family.size(); ++f) {
      const HolomorphicMap& fn = family[f];
      if (2 * fn.domain_dim() != values.cols())
        fail(ErrorCode::DimensionMismatch, fn.name() + " does not match the target chart");
      Matrix pulled(values.rows(), 2 * fn.codomain_dim());
      for (Eigen::Index v = 0; v < values.rows(); ++v) {
        const Vector image = values.row(v).transpose();
        target.require_in_chart(image);
        pulled.row(v) = fn.real_value(image).transpose();
      }
      const HarmonicResidual r = weak_harmonic_residual(*level.system, nullptr, PLMap(complex, pulled));
      PullbackRow& row = table[f];
      row.h.push_back(level.h);
      row.residual.push_back(level.system->dual_norm(r.per_vertex));
      row.inf_norm.push_back(r.inf_norm);
    }
  }
  for (PullbackRow& row : table)
    for (std::size_t i = 0; i + 1 < row.residual.size(); ++i) {
      const double ratio = row.residual[i] / row.residual[i + 1];
      row.order.push_back(std::log(ratio) / std::log(row.h[i] / row.h[i + 1]));
    }
  return table;
}

SuiteReport pullback_harmonicity_suite(const std::vector<PullbackRow>& table, double min_order,
                                       double exact_floor) {
  SuiteReport suite("pullback_harmonicity");
  for (const PullbackRow& row : table) {
    const double worst = *std::max_element(row.residual.begin(), row.residual.end());
    if (worst <= exact_floor) {
      suite.less_equal(row.function + " residual (exact)", worst, exact_floor);
      continue;
    }
    for (std::size_t i = 0; i < row.order.size(); ++i)
      suite.greater_equal(row.function + " order level " + std::to_string(i + 1), row.order[i],
                          min_order);
  }
  return suite;
}

std::string pullback_table_csv(const std::vector<PullbackRow>& table) {
  std::ostringstream out;
  out << "function,h,residual,inf_norm,order\n";
  char buf[64];
  auto num = [&](double v) {
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return std::string(buf);
  };
  for (const PullbackRow& row : table)
    for (std::size_t i = 0; i < row.h.size(); ++i) {
      out << row.function << ',' << num(row.h[i]) << ',' << num(row.residual[i]) << ','
          << num(row.inf_norm[i]) << ',';
      if (i > 0) out << num(row.order[i - 1]);
      out << '\n';
    }
  return out.str();
}

namespace {

// Squared edge lengths of a top simplex, indexed by sorted vertex positions.
Matrix edge_lengths(const PiecewiseMetric& metric, std::size_t simplex, int n) {
  const Matrix g = metric.at_barycenter(simplex);
  Matrix out = Matrix::Zero(n + 1, n + 1);
  for (int i = 0; i <= n; ++i)
    for (int j = 0; j <= n; ++j) {
      Vector e = Vector::Zero(n);
      if (i > 0) e[i - 1] += 1.0;
      if (j > 0) e[j - 1] -= 1.0;
      out(i, j) = e.dot(g * e);
    }
  return out;
}

}  // namespace

std::vector<std::size_t> verify_covering(const CoveringData& c) {
  if (!c.total || !c.base || !c.total_metric || !c.base_metric)
    fail(ErrorCode::InvalidArgument, "incomplete covering data");
  const SimplicialComplex& total = *c.total;
  const SimplicialComplex& base = *c.base;
  if (c.projection.size() != total.vertex_count())
    fail(ErrorCode::NotACovering, "projection must map every vertex of the total complex");
  if (total.dimension() != base.dimension())
    fail(ErrorCode::NotACovering, "complexes have different dimensions");
  const int n = total.dimension();

  std::map<Simplex, std::size_t> base_index;
  for (std::size_t s = 0; s < base.top_count(); ++s) base_index[base.top(s)] = s;

  std::vector<std::size_t> match(total.top_count());
  std::vector<std::size_t> hits(base.top_count(), 0);
  for (std::size_t t = 0; t < total.top_count(); ++t) {
    const Simplex& simplex = total.top(t);
    Simplex image;
    for (VertexId v : simplex) {
      const VertexId p = c.projection[v];
      if (p < 0 || static_cast<std::size_t>(p) >= base.vertex_count())
        fail(ErrorCode::NotACovering, "projection points outside the base");
      image.push_back(p);
    }
    Simplex sorted = canonical(image);
    if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
      fail(ErrorCode::NotACovering, "simplex " + to_string(simplex) + " collapses");
    const auto it = base_index.find(sorted);
    if (it == base_index.end())
      fail(ErrorCode::NotACovering, "image of " + to_string(simplex) + " is not a base simplex");
    match[t] = it->second;
    ++hits[it->second];

    // Compare edge lengths through the vertex correspondence.
    const Matrix lt = edge_lengths(*c.total_metric, t, n);
    const Matrix lb = edge_lengths(*c.base_metric, it->second, n);
    std::vector<int> position(n + 1);
    for (int i = 0; i <= n; ++i)
      position[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), image[i]) -
                                     sorted.begin());
    for (int i = 0; i <= n; ++i)
      for (int j = 0; j <= n; ++j) {
        const double a = lt(i, j), b = lb(position[i], position[j]);
        if (std::abs(a - b) > 1e-12 * std::max(1.0, std::abs(b)))
          fail(ErrorCode::NotACovering, "sheet over " + to_string(sorted) + " is not isometric");
      }
  }
  const std::size_t sheets = hits.empty() ? 0 : hits.front();
  for (std::size_t h : hits)
    if (h == 0 || h != sheets)
      fail(ErrorCode::NotACovering, "base simplices are covered unevenly");

  // Each vertex star must map bijectively onto the star of its image.
  std::vector<std::vector<std::size_t>> total_star(total.vertex_count()), base_star(base.vertex_count());
  for (std::size_t t = 0; t < total.top_count(); ++t)
    for (VertexId v : total.top(t)) total_star[v].push_back(match[t]);
  for (std::size_t s = 0; s < base.top_count(); ++s)
    for (VertexId v : base.top(s)) base_star[v].push_back(s);
  for (std::size_t v = 0; v < total.vertex_count(); ++v) {
    std::vector<std::size_t> mapped = total_star[v];
    std::sort(mapped.begin(), mapped.end());
    if (mapped != base_star[c.projection[v]])
      fail(ErrorCode::NotACovering, "star of vertex " + std::to_string(v) + " is not mapped isomorphically");
  }
  return match;
}

FactorizationResult factorization_suite(const CoveringData& covering, const PLMap& base_map,
                                        const ChartedTarget& target,
                                        const std::vector<HolomorphicMap>& family,
                                        const PhmTolerances& tolerances) {
  const std::vector<std::size_t> match = verify_covering(covering);
  const SimplicialComplex& total = *covering.total;
  Matrix lifted(static_cast<Eigen::Index>(total.vertex_count()), base_map.target_dim());
  for (std::size_t v = 0; v < total.vertex_count(); ++v)
    lifted.row(static_cast<Eigen::Index>(v)) = base_map.value(covering.projection[v]).transpose();
  const PLMap total_map(total, lifted);

  const StiffnessSystem base_system = StiffnessSystem::assemble(*covering.base, *covering.base_metric);
  const StiffnessSystem total_system = StiffnessSystem::assemble(total, *covering.total_metric);

  FactorizationResult out;
  out.base = phm_check(base_system, *covering.base_metric, base_map, target, family, tolerances);
  out.total = phm_check(total_system, *covering.total_metric, total_map, target, family, tolerances);

  for (std::size_t t = 0; t < match.size(); ++t) {
    double d = std::abs(out.total.phwc.residual[t] - out.base.phwc.residual[match[t]]);
    if (!family.empty())
      d = std::max(d, std::abs(out.total.family.residual[t] - out.base.family.residual[match[t]]));
    out.max_phwc_difference = std::max(out.max_phwc_difference, d);
  }
  const Matrix& rt = out.total.harmonic_residual.per_vertex;
  const Matrix& rb = out.base.harmonic_residual.per_vertex;
  for (std::size_t v = 0; v < total.vertex_count(); ++v) {
    const auto iv = static_cast<Eigen::Index>(v);
    const double d = (rt.row(iv) - rb.row(covering.projection[v])).cwiseAbs().maxCoeff();
    out.max_harmonic_difference = std::max(out.max_harmonic_difference, d);
  }

  out.suite = SuiteReport("factorization");
  out.suite.less_equal("max phwc residual difference", out.max_phwc_difference, 1e-10);
  out.suite.less_equal("max harmonic residual difference", out.max_harmonic_difference, 1e-10);
  out.suite.expect("phwc verdicts agree", out.base.phwc.verdict == out.total.phwc.verdict);
  out.suite.expect("harmonic verdicts agree", out.base.harmonic.verdict == out.total.harmonic.verdict);
  out.suite.expect("phm verdicts agree", out.base.verdict == out.total.verdict);
  out.suite.details()["base_verdict"] = out.base.verdict;
  out.suite.details()["total_verdict"] = out.total.verdict;
  out.suite.details()["phwc_inf_norm"] = out.base.phwc.inf_norm;
  out.suite.details()["harmonic_inf_norm"] = out.base.harmonic.inf_norm;
  return out;
}

namespace sampling {

namespace {

Matrix normal_matrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix a(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) a(i, j) = normal(rng);
  return a;
}

CMatrix normal_cmatrix(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  const Matrix re = normal_matrix(rows, cols, rng);
  const Matrix im = normal_matrix(rows, cols, rng);
  CMatrix c(rows, cols);
  for (Eigen::Index j = 0; j < cols; ++j)
    for (Eigen::Index i = 0; i < rows; ++i) c(i, j) = Complex(re(i, j), im(i, j));
  return c;
}

// Moves rows built for the identity metric to the metric g = L L^T without
// changing their Gram matrix.
void carry_to_metric(GradientSample& s, std::mt19937_64& rng) {
  const auto m = static_cast<int>(s.rows.cols());
  s.metric = random_spd(m, rng);
  const Eigen::LLT<Matrix> llt(s.metric);
  s.rows = s.rows * Matrix(llt.matrixL()).transpose();
}

}  // namespace

Matrix random_spd(int m, std::mt19937_64& rng) {
  const Matrix a = normal_matrix(m, m, rng);
  return a * a.transpose() / m + 0.5 * Matrix::Identity(m, m);
}

Matrix random_hermitian(int n, std::mt19937_64& rng) {
  const CMatrix c = normal_cmatrix(n, n, rng);
  const CMatrix h = c * c.adjoint() / static_cast<double>(n) + 0.5 * CMatrix::Identity(n, n);
  Matrix r = realify(h);
  return 0.5 * (r + r.transpose());
}

GradientSample hwc_sample(const Matrix& h, const Matrix& g, double lambda, std::mt19937_64& rng) {
  const Eigen::Index t = h.rows(), m = g.rows();
  if (lambda > 0.0 && m < t) fail(ErrorCode::InvalidArgument, "domain too small for a submersive sample");
  Matrix o = Matrix::Zero(t, m);
  if (lambda > 0.0) {
    const Eigen::HouseholderQR<Matrix> qr(normal_matrix(m, t, rng));
    o = (qr.householderQ() * Matrix::Identity(m, t)).transpose();
  }
  const Eigen::SelfAdjointEigenSolver<Matrix> eh(h), eg(g);
  GradientSample s;
  s.rows = std::sqrt(std::max(lambda, 0.0)) * eh.operatorInverseSqrt() * o * eg.operatorSqrt();
  s.metric = g;
  s.image = Vector::Zero(t);
  s.location = Vector::Zero(m);
  return s;
}

GradientSample phwc_sample(int n, int domain_pairs, std::mt19937_64& rng) {
  const int m = 2 * domain_pairs;
  Matrix rows = Matrix::Zero(2 * n, m);
  std::bernoulli_distribution anti(0.5);
  for (int p = 0; p < domain_pairs; ++p) {
    const CMatrix a = normal_cmatrix(n, 1, rng);
    const bool conj = anti(rng);
    for (int k = 0; k < n; ++k) {
      const double re = a(k, 0).real(), im = a(k, 0).imag();
      // a w is holomorphic in w = s + i t; a conj(w) flips the t column.
      const double sign = conj ? -1.0 : 1.0;
      rows(k, 2 * p) = re;
      rows(k, 2 * p + 1) = -sign * im;
      rows(n + k, 2 * p) = im;
      rows(n + k, 2 * p + 1) = sign * re;
    }
  }
  GradientSample s;
  s.rows = rows;
  s.metric = Matrix::Identity(m, m);
  s.image = normal_matrix(2 * n, 1, rng);
  s.location = Vector::Zero(m);
  carry_to_metric(s, rng);
  return s;
}

GradientSample generic_sample(int n, int m, std::mt19937_64& rng) {
  GradientSample s;
  s.rows = normal_matrix(2 * n, m, rng);
  s.metric = random_spd(m, rng);
  s.image = normal_matrix(2 * n, 1, rng);
  s.location = Vector::Zero(m);
  return s;
}

}  // namespace sampling

SuiteReport hwc_implies_phwc_suite(std::size_t random_count, int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(0.0, 3.0);
  std::uniform_int_distribution<int> extra(0, 2);
  SuiteReport suite("hwc_implies_phwc");

  double worst_phwc = 0.0, worst_hwc = 0.0, min_dilation = 0.0;
  for (std::size_t i = 0; i < random_count; ++i) {
    const Matrix h = sampling::random_hermitian(n, rng);
    const int m = 2 * n + extra(rng);
    const Matrix g = sampling::random_spd(m, rng);
    const double lambda = i == 0 ? 0.0 : uniform(rng);
    const std::vector<GradientSample> s = {sampling::hwc_sample(h, g, lambda, rng)};
    const ChartedTarget target = ChartedTarget::constant(h);
    const ResidualReport hwc = hwc_residual(s, target);
    worst_hwc = std::max(worst_hwc, hwc.normalized_inf_norm);
    min_dilation = std::min(min_dilation, hwc.dilation.front());
    worst_phwc = std::max(worst_phwc, phwc_residual(s).normalized_inf_norm);
  }
  suite.less("constructed samples hwc residual", worst_hwc, 1e-10);
  suite.less("constructed samples phwc residual", worst_phwc, 1e-10);
  suite.greater_equal("min dilation", min_dilation, -1e-10);

  // Complex dimension one: both directions.
  const ChartedTarget plane = ChartedTarget::flat(1);
  double forward = 0.0, converse = 0.0;
  for (std::size_t i = 0; i < random_count; ++i) {
    const int pairs = 1 + extra(rng);
    const std::vector<GradientSample> p = {sampling::phwc_sample(1, pairs, rng)};
    converse = std::max(converse, hwc_residual(p, plane).normalized_inf_norm);
    const Matrix g = sampling::random_spd(2 * pairs, rng);
    const std::vector<GradientSample> h = {
        sampling::hwc_sample(Matrix::Identity(2, 2), g, uniform(rng), rng)};
    forward = std::max(forward, phwc_residual(h).normalized_inf_norm);
  }
  suite.less("n=1 hwc residual of phwc samples", converse, 1e-10);
  suite.less("n=1 phwc residual of hwc samples", forward, 1e-10);

  // (w1, 2 w2) on C^2: Gram diag(1, 4, 1, 4) commutes with J but is not a
  // multiple of the identity.
  GradientSample witness;
  witness.rows = Matrix::Zero(4, 4);
  witness.rows(0, 0) = 1.0;
  witness.rows(2, 1) = 1.0;
  witness.rows(1, 2) = 2.0;
  witness.rows(3, 3) = 2.0;
  witness.metric = Matrix::Identity(4, 4);
  witness.image = Vector::Zero(4);
  const std::vector<GradientSample> w = {witness};
  suite.less("n=2 witness phwc residual", phwc_residual(w).inf_norm, 1e-10);
  suite.greater("n=2 witness hwc residual", hwc_residual(w, ChartedTarget::flat(2)).inf_norm, 0.1);
  return suite;
}

SuiteReport commutator_agreement_suite(std::size_t random_count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> dim(1, 3), pairs(1, 3);
  SuiteReport suite("commutator_agreement");
  std::size_t disagreements = 0, zeros = 0, nonzeros = 0;
  for (std::size_t i = 0; i < random_count; ++i) {
    const int n = dim(rng);
    const GradientSample s = i % 2 == 0 ? sampling::phwc_sample(n, pairs(rng), rng)
                                        : sampling::generic_sample(n, 2 * pairs(rng), rng);
    const ChartedTarget target = ChartedTarget::constant(sampling::random_hermitian(n, rng));
    const std::vector<GradientSample> one = {s};
    const double scale = std::max(1.0, s.gram().cwiseAbs().maxCoeff());
    const bool coordinate_zero = phwc_residual(one).normalized_inf_norm <= 1e-9;
    const bool commutator_zero =
        commutator_form_residual(one, target).front() / (scale * target.metric(s.image).norm()) <= 1e-9;
    const bool family_zero = phwc_via_functions(one, standard_family(n)).normalized_inf_norm <= 1e-9;
    if (coordinate_zero != commutator_zero || coordinate_zero != family_zero) ++disagreements;
    (coordinate_zero ? zeros : nonzeros) += 1;
  }
  suite.less_equal("verdict disagreements", static_cast<double>(disagreements), 0.0);
  suite.greater("zero verdicts", static_cast<double>(zeros), 0.0);
  suite.greater("nonzero verdicts", static_cast<double>(nonzeros), 0.0);
  return suite;
}

}  // namespace polyharm
