#include "polyharm/riemannian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <queue>

#include <Eigen/Cholesky>
#include <Eigen/Eigenvalues>

#include "polyharm/error.hpp"
#include "polyharm/quadrature.hpp"

namespace polyharm {

namespace {

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

void require_simplex(const PiecewiseMetric& metric, std::size_t simplex) {
  if (simplex >= metric.simplex_count())
    fail(ErrorCode::UnknownSimplex, "top simplex index " + std::to_string(simplex));
}

void validate_point(const SimplicialComplex& complex, const SimplexPoint& p) {
  if (p.simplex >= complex.top_count())
    fail(ErrorCode::PointOffComplex, "no top simplex " + std::to_string(p.simplex));
  if (p.barycentric.size() != complex.dimension() + 1)
    fail(ErrorCode::PointOffComplex, "barycentric address has wrong length");
  if (p.barycentric.minCoeff() < -1e-12 || std::abs(p.barycentric.sum() - 1.0) > 1e-10)
    fail(ErrorCode::PointOffComplex, "barycentric weights must be nonnegative and sum to one");
}

}  // namespace

SimplexPoint barycenter(const SimplicialComplex& complex, std::size_t simplex) {
  const int n = complex.dimension();
  return {simplex, Vector::Constant(n + 1, 1.0 / (n + 1))};
}

Vector frame_coordinates(const Vector& barycentric) {
  return barycentric.tail(barycentric.size() - 1);
}

bool is_spd(const Matrix& g) {
  if (g.rows() != g.cols() || g.rows() == 0) return false;
  if (!g.allFinite()) return false;
  if ((g - g.transpose()).cwiseAbs().maxCoeff() > 1e-12 * std::max(1.0, g.cwiseAbs().maxCoeff()))
    return false;
  Eigen::SelfAdjointEigenSolver<Matrix> eig(g, Eigen::EigenvaluesOnly);
  return eig.eigenvalues().minCoeff() > 0.0;
}

double ellipticity_constant(const Matrix& g) {
  if (!is_spd(g)) fail(ErrorCode::NotSPD, "metric array is not symmetric positive definite");
  Eigen::SelfAdjointEigenSolver<Matrix> eig(g, Eigen::EigenvaluesOnly);
  const double lo = eig.eigenvalues().minCoeff();
  const double hi = eig.eigenvalues().maxCoeff();
  return std::max(std::sqrt(hi), 1.0 / std::sqrt(lo));
}

PiecewiseMetric PiecewiseMetric::constant(const SimplicialComplex& complex,
                                          std::vector<Matrix> per_simplex) {
  const int n = complex.dimension();
  if (per_simplex.size() != complex.top_count())
    fail(ErrorCode::InvalidArgument, "expected one metric array per top simplex");
  for (std::size_t s = 0; s < per_simplex.size(); ++s) {
    if (per_simplex[s].rows() != n || per_simplex[s].cols() != n)
      fail(ErrorCode::DimensionMismatch, "metric of simplex " + std::to_string(s) + " is not n x n");
    if (!is_spd(per_simplex[s]))
      fail(ErrorCode::NotSPD, "metric of simplex " + std::to_string(s));
  }
  PiecewiseMetric m;
  m.mode_ = Mode::Constant;
  m.dim_ = n;
  m.count_ = per_simplex.size();
  m.constant_ = std::move(per_simplex);
  return m;
}

PiecewiseMetric PiecewiseMetric::induced(const SimplicialComplex& complex) {
  const int n = complex.dimension();
  const auto ambient = static_cast<Eigen::Index>(complex.ambient_dimension());
  std::vector<Matrix> gram;
  gram.reserve(complex.top_count());
  for (std::size_t s = 0; s < complex.top_count(); ++s) {
    const Simplex& simplex = complex.top(s);
    Matrix edges(ambient, n);
    const auto& x0 = complex.coordinates(simplex[0]);
    for (int i = 0; i < n; ++i) {
      const auto& xi = complex.coordinates(simplex[i + 1]);
      for (Eigen::Index a = 0; a < ambient; ++a) edges(a, i) = xi[a] - x0[a];
    }
    Matrix g = edges.transpose() * edges;
    if (!is_spd(g))
      fail(ErrorCode::DegenerateSimplex, "simplex " + to_string(simplex) + " has zero volume");
    gram.push_back(std::move(g));
  }
  return constant(complex, std::move(gram));
}

PiecewiseMetric PiecewiseMetric::reference(const SimplicialComplex& complex) {
  const int n = complex.dimension();
  return constant(complex, std::vector<Matrix>(complex.top_count(), Matrix::Identity(n, n)));
}

PiecewiseMetric PiecewiseMetric::smooth(const SimplicialComplex& complex, Evaluator evaluator) {
  PiecewiseMetric m;
  m.mode_ = Mode::Smooth;
  m.dim_ = complex.dimension();
  m.count_ = complex.top_count();
  m.evaluator_ = std::move(evaluator);
  return m;
}

Matrix PiecewiseMetric::at(std::size_t simplex, const Vector& barycentric) const {
  require_simplex(*this, simplex);
  if (mode_ == Mode::Constant) return scale_ * constant_[simplex];
  Matrix g = scale_ * evaluator_(simplex, barycentric);
  if (!is_spd(g)) fail(ErrorCode::NotSPD, "smooth metric at simplex " + std::to_string(simplex));
  return g;
}

Matrix PiecewiseMetric::at_barycenter(std::size_t simplex) const {
  return at(simplex, Vector::Constant(dim_ + 1, 1.0 / (dim_ + 1)));
}

double PiecewiseMetric::ellipticity(std::size_t simplex) const {
  return ellipticity_constant(at_barycenter(simplex));
}

double PiecewiseMetric::global_ellipticity() const {
  double sup = 0.0;
  for (std::size_t s = 0; s < count_; ++s) sup = std::max(sup, ellipticity(s));
  return sup;
}

PiecewiseMetric PiecewiseMetric::scaled(double factor) const {
  if (!(factor > 0.0)) fail(ErrorCode::NotSPD, "metric scale factor must be positive");
  PiecewiseMetric m = *this;
  m.scale_ *= factor;
  return m;
}

double PiecewiseMetric::face_mismatch(const SimplicialComplex& complex) const {
  // Squared length of the edge (a, b) as measured inside simplex s.
  auto edge_length2 = [&](std::size_t s, VertexId a, VertexId b) {
    const Simplex& simplex = complex.top(s);
    const int ia = static_cast<int>(std::find(simplex.begin(), simplex.end(), a) - simplex.begin());
    const int ib = static_cast<int>(std::find(simplex.begin(), simplex.end(), b) - simplex.begin());
    Vector ba = Vector::Zero(dim_ + 1);
    ba[ia] = 0.5;
    ba[ib] = 0.5;
    Vector d = Vector::Zero(dim_);
    if (ib > 0) d[ib - 1] += 1.0;
    if (ia > 0) d[ia - 1] -= 1.0;
    return d.dot(at(s, ba) * d);
  };
  double worst = 0.0;
  for (const Simplex& edge : complex.faces(1)) {
    const auto& tops = complex.top_cofaces(edge);
    const double ref = edge_length2(tops.front(), edge[0], edge[1]);
    for (std::size_t k = 1; k < tops.size(); ++k)
      worst = std::max(worst, std::abs(edge_length2(tops[k], edge[0], edge[1]) - ref));
  }
  return worst;
}

bool PiecewiseMetric::is_continuous(const SimplicialComplex& complex, double tol) const {
  return face_mismatch(complex) <= tol;
}

double simplex_volume(const SimplicialComplex& complex, const PiecewiseMetric& metric,
                      std::size_t simplex, int quadrature_order) {
  const int n = complex.dimension();
  require_simplex(metric, simplex);
  const double reference = 1.0 / factorial(n);
  if (metric.mode() == PiecewiseMetric::Mode::Constant) {
    const Matrix g = metric.at_barycenter(simplex);
    return std::sqrt(g.determinant()) * reference;
  }
  const int order = quadrature_order > 0 ? quadrature_order : 2;
  const QuadratureRule rule = simplex_quadrature(n, order);
  double mean = 0.0;
  for (std::size_t q = 0; q < rule.points.size(); ++q)
    mean += rule.weights[q] * std::sqrt(metric.at(simplex, rule.points[q]).determinant());
  return mean * reference;
}

double gradient_inner(const PiecewiseMetric& metric, std::size_t simplex, const Vector& du,
                      const Vector& dv) {
  const Matrix g = metric.at_barycenter(simplex);
  if (du.size() != g.rows() || dv.size() != g.rows())
    fail(ErrorCode::DimensionMismatch, "differential length must equal the simplex dimension");
  Eigen::LLT<Matrix> llt(g);
  if (llt.info() != Eigen::Success) fail(ErrorCode::NotSPD, "metric factorization failed");
  return du.dot(llt.solve(dv));
}

DistanceEstimate intrinsic_distance(const SimplicialComplex& complex, const PiecewiseMetric& metric,
                                    const SimplexPoint& from, const SimplexPoint& to, int level) {
  validate_point(complex, from);
  validate_point(complex, to);
  if (level < 0) fail(ErrorCode::InvalidArgument, "refinement level must be nonnegative");
  if (level > 20) fail(ErrorCode::InvalidArgument, "refinement level too large");
  if (from.simplex == to.simplex && (from.barycentric - to.barycentric).cwiseAbs().maxCoeff() == 0.0)
    return {0.0, 2};

  const int n = complex.dimension();
  const int denom = 1 << level;

  // Lattice points are keyed by their support (vertex id, numerator) so that
  // points on shared faces are identified across simplices.
  using Key = std::vector<std::pair<VertexId, int>>;
  std::map<Key, std::size_t> index;
  struct Member {
    std::size_t node;
    Vector frame;
  };
  std::vector<std::vector<Member>> members(complex.top_count());
  std::vector<std::vector<std::size_t>> incident;

  std::vector<int> k(n + 1, 0);
  for (std::size_t s = 0; s < complex.top_count(); ++s) {
    const Simplex& simplex = complex.top(s);
    // Enumerate k_1..k_n with sum <= denom; k_0 takes the remainder.
    std::fill(k.begin(), k.end(), 0);
    while (true) {
      int rest = 0;
      for (int i = 1; i <= n; ++i) rest += k[i];
      if (rest <= denom) {
        k[0] = denom - rest;
        Key key;
        for (int i = 0; i <= n; ++i)
          if (k[i] > 0) key.emplace_back(simplex[i], k[i]);
        auto [it, inserted] = index.try_emplace(key, incident.size());
        if (inserted) incident.emplace_back();
        incident[it->second].push_back(s);
        Vector frame(n);
        for (int i = 1; i <= n; ++i) frame[i - 1] = static_cast<double>(k[i]) / denom;
        members[s].push_back({it->second, std::move(frame)});
      }
      int i = 1;
      while (i <= n && ++k[i] > denom) k[i++] = 0;
      if (i > n) break;
    }
  }

  const std::size_t source = incident.size();
  const std::size_t target = source + 1;
  incident.push_back({from.simplex});
  incident.push_back({to.simplex});
  members[from.simplex].push_back({source, frame_coordinates(from.barycentric)});
  members[to.simplex].push_back({target, frame_coordinates(to.barycentric)});

  std::vector<Matrix> metrics;
  if (metric.mode() == PiecewiseMetric::Mode::Constant)
    for (std::size_t s = 0; s < complex.top_count(); ++s) metrics.push_back(metric.at_barycenter(s));

  auto segment_length = [&](std::size_t s, const Vector& a, const Vector& b) {
    const Vector d = b - a;
    if (metric.mode() == PiecewiseMetric::Mode::Constant) return std::sqrt(d.dot(metrics[s] * d));
    Vector mid(n + 1);
    const Vector t = 0.5 * (a + b);
    mid[0] = 1.0 - t.sum();
    mid.tail(n) = t;
    return std::sqrt(d.dot(metric.at(s, mid) * d));
  };

  // Frame coordinates of each node inside each of its simplices.
  std::vector<std::map<std::size_t, const Vector*>> where(incident.size());
  for (std::size_t s = 0; s < members.size(); ++s)
    for (const auto& m : members[s]) where[m.node][s] = &m.frame;

  const double inf = std::numeric_limits<double>::infinity();
  std::vector<double> dist(incident.size(), inf);
  using Entry = std::pair<double, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> queue;
  dist[source] = 0.0;
  queue.push({0.0, source});
  while (!queue.empty()) {
    const auto [d, u] = queue.top();
    queue.pop();
    if (d > dist[u]) continue;
    if (u == target) break;
    for (const auto& [s, frame_u] : where[u]) {
      for (const auto& m : members[s]) {
        if (m.node == u) continue;
        const double nd = d + segment_length(s, *frame_u, m.frame);
        if (nd < dist[m.node]) {
          dist[m.node] = nd;
          queue.push({nd, m.node});
        }
      }
    }
  }
  return {dist[target], incident.size()};
}

}  // namespace polyharm
