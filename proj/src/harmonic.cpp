#include "polyharm/harmonic.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include <Eigen/Cholesky>

#include "polyharm/energy.hpp"
#include "polyharm/error.hpp"
#include "polyharm/parallel.hpp"
#include "polyharm/quadrature.hpp"

namespace polyharm {

namespace {

// Frame gradients of the hat functions of an n-simplex: column 0 is
// (-1, ..., -1), column i is e_i.
Matrix hat_gradients(int n) {
  Matrix g = Matrix::Zero(n, n + 1);
  g.col(0).setConstant(-1.0);
  g.rightCols(n).setIdentity();
  return g;
}

struct DirichletSplit {
  std::vector<int> index;  // vertex -> unknown index, or -1 when prescribed
  std::vector<VertexId> free;
};

DirichletSplit split(std::size_t vertex_count, const std::vector<char>& prescribed) {
  DirichletSplit d;
  d.index.assign(vertex_count, -1);
  for (std::size_t v = 0; v < vertex_count; ++v)
    if (!prescribed[v]) {
      d.index[v] = static_cast<int>(d.free.size());
      d.free.push_back(static_cast<VertexId>(v));
    }
  return d;
}

SparseMatrix interior_block(const SparseMatrix& s, const DirichletSplit& d) {
  std::vector<Eigen::Triplet<double>> triplets;
  for (int k = 0; k < s.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(s, k); it; ++it) {
      const int r = d.index[it.row()], c = d.index[it.col()];
      if (r >= 0 && c >= 0) triplets.emplace_back(r, c, it.value());
    }
  SparseMatrix block(static_cast<Eigen::Index>(d.free.size()),
                     static_cast<Eigen::Index>(d.free.size()));
  block.setFromTriplets(triplets.begin(), triplets.end());
  return block;
}

double interior_inf_norm(const Matrix& r, const StiffnessSystem& system) {
  double worst = 0.0;
  for (VertexId v : system.interior()) worst = std::max(worst, r.row(v).cwiseAbs().maxCoeff());
  return worst;
}

}  // namespace

StiffnessSystem StiffnessSystem::assemble(const SimplicialComplex& complex,
                                          const PiecewiseMetric& metric, int quadrature_order) {
  const AdmissibilityReport adm = check_admissible(complex);
  if (!adm.admissible())
    fail(ErrorCode::NotAdmissible, "star of " + to_string(adm.witnesses.front()) +
                                       " is not (n-1)-chainable");
  const int n = complex.dimension();
  const std::size_t count = complex.top_count();
  const Matrix grads = hat_gradients(n);
  const int order = quadrature_order > 0
                        ? quadrature_order
                        : (metric.mode() == PiecewiseMetric::Mode::Constant ? 1 : 2);
  const QuadratureRule rule = simplex_quadrature(n, order);
  double reference = 1.0;
  for (int i = 2; i <= n; ++i) reference /= i;

  StiffnessSystem sys;
  sys.complex_ = &complex;
  sys.volume_.resize(count);
  sys.inverse_metric_.resize(count);
  std::vector<Matrix> local(count);
  parallel_for(count, [&](std::size_t s) {
    Matrix k = Matrix::Zero(n + 1, n + 1);
    double vol = 0.0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const Matrix g = metric.at(s, rule.points[q]);
      const Eigen::LLT<Matrix> llt(g);
      if (llt.info() != Eigen::Success) fail(ErrorCode::NotSPD, "metric of simplex " + std::to_string(s));
      const double dv = rule.weights[q] * std::sqrt(g.determinant()) * reference;
      k += dv * grads.transpose() * llt.solve(grads);
      vol += dv;
    }
    local[s] = std::move(k);
    sys.volume_[s] = vol;
    sys.inverse_metric_[s] = metric.at_barycenter(s).inverse();
  });

  const auto nv = static_cast<Eigen::Index>(complex.vertex_count());
  std::vector<Eigen::Triplet<double>> triplets;
  triplets.reserve(count * (n + 1) * (n + 1));
  sys.mass_ = Vector::Zero(nv);
  for (std::size_t s = 0; s < count; ++s) {
    const Simplex& simplex = complex.top(s);
    for (int i = 0; i <= n; ++i) {
      sys.mass_[simplex[i]] += sys.volume_[s] / (n + 1);
      for (int j = 0; j <= n; ++j) triplets.emplace_back(simplex[i], simplex[j], local[s](i, j));
    }
  }
  sys.stiffness_.resize(nv, nv);
  sys.stiffness_.setFromTriplets(triplets.begin(), triplets.end());

  sys.boundary_ = complex.boundary_vertices();
  sys.interior_ = complex.interior_vertices();
  sys.is_boundary_.assign(complex.vertex_count(), 0);
  for (VertexId v : sys.boundary_) sys.is_boundary_[v] = 1;

  if (!sys.boundary_.empty() && !sys.interior_.empty()) {
    const DirichletSplit d = split(complex.vertex_count(), sys.is_boundary_);
    sys.interior_index_ = d.index;
    sys.interior_factor_ = std::make_shared<Eigen::SimplicialLDLT<SparseMatrix>>();
    sys.interior_factor_->compute(interior_block(sys.stiffness_, d));
    if (sys.interior_factor_->info() != Eigen::Success) sys.interior_factor_.reset();
  }
  return sys;
}

Matrix StiffnessSystem::christoffel_load(const PLMap& map, const ChartedTarget& target) const {
  const int dim = target.real_dim();
  if (map.target_dim() != dim) fail(ErrorCode::DimensionMismatch, "map does not match the target");
  const int n = complex_->dimension();
  Matrix load = Matrix::Zero(static_cast<Eigen::Index>(complex_->vertex_count()), dim);
  if (target.is_flat()) return load;
  std::vector<Vector> per_simplex(complex_->top_count());
  parallel_for(complex_->top_count(), [&](std::size_t s) {
    const Vector image = map.value_at(barycenter(*complex_, s));
    target.require_in_chart(image);
    const Christoffel gamma = target.christoffel(image);
    const Matrix d = map.frame_differential(s);
    const Matrix gram = d * inverse_metric_[s] * d.transpose();
    Vector contribution(dim);
    for (int k = 0; k < dim; ++k) {
      double sum = 0.0;
      for (int a = 0; a < dim; ++a)
        for (int b = 0; b < dim; ++b) sum += gamma(k, a, b) * gram(a, b);
      contribution[k] = sum * volume_[s] / (n + 1);
    }
    per_simplex[s] = std::move(contribution);
  });
  for (std::size_t s = 0; s < complex_->top_count(); ++s)
    for (VertexId v : complex_->top(s)) load.row(v) += per_simplex[s].transpose();
  return load;
}

bool StiffnessSystem::has_nonpositive_off_diagonal() const {
  for (int k = 0; k < stiffness_.outerSize(); ++k)
    for (SparseMatrix::InnerIterator it(stiffness_, k); it; ++it)
      if (it.row() != it.col() && it.value() > 1e-14) return false;
  return true;
}

double StiffnessSystem::dual_norm(const Matrix& residual) const {
  if (!interior_factor_) fail(ErrorCode::SingularSystem, "no interior system to invert");
  const auto ni = static_cast<Eigen::Index>(interior_.size());
  double total = 0.0;
  for (Eigen::Index k = 0; k < residual.cols(); ++k) {
    Vector r(ni);
    for (VertexId v : interior_) r[interior_index_[v]] = residual(v, k);
    total += r.dot(interior_factor_->solve(r));
  }
  return std::sqrt(std::max(0.0, total));
}

PLMap solve_harmonic_function(const StiffnessSystem& system, const BoundaryValues& boundary_values,
                              bool mean_zero_gauge, int width) {
  const SimplicialComplex& complex = system.complex();
  const std::size_t nv = complex.vertex_count();
  if (boundary_values.empty()) {
    if (system.boundary().empty() && mean_zero_gauge)
      return PLMap(complex, Matrix::Zero(static_cast<Eigen::Index>(nv), width));
    fail(ErrorCode::MissingBoundaryValues, "no boundary data given");
  }
  const auto d = static_cast<Eigen::Index>(boundary_values.begin()->second.size());
  std::vector<char> prescribed(nv, 0);
  Matrix u = Matrix::Zero(static_cast<Eigen::Index>(nv), d);
  for (const auto& [v, value] : boundary_values) {
    if (v < 0 || static_cast<std::size_t>(v) >= nv) fail(ErrorCode::UnknownVertex, std::to_string(v));
    if (value.size() != d) fail(ErrorCode::DimensionMismatch, "boundary values differ in width");
    prescribed[v] = 1;
    u.row(v) = value.transpose();
  }
  for (VertexId v : system.boundary())
    if (!prescribed[v])
      fail(ErrorCode::MissingBoundaryValues, "boundary vertex " + std::to_string(v) + " has no value");

  const DirichletSplit sp = split(nv, prescribed);
  if (sp.free.empty()) return PLMap(complex, u);
  Eigen::SimplicialLDLT<SparseMatrix> solver(interior_block(system.matrix(), sp));
  if (solver.info() != Eigen::Success) fail(ErrorCode::SingularSystem, "interior stiffness block");

  const Matrix rhs_full = -(system.matrix() * u);
  Matrix rhs(static_cast<Eigen::Index>(sp.free.size()), d);
  for (std::size_t i = 0; i < sp.free.size(); ++i) rhs.row(i) = rhs_full.row(sp.free[i]);
  const Matrix x = solver.solve(rhs);
  if (solver.info() != Eigen::Success || !x.allFinite())
    fail(ErrorCode::SingularSystem, "interior solve failed");
  for (std::size_t i = 0; i < sp.free.size(); ++i) u.row(sp.free[i]) = x.row(i);
  return PLMap(complex, std::move(u));
}

HarmonicResidual weak_harmonic_residual(const StiffnessSystem& system, const ChartedTarget* target,
                                        const PLMap& map) {
  Matrix r = system.matrix() * map.values();
  if (target) {
    for (std::size_t v = 0; v < system.complex().vertex_count(); ++v)
      target->require_in_chart(map.value(static_cast<VertexId>(v)));
    r -= system.christoffel_load(map, *target);
  }
  for (VertexId v : system.boundary()) r.row(v).setZero();
  HarmonicResidual out;
  out.inf_norm = interior_inf_norm(r, system);
  for (VertexId v : system.interior())
    out.weighted_l1 += system.lumped_mass()[v] * r.row(v).cwiseAbs().sum();
  out.per_vertex = std::move(r);
  return out;
}

HarmonicMapResult solve_harmonic_map(const StiffnessSystem& system, const ChartedTarget& target,
                                     const BoundaryValues& boundary_values,
                                     const SolveOptions& options) {
  for (const auto& [v, value] : boundary_values) {
    if (value.size() != target.real_dim())
      fail(ErrorCode::DimensionMismatch, "boundary value width does not match the target");
    target.require_in_chart(value);
  }
  PLMap map = solve_harmonic_function(system, boundary_values);
  if (target.is_flat()) {
    const double r = weak_harmonic_residual(system, &target, map).inf_norm;
    return {std::move(map), 1, {r}};
  }

  const SimplicialComplex& complex = system.complex();
  const std::size_t nv = complex.vertex_count();
  std::vector<char> prescribed(nv, 0);
  for (const auto& [v, value] : boundary_values) prescribed[v] = 1;
  const DirichletSplit sp = split(nv, prescribed);
  Eigen::SimplicialLDLT<SparseMatrix> solver(interior_block(system.matrix(), sp));
  if (solver.info() != Eigen::Success) fail(ErrorCode::SingularSystem, "interior stiffness block");

  // u_I = S_II^-1 (load_I - S_IB u_B), written with the full matrix.
  auto fixed_point = [&](const Matrix& u) {
    Matrix boundary_only = u;
    for (VertexId v : sp.free) boundary_only.row(v).setZero();
    const Matrix rhs_full = system.christoffel_load(PLMap(complex, u), target) -
                            system.matrix() * boundary_only;
    Matrix rhs(static_cast<Eigen::Index>(sp.free.size()), u.cols());
    for (std::size_t i = 0; i < sp.free.size(); ++i) rhs.row(i) = rhs_full.row(sp.free[i]);
    const Matrix x = solver.solve(rhs);
    Matrix next = u;
    for (std::size_t i = 0; i < sp.free.size(); ++i) next.row(sp.free[i]) = x.row(i);
    return next;
  };
  auto residual_of = [&](const Matrix& u) {
    for (std::size_t v = 0; v < nv; ++v)
      if (!target.contains(u.row(v).transpose())) return std::numeric_limits<double>::infinity();
    return weak_harmonic_residual(system, &target, PLMap(complex, u)).inf_norm;
  };
  auto energy_of = [&](const Matrix& u) {
    const PLMap m(complex, u);
    // Target energy with the assembled inverse metrics and volumes.
    double e = 0.0;
    for (std::size_t s = 0; s < complex.top_count(); ++s) {
      const Vector image = m.value_at(barycenter(complex, s));
      if (!target.contains(image)) return std::numeric_limits<double>::infinity();
      const Matrix d = m.frame_differential(s);
      e += system.volume(s) * target.metric(image).cwiseProduct(d * system.inverse_metric(s) * d.transpose()).sum();
    }
    return e;
  };

  Matrix u = map.values();
  std::vector<double> history;
  double r = residual_of(u);
  history.push_back(r);
  int it = 0;
  while (r > options.tol) {
    if (++it > options.max_iter)
      throw NonConvergenceError("harmonic map iteration did not reach tol", history);
    const Matrix target_step = fixed_point(u);
    Matrix next = u + options.damping * (target_step - u);
    double rn = residual_of(next);
    if (!(rn < r)) {
      // Backtrack along the fixed-point direction on the target energy.
      const double e0 = energy_of(u);
      double step = options.damping;
      bool improved = false;
      for (int k = 0; k < 12; ++k) {
        step *= 0.5;
        const Matrix trial = u + step * (target_step - u);
        if (energy_of(trial) < e0) {
          next = trial;
          rn = residual_of(trial);
          improved = true;
          break;
        }
      }
      if (!improved || !std::isfinite(rn)) {
        history.push_back(rn);
        if (!std::isfinite(rn)) fail(ErrorCode::ImageLeftChart, "iterate left the target chart");
        throw NonConvergenceError("harmonic map iteration stalled", history);
      }
    }
    u = std::move(next);
    r = rn;
    history.push_back(r);
  }
  return {PLMap(complex, std::move(u)), it, std::move(history)};
}

}  // namespace polyharm
