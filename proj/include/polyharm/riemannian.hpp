#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "polyharm/simplicial.hpp"
#include "polyharm/types.hpp"

namespace polyharm {

/// A point of the complex addressed by a top simplex and barycentric weights
/// (n+1 entries, ordered like the sorted vertex ids of the simplex).
struct SimplexPoint {
  std::size_t simplex = 0;
  Vector barycentric;
};

SimplexPoint barycenter(const SimplicialComplex& complex, std::size_t simplex);

/// Affine-frame coordinates t (n entries) of a barycentric point: t_i = b_i.
Vector frame_coordinates(const Vector& barycentric);

/// Smallest Lambda with Lambda^-2 |v|^2 <= v^T g v <= Lambda^2 |v|^2.
/// Throws NotSPD.
double ellipticity_constant(const Matrix& g);

/// Symmetric and all eigenvalues strictly positive.
bool is_spd(const Matrix& g);

/// Piecewise Riemannian metric on the top simplices of a complex.
///
/// Each g_D is an n x n array in the simplex's affine frame: the frame vectors
/// are v_i - v_0 for the sorted vertices v_0 < ... < v_n, so the reference
/// simplex is the standard one and the identity array is the euclidean
/// reference metric g^e.
class PiecewiseMetric {
 public:
  enum class Mode { Constant, Smooth };
  using Evaluator = std::function<Matrix(std::size_t simplex, const Vector& barycentric)>;

  /// One constant SPD array per top simplex. Throws NotSPD.
  static PiecewiseMetric constant(const SimplicialComplex& complex, std::vector<Matrix> per_simplex);

  /// Gram matrices of the embedded edge vectors. Throws DegenerateSimplex.
  static PiecewiseMetric induced(const SimplicialComplex& complex);

  /// Identity array on every simplex.
  static PiecewiseMetric reference(const SimplicialComplex& complex);

  /// Simplexwise smooth metric; SPD-ness is checked at evaluation time.
  static PiecewiseMetric smooth(const SimplicialComplex& complex, Evaluator evaluator);

  Mode mode() const { return mode_; }
  int dimension() const { return dim_; }
  std::size_t simplex_count() const { return count_; }

  /// Metric array at a barycentric point of a simplex. Throws NotSPD.
  Matrix at(std::size_t simplex, const Vector& barycentric) const;
  Matrix at_barycenter(std::size_t simplex) const;

  /// Ellipticity constant of a simplex (barycenter value in smooth mode).
  double ellipticity(std::size_t simplex) const;
  /// Supremum over simplices.
  double global_ellipticity() const;

  /// Every metric multiplied by `factor` (use c^2 to scale lengths by c).
  PiecewiseMetric scaled(double factor) const;

  /// Largest disagreement of squared edge lengths between top simplices that
  /// share an edge; zero means the face restrictions agree.
  double face_mismatch(const SimplicialComplex& complex) const;
  bool is_continuous(const SimplicialComplex& complex, double tol = 1e-12) const;

 private:
  Mode mode_ = Mode::Constant;
  int dim_ = 0;
  std::size_t count_ = 0;
  std::vector<Matrix> constant_;
  Evaluator evaluator_;
  double scale_ = 1.0;
};

/// sqrt(det g) times the volume of the standard simplex, integrated with the
/// given quadrature order (order 0 picks the mode default).
double simplex_volume(const SimplicialComplex& complex, const PiecewiseMetric& metric,
                      std::size_t simplex, int quadrature_order = 0);

/// Inner product of the gradients of two frame differentials: du^T g^-1 dv.
double gradient_inner(const PiecewiseMetric& metric, std::size_t simplex, const Vector& du,
                      const Vector& dv);

struct DistanceEstimate {
  double upper_bound = 0.0;
  std::size_t graph_size = 0;
};

/// Shortest path through the lattice points of the 2^level-fold subdivision
/// of every top simplex; any two lattice points of one simplex are joined by
/// the straight segment measured with that simplex's metric. The estimate is
/// an upper bound for d_X and does not increase with the level.
/// Throws PointOffComplex.
DistanceEstimate intrinsic_distance(const SimplicialComplex& complex, const PiecewiseMetric& metric,
                                    const SimplexPoint& from, const SimplexPoint& to, int level);

}  // namespace polyharm
