#pragma once

#include <array>
#include <vector>

#include "polyharm/simplicial.hpp"
#include "polyharm/types.hpp"

namespace polyharm::meshes {

/// (0,0), (1,0), (0,1).
SimplicialComplex unit_right_triangle();

/// Two triangles glued at a single vertex (not admissible).
SimplicialComplex two_triangles_sharing_vertex();

/// `pages` triangles sharing one edge, embedded in R^3.
SimplicialComplex book(int pages);

/// nx x ny grid on [x0,x1] x [y0,y1], each cell cut along its rising
/// diagonal. `grading` in [0,1) moves the grid lines to
/// (1-g) t + g t^2 along both axes.
SimplicialComplex rectangle(int nx, int ny, double x0, double x1, double y0, double y1,
                            double grading = 0.0);

/// rectangle(k, k, 0, 1, 0, 1, grading). Vertex (i, j) has id i + (k+1) j.
SimplicialComplex unit_square(int k, double grading = 0.0);

/// unit_square(k) pushed through the smooth map
///   (x, y) -> (x + a sin(pi x) sin(pi y), y + a sin(2 pi x) sin(pi y) / 2)
/// which fixes the boundary and is not a tensor product, so quadratic data
/// is no longer reproduced at the vertices. Needs |a| < 0.2.
SimplicialComplex warped_square(int k, double amplitude);

/// Kuhn triangulation of [0,1]^3 with k^3 cubes of six tetrahedra each.
SimplicialComplex unit_cube(int k);

/// Periodic nx x ny grid (nx, ny >= 3) of the flat torus R^2 / (lx Z x ly Z).
/// The embedding is the usual torus of revolution in R^3; the flat geometry is
/// carried by `metrics` (one per top simplex, in the complex's order).
struct FlatTorus {
  SimplicialComplex complex;
  std::vector<Matrix> metrics;
  int nx = 0, ny = 0;
  double lx = 1.0, ly = 1.0;

  /// Grid position (i, j) of a vertex: id = i + nx j.
  std::array<int, 2> grid(VertexId v) const { return {v % nx, v / nx}; }
};

FlatTorus flat_torus(int nx, int ny, double lx = 1.0, double ly = 1.0);

}  // namespace polyharm::meshes
