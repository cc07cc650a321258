#include "polyharm/meshes.hpp"

#include <cmath>
#include <numbers>

#include "polyharm/error.hpp"

namespace polyharm::meshes {

SimplicialComplex unit_right_triangle() {
  return SimplicialComplex::build({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}}, {{0, 1, 2}});
}

SimplicialComplex two_triangles_sharing_vertex() {
  return SimplicialComplex::build({{0.0, 0.0}, {1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}},
                                  {{0, 1, 2}, {0, 3, 4}});
}

SimplicialComplex book(int pages) {
  if (pages < 1) fail(ErrorCode::InvalidArgument, "a book needs at least one page");
  std::vector<std::vector<double>> vertices = {{0.0, 0.0, 0.0}, {0.0, 0.0, 1.0}};
  std::vector<Simplex> tops;
  for (int p = 0; p < pages; ++p) {
    const double angle = 2.0 * std::numbers::pi * p / pages;
    vertices.push_back({std::cos(angle), std::sin(angle), 0.5});
    tops.push_back({0, 1, p + 2});
  }
  return SimplicialComplex::build(std::move(vertices), std::move(tops));
}

SimplicialComplex rectangle(int nx, int ny, double x0, double x1, double y0, double y1,
                            double grading) {
  if (nx < 1 || ny < 1) fail(ErrorCode::InvalidArgument, "grid needs at least one cell");
  if (grading < 0.0 || grading >= 1.0) fail(ErrorCode::InvalidArgument, "grading must lie in [0, 1)");
  auto warp = [grading](double t) { return (1.0 - grading) * t + grading * t * t; };
  std::vector<std::vector<double>> vertices;
  for (int j = 0; j <= ny; ++j)
    for (int i = 0; i <= nx; ++i)
      vertices.push_back({x0 + (x1 - x0) * warp(static_cast<double>(i) / nx),
                          y0 + (y1 - y0) * warp(static_cast<double>(j) / ny)});
  std::vector<Simplex> tops;
  auto id = [nx](int i, int j) { return i + (nx + 1) * j; };
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      tops.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      tops.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
    }
  return SimplicialComplex::build(std::move(vertices), std::move(tops));
}

SimplicialComplex unit_square(int k, double grading) {
  return rectangle(k, k, 0.0, 1.0, 0.0, 1.0, grading);
}

SimplicialComplex warped_square(int k, double amplitude) {
  if (!(std::abs(amplitude) < 0.2)) fail(ErrorCode::InvalidArgument, "warp amplitude must be below 0.2");
  const SimplicialComplex grid = unit_square(k);
  std::vector<std::vector<double>> vertices = grid.all_coordinates();
  const double pi = std::numbers::pi;
  for (auto& p : vertices) {
    const double x = p[0], y = p[1];
    p[0] = x + amplitude * std::sin(pi * x) * std::sin(pi * y);
    p[1] = y + 0.5 * amplitude * std::sin(2.0 * pi * x) * std::sin(pi * y);
  }
  return SimplicialComplex::build(std::move(vertices), grid.top_simplices());
}

SimplicialComplex unit_cube(int k) {
  if (k < 1) fail(ErrorCode::InvalidArgument, "grid needs at least one cell");
  std::vector<std::vector<double>> vertices;
  for (int z = 0; z <= k; ++z)
    for (int y = 0; y <= k; ++y)
      for (int x = 0; x <= k; ++x)
        vertices.push_back({static_cast<double>(x) / k, static_cast<double>(y) / k,
                            static_cast<double>(z) / k});
  auto id = [k](int x, int y, int z) { return x + (k + 1) * (y + (k + 1) * z); };
  // One tetrahedron per permutation: walk from the low corner to the high
  // corner one axis at a time.
  const int perms[6][3] = {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}};
  std::vector<Simplex> tops;
  for (int z = 0; z < k; ++z)
    for (int y = 0; y < k; ++y)
      for (int x = 0; x < k; ++x)
        for (const auto& perm : perms) {
          int p[3] = {x, y, z};
          Simplex s = {id(p[0], p[1], p[2])};
          for (int axis : perm) {
            ++p[axis];
            s.push_back(id(p[0], p[1], p[2]));
          }
          tops.push_back(s);
        }
  return SimplicialComplex::build(std::move(vertices), std::move(tops));
}

FlatTorus flat_torus(int nx, int ny, double lx, double ly) {
  if (nx < 3 || ny < 3) fail(ErrorCode::InvalidArgument, "a simplicial torus needs at least 3x3 cells");
  std::vector<std::vector<double>> vertices;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      const double u = 2.0 * std::numbers::pi * i / nx, v = 2.0 * std::numbers::pi * j / ny;
      vertices.push_back({(2.0 + std::cos(v)) * std::cos(u), (2.0 + std::cos(v)) * std::sin(u), std::sin(v)});
    }
  auto id = [nx, ny](int i, int j) { return (i % nx) + nx * (j % ny); };
  std::vector<Simplex> tops;
  for (int j = 0; j < ny; ++j)
    for (int i = 0; i < nx; ++i) {
      tops.push_back({id(i, j), id(i + 1, j), id(i + 1, j + 1)});
      tops.push_back({id(i, j), id(i, j + 1), id(i + 1, j + 1)});
    }
  FlatTorus torus{SimplicialComplex::build(std::move(vertices), std::move(tops)), {}, nx, ny, lx, ly};

  // Edge vectors in the universal cover, unwrapped to the nearest image.
  auto unwrap = [](int d, int n) {
    if (2 * d > n) return d - n;
    if (2 * d < -n) return d + n;
    return d;
  };
  for (std::size_t t = 0; t < torus.complex.top_count(); ++t) {
    const Simplex& s = torus.complex.top(t);
    const auto g0 = torus.grid(s[0]);
    Matrix e(2, 2);
    for (int c = 1; c <= 2; ++c) {
      const auto gc = torus.grid(s[c]);
      e(0, c - 1) = unwrap(gc[0] - g0[0], nx) * lx / nx;
      e(1, c - 1) = unwrap(gc[1] - g0[1], ny) * ly / ny;
    }
    torus.metrics.push_back(e.transpose() * e);
  }
  return torus;
}

}  // namespace polyharm::meshes
