#pragma once

#include <cstdint>
#include <string>

#include "polyharm/harmonic.hpp"
#include "polyharm/maps.hpp"
#include "polyharm/report.hpp"
#include "polyharm/riemannian.hpp"
#include "polyharm/simplicial.hpp"
#include "polyharm/target.hpp"

namespace polyharm::io {

/// Parses a JSON file; FileFormat errors carry the path and line.
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

/// {"dimension": n, "vertices": [[x..]..], "simplices": [[v0..vn]..]}.
SimplicialComplex mesh_from_json(const Json& j);
/// Simplices written as sorted tuples in lexicographic order.
Json mesh_to_json(const SimplicialComplex& complex);

/// {"mode": "constant", "per_simplex": [[n*n row-major]..]} or
/// {"mode": "smooth", "per_simplex": [[[n*n] per vertex]..]} where the smooth
/// metric interpolates the vertex arrays linearly in barycentric coordinates.
/// Entries follow the complex's simplex order.
PiecewiseMetric metric_from_json(const Json& j, const SimplicialComplex& complex);
/// Constant mode only; smooth metrics are written at their barycenters.
Json metric_to_json(const PiecewiseMetric& metric);

/// {"target_complex_dim": n, "values": [[2n reals]..]} indexed by vertex id.
PLMap map_from_json(const Json& j, const SimplicialComplex& complex);
Json map_to_json(const PLMap& map);

/// {"<vertex id>": [2n reals], ...}.
BoundaryValues boundary_from_json(const Json& j);

/// "flat:n" or "cp1". Throws InvalidArgument.
ChartedTarget parse_target(const std::string& spec);

struct RunConfig {
  double tol_c = 1e-8;
  double tol_h = 1e-8;
  double tol_geom = 1e-12;
  int quadrature_order = 0;
  SolveOptions solver;
  std::uint64_t seed = 42;
  std::string format = "json";
  std::size_t samples = 20000;
  int distance_level = 4;
};

/// Overrides the defaults with the keys present in `j`:
///   {"tolerances": {"conformal", "harmonic", "geometry"}, "quadrature_order",
///    "solver": {"max_iter", "tol", "damping"}, "seed", "format", "samples",
///    "distance_level"}.
/// Unknown keys and out-of-range values are FileFormat errors.
RunConfig config_from_json(const Json& j, RunConfig base = {});
Json config_to_json(const RunConfig& config);

}  // namespace polyharm::io
