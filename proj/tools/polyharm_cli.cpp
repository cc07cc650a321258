#include <algorithm>
#include <cmath>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "polyharm/energy.hpp"
#include "polyharm/error.hpp"
#include "polyharm/examples.hpp"
#include "polyharm/harmonic.hpp"
#include "polyharm/io.hpp"
#include "polyharm/morphism.hpp"
#include "polyharm/report.hpp"
#include "polyharm/riemannian.hpp"
#include "polyharm/simplicial.hpp"

using namespace polyharm;

namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_false = 2;
constexpr int exit_usage = 64;

struct Common {
  std::string config_path;
  std::string output_path;
  std::string format;
  io::RunConfig config;
};

struct Outcome {
  std::string text;
  bool verdict = true;
};

Outcome json_outcome(const Json& j, bool verdict) { return {dump_json(j), verdict}; }

PiecewiseMetric load_metric(const std::string& path, const SimplicialComplex& complex) {
  if (path.empty()) return PiecewiseMetric::induced(complex);
  return io::metric_from_json(io::read_json_file(path), complex);
}

// "S:b0,b1,..." -> simplex S at barycentric (b0, b1, ...).
SimplexPoint parse_point(const std::string& text, const SimplicialComplex& complex) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) fail(ErrorCode::InvalidArgument, "point '" + text + "' must be S:b0,b1,...");
  SimplexPoint p;
  try {
    p.simplex = static_cast<std::size_t>(std::stoul(text.substr(0, colon)));
    std::vector<double> b;
    std::size_t start = colon + 1;
    while (start <= text.size()) {
      const auto comma = text.find(',', start);
      b.push_back(std::stod(text.substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    p.barycentric = Eigen::Map<Vector>(b.data(), static_cast<Eigen::Index>(b.size()));
  } catch (const std::logic_error&) {
    fail(ErrorCode::InvalidArgument, "point '" + text + "' must be S:b0,b1,...");
  }
  if (p.barycentric.size() != complex.dimension() + 1)
    fail(ErrorCode::PointOffComplex, "point '" + text + "' needs " + std::to_string(complex.dimension() + 1) +
                                         " barycentric coordinates");
  return p;
}

ChartedTarget target_for(const std::string& spec, const PLMap& map) {
  if (spec.empty()) return ChartedTarget::flat(map.target_dim() / 2);
  ChartedTarget t = io::parse_target(spec);
  if (t.real_dim() != map.target_dim())
    fail(ErrorCode::DimensionMismatch, "map values do not match target " + spec);
  return t;
}

Json array_of(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(x);
  return a;
}

Outcome run_validate(const std::string& mesh_path) {
  const SimplicialComplex complex = io::mesh_from_json(io::read_json_file(mesh_path));
  const AdmissibilityReport r = check_admissible(complex);
  Json j;
  j["admissible"] = r.admissible();
  j["homogeneous"] = r.homogeneous;
  j["chainable"] = r.chainable;
  j["dimension"] = complex.dimension();
  j["vertices"] = complex.vertex_count();
  j["top_simplices"] = complex.top_count();
  Json w = Json::array();
  for (const Simplex& s : r.witnesses) w.push_back(s);
  j["witnesses"] = w;
  Json stars = Json::array();
  for (const Simplex& s : r.witnesses) stars.push_back("star of " + to_string(s) + " splits");
  j["messages"] = stars;
  return json_outcome(j, r.admissible());
}

Outcome run_distance(const std::string& mesh_path, const std::string& metric_path, const std::string& from,
                     const std::string& to, int level) {
  const SimplicialComplex complex = io::mesh_from_json(io::read_json_file(mesh_path));
  const PiecewiseMetric metric = load_metric(metric_path, complex);
  const SimplexPoint a = parse_point(from, complex), b = parse_point(to, complex);
  Json levels = Json::array();
  double last = 0.0;
  for (int l = 0; l <= level; ++l) {
    const DistanceEstimate d = intrinsic_distance(complex, metric, a, b, l);
    levels.push_back({{"level", l}, {"upper_bound", d.upper_bound}, {"graph_size", d.graph_size}});
    last = d.upper_bound;
  }
  Json j;
  j["distance"] = last;
  j["levels"] = levels;
  return json_outcome(j, true);
}

Outcome run_energy(const std::string& mesh_path, const std::string& map_path, const std::string& metric_path,
                   const std::string& target_spec, const std::string& normalization, const Common& c) {
  const SimplicialComplex complex = io::mesh_from_json(io::read_json_file(mesh_path));
  const PiecewiseMetric metric = load_metric(metric_path, complex);
  const PLMap map = io::map_from_json(io::read_json_file(map_path), complex);
  const ChartedTarget target = target_for(target_spec, map);
  const EnergyReport e = dirichlet_energy(complex, metric, map, &target, c.config.quadrature_order,
                                          parse_normalization(normalization));
  Json j;
  j["total"] = e.total;
  j["per_simplex"] = array_of(e.contribution);
  j["density"] = array_of(e.density);
  j["normalization"] = to_string(e.normalization);
  j["ks_constant"] = e.ks_constant;
  return json_outcome(j, true);
}

Outcome run_solve(const std::string& mesh_path, const std::string& boundary_path, const std::string& metric_path,
                  const std::string& target_spec, const std::string& map_out, const Common& c) {
  const SimplicialComplex complex = io::mesh_from_json(io::read_json_file(mesh_path));
  const PiecewiseMetric metric = load_metric(metric_path, complex);
  const BoundaryValues bv = io::boundary_from_json(io::read_json_file(boundary_path));
  const int width = bv.empty() ? 2 : static_cast<int>(bv.begin()->second.size());
  const ChartedTarget target = target_spec.empty() ? ChartedTarget::flat(std::max(1, width / 2))
                                                   : io::parse_target(target_spec);
  if (target.real_dim() != width) fail(ErrorCode::DimensionMismatch, "boundary values do not match the target");
  const StiffnessSystem system = StiffnessSystem::assemble(complex, metric, c.config.quadrature_order);
  const HarmonicMapResult result = solve_harmonic_map(system, target, bv, c.config.solver);
  const HarmonicResidual residual = weak_harmonic_residual(system, &target, result.map);
  Json j;
  j["target"] = target.name();
  j["iterations"] = result.iterations;
  j["history"] = array_of(result.history);
  j["residual_inf_norm"] = residual.inf_norm;
  j["residual_weighted_l1"] = residual.weighted_l1;
  if (map_out.empty()) {
    j["map"] = io::map_to_json(result.map);
  } else {
    io::write_text_file(map_out, dump_json(io::map_to_json(result.map)));
    j["map_file"] = map_out;
  }
  return json_outcome(j, true);
}

double max_edge_length(const SimplicialComplex& complex, const PiecewiseMetric& metric) {
  double h = 0.0;
  const int n = complex.dimension();
  for (std::size_t s = 0; s < complex.top_count(); ++s) {
    const Matrix g = metric.at_barycenter(s);
    for (int i = 0; i <= n; ++i)
      for (int k = i + 1; k <= n; ++k) {
        Vector e = Vector::Zero(n);
        if (i > 0) e[i - 1] -= 1.0;
        e[k - 1] += 1.0;
        h = std::max(h, std::sqrt(e.dot(g * e)));
      }
  }
  return h;
}

Outcome run_check(const std::string& mode, const std::vector<std::string>& files, const std::string& metric_path,
                  const std::string& target_spec, const std::string& covering, int covering_n,
                  const std::string& instance, const Common& c) {
  PhmTolerances tol{c.config.tol_c, c.config.tol_h};

  if (mode == "factor") {
    const CoveringExample cov = build_covering(covering, covering_n);
    if (!cov.is_covering) fail(ErrorCode::NotACovering, cov.warnings.empty() ? covering : cov.warnings.front());
    std::optional<PLMap> map;
    if (!files.empty()) {
      if (files.size() != 1) fail(ErrorCode::InvalidArgument, "factor mode takes one map file for the base");
      map.emplace(io::map_from_json(io::read_json_file(files[0]), cov.base));
    } else {
      if (instance != "phm" && instance != "non_phm")
        fail(ErrorCode::InvalidArgument, "instance must be phm or non_phm");
      map.emplace(torus_example_map(cov, instance == "phm"));
    }
    const ChartedTarget target = target_for(target_spec, *map);
    const FactorizationResult f =
        factorization_suite(cov.data(), *map, target, standard_family(target.complex_dim()), tol);
    Json j;
    j["covering"] = cov.name;
    j["suite"] = f.suite.to_json();
    j["base"] = f.base.to_json();
    j["total"] = f.total.to_json();
    return json_outcome(j, f.suite.passed() && f.base.verdict);
  }

  if (mode == "pullback") {
    if (files.size() < 4 || files.size() % 2 != 0)
      fail(ErrorCode::InvalidArgument, "pullback mode takes mesh/map pairs for at least two levels");
    std::vector<SimplicialComplex> complexes;
    complexes.reserve(files.size() / 2);
    std::vector<PiecewiseMetric> metrics;
    std::vector<PLMap> maps;
    std::vector<StiffnessSystem> systems;
    maps.reserve(files.size() / 2);
    systems.reserve(files.size() / 2);
    for (std::size_t i = 0; i < files.size(); i += 2) {
      complexes.push_back(io::mesh_from_json(io::read_json_file(files[i])));
      metrics.push_back(PiecewiseMetric::induced(complexes.back()));
      maps.push_back(io::map_from_json(io::read_json_file(files[i + 1]), complexes.back()));
      systems.push_back(StiffnessSystem::assemble(complexes.back(), metrics.back(), c.config.quadrature_order));
    }
    const ChartedTarget target = target_for(target_spec, maps.front());
    std::vector<PullbackLevel> levels;
    for (std::size_t i = 0; i < maps.size(); ++i)
      levels.push_back({max_edge_length(complexes[i], metrics[i]), &systems[i], &maps[i]});
    const auto table = pullback_harmonicity_table(levels, target, standard_family(target.complex_dim()));
    const SuiteReport suite = pullback_harmonicity_suite(table);
    if (c.format == "csv") return {pullback_table_csv(table), suite.passed()};
    Json rows = Json::array();
    for (const PullbackRow& r : table)
      rows.push_back({{"function", r.function},
                      {"h", array_of(r.h)},
                      {"residual", array_of(r.residual)},
                      {"inf_norm", array_of(r.inf_norm)},
                      {"order", array_of(r.order)}});
    Json j;
    j["table"] = rows;
    j["suite"] = suite.to_json();
    return json_outcome(j, suite.passed());
  }

  if (files.size() != 2) fail(ErrorCode::InvalidArgument, "check takes a mesh file and a map file");
  const SimplicialComplex complex = io::mesh_from_json(io::read_json_file(files[0]));
  const PiecewiseMetric metric = load_metric(metric_path, complex);
  const PLMap map = io::map_from_json(io::read_json_file(files[1]), complex);
  const ChartedTarget target = target_for(target_spec, map);
  const std::vector<GradientSample> samples = samples_from_plmap(complex, metric, map);

  if (mode == "phwc") {
    const ResidualReport r = phwc_residual(samples, tol.conformal);
    return json_outcome(r.to_json(), r.verdict);
  }
  if (mode == "hwc") {
    const ResidualReport r = hwc_residual(samples, target, tol.conformal);
    return json_outcome(r.to_json(), r.verdict);
  }
  if (mode == "phm") {
    const StiffnessSystem system = StiffnessSystem::assemble(complex, metric, c.config.quadrature_order);
    const PhmReport r = phm_check(system, metric, map, target, standard_family(target.complex_dim()), tol);
    return json_outcome(r.to_json(), r.verdict);
  }
  fail(ErrorCode::InvalidArgument, "unknown check mode '" + mode + "'");
}

Outcome run_eta(int k, int s, int r, std::size_t count, const Common& c) {
  const EtaMap eta = build_eta(eta_spec(k, s, r));
  const std::vector<Vector> points = eta_sample_points(eta, count, c.config.seed);
  const AnalyticMap map = eta.analytic();
  const Matrix domain_j = complex_structure(k + s);
  SuiteReport suite = eta_phwc_suite(map, points, {}, &domain_j);

  const CauchyRiemannSummary cr = eta_cauchy_riemann(eta, points);
  suite.less("cauchy-riemann residual in u", cr.u_variables, 1e-6);
  if (!eta.holomorphic_data() && k >= 2 && s >= 2) {
    suite.greater("cauchy-riemann residual", cr.full, 0.1);
    suite.greater("anti-cauchy-riemann residual", cr.anti, 0.1);
  }

  // Sum of two copies on paired points (the second list shifted by one).
  std::vector<Vector> paired(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) paired[i] = points[(i + 1) % points.size()];
  std::vector<Vector> joint(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) {
    joint[i].resize(points[i].size() + paired[i].size());
    joint[i] << points[i], paired[i];
  }
  const SuiteReport sum = eta_phwc_suite(sum_map(map, map), joint);
  const SuiteReport sum_bound = sum_map_suite(map, map, points, paired);

  Json j;
  j["k"] = k;
  j["s"] = s;
  j["r"] = r;
  j["seed"] = c.config.seed;
  j["eta"] = suite.to_json();
  j["cauchy_riemann"] = {{"u_variables", cr.u_variables}, {"full", cr.full}, {"anti", cr.anti}};
  j["sum"] = sum.to_json();
  j["sum_bound"] = sum_bound.to_json();
  return json_outcome(j, suite.passed() && sum.passed() && sum_bound.passed());
}

Outcome run_torus_factor(int n, const Common& c) {
  const CoveringExample cov = build_covering("torus_cover", n);
  const PhmTolerances tol{c.config.tol_c, c.config.tol_h};
  const ChartedTarget target = ChartedTarget::flat(1);
  Json j;
  j["covering"] = cov.name;
  j["base_top_simplices"] = cov.base.top_count();
  j["total_top_simplices"] = cov.total.top_count();
  bool ok = true;
  for (const bool phm : {true, false}) {
    const PLMap map = torus_example_map(cov, phm);
    const FactorizationResult f = factorization_suite(cov.data(), map, target, standard_family(1), tol);
    ok = ok && f.suite.passed() && f.base.verdict == phm;
    j[phm ? "phm" : "non_phm"] = {{"suite", f.suite.to_json()},
                                  {"base_verdict", f.base.verdict},
                                  {"total_verdict", f.total.verdict},
                                  {"phwc_inf_norm", f.base.phwc.inf_norm}};
  }
  return json_outcome(j, ok);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Harmonic maps and pseudo harmonic morphisms on Riemannian polyhedra"};
  app.require_subcommand(1);
  Common common;
  app.add_option("--config", common.config_path, "JSON file overriding tolerances, solver and seed");
  app.add_option("-o,--output", common.output_path, "Write the report here instead of standard output");
  app.add_option("--format", common.format, "json or csv (csv only for pullback tables)")
      ->check(CLI::IsMember({"json", "csv"}));

  std::string mesh, map, metric, target, boundary, map_out, from, to, normalization = "gradient_squared";
  std::string mode, covering = "torus_cover", instance = "phm";
  std::vector<std::string> files;
  int level = -1, covering_n = 4, k = 2, s = 2, r = 1, torus_n = 4;
  std::size_t points = 100;

  auto* validate = app.add_subcommand("validate", "Admissibility of a mesh");
  validate->add_option("mesh", mesh)->required();

  auto* distance = app.add_subcommand("distance", "Upper bounds for the intrinsic distance");
  distance->add_option("mesh", mesh)->required();
  distance->add_option("--metric", metric);
  distance->add_option("--from", from, "S:b0,b1,...")->required();
  distance->add_option("--to", to, "S:b0,b1,...")->required();
  distance->add_option("--level", level);

  auto* energy = app.add_subcommand("energy", "Dirichlet energy of a PL map");
  energy->add_option("mesh", mesh)->required();
  energy->add_option("map", map)->required();
  energy->add_option("--metric", metric);
  energy->add_option("--target", target, "flat:n or cp1");
  energy->add_option("--normalization", normalization)->check(CLI::IsMember({"gradient_squared", "ks_raw"}));

  auto* solve = app.add_subcommand("solve", "Harmonic map with prescribed boundary values");
  solve->add_option("mesh", mesh)->required();
  solve->add_option("boundary", boundary)->required();
  solve->add_option("--metric", metric);
  solve->add_option("--target", target, "flat:n or cp1");
  solve->add_option("--map-out", map_out, "Write the solution map file here");

  auto* check = app.add_subcommand("check", "Conformality and harmonicity checks");
  check->add_option("--mode", mode)->required()->check(CLI::IsMember({"hwc", "phwc", "phm", "pullback", "factor"}));
  check->add_option("files", files, "mesh map (or mesh/map pairs for pullback)");
  check->add_option("--metric", metric);
  check->add_option("--target", target, "flat:n or cp1");
  check->add_option("--covering", covering);
  check->add_option("--n", covering_n);
  check->add_option("--instance", instance, "phm or non_phm when no map file is given");

  auto* example = app.add_subcommand("example", "Built-in example suites");
  example->require_subcommand(1);
  auto* eta = example->add_subcommand("eta", "Polynomial quotient maps");
  eta->add_option("--k", k);
  eta->add_option("--s", s);
  eta->add_option("--r", r);
  eta->add_option("--points", points);
  auto* torus = example->add_subcommand("torus-factor", "Factorization through the 2:1 torus covering");
  torus->add_option("--n", torus_n);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_ok : exit_usage;
  }

  try {
    if (!common.config_path.empty())
      common.config = io::config_from_json(io::read_json_file(common.config_path));
    if (common.format.empty()) common.format = common.config.format;
    if (level < 0) level = common.config.distance_level;

    Outcome out;
    if (*validate) out = run_validate(mesh);
    else if (*distance) out = run_distance(mesh, metric, from, to, level);
    else if (*energy) out = run_energy(mesh, map, metric, target, normalization, common);
    else if (*solve) out = run_solve(mesh, boundary, metric, target, map_out, common);
    else if (*check) out = run_check(mode, files, metric, target, covering, covering_n, instance, common);
    else if (*eta) out = run_eta(k, s, r, points, common);
    else if (*torus) out = run_torus_factor(torus_n, common);

    if (common.output_path.empty()) std::cout << out.text;
    else io::write_text_file(common.output_path, out.text);
    return out.verdict ? exit_ok : exit_false;
  } catch (const NonConvergenceError& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << " (" << e.history().size()
              << " iterations)\n";
  } catch (const Error& e) {
    std::cerr << "error: " << to_string(e.code()) << ": " << e.what() << "\n";
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
  }
  return exit_error;
}
