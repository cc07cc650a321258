#include "polyharm/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "polyharm/error.hpp"

namespace polyharm::io {

namespace {

[[noreturn]] void bad(const std::string& field, const std::string& what) {
  fail(ErrorCode::FileFormat, field + ": " + what);
}

const Json& member(const Json& j, const std::string& key, const std::string& where) {
  if (!j.is_object()) bad(where, "expected an object");
  const auto it = j.find(key);
  if (it == j.end()) bad(where, "missing field '" + key + "'");
  return *it;
}

double number(const Json& j, const std::string& field) {
  if (!j.is_number()) bad(field, "expected a number");
  return j.get<double>();
}

long long integer(const Json& j, const std::string& field) {
  if (!j.is_number_integer() && !j.is_number_unsigned()) bad(field, "expected an integer");
  return j.get<long long>();
}

std::vector<double> numbers(const Json& j, const std::string& field) {
  if (!j.is_array()) bad(field, "expected an array of numbers");
  std::vector<double> out;
  for (std::size_t i = 0; i < j.size(); ++i) out.push_back(number(j[i], field + "[" + std::to_string(i) + "]"));
  return out;
}

Matrix square(const std::vector<double>& entries, int n, const std::string& field) {
  if (entries.size() != static_cast<std::size_t>(n) * n)
    bad(field, "expected " + std::to_string(n * n) + " entries");
  Matrix m(n, n);
  for (int r = 0; r < n; ++r)
    for (int c = 0; c < n; ++c) m(r, c) = entries[static_cast<std::size_t>(r) * n + c];
  return m;
}

Json row_major(const Matrix& m) {
  Json a = Json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) a.push_back(m(r, c));
  return a;
}

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorCode::FileFormat, path + ": cannot open");
  std::stringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    const std::size_t upto = std::min<std::size_t>(e.byte, text.size());
    const auto line = 1 + std::count(text.begin(), text.begin() + static_cast<std::ptrdiff_t>(upto), '\n');
    fail(ErrorCode::FileFormat, path + ":" + std::to_string(line) + ": " + e.what());
  }
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::FileFormat, path + ": cannot write");
  out << text;
  if (!out) fail(ErrorCode::FileFormat, path + ": write failed");
}

SimplicialComplex mesh_from_json(const Json& j) {
  const long long dim = integer(member(j, "dimension", "mesh"), "dimension");
  const Json& vs = member(j, "vertices", "mesh");
  const Json& ss = member(j, "simplices", "mesh");
  if (!vs.is_array()) bad("vertices", "expected an array");
  if (!ss.is_array()) bad("simplices", "expected an array");
  std::vector<std::vector<double>> vertices;
  for (std::size_t i = 0; i < vs.size(); ++i) {
    const std::string field = "vertices[" + std::to_string(i) + "]";
    vertices.push_back(numbers(vs[i], field));
    if (vertices.back().size() != vertices.front().size())
      bad(field, "coordinate count differs from vertices[0]");
  }
  std::vector<Simplex> tops;
  for (std::size_t i = 0; i < ss.size(); ++i) {
    const std::string field = "simplices[" + std::to_string(i) + "]";
    if (!ss[i].is_array()) bad(field, "expected an array of vertex ids");
    Simplex s;
    for (std::size_t a = 0; a < ss[i].size(); ++a)
      s.push_back(static_cast<VertexId>(integer(ss[i][a], field + "[" + std::to_string(a) + "]")));
    tops.push_back(std::move(s));
  }
  SimplicialComplex complex = SimplicialComplex::build(std::move(vertices), std::move(tops));
  if (complex.dimension() != dim)
    bad("dimension", "simplices have dimension " + std::to_string(complex.dimension()));
  return complex;
}

Json mesh_to_json(const SimplicialComplex& complex) {
  Json j;
  j["dimension"] = complex.dimension();
  Json vs = Json::array();
  for (const auto& v : complex.all_coordinates()) vs.push_back(v);
  j["vertices"] = vs;
  Json ss = Json::array();
  for (const Simplex& s : complex.top_simplices()) ss.push_back(s);
  j["simplices"] = ss;
  return j;
}

PiecewiseMetric metric_from_json(const Json& j, const SimplicialComplex& complex) {
  const Json& mode = member(j, "mode", "metric");
  if (!mode.is_string()) bad("mode", "expected \"constant\" or \"smooth\"");
  const Json& per = member(j, "per_simplex", "metric");
  if (!per.is_array() || per.size() != complex.top_count())
    bad("per_simplex", "expected one entry per top simplex (" + std::to_string(complex.top_count()) + ")");
  const int n = complex.dimension();
  if (mode == "constant") {
    std::vector<Matrix> ms;
    for (std::size_t s = 0; s < per.size(); ++s) {
      const std::string field = "per_simplex[" + std::to_string(s) + "]";
      ms.push_back(square(numbers(per[s], field), n, field));
    }
    return PiecewiseMetric::constant(complex, std::move(ms));
  }
  if (mode == "smooth") {
    std::vector<std::vector<Matrix>> corners(per.size());
    for (std::size_t s = 0; s < per.size(); ++s) {
      const std::string field = "per_simplex[" + std::to_string(s) + "]";
      if (!per[s].is_array() || per[s].size() != static_cast<std::size_t>(n + 1))
        bad(field, "expected one array per vertex of the simplex");
      for (std::size_t v = 0; v <= static_cast<std::size_t>(n); ++v) {
        const std::string f = field + "[" + std::to_string(v) + "]";
        corners[s].push_back(square(numbers(per[s][v], f), n, f));
      }
    }
    return PiecewiseMetric::smooth(complex, [corners](std::size_t s, const Vector& b) {
      Matrix g = Matrix::Zero(corners[s][0].rows(), corners[s][0].cols());
      for (std::size_t v = 0; v < corners[s].size(); ++v) g += b[static_cast<Eigen::Index>(v)] * corners[s][v];
      return g;
    });
  }
  bad("mode", "expected \"constant\" or \"smooth\"");
}

Json metric_to_json(const PiecewiseMetric& metric) {
  Json j;
  j["mode"] = "constant";
  Json per = Json::array();
  for (std::size_t s = 0; s < metric.simplex_count(); ++s) per.push_back(row_major(metric.at_barycenter(s)));
  j["per_simplex"] = per;
  return j;
}

PLMap map_from_json(const Json& j, const SimplicialComplex& complex) {
  const long long n = integer(member(j, "target_complex_dim", "map"), "target_complex_dim");
  if (n < 1) bad("target_complex_dim", "must be positive");
  const Json& vs = member(j, "values", "map");
  if (!vs.is_array() || vs.size() != complex.vertex_count())
    bad("values", "expected one row per vertex (" + std::to_string(complex.vertex_count()) + ")");
  Matrix values(static_cast<Eigen::Index>(vs.size()), 2 * n);
  for (std::size_t v = 0; v < vs.size(); ++v) {
    const std::string field = "values[" + std::to_string(v) + "]";
    const std::vector<double> row = numbers(vs[v], field);
    if (row.size() != static_cast<std::size_t>(2 * n)) bad(field, "expected " + std::to_string(2 * n) + " reals");
    for (long long c = 0; c < 2 * n; ++c) values(static_cast<Eigen::Index>(v), c) = row[c];
  }
  return PLMap(complex, values);
}

Json map_to_json(const PLMap& map) {
  Json j;
  j["target_complex_dim"] = map.target_dim() / 2;
  Json vs = Json::array();
  for (Eigen::Index v = 0; v < map.values().rows(); ++v) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < map.values().cols(); ++c) row.push_back(map.values()(v, c));
    vs.push_back(row);
  }
  j["values"] = vs;
  return j;
}

BoundaryValues boundary_from_json(const Json& j) {
  if (!j.is_object()) bad("boundary", "expected an object keyed by vertex id");
  BoundaryValues out;
  std::size_t width = 0;
  for (const auto& [key, value] : j.items()) {
    const std::string field = "boundary[" + key + "]";
    std::size_t used = 0;
    long long id = -1;
    try {
      id = std::stoll(key, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != key.size() || id < 0) bad(field, "key is not a vertex id");
    const std::vector<double> row = numbers(value, field);
    if (width == 0) width = row.size();
    if (row.size() != width || width == 0) bad(field, "value length differs");
    out[static_cast<VertexId>(id)] = Eigen::Map<const Vector>(row.data(), static_cast<Eigen::Index>(row.size()));
  }
  return out;
}

ChartedTarget parse_target(const std::string& spec) {
  if (spec == "cp1") return ChartedTarget::fubini_study_cp1();
  if (spec.rfind("flat:", 0) == 0) {
    std::size_t used = 0;
    int n = 0;
    try {
      n = std::stoi(spec.substr(5), &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == spec.size() - 5 && n >= 1) return ChartedTarget::flat(n);
  }
  fail(ErrorCode::InvalidArgument, "unknown target '" + spec + "' (expected flat:n or cp1)");
}

RunConfig config_from_json(const Json& j, RunConfig c) {
  if (!j.is_object()) bad("config", "expected an object");
  auto positive = [](const Json& v, const std::string& field) {
    const double x = number(v, field);
    if (!(x > 0.0)) bad(field, "must be positive");
    return x;
  };
  for (const auto& [key, value] : j.items()) {
    if (key == "tolerances") {
      if (!value.is_object()) bad(key, "expected an object");
      for (const auto& [k, v] : value.items()) {
        const std::string field = "tolerances." + k;
        if (k == "conformal") c.tol_c = positive(v, field);
        else if (k == "harmonic") c.tol_h = positive(v, field);
        else if (k == "geometry") c.tol_geom = positive(v, field);
        else bad(field, "unknown key");
      }
    } else if (key == "solver") {
      if (!value.is_object()) bad(key, "expected an object");
      for (const auto& [k, v] : value.items()) {
        const std::string field = "solver." + k;
        if (k == "max_iter") {
          const long long m = integer(v, field);
          if (m < 1) bad(field, "must be at least 1");
          c.solver.max_iter = static_cast<int>(m);
        } else if (k == "tol") {
          c.solver.tol = positive(v, field);
        } else if (k == "damping") {
          c.solver.damping = positive(v, field);
          if (c.solver.damping > 1.0) bad(field, "must lie in (0, 1]");
        } else {
          bad(field, "unknown key");
        }
      }
    } else if (key == "quadrature_order") {
      const long long q = integer(value, key);
      if (q < 0) bad(key, "must be nonnegative");
      c.quadrature_order = static_cast<int>(q);
    } else if (key == "seed") {
      const long long s = integer(value, key);
      if (s < 0) bad(key, "must be nonnegative");
      c.seed = static_cast<std::uint64_t>(s);
    } else if (key == "format") {
      if (!value.is_string() || (value != "json" && value != "csv")) bad(key, "expected \"json\" or \"csv\"");
      c.format = value.get<std::string>();
    } else if (key == "samples") {
      const long long s = integer(value, key);
      if (s < 2) bad(key, "must be at least 2");
      c.samples = static_cast<std::size_t>(s);
    } else if (key == "distance_level") {
      const long long l = integer(value, key);
      if (l < 0 || l > 10) bad(key, "must lie in [0, 10]");
      c.distance_level = static_cast<int>(l);
    } else {
      bad(key, "unknown key");
    }
  }
  return c;
}

Json config_to_json(const RunConfig& c) {
  Json j;
  j["tolerances"] = {{"conformal", c.tol_c}, {"harmonic", c.tol_h}, {"geometry", c.tol_geom}};
  j["quadrature_order"] = c.quadrature_order;
  j["solver"] = {{"max_iter", c.solver.max_iter}, {"tol", c.solver.tol}, {"damping", c.solver.damping}};
  j["seed"] = c.seed;
  j["format"] = c.format;
  j["samples"] = c.samples;
  j["distance_level"] = c.distance_level;
  return j;
}

}  // namespace polyharm::io
