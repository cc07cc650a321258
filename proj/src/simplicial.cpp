#include "polyharm/simplicial.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

#include "polyharm/error.hpp"

namespace polyharm {

namespace {

// Union-find over small index ranges.
class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t i) {
    while (parent_[i] != i) {
      parent_[i] = parent_[parent_[i]];
      i = parent_[i];
    }
    return i;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a != b) parent_[std::max(a, b)] = std::min(a, b);
  }

  std::size_t count() {
    std::size_t c = 0;
    for (std::size_t i = 0; i < parent_.size(); ++i) c += find(i) == i ? 1 : 0;
    return c;
  }

 private:
  std::vector<std::size_t> parent_;
};

void for_each_subset(const Simplex& s, const auto& fn) {
  const std::size_t k = s.size();
  for (unsigned mask = 1; mask < (1u << k); ++mask) {
    Simplex face;
    for (std::size_t i = 0; i < k; ++i)
      if (mask & (1u << i)) face.push_back(s[i]);
    fn(face);
  }
}

bool is_subset(const Simplex& small, const Simplex& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

}  // namespace

Simplex canonical(Simplex s) {
  std::sort(s.begin(), s.end());
  return s;
}

std::string to_string(const Simplex& s) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < s.size(); ++i) os << (i ? "," : "") << s[i];
  os << '}';
  return os.str();
}

SimplicialComplex SimplicialComplex::build(std::vector<std::vector<double>> vertices,
                                           std::vector<Simplex> top_simplices) {
  return assemble(std::move(vertices), std::move(top_simplices), true, 1);
}

SimplicialComplex SimplicialComplex::assemble(std::vector<std::vector<double>> vertices,
                                              std::vector<Simplex> top_simplices,
                                              bool require_connected, int min_dimension) {
  if (vertices.empty() || top_simplices.empty())
    fail(ErrorCode::InvalidArgument, "complex needs at least one vertex and one simplex");

  const std::size_t size = top_simplices.front().size();
  for (const auto& s : top_simplices)
    if (s.size() != size)
      fail(ErrorCode::MixedDimension, "top simplices " + to_string(top_simplices.front()) +
                                          " and " + to_string(s) + " differ in size");
  if (static_cast<int>(size) - 1 < min_dimension)
    fail(ErrorCode::InvalidArgument, "complex dimension must be at least " +
                                         std::to_string(min_dimension));
  if (size > 16) fail(ErrorCode::InvalidArgument, "dimension above 15 is not supported");

  const auto nv = static_cast<VertexId>(vertices.size());
  std::set<Simplex> seen;
  for (auto& s : top_simplices) {
    s = canonical(s);
    for (VertexId v : s)
      if (v < 0 || v >= nv)
        fail(ErrorCode::DanglingVertexRef, "simplex " + to_string(s) + " references vertex " +
                                               std::to_string(v));
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
      fail(ErrorCode::MixedDimension, "simplex " + to_string(s) + " repeats a vertex");
    if (!seen.insert(s).second) fail(ErrorCode::DuplicateSimplex, to_string(s));
  }
  std::sort(top_simplices.begin(), top_simplices.end());

  SimplicialComplex c;
  c.dim_ = static_cast<int>(size) - 1;
  c.coords_ = std::move(vertices);
  c.tops_ = std::move(top_simplices);

  std::vector<char> used(c.coords_.size(), 0);
  for (const auto& s : c.tops_)
    for (VertexId v : s) used[v] = 1;
  for (std::size_t v = 0; v < used.size(); ++v)
    if (!used[v] && require_connected)
      fail(ErrorCode::Disconnected, "vertex " + std::to_string(v) + " belongs to no top simplex");

  std::vector<std::set<Simplex>> by_dim(size);
  for (std::size_t t = 0; t < c.tops_.size(); ++t) {
    for_each_subset(c.tops_[t], [&](const Simplex& face) {
      by_dim[face.size() - 1].insert(face);
      c.cofaces_[face].push_back(t);
    });
  }
  c.faces_.resize(size);
  for (std::size_t d = 0; d < size; ++d) c.faces_[d].assign(by_dim[d].begin(), by_dim[d].end());

  if (require_connected && c.component_count() != 1)
    fail(ErrorCode::Disconnected, "1-skeleton has " + std::to_string(c.component_count()) +
                                      " components");
  return c;
}

std::size_t SimplicialComplex::ambient_dimension() const {
  return coords_.empty() ? 0 : coords_.front().size();
}

const std::vector<double>& SimplicialComplex::coordinates(VertexId v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= coords_.size())
    fail(ErrorCode::UnknownVertex, std::to_string(v));
  return coords_[v];
}

const std::vector<Simplex>& SimplicialComplex::faces(int d) const {
  if (d < 0 || d > dim_) fail(ErrorCode::InvalidArgument, "face dimension " + std::to_string(d));
  return faces_[d];
}

std::size_t SimplicialComplex::face_count() const {
  std::size_t total = 0;
  for (const auto& f : faces_) total += f.size();
  return total;
}

bool SimplicialComplex::contains(const Simplex& s) const {
  return cofaces_.count(canonical(s)) > 0;
}

const std::vector<std::size_t>& SimplicialComplex::top_cofaces(const Simplex& s) const {
  auto it = cofaces_.find(canonical(s));
  if (it == cofaces_.end()) fail(ErrorCode::UnknownSimplex, to_string(s));
  return it->second;
}

std::vector<std::size_t> SimplicialComplex::neighbours(std::size_t t) const {
  std::vector<std::size_t> out;
  const Simplex& s = tops_.at(t);
  for (std::size_t drop = 0; drop < s.size(); ++drop) {
    Simplex facet;
    for (std::size_t i = 0; i < s.size(); ++i)
      if (i != drop) facet.push_back(s[i]);
    if (facet.empty()) continue;
    for (std::size_t other : cofaces_.at(facet))
      if (other != t) out.push_back(other);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool SimplicialComplex::is_boundary_face(const Simplex& facet) const {
  const Simplex f = canonical(facet);
  if (static_cast<int>(f.size()) != dim_) return false;
  return top_cofaces(f).size() == 1;
}

std::vector<Simplex> SimplicialComplex::boundary_faces() const {
  std::vector<Simplex> out;
  if (dim_ == 0) return out;
  for (const auto& f : faces_[dim_ - 1])
    if (cofaces_.at(f).size() == 1) out.push_back(f);
  return out;
}

std::vector<VertexId> SimplicialComplex::boundary_vertices() const {
  std::set<VertexId> vs;
  for (const auto& f : boundary_faces()) vs.insert(f.begin(), f.end());
  return {vs.begin(), vs.end()};
}

std::vector<VertexId> SimplicialComplex::interior_vertices() const {
  const auto b = boundary_vertices();
  std::vector<VertexId> out;
  for (VertexId v = 0; v < static_cast<VertexId>(coords_.size()); ++v)
    if (!std::binary_search(b.begin(), b.end(), v)) out.push_back(v);
  return out;
}

std::vector<std::vector<VertexId>> SimplicialComplex::vertex_neighbours() const {
  std::vector<std::vector<VertexId>> adj(coords_.size());
  if (dim_ >= 1) {
    for (const auto& e : faces_[1]) {
      adj[e[0]].push_back(e[1]);
      adj[e[1]].push_back(e[0]);
    }
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());
  return adj;
}

std::vector<Simplex> SimplicialComplex::star(const Simplex& s) const {
  const Simplex key = canonical(s);
  const auto& tops = top_cofaces(key);
  std::set<std::pair<std::size_t, Simplex>> out;
  for (std::size_t t : tops)
    for_each_subset(tops_[t], [&](const Simplex& face) {
      if (is_subset(key, face)) out.insert({face.size(), face});
    });
  std::vector<Simplex> result;
  for (const auto& [size, face] : out) result.push_back(face);
  return result;
}

SimplicialComplex SimplicialComplex::link(VertexId v) const {
  if (v < 0 || static_cast<std::size_t>(v) >= coords_.size())
    fail(ErrorCode::UnknownVertex, std::to_string(v));
  std::set<VertexId> ids;
  std::vector<Simplex> opposite;
  for (std::size_t t : top_cofaces({v})) {
    Simplex f;
    for (VertexId w : tops_[t])
      if (w != v) f.push_back(w);
    ids.insert(f.begin(), f.end());
    opposite.push_back(f);
  }
  std::vector<VertexId> labels(ids.begin(), ids.end());
  std::vector<std::vector<double>> coords;
  for (VertexId w : labels) coords.push_back(coords_[w]);
  for (auto& f : opposite)
    for (auto& w : f)
      w = static_cast<VertexId>(std::lower_bound(labels.begin(), labels.end(), w) - labels.begin());
  SimplicialComplex link = assemble(std::move(coords), std::move(opposite), false, 0);
  link.labels_ = std::move(labels);
  return link;
}

std::size_t SimplicialComplex::component_count() const {
  DisjointSets sets(coords_.size());
  for (const auto& s : tops_)
    for (std::size_t i = 1; i < s.size(); ++i) sets.unite(s[0], s[i]);
  return sets.count();
}

AdmissibilityReport check_admissible(const SimplicialComplex& complex) {
  AdmissibilityReport report;
  const int n = complex.dimension();

  // Every face of the lattice came from a top simplex, so homogeneity reduces
  // to every vertex having a top coface.
  for (VertexId v = 0; v < static_cast<VertexId>(complex.vertex_count()); ++v)
    if (!complex.contains({v})) report.homogeneous = false;

  for (int d = 0; d <= n - 2; ++d) {
    for (const Simplex& sigma : complex.faces(d)) {
      const auto& tops = complex.top_cofaces(sigma);
      if (tops.size() <= 1) continue;
      DisjointSets sets(tops.size());
      // Two top simplices are chained inside the star when they share an
      // (n-1)-face that itself contains sigma.
      for (std::size_t i = 0; i < tops.size(); ++i) {
        for (std::size_t j = i + 1; j < tops.size(); ++j) {
          Simplex shared;
          const Simplex& a = complex.top(tops[i]);
          const Simplex& b = complex.top(tops[j]);
          std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(shared));
          if (static_cast<int>(shared.size()) == n && is_subset(sigma, shared)) sets.unite(i, j);
        }
      }
      if (sets.count() > 1) {
        report.chainable = false;
        report.witnesses.push_back(sigma);
      }
    }
  }
  return report;
}

}  // namespace polyharm
