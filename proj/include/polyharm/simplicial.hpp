#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace polyharm {

using VertexId = int;

/// A simplex as a sorted list of distinct vertex ids.
using Simplex = std::vector<VertexId>;

/// Sorts the ids of a simplex in place and returns it.
Simplex canonical(Simplex s);

std::string to_string(const Simplex& s);

struct AdmissibilityReport {
  bool homogeneous = true;
  bool chainable = true;
  /// Simplices whose star splits into more than one codim-1 chain.
  std::vector<Simplex> witnesses;

  bool admissible() const { return homogeneous && chainable; }
};

/// Finite, dimensionally homogeneous simplicial complex.
///
/// Vertices are numbered 0..V-1; the embedding coordinates are carried along
/// but all topology is combinatorial. The complex is immutable after build().
class SimplicialComplex {
 public:
  /// Validates and builds the face lattice. Throws MixedDimension,
  /// DuplicateSimplex, Disconnected or DanglingVertexRef.
  static SimplicialComplex build(std::vector<std::vector<double>> vertices,
                                 std::vector<Simplex> top_simplices);

  int dimension() const { return dim_; }
  std::size_t vertex_count() const { return coords_.size(); }
  std::size_t ambient_dimension() const;
  const std::vector<double>& coordinates(VertexId v) const;
  const std::vector<std::vector<double>>& all_coordinates() const { return coords_; }

  std::size_t top_count() const { return tops_.size(); }
  const Simplex& top(std::size_t i) const { return tops_[i]; }
  const std::vector<Simplex>& top_simplices() const { return tops_; }

  /// All faces of the given dimension, in lexicographic order.
  const std::vector<Simplex>& faces(int d) const;
  std::size_t face_count() const;
  bool contains(const Simplex& s) const;

  /// Indices of top simplices whose closure contains `s`.
  const std::vector<std::size_t>& top_cofaces(const Simplex& s) const;

  /// Top simplices adjacent to top simplex `t` across an (n-1)-face.
  std::vector<std::size_t> neighbours(std::size_t t) const;

  /// An (n-1)-face is a boundary face when exactly one top simplex contains it.
  bool is_boundary_face(const Simplex& facet) const;
  std::vector<Simplex> boundary_faces() const;
  std::vector<VertexId> boundary_vertices() const;
  std::vector<VertexId> interior_vertices() const;
  std::vector<std::vector<VertexId>> vertex_neighbours() const;

  /// Open star: every face whose closure contains `s`. Throws UnknownSimplex.
  std::vector<Simplex> star(const Simplex& s) const;

  /// Combinatorial link of a vertex as a complex of dimension n-1 whose
  /// vertices are relabelled 0..k-1; labels() maps back to the original ids.
  /// May be disconnected. Throws UnknownVertex.
  SimplicialComplex link(VertexId v) const;

  /// Original vertex ids when this complex was produced by link().
  const std::vector<VertexId>& labels() const { return labels_; }

  /// Connected components of the 1-skeleton.
  std::size_t component_count() const;

 private:
  static SimplicialComplex assemble(std::vector<std::vector<double>> vertices,
                                    std::vector<Simplex> top_simplices, bool require_connected,
                                    int min_dimension);

  int dim_ = 0;
  std::vector<std::vector<double>> coords_;
  std::vector<Simplex> tops_;
  std::vector<std::vector<Simplex>> faces_;             // by dimension
  std::map<Simplex, std::vector<std::size_t>> cofaces_;  // face -> top simplices
  std::vector<VertexId> labels_;
};

/// Local (n-1)-chainability test on every star; the admissibility surrogate.
AdmissibilityReport check_admissible(const SimplicialComplex& complex);

}  // namespace polyharm
