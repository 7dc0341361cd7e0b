#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace hypertest {

using Vertex = std::uint32_t;
using EdgeId = std::uint32_t;
using Hyperedge = std::vector<Vertex>;

/// Sorts `vertices` and validates them as a hyperedge over 0..n-1.
/// Throws EdgeTooSmall (fewer than two vertices), RepeatedVertex or
/// VertexOutOfRange.
Hyperedge canonicalize_hyperedge(std::span<const Vertex> vertices, std::size_t n);

/// |e1 ∩ e2| for two strictly increasing vertex lists.
std::size_t intersection_size(std::span<const Vertex> e1, std::span<const Vertex> e2) noexcept;

/// Compressed vertex -> incident edge ids table. Edge ids are ascending
/// within each vertex row.
struct IncidenceIndex {
  std::vector<std::size_t> offsets;
  std::vector<EdgeId> edges;

  friend bool operator==(const IncidenceIndex&, const IncidenceIndex&) = default;
};

/// Immutable simple hypergraph on vertices 0..n-1.
///
/// Hyperedges are stored canonically (sorted vertex lists) and the edge list
/// is ordered lexicographically, so iteration order and edge ids do not
/// depend on how the hypergraph was built.
class Hypergraph {
 public:
  Hypergraph() = default;

  /// Canonicalizes each hyperedge and sorts the edge list. Duplicate
  /// hyperedges are rejected with DuplicateEdge.
  Hypergraph(std::size_t n, std::vector<Hyperedge> edges);

  /// Same as the constructor but collapses duplicates instead of throwing.
  static Hypergraph from_edges_dedup(std::size_t n, std::vector<Hyperedge> edges);

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t num_edges() const noexcept { return edge_offsets_.size() - 1; }
  bool empty() const noexcept { return num_edges() == 0; }

  std::span<const Vertex> edge(EdgeId e) const noexcept {
    return {edge_vertices_.data() + edge_offsets_[e], edge_offsets_[e + 1] - edge_offsets_[e]};
  }

  /// m when every hyperedge has exactly m vertices. An edgeless hypergraph
  /// has no uniform size unless one was declared with `with_uniform_size`.
  std::optional<std::size_t> uniform_size() const noexcept { return uniform_; }

  /// Returns a copy tagged as m-uniform; throws NotUniform if some edge has a
  /// different size. Used for edgeless layers of a known size.
  Hypergraph with_uniform_size(std::size_t m) const;

  std::span<const EdgeId> incident_edges(Vertex v) const noexcept {
    return {incidence_.edges.data() + incidence_.offsets[v],
            incidence_.offsets[v + 1] - incidence_.offsets[v]};
  }

  std::size_t degree(Vertex v) const noexcept {
    return incidence_.offsets[v + 1] - incidence_.offsets[v];
  }

  const IncidenceIndex& incidence() const noexcept { return incidence_; }

  /// Recomputes the incidence table from the edge list alone.
  IncidenceIndex rebuild_incidence() const;

  bool contains(std::span<const Vertex> canonical_edge) const noexcept;

  std::vector<Hyperedge> edge_list() const;

  friend bool operator==(const Hypergraph& a, const Hypergraph& b) noexcept {
    return a.n_ == b.n_ && a.edge_offsets_ == b.edge_offsets_ &&
           a.edge_vertices_ == b.edge_vertices_;
  }

 private:
  struct Canonical {};
  Hypergraph(Canonical, std::size_t n, std::vector<Hyperedge> sorted_unique);

  void build(std::vector<Hyperedge> sorted_unique);

  std::size_t n_ = 0;
  std::vector<std::size_t> edge_offsets_{0};
  std::vector<Vertex> edge_vertices_;
  IncidenceIndex incidence_{{0}, {}};
  std::optional<std::size_t> uniform_;

  friend class HypergraphBuilder;
};

/// Accumulates hyperedges that are already canonical and emitted in
/// lexicographic order (as the samplers produce them), skipping the sort.
class HypergraphBuilder {
 public:
  HypergraphBuilder(std::size_t n, std::optional<std::size_t> uniform_size);

  void reserve(std::size_t edges);
  /// `edge` must be strictly increasing and lexicographically after the
  /// previously added edge.
  void add(std::span<const Vertex> edge);
  Hypergraph finish() &&;

 private:
  std::size_t n_;
  std::optional<std::size_t> uniform_;
  std::vector<Hyperedge> edges_;
};

/// Number of hyperedges containing v.
std::size_t vertex_degree(const Hypergraph& g, Vertex v);

/// Superposition of uniform layers on one vertex set, keyed by edge size.
class NonuniformHypergraph {
 public:
  NonuniformHypergraph() = default;
  explicit NonuniformHypergraph(std::size_t n) : n_(n) {}

  /// Adds (or replaces) the layer of size m. Throws InvalidArgument when the
  /// vertex count differs or the layer is not m-uniform.
  void set_layer(std::size_t m, Hypergraph layer);

  std::size_t num_vertices() const noexcept { return n_; }
  std::size_t max_size() const noexcept { return layers_.empty() ? 0 : layers_.rbegin()->first; }
  const std::map<std::size_t, Hypergraph>& layers() const noexcept { return layers_; }
  bool has_layer(std::size_t m) const { return layers_.contains(m); }
  const Hypergraph& layer(std::size_t m) const;

  /// Number of incident hyperedges summed over every layer.
  std::size_t total_degree(Vertex v) const;
  std::size_t total_edges() const;

  friend bool operator==(const NonuniformHypergraph&, const NonuniformHypergraph&) = default;

 private:
  std::size_t n_ = 0;
  std::map<std::size_t, Hypergraph> layers_;
};

}  // namespace hypertest
