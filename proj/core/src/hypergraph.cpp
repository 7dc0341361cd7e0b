#include "hypertest/hypergraph.hpp"

#include <algorithm>
#include <string>

#include "hypertest/error.hpp"

namespace hypertest {

Hyperedge canonicalize_hyperedge(std::span<const Vertex> vertices, std::size_t n) {
  if (vertices.size() < 2) {
    throw Error(Errc::EdgeTooSmall,
                "hyperedge needs at least 2 vertices, got " + std::to_string(vertices.size()));
  }
  Hyperedge e(vertices.begin(), vertices.end());
  std::sort(e.begin(), e.end());
  if (e.back() >= n) {
    throw Error(Errc::VertexOutOfRange,
                "vertex " + std::to_string(e.back()) + " >= n=" + std::to_string(n));
  }
  if (auto it = std::adjacent_find(e.begin(), e.end()); it != e.end()) {
    throw Error(Errc::RepeatedVertex, "vertex " + std::to_string(*it) + " repeated");
  }
  return e;
}

std::size_t intersection_size(std::span<const Vertex> e1, std::span<const Vertex> e2) noexcept {
  std::size_t i = 0, j = 0, common = 0;
  while (i < e1.size() && j < e2.size()) {
    if (e1[i] < e2[j]) {
      ++i;
    } else if (e2[j] < e1[i]) {
      ++j;
    } else {
      ++common;
      ++i;
      ++j;
    }
  }
  return common;
}

Hypergraph::Hypergraph(std::size_t n, std::vector<Hyperedge> edges) : n_(n) {
  for (auto& e : edges) e = canonicalize_hyperedge(e, n);
  std::sort(edges.begin(), edges.end());
  if (auto it = std::adjacent_find(edges.begin(), edges.end()); it != edges.end()) {
    std::string s;
    for (Vertex v : *it) s += (s.empty() ? "" : " ") + std::to_string(v);
    throw Error(Errc::DuplicateEdge, "hyperedge {" + s + "} appears twice");
  }
  build(std::move(edges));
}

Hypergraph Hypergraph::from_edges_dedup(std::size_t n, std::vector<Hyperedge> edges) {
  for (auto& e : edges) e = canonicalize_hyperedge(e, n);
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Hypergraph(Canonical{}, n, std::move(edges));
}

Hypergraph::Hypergraph(Canonical, std::size_t n, std::vector<Hyperedge> sorted_unique) : n_(n) {
  build(std::move(sorted_unique));
}

void Hypergraph::build(std::vector<Hyperedge> sorted_unique) {
  edge_offsets_.assign(1, 0);
  edge_offsets_.reserve(sorted_unique.size() + 1);
  std::size_t total = 0;
  for (const auto& e : sorted_unique) total += e.size();
  edge_vertices_.clear();
  edge_vertices_.reserve(total);

  uniform_.reset();
  bool uniform = true;
  for (const auto& e : sorted_unique) {
    if (!sorted_unique.empty() && e.size() != sorted_unique.front().size()) uniform = false;
    edge_vertices_.insert(edge_vertices_.end(), e.begin(), e.end());
    edge_offsets_.push_back(edge_vertices_.size());
  }
  if (!sorted_unique.empty() && uniform) uniform_ = sorted_unique.front().size();
  incidence_ = rebuild_incidence();
}

IncidenceIndex Hypergraph::rebuild_incidence() const {
  IncidenceIndex idx;
  idx.offsets.assign(n_ + 1, 0);
  for (Vertex v : edge_vertices_) ++idx.offsets[v + 1];
  for (std::size_t v = 0; v < n_; ++v) idx.offsets[v + 1] += idx.offsets[v];
  idx.edges.resize(edge_vertices_.size());
  std::vector<std::size_t> cursor(idx.offsets.begin(), idx.offsets.end() - 1);
  for (EdgeId e = 0; e < num_edges(); ++e) {
    for (Vertex v : edge(e)) idx.edges[cursor[v]++] = e;
  }
  return idx;
}

Hypergraph Hypergraph::with_uniform_size(std::size_t m) const {
  for (EdgeId e = 0; e < num_edges(); ++e) {
    if (edge(e).size() != m) {
      throw Error(Errc::NotUniform, "edge " + std::to_string(e) + " has size " +
                                        std::to_string(edge(e).size()) + ", expected " +
                                        std::to_string(m));
    }
  }
  Hypergraph copy = *this;
  copy.uniform_ = m;
  return copy;
}

bool Hypergraph::contains(std::span<const Vertex> canonical_edge) const noexcept {
  std::size_t lo = 0, hi = num_edges();
  while (lo < hi) {
    std::size_t mid = lo + (hi - lo) / 2;
    auto e = edge(static_cast<EdgeId>(mid));
    if (std::lexicographical_compare(e.begin(), e.end(), canonical_edge.begin(),
                                     canonical_edge.end())) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo == num_edges()) return false;
  auto e = edge(static_cast<EdgeId>(lo));
  return std::equal(e.begin(), e.end(), canonical_edge.begin(), canonical_edge.end());
}

std::vector<Hyperedge> Hypergraph::edge_list() const {
  std::vector<Hyperedge> out;
  out.reserve(num_edges());
  for (EdgeId e = 0; e < num_edges(); ++e) out.emplace_back(edge(e).begin(), edge(e).end());
  return out;
}

HypergraphBuilder::HypergraphBuilder(std::size_t n, std::optional<std::size_t> uniform_size)
    : n_(n), uniform_(uniform_size) {}

void HypergraphBuilder::reserve(std::size_t edges) { edges_.reserve(edges); }

void HypergraphBuilder::add(std::span<const Vertex> edge) {
  edges_.emplace_back(edge.begin(), edge.end());
}

Hypergraph HypergraphBuilder::finish() && {
  Hypergraph g(Hypergraph::Canonical{}, n_, std::move(edges_));
  if (uniform_ && g.empty()) g.uniform_ = uniform_;
  return g;
}

std::size_t vertex_degree(const Hypergraph& g, Vertex v) {
  if (v >= g.num_vertices()) {
    throw Error(Errc::VertexOutOfRange, "vertex " + std::to_string(v) + " >= n=" +
                                            std::to_string(g.num_vertices()));
  }
  return g.degree(v);
}

void NonuniformHypergraph::set_layer(std::size_t m, Hypergraph layer) {
  if (layer.num_vertices() != n_) {
    throw Error(Errc::InvalidArgument, "layer has " + std::to_string(layer.num_vertices()) +
                                           " vertices, expected " + std::to_string(n_));
  }
  if (!layer.uniform_size()) {
    layer = layer.with_uniform_size(m);
  } else if (*layer.uniform_size() != m) {
    throw Error(Errc::NotUniform, "layer keyed " + std::to_string(m) + " has edges of size " +
                                      std::to_string(*layer.uniform_size()));
  }
  layers_.insert_or_assign(m, std::move(layer));
}

const Hypergraph& NonuniformHypergraph::layer(std::size_t m) const {
  auto it = layers_.find(m);
  if (it == layers_.end()) {
    throw Error(Errc::InvalidArgument, "no layer of size " + std::to_string(m));
  }
  return it->second;
}

std::size_t NonuniformHypergraph::total_degree(Vertex v) const {
  std::size_t d = 0;
  for (const auto& [m, g] : layers_) d += g.degree(v);
  return d;
}

std::size_t NonuniformHypergraph::total_edges() const {
  std::size_t total = 0;
  for (const auto& [m, g] : layers_) total += g.num_edges();
  return total;
}

}  // namespace hypertest
