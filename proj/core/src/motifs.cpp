#include "hypertest/motifs.hpp"

#include <algorithm>
#include <optional>
#include <string>

#include "hypertest/combinatorics.hpp"
#include "hypertest/error.hpp"
#include "motif_enum.hpp"

namespace hypertest {
namespace {

/// Edge size of a uniform hypergraph; nullopt for an untagged edgeless one.
std::optional<std::size_t> uniform_size_or_empty(const Hypergraph& g) {
  if (g.uniform_size()) return g.uniform_size();
  if (g.empty()) return std::nullopt;
  throw Error(Errc::NotUniform, "hypergraph has hyperedges of different sizes");
}

void check_overlap(std::optional<std::size_t> m, std::size_t l) {
  if (l == 0 || (m && 2 * l > *m)) {
    throw Error(Errc::OverlapOutOfRange, "overlap l=" + std::to_string(l) +
                                             " must satisfy 1 <= l <= m/2" +
                                             (m ? " with m=" + std::to_string(*m) : ""));
  }
  if (m && *m > detail::kMaxEdgeSize) {
    throw Error(Errc::InvalidArgument, "hyperedge size above " + std::to_string(detail::kMaxEdgeSize));
  }
}

class LooseCycleCounter {
 public:
  LooseCycleCounter(const Hypergraph& g, std::size_t h)
      : g_(g), h_(h), used_(g.num_vertices(), 0), path_(h, 0) {}

  std::uint64_t run() {
    for (EdgeId s = 0; s < g_.num_edges(); ++s) {
      start_ = s;
      mark(s, 1);
      path_[0] = s;
      extend(1, s, kNone);
      mark(s, 0);
    }
    return found_ / 2;  // each cycle is walked in both directions from its minimal edge
  }

 private:
  static constexpr Vertex kNone = ~Vertex{0};

  void mark(EdgeId e, std::uint8_t value) {
    for (Vertex v : g_.edge(e)) used_[v] = value;
  }

  void extend(std::size_t depth, EdgeId cur, Vertex entry) {
    for (Vertex v : g_.edge(cur)) {
      if (v == entry) continue;
      if (depth == 1) first_junction_ = v;
      for (EdgeId f : g_.incident_edges(v)) {
        if (f <= start_ || f == cur) continue;
        const auto fv = g_.edge(f);
        if (depth + 1 < h_) {
          bool clean = true;
          for (Vertex u : fv) {
            if (u != v && used_[u]) {
              clean = false;
              break;
            }
          }
          if (!clean) continue;
          mark(f, 1);
          path_[depth] = f;
          extend(depth + 1, f, v);
          mark(f, 0);
          used_[v] = 1;
        } else {
          // closing edge: meets the start edge in exactly one fresh junction
          std::size_t hits = 0;
          bool ok = true;
          for (Vertex u : fv) {
            if (u == v || !used_[u]) continue;
            const auto sv = g_.edge(start_);
            if (u == first_junction_ || !std::binary_search(sv.begin(), sv.end(), u)) {
              ok = false;
              break;
            }
            ++hits;
          }
          if (ok && hits == 1) ++found_;
        }
      }
    }
  }

  const Hypergraph& g_;
  std::size_t h_;
  std::vector<std::uint8_t> used_;
  std::vector<EdgeId> path_;
  EdgeId start_ = 0;
  Vertex first_junction_ = kNone;
  std::uint64_t found_ = 0;
};

}  // namespace

std::uint64_t count_hypervees(const Hypergraph& g, std::size_t l) {
  const auto m = uniform_size_or_empty(g);
  // pairs are well defined for any overlap below m, not just l <= m/2
  if (l == 0 || (m && l >= *m)) {
    throw Error(Errc::OverlapOutOfRange, "overlap l=" + std::to_string(l) +
                                             " must satisfy 1 <= l < m");
  }
  std::uint64_t count = 0;
  detail::for_each_hypervee(g, l, [&](EdgeId, EdgeId) { ++count; });
  return count;
}

std::uint64_t count_hypertriangles(const Hypergraph& g, std::size_t l) {
  const auto m = uniform_size_or_empty(g);
  check_overlap(m, l);
  if (const auto fast = detail::count_hypertriangles_by_subsets(g, l)) return *fast;
  std::uint64_t count = 0;
  detail::for_each_hypertriangle(g, l, [&](EdgeId, EdgeId, EdgeId) { ++count; });
  return count;
}

std::uint64_t count_loose_cycles(const Hypergraph& g, std::size_t h) {
  if (h < 2) throw Error(Errc::LengthTooSmall, "cycle length must be at least 2");
  uniform_size_or_empty(g);
  if (g.num_edges() < h) return 0;
  return LooseCycleCounter(g, h).run();
}

MotifCounts motif_census(const Hypergraph& g, std::size_t l,
                         std::span<const std::size_t> cycle_lengths) {
  MotifCounts c;
  c.overlap = l;
  c.hyperedges = g.num_edges();
  c.hypervees = count_hypervees(g, l);
  c.hypertriangles = count_hypertriangles(g, l);
  for (std::size_t h : cycle_lengths) c.loose_cycles[h] = count_loose_cycles(g, h);
  return c;
}

double hypervee_placements(std::size_t n, std::size_t m, std::size_t l) {
  const std::size_t span = 2 * m - l;
  return binomial(n, span) * binomial(span, l) * binomial(2 * (m - l), m - l) / 2.0;
}

double hypertriangle_placements(std::size_t n, std::size_t m, std::size_t l) {
  const std::size_t span = 3 * (m - l);
  // multinomial (3(m-l))! / (l!^3 (m-2l)!^3), divided by the 3! relabelings of the edges
  double shapes = 1.0;
  std::size_t remaining = span;
  for (int i = 0; i < 3; ++i) {
    shapes *= binomial(remaining, l);
    remaining -= l;
  }
  for (int i = 0; i < 3; ++i) {
    shapes *= binomial(remaining, m - 2 * l);
    remaining -= m - 2 * l;
  }
  return binomial(n, span) * shapes / 6.0;
}

EmpiricalEVT empirical_evt(const Hypergraph& g, std::size_t l) {
  const auto m = uniform_size_or_empty(g);
  check_overlap(m, l);
  EmpiricalEVT out;
  if (!m) return out;
  const std::size_t n = g.num_vertices();
  const double edges_possible = binomial(n, *m);
  const double vee_possible = hypervee_placements(n, *m, l);
  const double tri_possible = hypertriangle_placements(n, *m, l);
  out.e_hat = edges_possible > 0 ? static_cast<double>(g.num_edges()) / edges_possible : 0.0;
  out.v_hat = vee_possible > 0 ? static_cast<double>(count_hypervees(g, l)) / vee_possible : 0.0;
  out.t_hat =
      tri_possible > 0 ? static_cast<double>(count_hypertriangles(g, l)) / tri_possible : 0.0;
  return out;
}

}  // namespace hypertest
