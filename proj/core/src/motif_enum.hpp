#pragma once

// Enumeration kernels shared by the motif counters. Each visitor is called
// exactly once per unordered occurrence.

#include <algorithm>
#include <array>
#include <optional>
#include <cstdint>
#include <span>
#include <vector>

#include "hypertest/combinatorics.hpp"
#include "hypertest/hypergraph.hpp"
#include "hypertest/philox.hpp"

namespace hypertest::detail {

inline constexpr std::size_t kMaxEdgeSize = 16;

/// Calls f(mask) for every l-element subset of {0..m-1}, encoded as a bitmask.
template <class F>
void for_each_subset_mask(std::size_t m, std::size_t l, F&& f) {
  if (l > m) return;
  if (l == 0) {
    f(std::uint32_t{0});
    return;
  }
  std::uint32_t mask = (1u << l) - 1;
  const std::uint32_t limit = 1u << m;
  while (mask < limit) {
    f(mask);
    // Gosper's hack: next mask with the same popcount.
    const std::uint32_t c = mask & -mask;
    const std::uint32_t r = mask + c;
    mask = (((r ^ mask) >> 2) / c) | r;
  }
}

inline std::uint64_t hash_vertices(std::span<const Vertex> vs) noexcept {
  std::uint64_t h = 0x243F6A8885A308D3ULL;
  for (Vertex v : vs) h = splitmix64(h ^ v);
  return h;
}

/// Index from sorted vertex subsets of a fixed size to the edges containing
/// them. Lookups return candidate edges; hash collisions are possible, so the
/// caller checks containment.
class SubsetIndex {
 public:
  SubsetIndex(const Hypergraph& g, std::size_t subset_size) {
    std::vector<std::pair<std::uint64_t, EdgeId>> entries;
    std::array<Vertex, kMaxEdgeSize> buf{};
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const auto verts = g.edge(e);
      for_each_subset_mask(verts.size(), subset_size, [&](std::uint32_t mask) {
        std::size_t k = 0;
        for (std::size_t i = 0; i < verts.size(); ++i) {
          if (mask >> i & 1u) buf[k++] = verts[i];
        }
        entries.emplace_back(hash_vertices({buf.data(), k}), e);
      });
    }
    std::sort(entries.begin(), entries.end());

    std::size_t unique = 0;
    for (std::size_t i = 0; i < entries.size(); ++i) {
      if (i == 0 || entries[i].first != entries[i - 1].first) ++unique;
    }
    std::size_t cap = 16;
    while (cap < 2 * unique) cap <<= 1;
    mask_ = cap - 1;
    slots_.assign(cap, Slot{});
    edges_.reserve(entries.size());
    for (std::size_t i = 0; i < entries.size();) {
      std::size_t j = i;
      while (j < entries.size() && entries[j].first == entries[i].first) ++j;
      const std::uint32_t begin = static_cast<std::uint32_t>(edges_.size());
      for (std::size_t t = i; t < j; ++t) edges_.push_back(entries[t].second);
      std::size_t pos = entries[i].first & mask_;
      while (slots_[pos].count != 0) pos = (pos + 1) & mask_;
      slots_[pos] = Slot{entries[i].first, begin, static_cast<std::uint32_t>(j - i)};
      i = j;
    }
  }

  std::span<const EdgeId> candidates(std::span<const Vertex> sorted_subset) const noexcept {
    const std::uint64_t h = hash_vertices(sorted_subset);
    std::size_t pos = h & mask_;
    while (slots_[pos].count != 0) {
      if (slots_[pos].hash == h) return {edges_.data() + slots_[pos].begin, slots_[pos].count};
      pos = (pos + 1) & mask_;
    }
    return {};
  }

 private:
  struct Slot {
    std::uint64_t hash = 0;
    std::uint32_t begin = 0;
    std::uint32_t count = 0;
  };
  std::size_t mask_ = 0;
  std::vector<Slot> slots_;
  std::vector<EdgeId> edges_;
};

inline bool is_subset(std::span<const Vertex> small, std::span<const Vertex> big) noexcept {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

/// Calls f(e1, e2) with e1 < e2 for every pair of hyperedges sharing exactly
/// l vertices. Cost is proportional to sum over edges of the degrees of their
/// vertices.
template <class F>
void for_each_hypervee(const Hypergraph& g, std::size_t l, F&& f) {
  const std::size_t ne = g.num_edges();
  std::vector<std::uint32_t> shared(ne, 0);
  std::vector<EdgeId> touched;
  for (EdgeId e1 = 0; e1 < ne; ++e1) {
    touched.clear();
    for (Vertex v : g.edge(e1)) {
      const auto inc = g.incident_edges(v);
      // incidence rows are ascending; only partners after e1
      auto it = std::upper_bound(inc.begin(), inc.end(), e1);
      for (; it != inc.end(); ++it) {
        if (shared[*it]++ == 0) touched.push_back(*it);
      }
    }
    std::sort(touched.begin(), touched.end());
    for (EdgeId e2 : touched) {
      if (shared[e2] == l) f(e1, e2);
      shared[e2] = 0;
    }
  }
}

/// Calls f(e1, e2, e3) with e1 < e2 < e3 for every l-hypertriangle: pairwise
/// intersections of size exactly l and an empty triple intersection, so the
/// three edges cover exactly 3(m - l) vertices.
///
/// Walks e1, then an l-set J_a of e1 shared with e2, a disjoint l-set J_b of
/// e1 shared with e3, and an l-set J_c of e2 outside e1 shared with e3. e3 is
/// found through a (2l)-subset index keyed on J_b ∪ J_c, so only triples that
/// already close the cycle are ever touched.
template <class F>
void for_each_hypertriangle(const Hypergraph& g, std::size_t l, F&& f) {
  const std::size_t ne = g.num_edges();
  if (ne < 3 || !g.uniform_size()) return;
  const std::size_t m = *g.uniform_size();
  if (l == 0 || 2 * l > m) return;

  const SubsetIndex pair_index(g, 2 * l);
  const SubsetIndex single_index(g, l);

  std::array<Vertex, kMaxEdgeSize> ja{}, jb{}, jc{}, key{}, rest{};

  for (EdgeId e1 = 0; e1 < ne; ++e1) {
    const auto v1 = g.edge(e1);
    for_each_subset_mask(m, l, [&](std::uint32_t mask_a) {
      std::size_t ka = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (mask_a >> i & 1u) ja[ka++] = v1[i];
      }
      const std::span<const Vertex> ja_span(ja.data(), l);
      for (EdgeId e2 : single_index.candidates(ja_span)) {
        if (e2 <= e1) continue;
        const auto v2 = g.edge(e2);
        if (!is_subset(ja_span, v2) || intersection_size(v1, v2) != l) continue;

        // vertices of e2 outside e1
        std::size_t nr = 0;
        for (Vertex v : v2) {
          if (!std::binary_search(v1.begin(), v1.end(), v)) rest[nr++] = v;
        }
        for_each_subset_mask(m, l, [&](std::uint32_t mask_b) {
          if (mask_a & mask_b) return;
          std::size_t kb = 0;
          for (std::size_t i = 0; i < m; ++i) {
            if (mask_b >> i & 1u) jb[kb++] = v1[i];
          }
          for_each_subset_mask(nr, l, [&](std::uint32_t mask_c) {
            std::size_t kc = 0;
            for (std::size_t i = 0; i < nr; ++i) {
              if (mask_c >> i & 1u) jc[kc++] = rest[i];
            }
            std::merge(jb.begin(), jb.begin() + l, jc.begin(), jc.begin() + l, key.begin());
            const std::span<const Vertex> key_span(key.data(), 2 * l);
            for (EdgeId e3 : pair_index.candidates(key_span)) {
              if (e3 <= e2) continue;
              const auto v3 = g.edge(e3);
              if (!is_subset(key_span, v3)) continue;
              if (intersection_size(v1, v3) != l || intersection_size(v2, v3) != l) continue;
              f(e1, e2, e3);
            }
          });
        });
      }
    });
  }
}

/// Number of l-hypertriangles without visiting them one by one.
///
/// For a base edge e1 and disjoint l-subsets Ja, Jb of it, A and B hold the
/// parts outside e1 of the edges meeting e1 exactly in Ja resp. Jb. A pair
/// from A x B closes a triangle iff the parts share exactly l vertices s, and
/// [s = l] = sum_{k >= l} (-1)^{k-l} C(k,l) C(s,k) reduces that to counting
/// common k-subsets, done by merging sorted subset keys. Each triangle is
/// seen once from each of its three edges. Returns nullopt when k-subsets of
/// n vertices cannot be packed into a 64-bit key.
inline std::optional<std::uint64_t> count_hypertriangles_by_subsets(const Hypergraph& g,
                                                                   std::size_t l) {
  const std::size_t ne = g.num_edges();
  if (ne < 3 || !g.uniform_size()) return 0;
  const std::size_t m = *g.uniform_size();
  if (l == 0 || 2 * l > m) return 0;
  const std::size_t r = m - l;
  const std::uint64_t n = g.num_vertices();
  std::uint64_t limit = 1;
  for (std::size_t i = 0; i < r; ++i) {
    if (limit > (std::uint64_t{1} << 62) / n) return std::nullopt;
    limit *= n;
  }

  std::vector<std::uint32_t> masks;
  for_each_subset_mask(m, l, [&](std::uint32_t mask) { masks.push_back(mask); });
  // keys[j][k - l]: sorted k-subset keys of the outside parts for subset masks[j]
  std::vector<std::vector<std::vector<std::uint64_t>>> keys(
      masks.size(), std::vector<std::vector<std::uint64_t>>(r - l + 1));
  std::vector<std::int64_t> coef(r - l + 1);
  for (std::size_t k = l; k <= r; ++k) {
    const auto c = static_cast<std::int64_t>(*binomial_exact(k, l));
    coef[k - l] = (k - l) % 2 ? -c : c;
  }

  // single-vertex overlaps (k = 1) go through a dense counter instead of keys
  const std::size_t first_sorted = l == 1 ? 2 : l;
  std::vector<std::vector<Vertex>> parts(masks.size());
  std::vector<std::uint32_t> counter(l == 1 ? g.num_vertices() : 0, 0);

  std::array<Vertex, kMaxEdgeSize> ja{}, part{};
  std::int64_t total = 0;
  for (EdgeId e1 = 0; e1 < ne; ++e1) {
    const auto v1 = g.edge(e1);
    for (std::size_t j = 0; j < masks.size(); ++j) {
      for (auto& kk : keys[j]) kk.clear();
      parts[j].clear();
      std::size_t ka = 0;
      for (std::size_t i = 0; i < m; ++i) {
        if (masks[j] >> i & 1u) ja[ka++] = v1[i];
      }
      const std::span<const Vertex> ja_span(ja.data(), l);
      for (EdgeId e2 : g.incident_edges(ja[0])) {
        const auto v2 = g.edge(e2);
        if (e2 == e1 || intersection_size(v1, v2) != l || !is_subset(ja_span, v2)) continue;
        std::size_t np = 0;
        for (Vertex v : v2) {
          if (!std::binary_search(v1.begin(), v1.end(), v)) part[np++] = v;
        }
        if (l == 1) parts[j].insert(parts[j].end(), part.begin(), part.begin() + np);
        for (std::size_t k = first_sorted; k <= r; ++k) {
          auto& out = keys[j][k - l];
          for_each_subset_mask(np, k, [&](std::uint32_t mask) {
            std::uint64_t key = 0;
            for (std::size_t i = 0; i < np; ++i) {
              if (mask >> i & 1u) key = key * n + part[i];
            }
            out.push_back(key);
          });
        }
      }
      for (auto& kk : keys[j]) std::sort(kk.begin(), kk.end());
    }
    for (std::size_t a = 0; a < masks.size(); ++a) {
      for (std::size_t b = a + 1; b < masks.size(); ++b) {
        if (masks[a] & masks[b]) continue;
        if (l == 1) {
          for (Vertex v : parts[a]) ++counter[v];
          std::int64_t common = 0;
          for (Vertex v : parts[b]) common += counter[v];
          for (Vertex v : parts[a]) counter[v] = 0;
          total += coef[0] * common;
        }
        for (std::size_t k = first_sorted - l; k <= r - l; ++k) {
          const auto& x = keys[a][k];
          const auto& y = keys[b][k];
          std::int64_t common = 0;
          std::size_t i = 0, t = 0;
          while (i < x.size() && t < y.size()) {
            if (x[i] < y[t]) {
              ++i;
            } else if (y[t] < x[i]) {
              ++t;
            } else {
              const std::uint64_t key = x[i];
              std::int64_t cx = 0, cy = 0;
              while (i < x.size() && x[i] == key) ++i, ++cx;
              while (t < y.size() && y[t] == key) ++t, ++cy;
              common += cx * cy;
            }
          }
          total += coef[k] * common;
        }
      }
    }
  }
  return static_cast<std::uint64_t>(total / 3);
}

}  // namespace hypertest::detail
