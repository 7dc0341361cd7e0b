#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <span>

#include "hypertest/hypergraph.hpp"

namespace hypertest {

/// Exact census of the sub-hypergraph motifs used by the tests.
struct MotifCounts {
  std::size_t overlap = 1;  ///< l used for hypervees / hypertriangles
  std::uint64_t hyperedges = 0;
  std::uint64_t hypervees = 0;
  std::uint64_t hypertriangles = 0;
  std::map<std::size_t, std::uint64_t> loose_cycles;  ///< cycle length h -> X_h
};

/// Unordered pairs of hyperedges with exactly l common vertices.
/// Requires an m-uniform hypergraph and 1 <= l < m (NotUniform,
/// OverlapOutOfRange). Edgeless hypergraphs yield 0.
std::uint64_t count_hypervees(const Hypergraph& g, std::size_t l);

/// Unordered triples of hyperedges forming an l-cycle of length three:
/// consecutive intersections of size exactly l, disjoint junctions, 3(m-l)
/// vertices in total.
std::uint64_t count_hypertriangles(const Hypergraph& g, std::size_t l);

/// Number of loose cycles made of exactly h hyperedges (h >= 2,
/// LengthTooSmall otherwise). A loose cycle is a cyclic sequence of distinct
/// hyperedges covering h(m-1) vertices in which consecutive edges meet in one
/// junction vertex and all junctions are distinct; each cycle is counted
/// once regardless of rotation or reflection.
std::uint64_t count_loose_cycles(const Hypergraph& g, std::size_t h);

/// All counts at overlap l plus loose cycles for each requested length.
MotifCounts motif_census(const Hypergraph& g, std::size_t l,
                         std::span<const std::size_t> cycle_lengths = {});

/// Number of distinct l-hypervee placements on n labeled vertices for
/// m-uniform hyperedges: C(n, 2m-l) * C(2m-l, l) * C(2(m-l), m-l) / 2.
double hypervee_placements(std::size_t n, std::size_t m, std::size_t l);

/// Number of distinct l-hypertriangle placements on n labeled vertices:
/// C(n, 3(m-l)) * (3(m-l))! / (l!^3 (m-2l)!^3 3!).
double hypertriangle_placements(std::size_t n, std::size_t m, std::size_t l);

/// Empirical edge, hypervee and hypertriangle densities.
struct EmpiricalEVT {
  double e_hat = 0.0;
  double v_hat = 0.0;
  double t_hat = 0.0;
};

/// Densities computed from the exact motif census. Each is the count divided
/// by the number of possible placements, so E[e_hat] = E, E[v_hat] = V and
/// E[t_hat] = T under the block model.
EmpiricalEVT empirical_evt(const Hypergraph& g, std::size_t l);

enum class TensorSumMode {
  /// Each index tuple contributes its cyclic-term sum averaged over every
  /// ordering of the tuple. Equal to `empirical_evt`.
  Symmetrized,
  /// Only the increasing ordering of each tuple is evaluated. Unbiased for
  /// (E, V, T) but depends on vertex labels once m >= 3.
  Cyclic,
};

/// Ground-truth oracle for `empirical_evt`: evaluates the adjacency-tensor
/// sums term by term over every increasing index tuple, dividing the
/// hypervee sum by C(n, 2m-l)(2m-l) and the hypertriangle sum by
/// C(n, 3(m-l))(m-l). Throws TooLargeForOracle when C(n, 3(m-l)) exceeds 1e7
/// or the ordering enumeration would exceed 1e9 tensor terms.
EmpiricalEVT tensor_sum_oracle(const Hypergraph& g, std::size_t l,
                               TensorSumMode mode = TensorSumMode::Symmetrized);

}  // namespace hypertest
