// Brute-force evaluation of the adjacency-tensor sums behind (E, V, T).
// Deliberately independent of the incidence-driven counters in motifs.cpp:
// it only ever asks "is this m-subset a hyperedge?".

#include <algorithm>
#include <numeric>
#include <string>
#include <unordered_set>
#include <vector>

#include "hypertest/combinatorics.hpp"
#include "hypertest/error.hpp"
#include "hypertest/motifs.hpp"

namespace hypertest {
namespace {

class AdjacencyTensor {
 public:
  explicit AdjacencyTensor(const Hypergraph& g) : g_(g), small_(g.num_vertices() <= 64) {
    if (small_) {
      for (EdgeId e = 0; e < g.num_edges(); ++e) {
        std::uint64_t mask = 0;
        for (Vertex v : g.edge(e)) mask |= std::uint64_t{1} << v;
        masks_.insert(mask);
      }
    }
  }

  /// A at the given (not necessarily sorted) index list.
  bool operator()(std::span<const Vertex> idx) const {
    if (small_) {
      std::uint64_t mask = 0;
      for (Vertex v : idx) mask |= std::uint64_t{1} << v;
      return masks_.contains(mask);
    }
    std::vector<Vertex> sorted(idx.begin(), idx.end());
    std::sort(sorted.begin(), sorted.end());
    return g_.contains(sorted);
  }

 private:
  const Hypergraph& g_;
  bool small_;
  std::unordered_set<std::uint64_t> masks_;
};

/// Calls f(tuple) for every increasing s-tuple of {0..n-1}.
template <class F>
void for_each_increasing_tuple(std::size_t n, std::size_t s, F&& f) {
  if (s > n || s == 0) return;
  std::vector<Vertex> t(s);
  std::iota(t.begin(), t.end(), Vertex{0});
  while (true) {
    f(std::span<const Vertex>(t));
    std::size_t i = s;
    while (i > 0 && t[i - 1] == n - s + i - 1) --i;
    if (i == 0) return;
    ++t[i - 1];
    for (std::size_t j = i; j < s; ++j) t[j] = t[j - 1] + 1;
  }
}

/// m consecutive entries of `order` starting at `start`, cyclically.
void cyclic_window(std::span<const Vertex> order, std::size_t start, std::size_t m,
                   std::span<Vertex> out) {
  for (std::size_t i = 0; i < m; ++i) out[i] = order[(start + i) % order.size()];
}

/// C_{2m-l}: sum over the 2m-l rotations of A_{window(j)} A_{window(j+m-l)}.
std::uint64_t vee_terms(const AdjacencyTensor& A, std::span<const Vertex> order, std::size_t m,
                        std::size_t l) {
  std::vector<Vertex> w1(m), w2(m);
  std::uint64_t sum = 0;
  for (std::size_t j = 0; j < order.size(); ++j) {
    cyclic_window(order, j, m, w1);
    cyclic_window(order, j + m - l, m, w2);
    sum += (A(w1) && A(w2)) ? 1 : 0;
  }
  return sum;
}

/// C_{3(m-l)}: sum over the m-l shifts t of
/// A_{window(t)} A_{window(t+m-l)} A_{window(t+2(m-l))}.
std::uint64_t triangle_terms(const AdjacencyTensor& A, std::span<const Vertex> order,
                             std::size_t m, std::size_t l) {
  std::vector<Vertex> w1(m), w2(m), w3(m);
  std::uint64_t sum = 0;
  for (std::size_t t = 0; t < m - l; ++t) {
    cyclic_window(order, t, m, w1);
    cyclic_window(order, t + (m - l), m, w2);
    cyclic_window(order, t + 2 * (m - l), m, w3);
    sum += (A(w1) && A(w2) && A(w3)) ? 1 : 0;
  }
  return sum;
}

/// Sum over increasing tuples of the term function, either at the identity
/// ordering or summed over all orderings. Returns (total, orderings per tuple).
template <class Terms>
std::pair<std::uint64_t, std::uint64_t> tensor_sum(std::size_t n, std::size_t s, TensorSumMode mode,
                                                   Terms&& terms) {
  std::uint64_t total = 0;
  const std::uint64_t orderings = mode == TensorSumMode::Symmetrized ? factorial(static_cast<unsigned>(s)) : 1;
  std::vector<Vertex> order(s);
  for_each_increasing_tuple(n, s, [&](std::span<const Vertex> tuple) {
    std::copy(tuple.begin(), tuple.end(), order.begin());
    if (mode == TensorSumMode::Cyclic) {
      total += terms(order);
      return;
    }
    do {
      total += terms(order);
    } while (std::next_permutation(order.begin(), order.end()));
  });
  return {total, orderings};
}

}  // namespace

EmpiricalEVT tensor_sum_oracle(const Hypergraph& g, std::size_t l, TensorSumMode mode) {
  EmpiricalEVT out;
  std::size_t m = 0;
  if (g.uniform_size()) {
    m = *g.uniform_size();
  } else if (!g.empty()) {
    throw Error(Errc::NotUniform, "hypergraph has hyperedges of different sizes");
  }
  if (l == 0 || (m != 0 && 2 * l > m)) {
    throw Error(Errc::OverlapOutOfRange, "overlap l=" + std::to_string(l) + " out of range");
  }
  if (m == 0) return out;

  const std::size_t n = g.num_vertices();
  const std::size_t vee_span = 2 * m - l;
  const std::size_t tri_span = 3 * (m - l);
  const double tuples = binomial(n, tri_span);
  if (tuples > 1e7) {
    throw Error(Errc::TooLargeForOracle, "C(n, 3(m-l)) = " + std::to_string(tuples) + " > 1e7");
  }
  if (mode == TensorSumMode::Symmetrized) {
    const double work = std::max(tuples * static_cast<double>(factorial(static_cast<unsigned>(tri_span))),
                                 binomial(n, vee_span) * static_cast<double>(factorial(static_cast<unsigned>(vee_span))));
    if (tri_span > 20 || work > 1e9) {
      throw Error(Errc::TooLargeForOracle, "symmetrized tensor sum needs more than 1e9 orderings");
    }
  }

  const AdjacencyTensor A(g);

  std::uint64_t edge_sum = 0;
  for_each_increasing_tuple(n, m, [&](std::span<const Vertex> t) { edge_sum += A(t) ? 1 : 0; });
  if (const double c = binomial(n, m); c > 0) out.e_hat = static_cast<double>(edge_sum) / c;

  const auto [vee_total, vee_orders] = tensor_sum(
      n, vee_span, mode, [&](std::span<const Vertex> o) { return vee_terms(A, o, m, l); });
  if (const double c = binomial(n, vee_span); c > 0) {
    out.v_hat = static_cast<double>(vee_total) /
                (static_cast<double>(vee_orders) * static_cast<double>(vee_span) * c);
  }

  const auto [tri_total, tri_orders] = tensor_sum(
      n, tri_span, mode, [&](std::span<const Vertex> o) { return triangle_terms(A, o, m, l); });
  if (tuples > 0) {
    out.t_hat = static_cast<double>(tri_total) /
                (static_cast<double>(tri_orders) * static_cast<double>(m - l) * tuples);
  }
  return out;
}

}  // namespace hypertest
