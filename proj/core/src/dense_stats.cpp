#include <cmath>
#include <string>
#include <vector>

#include "hypertest/combinatorics.hpp"
#include "hypertest/error.hpp"
#include "hypertest/stats.hpp"

namespace hypertest {
namespace {

void check_overlap(std::size_t m, std::size_t l) {
  if (m < 2) throw Error(Errc::InvalidArgument, "hyperedge size m must be at least 2");
  if (l == 0 || 2 * l > m) {
    throw Error(Errc::OverlapOutOfRange, "overlap l=" + std::to_string(l) +
                                             " must satisfy 1 <= l <= m/2 with m=" +
                                             std::to_string(m));
  }
}

}  // namespace

TheoreticalEVT theoretical_evt(const DenseRegimeParams& p, std::size_t n) {
  check_overlap(p.m, p.l);
  if (p.k < 1) throw Error(Errc::InvalidArgument, "number of communities k must be at least 1");
  const std::size_t m = p.m;
  const std::size_t l = p.l;
  const double k = static_cast<double>(p.k);
  const double N = std::pow(static_cast<double>(n), static_cast<double>(m - 1));
  const double d = p.a - p.b;
  const double b = p.b;
  const auto kp = [k](std::size_t e) { return std::pow(k, static_cast<double>(e)); };
  const double w = p.mean_weight;

  TheoreticalEVT out;
  out.e = std::pow(w, static_cast<double>(m)) * (p.a + (kp(m - 1) - 1.0) * b) / (N * kp(m - 1));
  if (out.e == 0.0) throw Error(Errc::DegenerateE, "expected edge density is zero");

  const double N2 = N * N;
  out.v = std::pow(w, 2.0 * static_cast<double>(m - l)) *
          (d * d / (N2 * kp(2 * m - l - 1)) + 2.0 * d * b / (N2 * kp(m - 1)) + b * b / N2);

  const double N3 = N2 * N;
  out.t = std::pow(w, 3.0 * static_cast<double>(m - 2 * l)) *
          (d * d * d / (N3 * kp(3 * (m - l) - 1)) + 3.0 * d * d * b / (N3 * kp(2 * m - l - 1)) +
           3.0 * d * b * b / (N3 * kp(m - 1)) + b * b * b / N3);

  const double ratio = out.v / out.e;
  out.script_t = d == 0.0 ? 0.0 : out.t - ratio * ratio * ratio;
  if (out.t > 0.0) {
    const double cyclic_scale = std::sqrt(binomial(n, 3 * (m - l)) * static_cast<double>(m - l));
    out.delta = cyclic_scale * out.script_t / std::sqrt(out.t);
    out.noncentrality =
        std::sqrt(hypertriangle_placements(n, m, l)) * out.script_t / std::sqrt(out.t);
  }
  return out;
}

DenseTestReport dense_test_from_evt(const EmpiricalEVT& evt, std::size_t n, std::size_t m,
                                    std::size_t l, double alpha,
                                    const std::optional<DenseRegimeParams>& known) {
  check_overlap(m, l);
  DenseTestReport r;
  r.n = n;
  r.m = m;
  r.l = l;
  r.empirical = evt;
  r.alpha = alpha;
  r.critical = normal_quantile(alpha);
  if (known) {
    if (known->m != m || known->l != l) {
      throw Error(Errc::InvalidArgument, "known parameters do not match the tested layer");
    }
    r.theory = theoretical_evt(*known, n);
  }
  if (!(evt.e_hat > 0.0)) throw Error(Errc::ZeroDensity, "hypergraph has no hyperedges");

  r.scale = std::sqrt(hypertriangle_placements(n, m, l));
  const double ratio = evt.v_hat / evt.e_hat;
  r.statistic_prime = 2.0 * r.scale * (std::sqrt(evt.t_hat) - std::pow(ratio, 1.5));
  r.reject_prime = std::fabs(r.statistic_prime) > r.critical;
  if (evt.t_hat > 0.0) {
    r.statistic = r.scale * (evt.t_hat - ratio * ratio * ratio) / std::sqrt(evt.t_hat);
    r.reject = std::fabs(*r.statistic) > r.critical;
  }
  return r;
}

DenseTestReport dense_test(const Hypergraph& g, std::size_t l, double alpha,
                           const std::optional<DenseRegimeParams>& known) {
  if (!g.uniform_size()) {
    if (g.empty()) throw Error(Errc::ZeroDensity, "hypergraph has no hyperedges");
    throw Error(Errc::NotUniform, "hypergraph has hyperedges of different sizes");
  }
  const std::size_t m = *g.uniform_size();
  check_overlap(m, l);
  normal_quantile(alpha);
  if (g.empty()) throw Error(Errc::ZeroDensity, "hypergraph has no hyperedges");
  return dense_test_from_evt(empirical_evt(g, l), g.num_vertices(), m, l, alpha, known);
}

std::optional<std::size_t> suggest_overlap(double e_hat, std::size_t n, std::size_t m) {
  if (!(e_hat > 0.0) || n < 2) return std::nullopt;
  const double a_n = e_hat * std::pow(static_cast<double>(n), static_cast<double>(m - 1));
  const double x = std::log(a_n) / std::log(static_cast<double>(n));
  for (std::size_t l = 1; 2 * l <= m; ++l) {
    const double lo = static_cast<double>(l) - 1.0;
    const double hi = static_cast<double>(l) - 2.0 / 3.0;
    if (x > lo && x < hi) return l;
  }
  return std::nullopt;
}

CombinedTestReport combined_test(std::span<const DenseTestReport> layers,
                                 std::optional<std::span<const double>> weights,
                                 DenseStatistic which) {
  if (layers.empty()) throw Error(Errc::InvalidArgument, "combined test needs at least one layer");
  CombinedTestReport r;
  const std::size_t count = layers.size();
  if (weights) {
    if (weights->size() != count) {
      throw Error(Errc::InvalidArgument, "got " + std::to_string(weights->size()) +
                                             " weights for " + std::to_string(count) + " layers");
    }
    r.weights.assign(weights->begin(), weights->end());
  } else {
    r.weights.assign(count, 1.0 / std::sqrt(static_cast<double>(count)));
  }
  double norm = 0.0;
  for (double c : r.weights) norm += c * c;
  if (!(std::fabs(norm - 1.0) < 1e-12)) {
    throw Error(Errc::WeightNormViolation,
                "sum of squared weights is " + std::to_string(norm) + ", expected 1");
  }

  r.alpha = layers.front().alpha;
  r.critical = layers.front().critical;
  bool all_deltas = true;
  double delta = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    const DenseTestReport& layer = layers[i];
    double s = layer.statistic_prime;
    if (which == DenseStatistic::Standard) {
      if (!layer.statistic) {
        throw Error(Errc::ZeroTriangles,
                    "layer m=" + std::to_string(layer.m) + " has no hypertriangles");
      }
      s = *layer.statistic;
    }
    r.layers.push_back(layer.m);
    r.statistics.push_back(s);
    r.statistic += r.weights[i] * s;
    if (layer.theory) {
      r.deltas.emplace_back(layer.theory->noncentrality);
      delta += r.weights[i] * layer.theory->noncentrality;
    } else {
      r.deltas.emplace_back(std::nullopt);
      all_deltas = false;
    }
  }
  if (all_deltas) r.delta = delta;
  r.reject = std::fabs(r.statistic) > r.critical;
  return r;
}

std::vector<double> optimal_weights(std::span<const double> deltas) {
  double norm = 0.0;
  for (double d : deltas) norm += d * d;
  if (!(norm > 0.0)) throw Error(Errc::AllZeroDeltas, "all layer deltas are zero");
  norm = std::sqrt(norm);
  std::vector<double> out;
  out.reserve(deltas.size());
  for (double d : deltas) out.push_back(d / norm);
  return out;
}

}  // namespace hypertest
