#include "hypertest/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "hypertest/error.hpp"

namespace hypertest {
namespace {

__extension__ using u128 = unsigned __int128;

std::string fmt_double(double x) {
  std::string s = std::to_string(x);
  return s;
}

/// Binomial table C(a, b) for a <= n, b <= m in 128-bit arithmetic.
class BinomialTable {
 public:
  BinomialTable(std::size_t n, std::size_t m) : m_(m), table_((n + 1) * (m + 1), 0) {
    for (std::size_t a = 0; a <= n; ++a) {
      at(a, 0) = 1;
      for (std::size_t b = 1; b <= std::min(a, m); ++b) {
        at(a, b) = at(a - 1, b - 1) + (b <= a - 1 ? at(a - 1, b) : 0);
      }
    }
  }
  u128 operator()(std::size_t a, std::size_t b) const { return b > m_ ? 0 : table_[a * (m_ + 1) + b]; }

 private:
  u128& at(std::size_t a, std::size_t b) { return table_[a * (m_ + 1) + b]; }
  std::size_t m_;
  std::vector<u128> table_;
};

/// Writes the lexicographically rank-th m-subset of {0..n-1} into `out`.
void unrank_combination(const BinomialTable& binom, std::size_t n, std::size_t m, u128 rank,
                        std::span<Vertex> out) {
  std::size_t lo = 0;
  for (std::size_t i = 0; i < m; ++i) {
    const std::size_t slots = m - i;
    const u128 total = binom(n - lo, slots);
    const u128 target = total - rank;  // need C(n - x, slots) >= target
    std::size_t a = lo, b = n - slots;
    while (a < b) {
      std::size_t mid = a + (b - a + 1) / 2;
      if (binom(n - mid, slots) >= target) {
        a = mid;
      } else {
        b = mid - 1;
      }
    }
    rank -= total - binom(n - a, slots);
    out[i] = static_cast<Vertex>(a);
    lo = a + 1;
  }
}

/// Advances `comb` to the next m-subset in lexicographic order.
bool next_combination(std::span<Vertex> comb, std::size_t n) {
  const std::size_t m = comb.size();
  std::size_t i = m;
  while (i > 0) {
    --i;
    if (comb[i] < n - m + i) {
      ++comb[i];
      for (std::size_t j = i + 1; j < m; ++j) comb[j] = comb[j - 1] + 1;
      return true;
    }
  }
  return false;
}

/// Failures before the first success of a Bernoulli(p) sequence.
double geometric_skip(double p, RngStream& rng) {
  if (p >= 1.0) return 0.0;
  return std::floor(std::log(rng.uniform_pos()) / std::log1p(-p));
}

/// Includes each m-subset S of {0..n-1} with probability prob(S) <= p_max.
template <class ProbFn>
Hypergraph sample_subsets(std::size_t n, std::size_t m, double p_max, ProbFn&& prob,
                          RngStream& rng) {
  HypergraphBuilder builder(n, m);
  if (p_max <= 0.0 || n < m || m < 2) return std::move(builder).finish();

  std::vector<Vertex> comb(m);
  if (p_max >= kDenseEnumerationThreshold) {
    std::iota(comb.begin(), comb.end(), Vertex{0});
    do {
      const double p = prob(std::span<const Vertex>(comb));
      if (p > 0.0 && rng.uniform01() < p) builder.add(comb);
    } while (next_combination(comb, n));
    return std::move(builder).finish();
  }

  const BinomialTable binom(n, m);
  const u128 total = binom(n, m);
  const double total_d = static_cast<double>(total);
  u128 next = 0;
  while (true) {
    const double skip = geometric_skip(p_max, rng);
    if (static_cast<double>(next) + skip >= total_d) break;
    const u128 rank = next + static_cast<u128>(skip);
    if (rank >= total) break;
    unrank_combination(binom, n, m, rank, comb);
    const double p = prob(std::span<const Vertex>(comb));
    if (p >= p_max || rng.uniform01() * p_max < p) builder.add(comb);
    next = rank + 1;
  }
  return std::move(builder).finish();
}

}  // namespace

CommunityDistribution CommunityDistribution::uniform(std::size_t k) {
  if (k == 0) throw Error(Errc::InvalidDistribution, "k must be at least 1");
  return {std::vector<double>(k, 1.0 / static_cast<double>(k))};
}

CommunityDistribution CommunityDistribution::imbalanced(double smaller) {
  if (!(smaller > 0.0 && smaller <= 0.5)) {
    throw Error(Errc::InvalidDistribution,
                "smaller-community probability must lie in (0, 0.5], got " + fmt_double(smaller));
  }
  return {{smaller, 1.0 - smaller}};
}

bool CommunityDistribution::is_uniform() const noexcept {
  return std::all_of(probs.begin(), probs.end(),
                     [&](double p) { return std::abs(p - 1.0 / static_cast<double>(k())) < 1e-12; });
}

void CommunityDistribution::validate() const {
  if (probs.empty()) throw Error(Errc::InvalidDistribution, "k must be at least 1");
  double sum = 0.0;
  for (double p : probs) {
    if (!(p >= 0.0)) throw Error(Errc::InvalidDistribution, "negative label probability");
    sum += p;
  }
  if (std::abs(sum - 1.0) > 1e-12) {
    throw Error(Errc::InvalidDistribution, "label probabilities sum to " + fmt_double(sum));
  }
}

WeightLaw WeightLaw::two_point(double w1, double w2, double pi) {
  WeightLaw law{{w1, w2}, {pi, 1.0 - pi}};
  law.validate();
  return law;
}

double WeightLaw::mean() const noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += values[i] * probs[i];
  return s;
}

double WeightLaw::second_moment() const noexcept {
  double s = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) s += values[i] * values[i] * probs[i];
  return s;
}

double WeightLaw::max_value() const noexcept {
  double w = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (probs[i] > 0.0) w = std::max(w, values[i]);
  }
  return w;
}

void WeightLaw::validate() const {
  if (values.empty() || values.size() != probs.size()) {
    throw Error(Errc::InvalidWeightLaw, "values and probabilities must be non-empty and aligned");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!(values[i] >= 0.0)) throw Error(Errc::InvalidWeightLaw, "weights must be nonnegative");
    if (!(probs[i] >= 0.0 && probs[i] <= 1.0)) {
      throw Error(Errc::InvalidWeightLaw, "weight probabilities must lie in [0, 1]");
    }
    total += probs[i];
  }
  if (std::abs(total - 1.0) > 1e-12) throw Error(Errc::InvalidWeightLaw, "probabilities must sum to 1");
  if (std::abs(second_moment() - 1.0) > 1e-9) {
    throw Error(Errc::InvalidWeightLaw, "E[W^2] = " + fmt_double(second_moment()) + ", must be 1");
  }
  if (mean() == 0.0) throw Error(Errc::InvalidWeightLaw, "E[W] must be nonzero");
}

void LayerSpec::validate() const {
  communities.validate();
  weights.validate();
  if (m < 2) throw Error(Errc::InvalidLayerSpec, "hyperedge size m must be at least 2");
  if (!(p_between >= 0.0 && p_between <= p_within && p_within <= 1.0)) {
    throw Error(Errc::InvalidLayerSpec, "need 0 <= p_between <= p_within <= 1, got p_within=" +
                                            fmt_double(p_within) + " p_between=" + fmt_double(p_between));
  }
}

Labels sample_labels(const CommunityDistribution& dist, std::size_t n, RngStream& rng) {
  dist.validate();
  std::vector<double> cdf(dist.probs.size());
  std::partial_sum(dist.probs.begin(), dist.probs.end(), cdf.begin());
  Labels labels(n);
  for (auto& label : labels) {
    const double u = rng.uniform01();
    auto it = std::upper_bound(cdf.begin(), cdf.end() - 1, u);
    label = static_cast<Label>(it - cdf.begin());
  }
  return labels;
}

std::vector<double> sample_weights(const WeightLaw& law, std::size_t n, RngStream& rng) {
  law.validate();
  if (law.values.size() == 1) return std::vector<double>(n, law.values[0]);
  std::vector<double> cdf(law.probs.size());
  std::partial_sum(law.probs.begin(), law.probs.end(), cdf.begin());
  std::vector<double> w(n);
  for (auto& x : w) {
    const double u = rng.uniform01();
    auto it = std::upper_bound(cdf.begin(), cdf.end() - 1, u);
    x = law.values[static_cast<std::size_t>(it - cdf.begin())];
  }
  return w;
}

Hypergraph sample_hsbm_given(const LayerSpec& spec, std::span<const Label> labels,
                             std::span<const double> weights, RngStream& rng) {
  spec.validate();
  if (labels.size() != spec.n || weights.size() != spec.n) {
    throw Error(Errc::InvalidLayerSpec, "labels/weights length must equal n");
  }
  const std::size_t m = spec.m;

  // Largest realized weight product bounds every inclusion probability.
  std::vector<double> sorted_w(weights.begin(), weights.end());
  std::sort(sorted_w.begin(), sorted_w.end(), std::greater<>());
  double w_top = 1.0;
  for (std::size_t i = 0; i < std::min(m, sorted_w.size()); ++i) w_top *= sorted_w[i];
  const double p_max = w_top * spec.p_within;
  if (p_max > 1.0 && spec.n >= m) {
    throw Error(Errc::ProbabilityOverflow,
                "effective hyperedge probability " + fmt_double(p_max) + " exceeds 1");
  }

  const bool unit_weights = std::all_of(weights.begin(), weights.end(), [](double w) { return w == 1.0; });
  auto prob = [&](std::span<const Vertex> e) {
    bool same = true;
    double w = 1.0;
    for (Vertex v : e) {
      same = same && labels[v] == labels[e[0]];
      if (!unit_weights) w *= weights[v];
    }
    return w * (same ? spec.p_within : spec.p_between);
  };
  return sample_subsets(spec.n, m, p_max, prob, rng);
}

LayerSample sample_uniform_hsbm(const LayerSpec& spec, RngStream& rng) {
  spec.validate();
  LayerSample out;
  out.labels = sample_labels(spec.communities, spec.n, rng);
  out.weights = sample_weights(spec.weights, spec.n, rng);
  out.graph = sample_hsbm_given(spec, out.labels, out.weights, rng);
  return out;
}

Hypergraph sample_uniform_er(std::size_t n, std::size_t m, double p, RngStream& rng) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(Errc::InvalidLayerSpec, "probability must lie in [0, 1], got " + fmt_double(p));
  }
  if (m < 2) throw Error(Errc::InvalidLayerSpec, "hyperedge size m must be at least 2");
  return sample_subsets(n, m, p, [p](std::span<const Vertex>) { return p; }, rng);
}

double matched_null_probability(double p_within, double p_between, std::size_t m, std::size_t k) {
  const double km1 = std::pow(static_cast<double>(k), static_cast<double>(m - 1));
  return (p_within + (km1 - 1.0) * p_between) / km1;
}

NonuniformSample sample_nonuniform(std::span<const LayerSpec> specs, bool shared_labels,
                                   RngStream& rng) {
  if (specs.empty()) throw Error(Errc::InvalidLayerSpec, "at least one layer is required");
  const std::size_t n = specs.front().n;
  for (const auto& s : specs) {
    s.validate();
    if (s.n != n) throw Error(Errc::InvalidLayerSpec, "all layers must share n");
    if (shared_labels && !(s.communities == specs.front().communities)) {
      throw Error(Errc::InvalidLayerSpec, "shared labels need one community distribution");
    }
  }
  for (std::size_t i = 0; i < specs.size(); ++i) {
    for (std::size_t j = i + 1; j < specs.size(); ++j) {
      if (specs[i].m == specs[j].m) {
        throw Error(Errc::InvalidLayerSpec, "duplicate layer size m=" + std::to_string(specs[i].m));
      }
    }
  }

  NonuniformSample out;
  out.graph = NonuniformHypergraph(n);
  Labels shared;
  if (shared_labels) shared = sample_labels(specs.front().communities, n, rng);
  for (const auto& s : specs) {
    Labels labels = shared_labels ? shared : sample_labels(s.communities, n, rng);
    std::vector<double> weights = sample_weights(s.weights, n, rng);
    out.graph.set_layer(s.m, sample_hsbm_given(s, labels, weights, rng));
    out.labels.push_back(std::move(labels));
    out.weights.push_back(std::move(weights));
  }
  return out;
}

}  // namespace hypertest
