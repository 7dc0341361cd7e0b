#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "hypertest/hypergraph.hpp"
#include "hypertest/philox.hpp"

namespace hypertest {

using Label = std::uint32_t;
using Labels = std::vector<Label>;

/// Law of the community label of each vertex. Probabilities must sum to 1.
struct CommunityDistribution {
  std::vector<double> probs{1.0};

  static CommunityDistribution uniform(std::size_t k);
  /// Two communities; the smaller one has probability `smaller` (0 < smaller <= 0.5).
  static CommunityDistribution imbalanced(double smaller);

  std::size_t k() const noexcept { return probs.size(); }
  bool is_uniform() const noexcept;
  /// Throws InvalidDistribution.
  void validate() const;

  friend bool operator==(const CommunityDistribution&, const CommunityDistribution&) = default;
};

/// Law of the degree-correction weights W_i. A valid law has E[W^2] = 1 and
/// E[W] != 0 with nonnegative support.
struct WeightLaw {
  std::vector<double> values{1.0};
  std::vector<double> probs{1.0};

  static WeightLaw dirac_one() { return {}; }
  /// W = w1 with probability pi, otherwise w2.
  static WeightLaw two_point(double w1, double w2, double pi);

  double mean() const noexcept;
  double second_moment() const noexcept;
  double max_value() const noexcept;
  bool is_dirac_one() const noexcept { return values.size() == 1 && values[0] == 1.0; }
  /// Throws InvalidWeightLaw.
  void validate() const;

  friend bool operator==(const WeightLaw&, const WeightLaw&) = default;
};

/// Parameters of one m-uniform (degree-corrected) block model layer.
struct LayerSpec {
  std::size_t n = 0;
  std::size_t m = 2;
  double p_within = 0.0;
  double p_between = 0.0;
  CommunityDistribution communities;
  WeightLaw weights;

  std::size_t k() const noexcept { return communities.k(); }
  /// Throws InvalidLayerSpec / InvalidDistribution / InvalidWeightLaw.
  void validate() const;
};

/// Probability threshold at or above which samplers walk every m-subset
/// instead of skipping geometrically between candidates.
inline constexpr double kDenseEnumerationThreshold = 0.25;

Labels sample_labels(const CommunityDistribution& dist, std::size_t n, RngStream& rng);
std::vector<double> sample_weights(const WeightLaw& law, std::size_t n, RngStream& rng);

struct LayerSample {
  Hypergraph graph;
  Labels labels;
  std::vector<double> weights;
};

/// Draws labels and weights, then includes each m-subset independently with
/// probability W_{i1}...W_{im} * (p_within if all labels agree else p_between).
/// Throws ProbabilityOverflow when a realized probability exceeds 1.
LayerSample sample_uniform_hsbm(const LayerSpec& spec, RngStream& rng);

/// Edge sampling conditional on given labels and weights.
Hypergraph sample_hsbm_given(const LayerSpec& spec, std::span<const Label> labels,
                             std::span<const double> weights, RngStream& rng);

/// m-uniform Erdős–Rényi hypergraph: each m-subset independently with probability p.
Hypergraph sample_uniform_er(std::size_t n, std::size_t m, double p, RngStream& rng);

/// Common hyperedge probability of the Erdős–Rényi model with the same
/// average degree as the k-community block model:
/// (p_within + (k^{m-1} - 1) p_between) / k^{m-1}.
double matched_null_probability(double p_within, double p_between, std::size_t m, std::size_t k);

struct NonuniformSample {
  NonuniformHypergraph graph;
  /// One label vector per layer (all identical when labels are shared).
  std::vector<Labels> labels;
  std::vector<std::vector<double>> weights;
};

/// Independent layers on a common vertex set. With `shared_labels`, one label
/// vector is drawn once and reused by every layer; all specs must then use
/// the same community distribution.
NonuniformSample sample_nonuniform(std::span<const LayerSpec> specs, bool shared_labels,
                                   RngStream& rng);

}  // namespace hypertest
