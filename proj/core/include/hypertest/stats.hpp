#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hypertest/error.hpp"
#include "hypertest/hypergraph.hpp"
#include "hypertest/motifs.hpp"

namespace hypertest {

// ---------------------------------------------------------------------------
// Normal distribution

/// z_{alpha/2}: the (1 - alpha/2)-quantile of N(0, 1). Throws AlphaOutOfRange
/// unless 0 < alpha < 1.
double normal_quantile(double alpha);

/// Inverse standard normal CDF (Wichura's AS241, about 16 significant digits).
/// Throws InvalidArgument unless 0 < p < 1.
double normal_inverse_cdf(double p);

double normal_cdf(double x) noexcept;

// ---------------------------------------------------------------------------
// Bounded-degree regime

/// p = a / n^{m-1} within communities, q = b / n^{m-1} across.
struct SparseRegimeParams {
  double a = 0.0;
  double b = 0.0;
  std::size_t m = 2;
  std::size_t k = 2;
};

/// (a-b)^2 / (k^{m-1} (m-2)! [a + (k^{m-1}-1) b]). Throws DegenerateDenominator.
double snr_kappa(const SparseRegimeParams& p);

/// (a + (k^{m-1}-1) b) / (k^{m-1} (m-2)!).
double lambda_m(const SparseRegimeParams& p);

struct CycleMoments {
  double mu0 = 0.0;  ///< null mean of the loose k_n-cycle count
  double mu1 = 0.0;  ///< alternative mean
};

CycleMoments cycle_null_moments(const SparseRegimeParams& p, std::size_t kn);

/// floor(delta0 * log_lambda(log_gamma n) + 1e-9), at least 2.
/// Throws DegenerateRate when lambda <= 1, InvalidArgument for the other ranges.
std::size_t select_kn(std::size_t n, double lambda, double delta0 = 1.99, double gamma = 1.01);

struct CycleTestReport {
  std::size_t kn = 0;
  std::uint64_t cycles = 0;  ///< X_{k_n}
  double lambda = 0.0;
  double mu0 = 0.0;
  double mu1 = 0.0;
  double statistic = 0.0;  ///< (X - mu0) / sqrt(mu0)
  double alpha = 0.05;
  double critical = 0.0;
  bool reject = false;
};

/// Counts loose k_n-cycles in g and tests against the Poisson null mean.
CycleTestReport cycle_test(const Hypergraph& g, const SparseRegimeParams& p, std::size_t kn,
                           double alpha);

/// Same decision rule from an already computed cycle count.
CycleTestReport cycle_test_from_count(std::uint64_t cycles, const SparseRegimeParams& p,
                                      std::size_t kn, double alpha);

struct EstimateReport {
  std::uint64_t edges = 0;
  double cycles = 0.0;
  std::size_t kn = 0;
  std::size_t m = 2;
  std::size_t k = 2;
  std::size_t n = 0;
  double lambda_hat = 0.0;
  std::optional<double> f_hat;
  std::optional<double> a_hat;
  std::optional<double> b_hat;
  /// NegativeRadicand when 2 k_n X < lambda_hat^{k_n}; the estimates are then absent.
  std::optional<Errc> failure;
};

/// Method-of-moments estimates of (a, b) from the hyperedge count and the
/// loose k_n-cycle count.
EstimateReport estimate_ab(std::uint64_t edges, double cycles, std::size_t n, std::size_t m,
                           std::size_t k, std::size_t kn);

// ---------------------------------------------------------------------------
// Dense regime

/// p = a / n^{m-1}, q = b / n^{m-1}; W has mean `mean_weight`.
struct DenseRegimeParams {
  double a = 0.0;
  double b = 0.0;
  std::size_t m = 2;
  std::size_t k = 2;
  std::size_t l = 1;
  double mean_weight = 1.0;
};

struct TheoreticalEVT {
  double e = 0.0;
  double v = 0.0;
  double t = 0.0;
  double script_t = 0.0;  ///< T - (V/E)^3
  /// sqrt(C(n, 3(m-l)) (m-l)) * script_t / sqrt(T); the scale of the
  /// reference rate-ratio values.
  double delta = 0.0;
  /// sqrt(hypertriangle_placements) * script_t / sqrt(T); the mean shift of
  /// `DenseTestReport::statistic`. Equal to `delta` when m = 2.
  double noncentrality = 0.0;
};

/// Expected densities under the balanced k-community model. Throws DegenerateE
/// when E = 0, OverlapOutOfRange for an inadmissible l.
TheoreticalEVT theoretical_evt(const DenseRegimeParams& p, std::size_t n);

struct DenseTestReport {
  std::size_t n = 0;
  std::size_t m = 2;
  std::size_t l = 1;
  EmpiricalEVT empirical;
  std::optional<TheoreticalEVT> theory;
  double scale = 0.0;  ///< sqrt(hypertriangle placements)
  std::optional<double> statistic;  ///< absent when T_hat = 0
  double statistic_prime = 0.0;
  double alpha = 0.05;
  double critical = 0.0;
  bool reject = false;
  bool reject_prime = false;
};

/// Both dense statistics from the empirical densities of g. Throws
/// ZeroDensity when g has no hyperedges.
DenseTestReport dense_test(const Hypergraph& g, std::size_t l, double alpha,
                           const std::optional<DenseRegimeParams>& known = std::nullopt);

/// Same as dense_test from precomputed densities of an m-uniform hypergraph on n vertices.
DenseTestReport dense_test_from_evt(const EmpiricalEVT& evt, std::size_t n, std::size_t m,
                                    std::size_t l, double alpha,
                                    const std::optional<DenseRegimeParams>& known = std::nullopt);

/// Overlap l whose density band n^{l-1} << a_n << n^{l-2/3} contains the
/// observed a_n ~ e_hat * n^{m-1}; nullopt when no admissible band does.
std::optional<std::size_t> suggest_overlap(double e_hat, std::size_t n, std::size_t m);

enum class DenseStatistic { Standard, Prime };

struct CombinedTestReport {
  std::vector<std::size_t> layers;
  std::vector<double> statistics;
  std::vector<double> weights;
  std::vector<std::optional<double>> deltas;  ///< per-layer noncentrality, when known
  double statistic = 0.0;
  std::optional<double> delta;  ///< sum c_m delta_m when every layer carries one
  double alpha = 0.05;
  double critical = 0.0;
  bool reject = false;
};

/// Weighted sum of per-layer dense statistics. Default weights are equal with
/// unit norm. Throws WeightNormViolation when |sum c^2 - 1| >= 1e-12,
/// ZeroTriangles when a requested standard statistic is undefined.
CombinedTestReport combined_test(std::span<const DenseTestReport> layers,
                                 std::optional<std::span<const double>> weights = std::nullopt,
                                 DenseStatistic which = DenseStatistic::Prime);

/// delta / ||delta||_2. Throws AllZeroDeltas.
std::vector<double> optimal_weights(std::span<const double> deltas);

// ---------------------------------------------------------------------------
// Contiguity constants and regime map

struct ContiguityConstants {
  double tau1 = 0.0;
  double tau2 = 0.0;
  /// 1 / (tau2 (k^2 - 1))
  double kappa_threshold = 0.0;
};

/// Throws InvalidOrder unless m >= 3 and k >= 2.
ContiguityConstants contiguity_constants(std::size_t m, std::size_t k);

/// trace(M0^j) = (a + (k^{m-1}-1) b)^j + (k-1)(a-b)^j.
double trace_m0_power(std::size_t m, std::size_t k, double a, double b, unsigned j);

/// trace(M0^j) by repeated k x k matrix multiplication, M0 having diagonal
/// a + (k^{m-2}-1) b and off-diagonal k^{m-2} b.
double trace_m0_power_explicit(std::size_t m, std::size_t k, double a, double b, unsigned j);

enum class RegimeKind { Indistinguishable, BoundedDegree, DenseTestable, UnknownBand };
enum class BoundedVerdict { Distinguishable, ContiguousBand, Unknown };

struct RegimeVerdict {
  RegimeKind kind = RegimeKind::UnknownBand;
  std::optional<BoundedVerdict> bounded;
  std::optional<std::size_t> l;
  std::optional<double> kappa;
  std::optional<ContiguityConstants> constants;  ///< m >= 3 only
};

/// Phase diagram lookup for p ~ n^{-alpha_exp}. At alpha_exp = m-1 kappa is
/// required (MissingKappa). `l_candidates` empty means every 1 <= l <= m/2.
RegimeVerdict regime_classify(std::size_t m, std::size_t k, double alpha_exp,
                              std::optional<double> kappa,
                              std::span<const std::size_t> l_candidates = {});

/// "indistinguishable (contiguous)", "distinguishable", "contiguous band",
/// "unknown", "dense testable (l=N)" or "unknown band".
std::string describe(const RegimeVerdict& v);

}  // namespace hypertest
