#include <cmath>
#include <string>
#include <vector>

#include "hypertest/combinatorics.hpp"
#include "hypertest/error.hpp"
#include "hypertest/stats.hpp"

namespace hypertest {
namespace {

double ipow(double base, std::size_t e) {
  double r = 1.0;
  for (std::size_t i = 0; i < e; ++i) r *= base;
  return r;
}

double factorial_d(std::size_t k) { return std::tgamma(static_cast<double>(k) + 1.0); }

void check_params(const SparseRegimeParams& p) {
  if (p.m < 2) throw Error(Errc::InvalidArgument, "hyperedge size m must be at least 2");
  if (p.k < 1) throw Error(Errc::InvalidArgument, "number of communities k must be at least 1");
}

}  // namespace

double snr_kappa(const SparseRegimeParams& p) {
  check_params(p);
  const double km = ipow(static_cast<double>(p.k), p.m - 1);
  const double avg = p.a + (km - 1.0) * p.b;
  if (!(avg > 0.0)) {
    throw Error(Errc::DegenerateDenominator, "a + (k^{m-1}-1) b must be positive");
  }
  return (p.a - p.b) * (p.a - p.b) / (km * factorial_d(p.m - 2) * avg);
}

double lambda_m(const SparseRegimeParams& p) {
  check_params(p);
  const double km = ipow(static_cast<double>(p.k), p.m - 1);
  return (p.a + (km - 1.0) * p.b) / (km * factorial_d(p.m - 2));
}

CycleMoments cycle_null_moments(const SparseRegimeParams& p, std::size_t kn) {
  if (kn < 2) throw Error(Errc::LengthTooSmall, "k_n must be at least 2");
  const double km = ipow(static_cast<double>(p.k), p.m - 1);
  const double lam = lambda_m(p);
  const double kd = static_cast<double>(kn);
  CycleMoments out;
  out.mu0 = ipow(lam, kn) / (2.0 * kd);
  const double signal = (p.a - p.b) / (km * factorial_d(p.m - 2));
  out.mu1 = out.mu0 + (static_cast<double>(p.k) - 1.0) / (2.0 * kd) * ipow(signal, kn);
  return out;
}

std::size_t select_kn(std::size_t n, double lambda, double delta0, double gamma) {
  if (!(lambda > 1.0)) {
    throw Error(Errc::DegenerateRate, "lambda_m must exceed 1, got " + std::to_string(lambda));
  }
  if (n < 3) throw Error(Errc::InvalidArgument, "n must be at least 3");
  if (!(gamma > 1.0)) throw Error(Errc::InvalidArgument, "gamma must exceed 1");
  if (!(delta0 > 0.0 && delta0 < 2.0)) throw Error(Errc::InvalidArgument, "delta0 must lie in (0, 2)");
  const double inner = std::log(static_cast<double>(n)) / std::log(gamma);
  const double value = delta0 * std::log(inner) / std::log(lambda);
  const double kn = std::floor(value + 1e-9);
  return kn < 2.0 ? 2 : static_cast<std::size_t>(kn);
}

CycleTestReport cycle_test_from_count(std::uint64_t cycles, const SparseRegimeParams& p,
                                      std::size_t kn, double alpha) {
  CycleTestReport r;
  r.kn = kn;
  r.cycles = cycles;
  r.lambda = lambda_m(p);
  const CycleMoments mu = cycle_null_moments(p, kn);
  r.mu0 = mu.mu0;
  r.mu1 = mu.mu1;
  if (!(r.mu0 > 0.0)) throw Error(Errc::DegenerateRate, "null cycle mean is zero");
  r.statistic = (static_cast<double>(cycles) - r.mu0) / std::sqrt(r.mu0);
  r.alpha = alpha;
  r.critical = normal_quantile(alpha);
  r.reject = std::fabs(r.statistic) > r.critical;
  return r;
}

CycleTestReport cycle_test(const Hypergraph& g, const SparseRegimeParams& p, std::size_t kn,
                           double alpha) {
  if (g.uniform_size() && *g.uniform_size() != p.m) {
    throw Error(Errc::InvalidArgument, "hypergraph is " + std::to_string(*g.uniform_size()) +
                                           "-uniform but parameters give m=" + std::to_string(p.m));
  }
  normal_quantile(alpha);  // validate before the expensive count
  return cycle_test_from_count(count_loose_cycles(g, kn), p, kn, alpha);
}

EstimateReport estimate_ab(std::uint64_t edges, double cycles, std::size_t n, std::size_t m,
                           std::size_t k, std::size_t kn) {
  if (m < 2 || k < 2 || kn < 2 || n < m) {
    throw Error(Errc::InvalidArgument, "estimate_ab needs m >= 2, k >= 2, k_n >= 2 and n >= m");
  }
  EstimateReport r;
  r.edges = edges;
  r.cycles = cycles;
  r.kn = kn;
  r.m = m;
  r.k = k;
  r.n = n;
  const double fact = factorial_d(m - 2);
  r.lambda_hat = std::pow(static_cast<double>(n), static_cast<double>(m - 1)) *
                 static_cast<double>(edges) / (fact * binomial(n, m));
  const double kd = static_cast<double>(kn);
  const double radicand = 2.0 * kd * cycles - ipow(r.lambda_hat, kn);
  if (radicand < 0.0) {
    r.failure = Errc::NegativeRadicand;
    return r;
  }
  const double f = std::pow(radicand, 1.0 / kd);
  const double shrink = std::pow(static_cast<double>(k) - 1.0, -1.0 / kd);
  const double km = ipow(static_cast<double>(k), m - 1);
  r.f_hat = f;
  r.a_hat = fact * (r.lambda_hat + (km - 1.0) * shrink * f);
  r.b_hat = fact * (r.lambda_hat - shrink * f);
  return r;
}

ContiguityConstants contiguity_constants(std::size_t m, std::size_t k) {
  if (m < 3 || k < 2) {
    throw Error(Errc::InvalidOrder, "contiguity constants need m >= 3 and k >= 2");
  }
  const double pairs = binomial(m, 2);
  const double kd = static_cast<double>(k);
  // ceil(m/2 - 1) == floor((m-1)/2) in integers
  const std::size_t upper1 = (m - 1) / 2;
  double s1 = 0.0;
  for (std::size_t i = 1; i <= upper1; ++i) s1 += std::pow(kd, -(2.0 * i - 1.0)) * binomial(m, i + 2);
  double s2 = 0.0;
  for (std::size_t i = 1; i <= m - 2; ++i) s2 += std::pow(kd, -2.0 * i) * binomial(m, i + 2);
  ContiguityConstants c;
  c.tau1 = s1 / pairs;
  c.tau2 = 1.0 + s2 / pairs;
  c.kappa_threshold = 1.0 / (c.tau2 * (kd * kd - 1.0));
  return c;
}

double trace_m0_power(std::size_t m, std::size_t k, double a, double b, unsigned j) {
  if (j < 1) throw Error(Errc::InvalidArgument, "power j must be at least 1");
  const double km = ipow(static_cast<double>(k), m - 1);
  return std::pow(a + (km - 1.0) * b, j) + (static_cast<double>(k) - 1.0) * std::pow(a - b, j);
}

double trace_m0_power_explicit(std::size_t m, std::size_t k, double a, double b, unsigned j) {
  if (j < 1) throw Error(Errc::InvalidArgument, "power j must be at least 1");
  if (m < 2) throw Error(Errc::InvalidArgument, "m must be at least 2");
  const double km2 = ipow(static_cast<double>(k), m - 2);
  const double diag = a + (km2 - 1.0) * b;
  const double off = km2 * b;
  std::vector<double> m0(k * k, off), acc(k * k, 0.0), tmp(k * k);
  for (std::size_t i = 0; i < k; ++i) {
    m0[i * k + i] = diag;
    acc[i * k + i] = 1.0;
  }
  for (unsigned step = 0; step < j; ++step) {
    for (std::size_t r = 0; r < k; ++r) {
      for (std::size_t c = 0; c < k; ++c) {
        double s = 0.0;
        for (std::size_t t = 0; t < k; ++t) s += acc[r * k + t] * m0[t * k + c];
        tmp[r * k + c] = s;
      }
    }
    acc.swap(tmp);
  }
  double tr = 0.0;
  for (std::size_t i = 0; i < k; ++i) tr += acc[i * k + i];
  return tr;
}

}  // namespace hypertest
