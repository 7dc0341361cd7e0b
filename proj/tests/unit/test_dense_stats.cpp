#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include "hypertest/generators.hpp"
#include "hypertest/motifs.hpp"
#include "hypertest/stats.hpp"
#include "test_util.hpp"

using namespace hypertest;
using testutil::code_of;

namespace {

DenseRegimeParams dparams(double a, double b, std::size_t m, std::size_t l, std::size_t k = 2) {
  DenseRegimeParams p;
  p.a = a;
  p.b = b;
  p.m = m;
  p.k = k;
  p.l = l;
  return p;
}

DenseTestReport report_with(double prime, std::optional<double> standard = std::nullopt,
                            std::size_t m = 2) {
  DenseTestReport r;
  r.m = m;
  r.statistic_prime = prime;
  r.statistic = standard;
  r.alpha = 0.05;
  r.critical = normal_quantile(0.05);
  return r;
}

}  // namespace

TEST(TheoreticalEvt, NoSignalWhenEqual) {
  for (std::size_t m : {2u, 3u, 4u}) {
    const TheoreticalEVT t = theoretical_evt(dparams(7, 7, m, 1), 100);
    EXPECT_EQ(t.script_t, 0.0);
    EXPECT_EQ(t.delta, 0.0);
    EXPECT_EQ(t.noncentrality, 0.0);
  }
}

TEST(TheoreticalEvt, GraphCaseClosedForm) {
  const std::size_t n = 50;
  for (auto [a, b] : {std::pair{9.0, 1.0}, std::pair{2.0, 6.0}, std::pair{4.0, 3.0}}) {
    const TheoreticalEVT t = theoretical_evt(dparams(a, b, 2, 1), n);
    const double n3 = std::pow(double(n), 3);
    EXPECT_NEAR(t.script_t * n3, std::pow(a - b, 3) / 8.0, 1e-9 * std::fabs(std::pow(a - b, 3)));
    EXPECT_NEAR(t.e * n, (a + b) / 2.0, 1e-12);
    EXPECT_DOUBLE_EQ(t.delta, t.noncentrality);
  }
}

TEST(TheoreticalEvt, TightOverlapPositive) {
  const TheoreticalEVT t = theoretical_evt(dparams(5, 1, 4, 2), 60);
  EXPECT_GT(t.script_t, 0.0);
  EXPECT_GT(t.delta, 0.0);
}

TEST(TheoreticalEvt, Errors) {
  EXPECT_EQ(code_of([] { theoretical_evt(dparams(0, 0, 3, 1), 50); }), Errc::DegenerateE);
  EXPECT_EQ(code_of([] { theoretical_evt(dparams(1, 1, 3, 2), 50); }), Errc::OverlapOutOfRange);
  EXPECT_EQ(code_of([] { theoretical_evt(dparams(1, 1, 3, 0), 50); }), Errc::OverlapOutOfRange);
}

TEST(TheoreticalEvt, MeanMatchesSampledDensities) {
  const std::size_t n = 24;
  LayerSpec spec;
  spec.n = n;
  spec.m = 2;
  spec.p_within = 0.6;
  spec.p_between = 0.2;
  spec.communities = CommunityDistribution::uniform(2);
  double e = 0, v = 0, t = 0;
  const int reps = 400;
  for (std::uint32_t r = 0; r < reps; ++r) {
    RngStream rng = RngStream::for_replicate(77, 0, r);
    const EmpiricalEVT evt = empirical_evt(sample_uniform_hsbm(spec, rng).graph, 1);
    e += evt.e_hat;
    v += evt.v_hat;
    t += evt.t_hat;
  }
  const TheoreticalEVT th = theoretical_evt(dparams(0.6 * n, 0.2 * n, 2, 1), n);
  // labels are random here, so the balanced formulas hold only approximately
  EXPECT_NEAR(e / reps, th.e, 0.03 * th.e);
  EXPECT_NEAR(v / reps, th.v, 0.06 * th.v);
  EXPECT_NEAR(t / reps, th.t, 0.10 * th.t);
}

TEST(DenseTest, ZeroAtEquality) {
  const DenseTestReport r = dense_test_from_evt({0.5, 0.25, 0.125}, 10, 2, 1, 0.05);
  ASSERT_TRUE(r.statistic);
  EXPECT_NEAR(*r.statistic, 0.0, 1e-12);
  EXPECT_NEAR(r.statistic_prime, 0.0, 1e-12);
  EXPECT_FALSE(r.reject);
  EXPECT_FALSE(r.reject_prime);
}

TEST(DenseTest, HandHypergraph) {
  const Hypergraph g(6, {{0, 1, 2}, {2, 3, 4}, {4, 5, 0}, {0, 2, 4}});
  const DenseTestReport r = dense_test(g, 1, 0.05);
  const EmpiricalEVT oracle = tensor_sum_oracle(g, 1);
  EXPECT_NEAR(r.empirical.e_hat, oracle.e_hat, 1e-15);
  EXPECT_NEAR(r.empirical.v_hat, oracle.v_hat, 1e-15);
  EXPECT_NEAR(r.empirical.t_hat, oracle.t_hat, 1e-15);
  EXPECT_DOUBLE_EQ(r.empirical.e_hat, 4.0 / 20.0);
  const double scale = std::sqrt(hypertriangle_placements(6, 3, 1));
  EXPECT_DOUBLE_EQ(r.scale, scale);
  const double ratio = oracle.v_hat / oracle.e_hat;
  ASSERT_TRUE(r.statistic);
  EXPECT_NEAR(*r.statistic,
              scale * (oracle.t_hat - ratio * ratio * ratio) / std::sqrt(oracle.t_hat), 1e-12);
  EXPECT_NEAR(r.statistic_prime, 2 * scale * (std::sqrt(oracle.t_hat) - std::pow(ratio, 1.5)),
              1e-12);
}

TEST(DenseTest, PermutationInvariant) {
  std::mt19937_64 gen(5);
  const Hypergraph g = testutil::random_hypergraph(gen, 12, 3, 0.25);
  const DenseTestReport base = dense_test(g, 1, 0.05);
  for (int t = 0; t < 50; ++t) {
    std::vector<Vertex> perm(12);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), gen);
    std::vector<Hyperedge> edges;
    for (const Hyperedge& e : g.edge_list()) {
      Hyperedge f;
      for (Vertex v : e) f.push_back(perm[v]);
      edges.push_back(f);
    }
    const DenseTestReport r = dense_test(Hypergraph(12, edges), 1, 0.05);
    EXPECT_EQ(r.empirical.e_hat, base.empirical.e_hat);
    EXPECT_EQ(r.empirical.v_hat, base.empirical.v_hat);
    EXPECT_EQ(r.empirical.t_hat, base.empirical.t_hat);
    EXPECT_EQ(r.statistic_prime, base.statistic_prime);
  }
}

TEST(DenseTest, Errors) {
  EXPECT_EQ(code_of([] { dense_test(Hypergraph(5, {}), 1, 0.05); }), Errc::ZeroDensity);
  EXPECT_EQ(code_of([] { dense_test(Hypergraph(5, {}).with_uniform_size(3), 1, 0.05); }),
            Errc::ZeroDensity);
  EXPECT_EQ(code_of([] { dense_test(Hypergraph(5, {{0, 1}, {0, 1, 2}}), 1, 0.05); }),
            Errc::NotUniform);
  EXPECT_EQ(code_of([] { dense_test(Hypergraph(5, {{0, 1, 2}}), 2, 0.05); }),
            Errc::OverlapOutOfRange);
  EXPECT_EQ(code_of([] { dense_test(Hypergraph(5, {{0, 1, 2}}), 1, 1.5); }),
            Errc::AlphaOutOfRange);
}

TEST(DenseTest, NoTrianglesLeavesStandardUndefined) {
  // a single edge: no vees, no triangles
  const DenseTestReport r = dense_test(Hypergraph(6, {{0, 1, 2}}), 1, 0.05);
  EXPECT_FALSE(r.statistic);
  EXPECT_DOUBLE_EQ(r.statistic_prime, 0.0);
  const std::vector<DenseTestReport> layers{r};
  EXPECT_EQ(code_of([&] { combined_test(layers, std::nullopt, DenseStatistic::Standard); }),
            Errc::ZeroTriangles);
  EXPECT_NO_THROW(combined_test(layers));
}

TEST(DenseTest, NullRejectionBand) {
  // graph case inside the admissible density band
  const std::size_t n = 300;
  const double p = 5.0 / n;
  int rejections = 0;
  const int reps = 300;
  for (std::uint32_t r = 0; r < reps; ++r) {
    RngStream rng = RngStream::for_replicate(78, 0, r);
    rejections += dense_test(sample_uniform_er(n, 2, p, rng), 1, 0.05).reject_prime ? 1 : 0;
  }
  const double rate = rejections / double(reps);
  EXPECT_LE(rate, 0.12);
}

TEST(DenseTest, AlternativeShiftsStatistic) {
  LayerSpec spec;
  spec.n = 200;
  spec.m = 2;
  spec.p_within = 0.08;
  spec.p_between = 0.01;
  spec.communities = CommunityDistribution::uniform(2);
  double mean = 0;
  const int reps = 40;
  for (std::uint32_t r = 0; r < reps; ++r) {
    RngStream rng = RngStream::for_replicate(79, 0, r);
    mean += dense_test(sample_uniform_hsbm(spec, rng).graph, 1, 0.05).statistic_prime;
  }
  EXPECT_GT(mean / reps, 3.0);
}

TEST(SuggestOverlap, Bands) {
  // a_n = e * n^{m-1}; n = 1000, m = 4
  EXPECT_FALSE(suggest_overlap(20.0 / 1e9, 1000, 4));
  EXPECT_EQ(suggest_overlap(3.0 / 1e9, 1000, 4), 1u);
  EXPECT_EQ(suggest_overlap(std::pow(1000.0, 1.2) / 1e9, 1000, 4), 2u);
  EXPECT_FALSE(suggest_overlap(std::pow(1000.0, 0.5) / 1e9, 1000, 4));
  EXPECT_FALSE(suggest_overlap(0.0, 1000, 4));
}

TEST(CombinedTest, DefaultWeights) {
  const std::vector<DenseTestReport> layers{report_with(1.5, std::nullopt, 2),
                                            report_with(2.5, std::nullopt, 3)};
  const CombinedTestReport c = combined_test(layers);
  EXPECT_NEAR(c.statistic, (1.5 + 2.5) / std::sqrt(2.0), 1e-15);
  EXPECT_TRUE(c.reject);
  EXPECT_EQ(c.layers, (std::vector<std::size_t>{2, 3}));
  EXPECT_FALSE(c.delta);
}

TEST(CombinedTest, SingleLayer) {
  const std::vector<DenseTestReport> layers{report_with(-0.7)};
  const std::vector<double> w{1.0};
  const CombinedTestReport c = combined_test(layers, std::span<const double>(w));
  EXPECT_DOUBLE_EQ(c.statistic, -0.7);
  EXPECT_FALSE(c.reject);
}

TEST(CombinedTest, WeightNorm) {
  const std::vector<DenseTestReport> layers{report_with(1.0), report_with(1.0, std::nullopt, 3)};
  const std::vector<double> good{0.6, 0.8};
  EXPECT_NEAR(combined_test(layers, std::span<const double>(good)).statistic, 1.4, 1e-15);
  const std::vector<double> bad{1.0, 1.0};
  EXPECT_EQ(code_of([&] { combined_test(layers, std::span<const double>(bad)); }),
            Errc::WeightNormViolation);
  const std::vector<double> short_w{1.0};
  EXPECT_EQ(code_of([&] { combined_test(layers, std::span<const double>(short_w)); }),
            Errc::InvalidArgument);
}

TEST(CombinedTest, DeltaFromTheory) {
  DenseTestReport a = report_with(1.0), b = report_with(1.0, std::nullopt, 3);
  a.theory = TheoreticalEVT{};
  a.theory->noncentrality = 3.0;
  b.theory = TheoreticalEVT{};
  b.theory->noncentrality = 4.0;
  const std::vector<DenseTestReport> layers{a, b};
  const std::vector<double> w = optimal_weights(std::vector<double>{3.0, 4.0});
  const CombinedTestReport c = combined_test(layers, std::span<const double>(w));
  ASSERT_TRUE(c.delta);
  EXPECT_NEAR(*c.delta, 5.0, 1e-12);
}

TEST(OptimalWeights, Examples) {
  const std::vector<double> w = optimal_weights(std::vector<double>{3.0, 4.0});
  EXPECT_NEAR(w[0], 0.6, 1e-15);
  EXPECT_NEAR(w[1], 0.8, 1e-15);
  EXPECT_EQ(code_of([] { optimal_weights(std::vector<double>{0.0, 0.0}); }), Errc::AllZeroDeltas);
}

TEST(OptimalWeights, MaximizesCombinedShift) {
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> u(-3, 3);
  for (int t = 0; t < 200; ++t) {
    std::vector<double> delta(3);
    for (double& d : delta) d = u(gen);
    const std::vector<double> best = optimal_weights(delta);
    double best_shift = 0, norm = 0;
    for (std::size_t i = 0; i < 3; ++i) {
      best_shift += best[i] * delta[i];
      norm += delta[i] * delta[i];
    }
    EXPECT_NEAR(best_shift, std::sqrt(norm), 1e-12);
    std::vector<double> other(3);
    double on = 0;
    for (double& c : other) {
      c = u(gen);
      on += c * c;
    }
    double shift = 0;
    for (std::size_t i = 0; i < 3; ++i) shift += other[i] / std::sqrt(on) * delta[i];
    EXPECT_LE(shift, best_shift + 1e-12);
  }
}
