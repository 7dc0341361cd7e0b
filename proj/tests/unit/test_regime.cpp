#include <gtest/gtest.h>

#include <vector>

#include "hypertest/stats.hpp"
#include "test_util.hpp"

using namespace hypertest;
using testutil::code_of;

TEST(Regime, AboveEdgeThreshold) {
  const RegimeVerdict v = regime_classify(3, 2, 2.5, std::nullopt);
  EXPECT_EQ(v.kind, RegimeKind::Indistinguishable);
  EXPECT_EQ(describe(v), "indistinguishable (contiguous)");
}

TEST(Regime, BoundedDistinguishable) {
  const RegimeVerdict v = regime_classify(3, 2, 2.0, 1.2);
  EXPECT_EQ(v.kind, RegimeKind::BoundedDegree);
  EXPECT_EQ(v.bounded, BoundedVerdict::Distinguishable);
  EXPECT_EQ(describe(v), "distinguishable");
}

TEST(Regime, BoundedContiguousBand) {
  const RegimeVerdict v = regime_classify(3, 2, 2.0, 0.2);
  EXPECT_EQ(v.bounded, BoundedVerdict::ContiguousBand);
  ASSERT_TRUE(v.constants);
  EXPECT_DOUBLE_EQ(v.constants->kappa_threshold, 4.0 / 13.0);
  EXPECT_EQ(describe(v), "contiguous band");
}

TEST(Regime, BoundedUnknownGap) {
  EXPECT_EQ(regime_classify(3, 2, 2.0, 0.5).bounded, BoundedVerdict::Unknown);
  EXPECT_EQ(regime_classify(3, 2, 2.0, 1.0).bounded, BoundedVerdict::Unknown);
  EXPECT_EQ(describe(regime_classify(3, 2, 2.0, 0.5)), "unknown");
}

TEST(Regime, GraphCaseHasNoConstants) {
  const RegimeVerdict v = regime_classify(2, 2, 1.0, 0.2);
  EXPECT_FALSE(v.constants);
  EXPECT_EQ(v.bounded, BoundedVerdict::Unknown);
  EXPECT_EQ(regime_classify(2, 2, 1.0, 1.5).bounded, BoundedVerdict::Distinguishable);
}

TEST(Regime, DenseTestable) {
  const RegimeVerdict v = regime_classify(3, 2, 1.8, std::nullopt);
  EXPECT_EQ(v.kind, RegimeKind::DenseTestable);
  EXPECT_EQ(v.l, 1u);
  EXPECT_EQ(describe(v), "dense testable (l=1)");
  // m = 4: x = 1.2 lies in the l = 2 band
  EXPECT_EQ(regime_classify(4, 2, 1.8, std::nullopt).l, 2u);
}

TEST(Regime, UnknownBand) {
  // x = 0.5 is between 1/3 and 1
  const RegimeVerdict v = regime_classify(3, 2, 1.5, std::nullopt);
  EXPECT_EQ(v.kind, RegimeKind::UnknownBand);
  EXPECT_EQ(describe(v), "unknown band");
  const std::vector<std::size_t> only_two{2};
  EXPECT_EQ(regime_classify(4, 2, 2.8, std::nullopt, only_two).kind, RegimeKind::UnknownBand);
}

TEST(Regime, Errors) {
  EXPECT_EQ(code_of([] { regime_classify(3, 2, 2.0, std::nullopt); }), Errc::MissingKappa);
  EXPECT_EQ(code_of([] { regime_classify(3, 1, 1.0, std::nullopt); }), Errc::InvalidArgument);
  EXPECT_EQ(code_of([] { regime_classify(3, 2, -1.0, std::nullopt); }), Errc::InvalidArgument);
  const std::vector<std::size_t> bad{2};
  EXPECT_EQ(code_of([&] { regime_classify(3, 2, 1.8, std::nullopt, bad); }),
            Errc::OverlapOutOfRange);
}

TEST(Regime, TotalOverGrid) {
  for (std::size_t m = 2; m <= 6; ++m) {
    for (std::size_t k = 2; k <= 4; ++k) {
      for (double alpha = 0.05; alpha < m + 1.0; alpha += 0.05) {
        for (double kappa : {0.01, 0.3, 0.9, 1.0, 2.0}) {
          const RegimeVerdict v = regime_classify(m, k, alpha, kappa);
          const std::string d = describe(v);
          EXPECT_FALSE(d.empty());
          if (v.kind == RegimeKind::BoundedDegree) EXPECT_TRUE(v.bounded);
          if (v.kind == RegimeKind::DenseTestable) {
            ASSERT_TRUE(v.l);
            EXPECT_LE(2 * *v.l, m);
          }
        }
      }
      const RegimeVerdict edge = regime_classify(m, k, static_cast<double>(m - 1), 2.0);
      EXPECT_EQ(edge.kind, RegimeKind::BoundedDegree);
    }
  }
}
