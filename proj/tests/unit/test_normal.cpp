#include <gtest/gtest.h>

#include <boost/math/distributions/normal.hpp>
#include <cmath>

#include "hypertest/stats.hpp"
#include "test_util.hpp"

using namespace hypertest;

TEST(NormalQuantile, FivePercent) { EXPECT_NEAR(normal_quantile(0.05), 1.95996398, 1e-8); }

TEST(NormalQuantile, InverseOfCdf) {
  EXPECT_NEAR(normal_quantile(2.0 * (1.0 - normal_cdf(1.0))), 1.0, 1e-8);
  EXPECT_NEAR(normal_quantile(0.3173), 1.0, 1e-4);
}

TEST(NormalQuantile, AgreesWithBoost) {
  const boost::math::normal_distribution<double> n01;
  for (double alpha : {1e-12, 1e-8, 1e-4, 0.001, 0.01, 0.05, 0.1, 0.3173, 0.5, 0.9, 0.999999}) {
    const double expected = boost::math::quantile(boost::math::complement(n01, alpha / 2));
    EXPECT_NEAR(normal_quantile(alpha), expected, 1e-8 * std::max(1.0, std::fabs(expected)))
        << "alpha=" << alpha;
  }
  for (double p = 0.0005; p < 1.0; p += 0.0173) {
    EXPECT_NEAR(normal_inverse_cdf(p), boost::math::quantile(n01, p), 1e-12) << "p=" << p;
    EXPECT_NEAR(normal_cdf(normal_inverse_cdf(p)), p, 1e-14);
  }
}

TEST(NormalQuantile, OutOfRange) {
  for (double alpha : {0.0, 1.0, -0.1, 2.0, std::nan("")}) {
    EXPECT_EQ(testutil::code_of([&] { normal_quantile(alpha); }), Errc::AlphaOutOfRange);
  }
}
