#include <gtest/gtest.h>

#include <set>
#include <vector>

#include "interperc/rng.hpp"
#include "interperc/stats.hpp"

using namespace interperc;

TEST(Pcg32, MatchesReferenceOutputForSeed42Stream54) {
  // First outputs of the reference pcg32 demo with srandom(42, 54).
  Pcg32 rng(42, 54);
  EXPECT_EQ(rng(), 0xa15c02b7u);
  EXPECT_EQ(rng(), 0x7b47f409u);
  EXPECT_EQ(rng(), 0xba1d3330u);
  EXPECT_EQ(rng(), 0x83d2f293u);
}

TEST(RngStream, SameIdsGiveSameSequence) {
  RngStream s{7, 3};
  Pcg32 a = s.engine(), b = s.engine();
  for (int i = 0; i < 100; ++i) ASSERT_EQ(a(), b());
}

TEST(RngStream, DeriveIsDeterministicAndSeparatesTags) {
  RngStream root{11, 0};
  EXPECT_EQ(root.derive(tag::line, 5), root.derive(tag::line, 5));
  std::set<std::uint64_t> ids;
  for (std::uint64_t i = 0; i < 1000; ++i) ids.insert(root.derive(tag::line, i).stream_id);
  for (std::uint64_t i = 0; i < 1000; ++i) ids.insert(root.derive(tag::trial, i).stream_id);
  EXPECT_EQ(ids.size(), 2000u);
  EXPECT_NE(root.derive(tag::line, 1, tag::trial, 2), root.derive(tag::trial, 2, tag::line, 1));
}

TEST(RngStream, SiblingStreamsAreUncorrelated) {
  RngStream root{5, 0};
  Pcg32 a = root.derive(tag::line, 0).engine(), b = root.derive(tag::line, 1).engine();
  const int n = 200000;
  double sab = 0, sa = 0, sb = 0, saa = 0, sbb = 0;
  for (int i = 0; i < n; ++i) {
    double x = uniform01(a), y = uniform01(b);
    sab += x * y;
    sa += x;
    sb += y;
    saa += x * x;
    sbb += y * y;
  }
  double cov = sab / n - (sa / n) * (sb / n);
  double r = cov / std::sqrt((saa / n - sa * sa / n / n) * (sbb / n - sb * sb / n / n));
  EXPECT_LT(std::abs(r), 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST(Distributions, UniformIsOpenUnitInterval) {
  Pcg32 rng(1, 1);
  for (int i = 0; i < 100000; ++i) {
    double u = uniform01(rng);
    ASSERT_GT(u, 0.0);
    ASSERT_LT(u, 1.0);
  }
}

TEST(Distributions, ExponentialPassesKs) {
  Pcg32 rng(3, 9);
  std::vector<double> xs;
  for (int i = 0; i < 20000; ++i) xs.push_back(exponential(rng, 2.5));
  auto ks = ks_test(xs, [](double x) { return exponential_cdf(x, 2.5); });
  EXPECT_GT(ks.p_value, 0.001);
}

TEST(Distributions, NormalPassesKs) {
  Pcg32 rng(4, 2);
  std::vector<double> xs;
  for (int i = 0; i < 20000; ++i) xs.push_back(standard_normal(rng));
  auto ks = ks_test(xs, normal_cdf);
  EXPECT_GT(ks.p_value, 0.001);
}

TEST(Distributions, UniformIndexCoversRangeEvenly) {
  Pcg32 rng(8, 8);
  std::vector<int> counts(7, 0);
  const int n = 70000;
  for (int i = 0; i < n; ++i) ++counts[uniform_index(rng, 7)];
  for (int c : counts) EXPECT_NEAR(c, n / 7.0, 5 * std::sqrt(n / 7.0));
}
