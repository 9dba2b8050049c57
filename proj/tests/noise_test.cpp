//
// Copyright 2026 The dpbox Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
//

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "gtest/gtest.h"
#include "dpbox/dataset.hpp"
#include "dpbox/noisy_count.hpp"
#include "dpbox/random.hpp"

namespace dpbox {
namespace {

constexpr int kDraws = 1000000;

double Mean(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / v.size();
}

double Variance(const std::vector<double>& v) {
  const double m = Mean(v);
  double ss = 0.0;
  for (double x : v) ss += (x - m) * (x - m);
  return ss / (v.size() - 1);
}

double Median(std::vector<double> v) {
  std::nth_element(v.begin(), v.begin() + v.size() / 2, v.end());
  return v[v.size() / 2];
}

// Kolmogorov-Smirnov statistic against a CDF.
template <typename Cdf>
double KsStatistic(std::vector<double> v, Cdf cdf) {
  std::sort(v.begin(), v.end());
  const double n = static_cast<double>(v.size());
  double d = 0.0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const double f = cdf(v[i]);
    d = std::max({d, std::abs(f - i / n), std::abs((i + 1) / n - f)});
  }
  return d;
}

TEST(UniformTest, RangeAndMean) {
  RandomSource rng(1);
  std::vector<double> v(kDraws);
  for (double& x : v) x = rng.uniform();
  EXPECT_GE(*std::min_element(v.begin(), v.end()), 0.0);
  EXPECT_LT(*std::max_element(v.begin(), v.end()), 1.0);
  EXPECT_NEAR(Mean(v), 0.5, 0.001);
}

TEST(UniformTest, SimulationBounds) {
  RandomSource rng(2);
  for (int i = 0; i < 100000; ++i) {
    const double x = uniform_in(-50.0, 50.0, rng);
    ASSERT_GE(x, -50.0);
    ASSERT_LT(x, 50.0);
  }
  EXPECT_THROW(uniform_in(2.0, 2.0, rng), std::invalid_argument);
}

TEST(ExponentialTest, Moments) {
  RandomSource rng(3);
  std::vector<double> v(kDraws);
  int above3 = 0;
  for (double& x : v) {
    x = std_exponential(rng);
    ASSERT_GE(x, 0.0);
    above3 += x > 3.0;
  }
  EXPECT_NEAR(Mean(v), 1.0, 0.003);
  EXPECT_NEAR(static_cast<double>(above3) / kDraws, std::exp(-3.0), 0.002);
}

TEST(LaplaceTest, UnitScaleMoments) {
  RandomSource rng(4);
  std::vector<double> v(kDraws);
  for (double& x : v) x = laplace(1.0, rng);
  const double var = Variance(v);
  EXPECT_GE(var, 1.96);
  EXPECT_LE(var, 2.04);
  EXPECT_NEAR(Median(v), 0.0, 0.01);
}

TEST(LaplaceTest, MatchesCdf) {
  RandomSource rng(5);
  const double scale = 16.0;  // count budget eps / 16 at eps = 1
  std::vector<double> v(100000);
  for (double& x : v) x = laplace(scale, rng);
  const double d = KsStatistic(v, [&](double x) {
    return x < 0 ? 0.5 * std::exp(x / scale) : 1.0 - 0.5 * std::exp(-x / scale);
  });
  // Critical value at level 0.001 is 1.95 / sqrt(n).
  EXPECT_LT(d, 1.95 / std::sqrt(100000.0));
}

TEST(LaplaceTest, RejectsBadScale) {
  RandomSource rng(6);
  EXPECT_THROW(laplace(0.0, rng), std::invalid_argument);
  EXPECT_THROW(laplace(-1.0, rng), std::invalid_argument);
  EXPECT_THROW(laplace(std::numeric_limits<double>::infinity(), rng), std::invalid_argument);
}

TEST(NormalTest, MatchesCdf) {
  RandomSource rng(7);
  std::vector<double> v(100000);
  for (double& x : v) x = standard_normal(rng);
  EXPECT_NEAR(Mean(v), 0.0, 0.01);
  EXPECT_NEAR(Variance(v), 1.0, 0.02);
  const double d =
      KsStatistic(v, [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); });
  EXPECT_LT(d, 1.95 / std::sqrt(100000.0));
}

TEST(RandomSourceTest, Deterministic) {
  RandomSource a(123);
  RandomSource b(123);
  RandomSource c(124);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    const double x = laplace(1.0, a);
    EXPECT_EQ(x, laplace(1.0, b));
    differs |= x != laplace(1.0, c);
  }
  EXPECT_TRUE(differs);
}

TEST(NoisyCountTest, Noiseless) {
  const double inf = std::numeric_limits<double>::infinity();
  Dataset ds({1.0, 2.0, 3.0, 4.0});
  RandomSource rng(8);
  EXPECT_EQ(noisy_count(ds, 2.5, Side::kBelow, inf, rng), 2.0);
  EXPECT_EQ(noisy_count(ds, 1.0, Side::kBelow, inf, rng), 0.0);
  EXPECT_EQ(noisy_count(ds, 3.0, Side::kAbove, inf, rng), 1.0);
  EXPECT_EQ(noisy_count(ds, 4.0, Side::kAbove, inf, rng), 0.0);
}

TEST(NoisyCountTest, ResidualVariance) {
  Dataset ds({1.0, 2.0, 3.0, 4.0});
  RandomSource rng(9);
  std::vector<double> r(100000);
  for (double& x : r) x = noisy_count(ds, 2.5, Side::kBelow, 1.0, rng) - 2.0;
  EXPECT_NEAR(Variance(r), 2.0, 0.1);
}

TEST(NoisyCountTest, RejectsBadEpsilon) {
  Dataset ds({1.0});
  RandomSource rng(10);
  EXPECT_THROW(noisy_count(ds, 0.0, Side::kBelow, 0.0, rng), std::invalid_argument);
  EXPECT_THROW(noisy_count(ds, 0.0, Side::kBelow, -1.0, rng), std::invalid_argument);
}

}  // namespace
}  // namespace dpbox
