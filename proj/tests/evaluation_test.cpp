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

#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gtest/gtest.h"
#include "dpbox/baselines.hpp"
#include "dpbox/boxplot.hpp"
#include "dpbox/distribution.hpp"
#include "dpbox/dp_boxplot.hpp"
#include "dpbox/metrics.hpp"
#include "dpbox/random.hpp"
#include "dpbox/simulation.hpp"

namespace dpbox {
namespace {

BoxplotSummary Summary(double ol, double l, double q1, double m, double q3, double u,
                       double ou, SummaryKind kind = SummaryKind::kEmpirical) {
  BoxplotSummary s;
  s.o_lower = ol;
  s.lower_whisker = l;
  s.q1 = q1;
  s.median = m;
  s.q3 = q3;
  s.upper_whisker = u;
  s.o_upper = ou;
  s.kind = kind;
  return s;
}

TEST(BoxplotDistanceTest, IdenticalIsZero) {
  const BoxplotSummary x = Summary(1, -2, -1, 0, 1, 2, 3);
  EXPECT_EQ(boxplot_distance(x, x, 100), ErrorMetrics{});
}

TEST(BoxplotDistanceTest, HandExample) {
  const BoxplotSummary x = Summary(0, -4, -1, 0, 1, 4, 0);
  const BoxplotSummary y = Summary(2, -5, -1, 0.5, 1, 4, 1);
  for (std::size_t n : {1u, 1000u}) {
    const ErrorMetrics d = boxplot_distance(x, y, n);
    EXPECT_DOUBLE_EQ(d.location, 0.5);
    EXPECT_DOUBLE_EQ(d.scale, 0.0);
    EXPECT_DOUBLE_EQ(d.skewness, 1.0);
    EXPECT_DOUBLE_EQ(d.tails, 3.0);
  }
}

TEST(BoxplotDistanceTest, PopulationMassesScaledByN) {
  const BoxplotSummary emp = Summary(3, -2, -1, 0, 1, 2, 4);
  const BoxplotSummary pop = Summary(0.002, -2, -1, 0, 1, 2, 0.003, SummaryKind::kPopulation);
  EXPECT_DOUBLE_EQ(boxplot_distance(emp, pop, 1000).tails, 2.0);
}

TEST(RelativeSimilitudeTest, Examples) {
  const ErrorMetrics a{0.3, 1.0, 2.0, 5.0};
  EXPECT_EQ(relative_similitude(a, a), ErrorMetrics{});
  const ErrorMetrics r =
      relative_similitude(ErrorMetrics{1, 0, 0, 0}, ErrorMetrics{0, 3, 0, 0});
  EXPECT_DOUBLE_EQ(r.location, 1.0);
  EXPECT_DOUBLE_EQ(r.scale, 0.75);
}

TEST(BoxplotDistanceTest, NoiselessPrivateMatchesEmpirical) {
  RandomSource rng(1);
  const Dataset ds = sample_distribution(Distribution::normal(), 100000, rng);
  DpBoxplotParams p;
  const ErrorMetrics d =
      boxplot_distance(dp_boxplot(ds, 1e4, p, rng).summary, nonprivate_boxplot(ds), ds.size());
  EXPECT_LT(d.location, 0.1);
  EXPECT_LT(d.scale, 0.1);
  EXPECT_LT(d.skewness, 0.1);
  EXPECT_LT(d.tails, 10.0);
}

TEST(MethodTest, Names) {
  for (Method m : {Method::kDpBoxplot, Method::kNaiveJointExp, Method::kNaivePrivateQuantile,
                   Method::kNaiveUnbounded}) {
    EXPECT_EQ(method_from_string(to_string(m)), m);
  }
  EXPECT_THROW(method_from_string("laplace"), std::invalid_argument);
}

TEST(BaselineTest, NaiveSummariesAreOrderedAndSeeded) {
  RandomSource data_rng(2);
  const Dataset ds = sample_distribution(Distribution::normal(), 5000, data_rng);
  DpBoxplotParams p;
  for (Method m : {Method::kNaiveJointExp, Method::kNaivePrivateQuantile,
                   Method::kNaiveUnbounded}) {
    RandomSource a(3);
    RandomSource b(3);
    const BoxplotSummary s = naive_boxplot(ds, m, 1.0, p, a);
    EXPECT_EQ(s, naive_boxplot(ds, m, 1.0, p, b));
    EXPECT_EQ(s.kind, SummaryKind::kPrivate);
    EXPECT_NEAR(s.median, sample_quantile(ds, 0.5), 0.2) << to_string(m);
  }
  RandomSource rng(4);
  EXPECT_THROW(naive_boxplot(Dataset({1.0, 2.0}), Method::kNaiveJointExp, 1.0, p, rng),
               std::invalid_argument);
}

TEST(SingleStudyTest, ZeroReplicationsIsEmpty) {
  SimulationScenario sc;
  sc.replications = 0;
  const StudyResult r = run_single_study(sc);
  EXPECT_TRUE(r.rows.empty());
  EXPECT_TRUE(r.failures.empty());
}

TEST(SingleStudyTest, RowsAndDeterminism) {
  SimulationScenario sc;
  sc.n_grid = {200, 400};
  sc.epsilon_grid = {0.5, 2.0};
  sc.replications = 3;
  sc.seed = 17;
  sc.threads = 2;
  const StudyResult a = run_single_study(sc);
  sc.threads = 1;
  const StudyResult b = run_single_study(sc);
  // 2 n x 2 eps x 3 reps x 4 metrics, private and oracle.
  ASSERT_EQ(a.rows.size(), 96u);
  ASSERT_EQ(b.rows.size(), a.rows.size());
  for (std::size_t i = 0; i < a.rows.size(); ++i) {
    EXPECT_EQ(a.rows[i].value, b.rows[i].value);
    EXPECT_GE(a.rows[i].value, 0.0);
  }
  std::ostringstream csv;
  write_results_csv(csv, a.rows);
  EXPECT_EQ(csv.str().substr(0, csv.str().find('\n')),
            "method,distribution,n,epsilon,replication,metric,value,oracle_flag");
}

TEST(SingleStudyTest, PreconditionFailuresAreRecorded) {
  SimulationScenario sc;
  sc.n_grid = {100, 2000};
  sc.replications = 2;
  sc.params.c = 20.0;
  const StudyResult r = run_single_study(sc);
  ASSERT_EQ(r.failures.size(), 1u);
  EXPECT_EQ(r.failures[0].n, 100u);
  for (const auto& row : r.rows) EXPECT_EQ(row.n, 2000u);
}

TEST(SingleStudyTest, NormalLocationErrorDecreases) {
  SimulationScenario sc;
  sc.replications = 30;
  sc.seed = 5;
  const auto cells = aggregate(run_single_study(sc).rows);
  const double e3 = cell_mean(cells, 1000, 1.0, "location", false);
  const double e4 = cell_mean(cells, 10000, 1.0, "location", false);
  const double e5 = cell_mean(cells, 100000, 1.0, "location", false);
  EXPECT_GT(e3, e4);
  EXPECT_GT(e4, e5);
}

TEST(SingleStudyTest, NaiveJointExpMissesSkewWhiskers) {
  SimulationScenario sc;
  sc.distribution = Distribution::skew_normal(20.0);
  sc.n_grid = {100000};
  sc.replications = 10;
  sc.seed = 6;
  sc.method = Method::kNaiveJointExp;
  const double naive =
      cell_mean(aggregate(run_single_study(sc).rows), 100000, 1.0, "skewness", false);
  sc.method = Method::kDpBoxplot;
  const double dp =
      cell_mean(aggregate(run_single_study(sc).rows), 100000, 1.0, "skewness", false);
  EXPECT_GT(naive, 0.1);
  EXPECT_GT(naive - dp, 0.1);
}

TEST(AggregateTest, MeanAndHalfWidth) {
  std::vector<ResultRow> rows;
  for (double v : {1.0, 2.0, 3.0, 4.0}) {
    rows.push_back({"dpboxplot", "normal", 10, 1.0, 0, "location", v, false});
  }
  const auto cells = aggregate(rows);
  ASSERT_EQ(cells.size(), 1u);
  EXPECT_DOUBLE_EQ(cells[0].mean, 2.5);
  EXPECT_NEAR(cells[0].half_width, 1.96 * std::sqrt(5.0 / 3.0) / 2.0, 1e-12);
  EXPECT_EQ(cells[0].count, 4u);
}

TEST(MultiStudyTest, GroupSizesSumAndVary) {
  RandomSource rng(7);
  bool unequal = false;
  for (int t = 0; t < 20; ++t) {
    const auto sizes = random_group_sizes(5000, 5, rng);
    EXPECT_EQ(std::accumulate(sizes.begin(), sizes.end(), std::size_t{0}), 5000u);
    for (std::size_t s : sizes) EXPECT_GE(s, 500u);
    unequal |= sizes[0] != sizes[1];
  }
  EXPECT_TRUE(unequal);
  EXPECT_THROW(random_group_sizes(3, 5, rng), std::invalid_argument);
}

TEST(MultiStudyTest, SimilitudeShrinksInTheNoiselessLimit) {
  double prev = INFINITY;
  for (std::size_t n : {2000u, 200000u}) {
    MultiScenario ms;
    ms.groups = 2;
    ms.n_total = n;
    ms.mixture = {"normal"};
    ms.epsilon_grid = {1e6};
    ms.replications = 10;
    ms.seed = 8;
    const auto cells = aggregate(run_multi_study(ms).rows);
    const double loc = cell_mean(cells, n, 1e6, "location", false);
    EXPECT_LT(loc, prev);
    prev = loc;
  }
  EXPECT_LT(prev, 0.02);
}

TEST(MultiStudyTest, FiveGroupsLocationSimilitude) {
  MultiScenario ms;
  ms.groups = 5;
  ms.n_total = 50000;
  ms.replications = 30;
  ms.seed = 9;
  const auto cells = aggregate(run_multi_study(ms).rows);
  EXPECT_LT(cell_mean(cells, 50000, 1.0, "location", false), 0.2);
}

TEST(MultiStudyTest, RejectsBadScenario) {
  MultiScenario ms;
  ms.groups = 1;
  EXPECT_THROW(run_multi_study(ms), std::invalid_argument);
  ms.groups = 5;
  ms.n_total = 4;
  EXPECT_THROW(run_multi_study(ms), std::invalid_argument);
}

}  // namespace
}  // namespace dpbox
