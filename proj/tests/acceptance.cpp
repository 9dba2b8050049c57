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

// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <map>
#include <numbers>
#include <string>
#include <vector>

#include "dpbox/dpbox.hpp"
#include "dpbox/io/plan.hpp"

namespace {

using namespace dpbox;
namespace fs = std::filesystem;

struct Outcome {
  bool pass = false;
  std::string detail;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit_s;  // 0: no limit
  std::function<Outcome()> run;
};

std::string Format(const char* fmt, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, fmt, args...);
  return buf;
}

Outcome BudgetConservation() {
  RandomSource rng(1);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    double eps = 0.0;
    while (!(eps > 0.0)) eps = 20.0 * (1.0 - rng.uniform());
    const BudgetPlan p = budget_plan(eps);
    const double sum = p.unbounded_upper + p.unbounded_lower + p.jointexp + p.count_lower +
                       p.count_upper;
    worst = std::max(worst, std::abs(sum - eps) / eps);
  }
  return {worst <= 1e-12, Format("max relative error %.3g", worst)};
}

// Cell assignment of a sorted draw; cell i is (edges[i], edges[i + 1]).
std::vector<int> CellsOf(const std::vector<double>& x, std::span<const double> edges) {
  std::vector<int> key;
  for (double v : x) {
    key.push_back(static_cast<int>(std::upper_bound(edges.begin(), edges.end(), v) -
                                   edges.begin()) - 1);
  }
  return key;
}

double TotalVariation(const std::map<std::vector<int>, double>& p,
                      const std::map<std::vector<int>, double>& q) {
  double tv = 0.0;
  for (const auto& [k, v] : p) {
    auto it = q.find(k);
    tv += std::abs(v - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [k, v] : q) {
    if (!p.count(k)) tv += v;
  }
  return tv / 2.0;
}

Outcome SingleQuantileOracle() {
  const std::vector<double> data{0.2, 0.4, 0.6, 0.8};
  const double eps = 2.0;
  const double n = 4.0;
  // Closed form: cell length times exp(eps n phi / 2), phi = -2 |F - 1/2|.
  std::map<std::vector<int>, double> oracle;
  double total = 0.0;
  for (int i = 0; i < 5; ++i) {
    const double f = i / 4.0;
    const double w = 0.2 * std::exp(eps * n * (-2.0 * std::abs(f - 0.5)) / 2.0);
    oracle[{i}] = w;
    total += w;
  }
  for (auto& [k, v] : oracle) v /= total;

  const JointExpSampler sampler(Dataset(data), QuantileLevels{0.5}, 0.0, 1.0, eps);
  RandomSource rng(2);
  const int draws = 100000;
  std::map<std::vector<int>, double> freq;
  for (int t = 0; t < draws; ++t) freq[CellsOf(sampler.draw(rng).xi, sampler.edges())] += 1.0 / draws;
  const double tv = TotalVariation(oracle, freq);
  return {tv <= 0.02, Format("TV %.4f over %d draws", tv, draws)};
}

Outcome ThreeQuantileOracle() {
  const std::vector<double> data{0.7, 1.9, 2.4, 3.1, 4.6};
  const std::vector<double> q{0.25, 0.5, 0.75};
  const double a = 0.0;
  const double b = 5.0;
  const double eps = 1.0;
  const double n = 5.0;
  std::vector<double> edges{a};
  edges.insert(edges.end(), data.begin(), data.end());
  edges.push_back(b);
  const int cells = static_cast<int>(edges.size()) - 1;

  // Enumerate all unordered product cells, fold by the sort map.
  std::map<std::vector<int>, double> oracle;
  double total = 0.0;
  for (int i = 0; i < cells; ++i) {
    for (int j = 0; j < cells; ++j) {
      for (int k = 0; k < cells; ++k) {
        std::vector<int> key{i, j, k};
        std::sort(key.begin(), key.end());
        double vol = 1.0;
        double phi = 0.0;
        double prev_f = 0.0;
        double prev_q = 0.0;
        for (int s = 0; s < 3; ++s) {
          vol *= edges[key[s] + 1] - edges[key[s]];
          const double f = key[s] / n;  // data points at or left of the cell
          phi -= std::abs(f - prev_f - (q[s] - prev_q));
          prev_f = f;
          prev_q = q[s];
        }
        phi -= std::abs(1.0 - prev_f - (1.0 - prev_q));
        const double w = vol * std::exp(eps * n * phi / 2.0) / 6.0;
        oracle[key] += w;
        total += w;
      }
    }
  }
  for (auto& [k, v] : oracle) v /= total;

  const JointExpSampler sampler(Dataset(data), QuantileLevels(q), a, b, eps);
  RandomSource rng(3);
  const int draws = 100000;
  std::map<std::vector<int>, double> freq;
  for (int t = 0; t < draws; ++t) freq[CellsOf(sampler.draw(rng).xi, sampler.edges())] += 1.0 / draws;
  const double tv = TotalVariation(oracle, freq);
  return {tv <= 0.05, Format("TV %.4f over %d draws, %zu ordered cells", tv, draws,
                             oracle.size())};
}

Outcome JointExpInconsistency() {
  const std::size_t n = 1000;
  RandomSource data_rng(4);
  std::vector<double> v(n);
  for (double& x : v) x = uniform_in(0.5, 1.0, data_rng);
  const JointExpSampler sampler(Dataset(v), QuantileLevels{1.0 / n}, 0.0, 1.0, 1.0);
  RandomSource rng(5);
  const int runs = 10000;
  int hits = 0;
  for (int t = 0; t < runs; ++t) hits += sampler.draw(rng).xi[0] <= 0.3;
  const double p = static_cast<double>(hits) / runs;
  const double bound = std::exp(-0.5) * 0.3 - 0.02;
  return {p >= bound, Format("P(xi <= 0.3) = %.4f, bound %.4f", p, bound)};
}

Outcome UnboundedDeterminism() {
  std::vector<double> v;
  for (int i = 1; i <= 10; ++i) v.push_back(i);
  const Dataset ds(v);
  UnboundedConfig cfg;
  cfg.q = 0.75;
  cfg.lower_bound = 0.0;
  cfg.upper_bound = 100.0;
  cfg.beta = 2.0;
  cfg.epsilon = 1e9;
  int good = 0;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    RandomSource rng(seed);
    good += unbounded_quantile(ds, cfg, rng).value == 15.0;
  }
  return {good == 100, Format("%d of 100 seeds returned 15", good)};
}

Outcome NormalTrend() {
  SimulationScenario sc;
  sc.distribution = Distribution::normal();
  sc.replications = 100;
  sc.seed = 6;
  const auto cells = aggregate(run_single_study(sc).rows);
  bool pass = true;
  std::string detail;
  for (const char* metric : {"location", "scale"}) {
    const double e3 = cell_mean(cells, 1000, 1.0, metric, false);
    const double e4 = cell_mean(cells, 10000, 1.0, metric, false);
    const double e5 = cell_mean(cells, 100000, 1.0, metric, false);
    const double o5 = cell_mean(cells, 100000, 1.0, metric, true);
    pass = pass && e3 > e4 && e4 > e5 && e5 <= 2.0 * o5;
    detail += Format("%s %.4g > %.4g > %.4g (oracle at 1e5: %.4g); ", metric, e3, e4, e5, o5);
  }
  detail.resize(detail.size() - 2);
  return {pass, detail};
}

Outcome SkewFailureOfNaive() {
  SimulationScenario sc;
  sc.distribution = Distribution::skew_normal(20.0);
  sc.n_grid = {100000};
  sc.replications = 100;
  sc.seed = 7;
  sc.method = Method::kNaiveJointExp;
  const double naive =
      cell_mean(aggregate(run_single_study(sc).rows), 100000, 1.0, "skewness", false);
  sc.method = Method::kDpBoxplot;
  const double dp =
      cell_mean(aggregate(run_single_study(sc).rows), 100000, 1.0, "skewness", false);
  return {naive >= 2.0 * dp, Format("naive-jointexp %.4g vs dpboxplot %.4g (ratio %.1f)",
                                    naive, dp, naive / dp)};
}

Outcome WhiskerConsistency() {
  const Distribution law = Distribution::standard_uniform();
  const double target = population_boxplot(law).lower_whisker;
  DpBoxplotParams params;
  std::vector<double> medians;
  for (std::size_t n : {1000u, 10000u, 100000u}) {
    std::vector<double> err;
    for (std::size_t rep = 0; rep < 100; ++rep) {
      RandomSource rng = RandomSource(8).child(n).child(rep);
      const Dataset ds = sample_distribution(law, n, rng);
      err.push_back(std::abs(dp_boxplot(ds, 5.0, params, rng).summary.lower_whisker - target));
    }
    std::sort(err.begin(), err.end());
    medians.push_back(0.5 * (err[49] + err[50]));
  }
  const bool pass = medians[0] >= medians[1] && medians[1] >= medians[2] && medians[2] < 0.1;
  return {pass, Format("median |l - l_pop| = %.4g, %.4g, %.4g (non-increasing%s)",
                       medians[0], medians[1], medians[2],
                       medians[0] > medians[1] && medians[1] > medians[2]
                           ? ", strictly decreasing"
                           : "; not strictly decreasing")};
}

Outcome CountCalibration() {
  const double eps = budget_plan(1.0).count_upper;
  RandomSource rng(9);
  const Dataset ds = sample_distribution(Distribution::normal(), 1000, rng);
  const double threshold = 1.5;
  const double truth = static_cast<double>(ds.count_above(threshold));
  const int runs = 100000;
  double sum = 0.0;
  double ss = 0.0;
  std::vector<double> r(runs);
  for (double& x : r) {
    x = noisy_count(ds, threshold, Side::kAbove, eps, rng) - truth;
    sum += x;
  }
  const double mean = sum / runs;
  for (double x : r) ss += (x - mean) * (x - mean);
  const double var = ss / (runs - 1);
  const double target = 2.0 * 16.0 * 16.0;
  return {std::abs(var - target) <= 0.05 * target,
          Format("count budget %.6g, residual variance %.1f (target %.0f +- 5%%)", eps, var,
                 target)};
}

Outcome CaseStudyBudgets() {
  const std::size_t first[] = {5, 3, 15};
  const std::size_t second[] = {2, 6};
  const auto a = io::allocate_budgets(1.0, first);
  const auto b = io::allocate_budgets(1.0, second);
  bool pass = a.per_boxplot.epsilon == 1.0 / 23.0 && a.per_boxplot.numerator == 1 &&
              a.per_boxplot.denominator == 23 && b.per_boxplot.epsilon == 1.0 / 8.0 &&
              b.per_boxplot.numerator == 1 && b.per_boxplot.denominator == 8;
  // The same counts arise from the shipped plan format on the fixture.
  std::vector<std::size_t> counts;
  for (const char* plan_file : {"/inquiry1_fixture.plan", "/inquiry2_fixture.plan"}) {
    const auto plan = io::parse_plan_file(std::string(DPBOX_TEST_DATA) + plan_file);
    const auto table = io::read_csv_file(std::string(DPBOX_TEST_DATA) + "/" + plan.input);
    std::vector<std::size_t> boxes;
    for (const auto& vis : plan.visualizations) {
      boxes.push_back(io::group_table(table, plan.value_column, vis.group_columns,
                                      plan.filters, plan.derivations)
                          .groups.size());
    }
    counts.push_back(io::allocate_budgets(plan.epsilon, boxes).per_boxplot.denominator);
  }
  pass = pass && counts[0] == 23 && counts[1] == 8;
  return {pass, Format("per-box eps %.17g and %.17g; fixture plans give 1/%zu and 1/%zu",
                       a.per_boxplot.epsilon, b.per_boxplot.epsilon, counts[0], counts[1])};
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

Outcome CliReproducibility() {
  const fs::path dir = fs::temp_directory_path() / "dpbox_acceptance";
  fs::remove_all(dir);
  fs::create_directories(dir);
  const std::string base = std::string("\"") + DPBOX_CLI + "\" boxplot --input \"" +
                           DPBOX_TEST_DATA + "/listings_1000.csv\" --column price "
                           "--lower-bound 0 --upper-bound 500 --epsilon 1 --seed 42 "
                           "--output-dir \"" + dir.string() + "\"";
  const int s1 = std::system((base + " --name first").c_str());
  const int s2 = std::system((base + " --name second").c_str());
  const std::string a = Slurp(dir / "first.json");
  const std::string b = Slurp(dir / "second.json");
  const bool pass = s1 == 0 && s2 == 0 && !a.empty() && a == b;
  return {pass, Format("exit codes %d/%d, %zu bytes, identical: %s", s1, s2, a.size(),
                       a == b ? "yes" : "no")};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "budget conservation", 1.0, BudgetConservation},
      {2, "single-quantile exponential mechanism vs closed form", 30.0, SingleQuantileOracle},
      {3, "three-quantile JointExp vs brute force", 300.0, ThreeQuantileOracle},
      {4, "JointExp inconsistency for extreme quantiles", 120.0, JointExpInconsistency},
      {5, "unbounded search noiseless determinism", 1.0, UnboundedDeterminism},
      {6, "normal error trend", 600.0, NormalTrend},
      {7, "naive JointExp fails on skewed whiskers", 600.0, SkewFailureOfNaive},
      {8, "whisker consistency on uniform data", 0.0, WhiskerConsistency},
      {9, "Laplace count calibration", 0.0, CountCalibration},
      {10, "case-study budget rule", 1.0, CaseStudyBudgets},
      {11, "CLI reproducibility", 0.0, CliReproducibility},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome out;
    try {
      out = c.run();
    } catch (const std::exception& e) {
      out = {false, std::string("exception: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0.0 && secs > c.time_limit_s) {
      out.pass = false;
      out.detail += Format("; exceeded %.0f s limit", c.time_limit_s);
    }
    failed += !out.pass;
    std::printf("[%s] %2d %s: %s (%.2f s)\n", out.pass ? "PASS" : "FAIL", c.id,
                c.name.c_str(), out.detail.c_str(), secs);
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed,
              criteria.size());
  return failed == 0 ? 0 : 1;
}
