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

#ifndef DPBOX_SIMULATION_HPP_
#define DPBOX_SIMULATION_HPP_

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <utility>
#include <vector>

#include "dpbox/baselines.hpp"
#include "dpbox/boxplot.hpp"
#include "dpbox/distribution.hpp"
#include "dpbox/dp_boxplot.hpp"
#include "dpbox/metrics.hpp"
#include "dpbox/random.hpp"

namespace dpbox {

/// One (cell, replication, metric) value. oracle rows compare the
/// non-private boxplot with the population boxplot.
struct ResultRow {
  std::string method;
  std::string distribution;
  std::size_t n = 0;
  double epsilon = 0.0;
  std::size_t replication = 0;
  std::string metric;
  double value = 0.0;
  bool oracle = false;
};

struct CellFailure {
  std::string method;
  std::size_t n = 0;
  double epsilon = 0.0;
  std::string message;
};

struct StudyResult {
  std::vector<ResultRow> rows;
  std::vector<CellFailure> failures;
};

struct SimulationScenario {
  Distribution distribution = Distribution::normal();
  std::vector<std::size_t> n_grid{1000, 10000, 100000};
  std::vector<double> epsilon_grid{1.0};
  std::size_t replications = 100;
  Method method = Method::kDpBoxplot;
  DpBoxplotParams params;  // bounds default to (-50, 50)
  std::uint64_t seed = 0;
  unsigned threads = 0;  // 0: hardware concurrency
};

struct MultiScenario {
  std::size_t groups = 5;  // t
  std::size_t n_total = 5000;
  std::vector<std::string> mixture{"normal", "skew", "uniform", "beta"};
  std::vector<double> epsilon_grid{1.0};
  std::size_t replications = 100;
  Method method = Method::kDpBoxplot;
  DpBoxplotParams params;
  std::uint64_t seed = 0;
  unsigned threads = 0;
};

inline constexpr const char* kMetricNames[4] = {"location", "scale", "skewness", "tails"};

namespace detail {

inline void append_metrics(std::vector<ResultRow>& out, const ResultRow& base,
                           const ErrorMetrics& m) {
  const double values[4] = {m.location, m.scale, m.skewness, m.tails};
  for (int k = 0; k < 4; ++k) {
    ResultRow row = base;
    row.metric = kMetricNames[k];
    row.value = values[k];
    out.push_back(std::move(row));
  }
}

// Runs job(i) for i in [0, jobs) on a small pool. Results are written into
// per-job slots by the caller, so the merge order never depends on timing.
template <typename Job>
void run_jobs(std::size_t jobs, unsigned threads, Job&& job) {
  unsigned workers = threads == 0 ? std::max(1u, std::thread::hardware_concurrency())
                                  : threads;
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, jobs));
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs; ++i) job(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::exception_ptr> errors(workers);
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      try {
        for (std::size_t i = next++; i < jobs; i = next++) job(i);
      } catch (...) {
        errors[w] = std::current_exception();
      }
    });
  }
  for (auto& t : pool) t.join();
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
}

inline void add_failure(std::vector<CellFailure>& failures, CellFailure f) {
  for (const auto& g : failures) {
    if (g.method == f.method && g.n == f.n && g.epsilon == f.epsilon) return;
  }
  failures.push_back(std::move(f));
}

inline BoxplotSummary as_proportions(BoxplotSummary s, std::size_t n) {
  if (s.kind != SummaryKind::kPopulation) {
    s.o_lower /= static_cast<double>(n);
    s.o_upper /= static_cast<double>(n);
    s.kind = SummaryKind::kPopulation;
  }
  return s;
}

}  // namespace detail

/// Single-boxplot study. For every (n, eps, replication) a dataset is drawn,
/// the private summary is compared with the empirical one, and an oracle row
/// compares the empirical summary with the population summary.
///
/// Streams: data for (n, rep) come from child(n index).child(rep).child(0) and
/// the mechanism for eps index e from ...child(1 + e), so every method and
/// every eps sees the same datasets.
inline StudyResult run_single_study(const SimulationScenario& sc) {
  StudyResult result;
  if (sc.n_grid.empty() || sc.epsilon_grid.empty()) {
    throw std::invalid_argument("run_single_study: grids must be non-empty");
  }
  if (sc.replications == 0) return result;

  const double k = sc.params.whisker_multiplier;
  const BoxplotSummary population = population_boxplot(sc.distribution, k);
  const std::string method = to_string(sc.method);
  const std::string dist_tag = sc.distribution.tag();
  const RandomSource root(sc.seed);

  const std::size_t jobs = sc.n_grid.size() * sc.replications;
  std::vector<std::vector<ResultRow>> slots(jobs);
  std::vector<std::vector<CellFailure>> failure_slots(jobs);

  detail::run_jobs(jobs, sc.threads, [&](std::size_t job) {
    const std::size_t ni = job / sc.replications;
    const std::size_t rep = job % sc.replications;
    const std::size_t n = sc.n_grid[ni];
    const RandomSource stream = root.child(ni).child(rep);
    RandomSource data_rng = stream.child(0);
    const Dataset ds = sample_distribution(sc.distribution, n, data_rng);
    const BoxplotSummary empirical = nonprivate_boxplot(ds, k);
    const ErrorMetrics oracle = boxplot_distance(empirical, population, n);

    for (std::size_t e = 0; e < sc.epsilon_grid.size(); ++e) {
      const double eps = sc.epsilon_grid[e];
      RandomSource mech_rng = stream.child(1 + e);
      ResultRow base{method, dist_tag, n, eps, rep, "", 0.0, false};
      try {
        const BoxplotSummary priv = private_summary(ds, sc.method, eps, sc.params, mech_rng);
        detail::append_metrics(slots[job], base, boxplot_distance(priv, empirical, n));
      } catch (const std::invalid_argument& err) {
        failure_slots[job].push_back({method, n, eps, err.what()});
        continue;
      }
      base.oracle = true;
      detail::append_metrics(slots[job], base, oracle);
    }
  });

  for (std::size_t j = 0; j < jobs; ++j) {
    for (auto& row : slots[j]) result.rows.push_back(std::move(row));
    for (auto& f : failure_slots[j]) detail::add_failure(result.failures, std::move(f));
  }
  return result;
}

/// Group sizes summing to n_total: each group gets floor(n_total / 2t) (at
/// least 1) and the rest is split by a flat Dirichlet share, rounded by
/// largest remainder.
inline std::vector<std::size_t> random_group_sizes(std::size_t n_total,
                                                   std::size_t groups,
                                                   RandomSource& rng) {
  if (groups == 0 || n_total < groups) {
    throw std::invalid_argument("random_group_sizes: need 1 <= t <= n_total");
  }
  const std::size_t base = std::max<std::size_t>(1, n_total / (2 * groups));
  const std::size_t rest = n_total - base * groups;
  std::vector<double> w(groups);
  for (double& x : w) x = std::max(std_exponential(rng), 1e-300);
  const double total = std::accumulate(w.begin(), w.end(), 0.0);
  std::vector<std::size_t> sizes(groups, base);
  std::vector<std::pair<double, std::size_t>> frac(groups);
  std::size_t used = 0;
  for (std::size_t i = 0; i < groups; ++i) {
    const double share = w[i] / total * static_cast<double>(rest);
    const auto whole = static_cast<std::size_t>(std::floor(share));
    sizes[i] += whole;
    used += whole;
    frac[i] = {share - static_cast<double>(whole), i};
  }
  std::sort(frac.begin(), frac.end(), [](const auto& x, const auto& y) {
    return x.first != y.first ? x.first > y.first : x.second < y.second;
  });
  for (std::size_t i = 0; used < rest; ++i, ++used) ++sizes[frac[i % groups].second];
  return sizes;
}

/// Multiple-boxplot study. Each replication draws t base datasets from the
/// mixture (group i uses mixture[i mod size]), maps them through
/// X_i = s_i z_i + m_i with m_i ~ U[-1, 1] and s_i ~ U[0.5, 2], and reports
/// the mean relative similitude over all unordered pairs. Oracle rows use
/// the non-private boxplots in place of the private ones. Tails are
/// compared as proportions (count / n_i) because the groups differ in size.
inline StudyResult run_multi_study(const MultiScenario& ms) {
  StudyResult result;
  if (ms.groups < 2) throw std::invalid_argument("run_multi_study: need t >= 2");
  if (ms.n_total < ms.groups) {
    throw std::invalid_argument("run_multi_study: need n_total >= t");
  }
  if (ms.epsilon_grid.empty() || ms.mixture.empty()) {
    throw std::invalid_argument("run_multi_study: grids must be non-empty");
  }
  if (ms.replications == 0) return result;

  std::vector<Distribution> laws;
  for (const auto& tag : ms.mixture) laws.push_back(Distribution::from_tag(tag));
  std::vector<BoxplotSummary> base_population;
  for (const auto& law : laws) {
    base_population.push_back(population_boxplot(law, ms.params.whisker_multiplier));
  }

  const std::string method = to_string(ms.method);
  const std::string label = "mixture(t=" + std::to_string(ms.groups) + ")";
  const RandomSource root(ms.seed);
  const double k = ms.params.whisker_multiplier;

  std::vector<std::vector<ResultRow>> slots(ms.replications);
  std::vector<std::vector<CellFailure>> failure_slots(ms.replications);

  detail::run_jobs(ms.replications, ms.threads, [&](std::size_t rep) {
    const RandomSource stream = root.child(rep);
    RandomSource data_rng = stream.child(0);
    const auto sizes = random_group_sizes(ms.n_total, ms.groups, data_rng);
    std::vector<Dataset> data;
    std::vector<BoxplotSummary> population;
    std::vector<BoxplotSummary> empirical;
    for (std::size_t i = 0; i < ms.groups; ++i) {
      const std::size_t which = i % laws.size();
      const double shift = uniform_in(-1.0, 1.0, data_rng);
      const double scale = uniform_in(0.5, 2.0, data_rng);
      const Dataset z = sample_distribution(laws[which], sizes[i], data_rng);
      data.push_back(z.affine(scale, shift));
      population.push_back(affine_image(base_population[which], scale, shift));
      empirical.push_back(detail::as_proportions(nonprivate_boxplot(data.back(), k), sizes[i]));
    }

    auto mean_pairwise = [&](const std::vector<BoxplotSummary>& boxes) {
      ErrorMetrics acc;
      std::size_t pairs = 0;
      for (std::size_t i = 0; i < boxes.size(); ++i) {
        for (std::size_t j = i + 1; j < boxes.size(); ++j) {
          const ErrorMetrics rel = relative_similitude(
              boxplot_distance(boxes[i], boxes[j], 1),
              boxplot_distance(population[i], population[j], 1));
          acc.location += rel.location;
          acc.scale += rel.scale;
          acc.skewness += rel.skewness;
          acc.tails += rel.tails;
          ++pairs;
        }
      }
      const double p = static_cast<double>(pairs);
      return ErrorMetrics{acc.location / p, acc.scale / p, acc.skewness / p, acc.tails / p};
    };
    const ErrorMetrics oracle = mean_pairwise(empirical);

    for (std::size_t e = 0; e < ms.epsilon_grid.size(); ++e) {
      const double eps = ms.epsilon_grid[e];
      RandomSource mech_stream = stream.child(1 + e);
      ResultRow base{method, label, ms.n_total, eps, rep, "", 0.0, false};
      std::vector<BoxplotSummary> priv;
      try {
        for (std::size_t i = 0; i < ms.groups; ++i) {
          RandomSource rng = mech_stream.child(i);
          priv.push_back(detail::as_proportions(
              private_summary(data[i], ms.method, eps, ms.params, rng), sizes[i]));
        }
      } catch (const std::invalid_argument& err) {
        failure_slots[rep].push_back({method, ms.n_total, eps, err.what()});
        continue;
      }
      detail::append_metrics(slots[rep], base, mean_pairwise(priv));
      base.oracle = true;
      detail::append_metrics(slots[rep], base, oracle);
    }
  });

  for (std::size_t r = 0; r < ms.replications; ++r) {
    for (auto& row : slots[r]) result.rows.push_back(std::move(row));
    for (auto& f : failure_slots[r]) detail::add_failure(result.failures, std::move(f));
  }
  return result;
}

/// Mean and normal-approximation 95% half-width per cell.
struct CellSummary {
  std::string method;
  std::string distribution;
  std::size_t n = 0;
  double epsilon = 0.0;
  std::string metric;
  bool oracle = false;
  double mean = 0.0;
  double half_width = 0.0;
  std::size_t count = 0;
};

inline std::vector<CellSummary> aggregate(const std::vector<ResultRow>& rows) {
  using Key = std::tuple<std::string, std::string, std::size_t, double, std::string, bool>;
  std::map<Key, std::size_t> index;
  std::vector<CellSummary> cells;
  std::vector<std::vector<double>> values;
  for (const auto& r : rows) {
    Key key{r.method, r.distribution, r.n, r.epsilon, r.metric, r.oracle};
    auto [it, inserted] = index.try_emplace(key, cells.size());
    if (inserted) {
      cells.push_back({r.method, r.distribution, r.n, r.epsilon, r.metric, r.oracle});
      values.emplace_back();
    }
    values[it->second].push_back(r.value);
  }
  for (std::size_t c = 0; c < cells.size(); ++c) {
    const auto& v = values[c];
    const double cnt = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / cnt;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    cells[c].mean = mean;
    cells[c].count = v.size();
    cells[c].half_width = v.size() > 1 ? 1.96 * std::sqrt(ss / (cnt - 1.0)) / std::sqrt(cnt) : 0.0;
  }
  return cells;
}

// Finds the aggregated mean for one cell; throws if absent.
inline double cell_mean(const std::vector<CellSummary>& cells, std::size_t n,
                        double epsilon, const std::string& metric, bool oracle) {
  for (const auto& c : cells) {
    if (c.n == n && c.epsilon == epsilon && c.metric == metric && c.oracle == oracle) {
      return c.mean;
    }
  }
  throw std::out_of_range("cell_mean: no such cell");
}

namespace detail {
inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace detail

inline void write_results_csv(std::ostream& os, const std::vector<ResultRow>& rows) {
  os << "method,distribution,n,epsilon,replication,metric,value,oracle_flag\n";
  for (const auto& r : rows) {
    os << r.method << ',' << r.distribution << ',' << r.n << ','
       << detail::format_double(r.epsilon) << ',' << r.replication << ','
       << r.metric << ',' << detail::format_double(r.value) << ','
       << (r.oracle ? 1 : 0) << '\n';
  }
}

inline void write_summary_csv(std::ostream& os, const std::vector<CellSummary>& cells) {
  os << "method,distribution,n,epsilon,metric,oracle_flag,mean,ci95_half_width,count\n";
  for (const auto& c : cells) {
    os << c.method << ',' << c.distribution << ',' << c.n << ','
       << detail::format_double(c.epsilon) << ',' << c.metric << ','
       << (c.oracle ? 1 : 0) << ',' << detail::format_double(c.mean) << ','
       << detail::format_double(c.half_width) << ',' << c.count << '\n';
  }
}

}  // namespace dpbox

#endif  // DPBOX_SIMULATION_HPP_
