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

#ifndef DPBOX_BASELINES_HPP_
#define DPBOX_BASELINES_HPP_

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

#include "dpbox/boxplot.hpp"
#include "dpbox/dataset.hpp"
#include "dpbox/dp_boxplot.hpp"
#include "dpbox/jointexp.hpp"
#include "dpbox/noisy_count.hpp"
#include "dpbox/random.hpp"
#include "dpbox/unbounded.hpp"

namespace dpbox {

enum class Method {
  kDpBoxplot,
  kNaiveJointExp,
  kNaivePrivateQuantile,
  kNaiveUnbounded,
};

inline std::string to_string(Method m) {
  switch (m) {
    case Method::kDpBoxplot: return "dpboxplot";
    case Method::kNaiveJointExp: return "naive-jointexp";
    case Method::kNaivePrivateQuantile: return "naive-privatequantile";
    case Method::kNaiveUnbounded: return "naive-unbounded";
  }
  return "unknown";
}

inline Method method_from_string(const std::string& s) {
  for (Method m : {Method::kDpBoxplot, Method::kNaiveJointExp,
                   Method::kNaivePrivateQuantile, Method::kNaiveUnbounded}) {
    if (to_string(m) == s) return m;
  }
  throw std::invalid_argument("unknown method: " + s);
}

/// Naive private boxplot: one quantile algorithm estimates the levels
/// (1/n, 1/4, 1/2, 3/4, 1 - 1/n), the extremes standing in for the data
/// minimum and maximum. Whiskers follow the classical rule clipped at the
/// estimated extremes and the counts beyond them get eps/16 each, as in
/// dp_boxplot; the quantiles share the remaining 7 eps/8.
inline BoxplotSummary naive_boxplot(const Dataset& ds, Method method,
                                    double epsilon,
                                    const DpBoxplotParams& params,
                                    RandomSource& rng) {
  if (method == Method::kDpBoxplot) {
    throw std::invalid_argument("naive_boxplot: dpboxplot is not a naive method");
  }
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("naive_boxplot: epsilon must be positive and finite");
  }
  if (!(params.lower_bound < params.upper_bound)) {
    throw std::invalid_argument("naive_boxplot: need lower bound < upper bound");
  }
  check_whisker_multiplier(params.whisker_multiplier);
  const std::size_t n = ds.size();
  if (n < 5) {
    throw std::invalid_argument("naive_boxplot: at least 5 observations are needed");
  }
  const double nd = static_cast<double>(n);
  const std::array<double, 5> levels{1.0 / nd, 0.25, 0.5, 0.75, 1.0 - 1.0 / nd};
  const double quantile_budget = 7.0 * epsilon / 8.0;
  const double count_budget = epsilon / 16.0;
  const double a = params.lower_bound;
  const double b = params.upper_bound;

  std::array<double, 5> est{};
  switch (method) {
    case Method::kNaiveJointExp: {
      const auto r = jointexp_sample(
          ds, QuantileLevels(std::vector<double>(levels.begin(), levels.end())), a,
          b, quantile_budget, rng);
      std::copy(r.xi.begin(), r.xi.end(), est.begin());
      break;
    }
    case Method::kNaivePrivateQuantile:
      for (std::size_t j = 0; j < levels.size(); ++j) {
        est[j] = private_quantile(ds, levels[j], a, b, quantile_budget / 5.0, rng);
      }
      break;
    case Method::kNaiveUnbounded:
      for (std::size_t j = 0; j < levels.size(); ++j) {
        if (levels[j] == 0.5) {
          est[j] = detail::unbounded_search_up(ds, 0.5, a, b, params.beta,
                                               quantile_budget / 5.0, rng)
                       .value;
        } else {
          UnboundedConfig cfg{levels[j], a, b, params.beta, quantile_budget / 5.0};
          est[j] = unbounded_quantile(ds, cfg, rng).value;
        }
      }
      break;
    case Method::kDpBoxplot:
      break;
  }

  BoxplotSummary s;
  s.kind = SummaryKind::kPrivate;
  s.whisker_multiplier = params.whisker_multiplier;
  s.median = est[2];
  s.q1 = std::min(est[1], s.median);
  s.q3 = std::max(est[3], s.median);
  const double arm = params.whisker_multiplier * (s.q3 - s.q1);
  s.lower_whisker = std::max(s.q1 - arm, est[0]);
  s.upper_whisker = std::min(s.q3 + arm, est[4]);
  s.o_lower = noisy_count(ds, s.lower_whisker, Side::kBelow, count_budget, rng);
  s.o_upper = noisy_count(ds, s.upper_whisker, Side::kAbove, count_budget, rng);
  return s;
}

inline BoxplotSummary private_summary(const Dataset& ds, Method method,
                                      double epsilon,
                                      const DpBoxplotParams& params,
                                      RandomSource& rng) {
  if (method == Method::kDpBoxplot) {
    return dp_boxplot(ds, epsilon, params, rng).summary;
  }
  return naive_boxplot(ds, method, epsilon, params, rng);
}

}  // namespace dpbox

#endif  // DPBOX_BASELINES_HPP_
