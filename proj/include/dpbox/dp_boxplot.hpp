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

#ifndef DPBOX_DP_BOXPLOT_HPP_
#define DPBOX_DP_BOXPLOT_HPP_

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dpbox/boxplot.hpp"
#include "dpbox/dataset.hpp"
#include "dpbox/jointexp.hpp"
#include "dpbox/noisy_count.hpp"
#include "dpbox/random.hpp"
#include "dpbox/unbounded.hpp"

namespace dpbox {

/// Split of the total budget across the five sub-mechanisms.
struct BudgetPlan {
  double total = 0.0;
  double unbounded_upper = 0.0;  // 3/16
  double unbounded_lower = 0.0;  // 3/16
  double jointexp = 0.0;         // 1/2
  double count_lower = 0.0;      // 1/16
  double count_upper = 0.0;      // 1/16

  double sum() const {
    return unbounded_upper + unbounded_lower + jointexp + count_lower + count_upper;
  }
};

inline BudgetPlan budget_plan(double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("budget_plan: epsilon must be positive and finite");
  }
  BudgetPlan plan;
  plan.total = epsilon;
  plan.unbounded_upper = 3.0 * epsilon / 16.0;
  plan.unbounded_lower = 3.0 * epsilon / 16.0;
  plan.jointexp = epsilon / 2.0;
  plan.count_lower = epsilon / 16.0;
  plan.count_upper = epsilon / 16.0;
  return plan;
}

struct DpBoxplotParams {
  double lower_bound = -50.0;  // public bounds (a, b)
  double upper_bound = 50.0;
  double c = 1.0 / 20.0;           // extreme levels c/sqrt(n) and 1 - c/sqrt(n)
  double lambda_exponent = 0.25;   // lambda_n = n^(-lambda_exponent)
  double beta = kDefaultBeta;
  double whisker_multiplier = kDefaultWhiskerMultiplier;
};

struct DpBoxplotResult {
  BoxplotSummary summary;  // kind == kPrivate
  bool lower_is_extreme_quantile = false;
  bool upper_is_extreme_quantile = false;
  bool jointexp_bounds_fallback = false;
  BudgetPlan budget;
};

inline void check_params(const DpBoxplotParams& p, std::size_t n) {
  if (!(p.lower_bound < p.upper_bound)) {
    throw std::invalid_argument("dp_boxplot: need lower bound < upper bound");
  }
  if (!(p.c > 0.0)) throw std::invalid_argument("dp_boxplot: c must be positive");
  if (!(p.lambda_exponent >= 0.0)) {
    throw std::invalid_argument("dp_boxplot: lambda exponent must be non-negative");
  }
  check_whisker_multiplier(p.whisker_multiplier);
  if (!(p.c / std::sqrt(static_cast<double>(n)) < 0.5)) {
    const auto min_n = static_cast<std::size_t>(std::floor(4.0 * p.c * p.c)) + 1;
    throw std::invalid_argument(
        "dp_boxplot: c/sqrt(n) must be below 1/2; with c = " + std::to_string(p.c) +
        " at least n = " + std::to_string(min_n) + " observations are needed, got " +
        std::to_string(n));
  }
}

/// Differentially private boxplot with total budget epsilon.
///
///  1. Extreme quantiles psi_low, psi_high at levels c/sqrt(n), 1 - c/sqrt(n)
///     by the unbounded search, 3 eps/16 each.
///  2. Quartiles and median jointly by JointExp on (psi_low, psi_high) with
///     eps/2, falling back to (a, b) if the estimated extremes are inverted.
///  3. q1 <- min(q1, median), q3 <- max(q3, median).
///  4. Whiskers at k * IQR beyond the box. A whisker is replaced by its
///     extreme quantile, with a zero outlyingness count, when the extreme
///     quantile shortens the arm by more than lambda_n * |whisker|;
///     otherwise the count beyond it is released with eps/16.
///
/// The only data-dependent outputs are the seven summary values; the flags
/// are functions of them.
inline DpBoxplotResult dp_boxplot(const Dataset& ds, double epsilon,
                                  const DpBoxplotParams& params,
                                  RandomSource& rng) {
  const BudgetPlan plan = budget_plan(epsilon);
  check_params(params, ds.size());
  const double n = static_cast<double>(ds.size());
  const double tail_level = params.c / std::sqrt(n);
  const double lambda = std::pow(n, -params.lambda_exponent);

  DpBoxplotResult out;
  out.budget = plan;

  UnboundedConfig cfg;
  cfg.lower_bound = params.lower_bound;
  cfg.upper_bound = params.upper_bound;
  cfg.beta = params.beta;
  cfg.epsilon = plan.unbounded_upper;
  cfg.q = 1.0 - tail_level;
  const double psi_high = unbounded_quantile(ds, cfg, rng).value;
  cfg.epsilon = plan.unbounded_lower;
  cfg.q = tail_level;
  const double psi_low = unbounded_quantile(ds, cfg, rng).value;

  double je_lower = psi_low;
  double je_upper = psi_high;
  if (!(je_lower < je_upper)) {
    je_lower = params.lower_bound;
    je_upper = params.upper_bound;
    out.jointexp_bounds_fallback = true;
  }
  const JointExpResult quartiles = jointexp_sample(
      ds, QuantileLevels{0.25, 0.5, 0.75}, je_lower, je_upper, plan.jointexp, rng);

  BoxplotSummary& s = out.summary;
  s.kind = SummaryKind::kPrivate;
  s.whisker_multiplier = params.whisker_multiplier;
  s.median = quartiles.xi[1];
  s.q1 = std::min(quartiles.xi[0], s.median);
  s.q3 = std::max(quartiles.xi[2], s.median);
  const double arm = params.whisker_multiplier * (s.q3 - s.q1);
  s.lower_whisker = s.q1 - arm;
  s.upper_whisker = s.q3 + arm;

  if (psi_low > lambda * std::abs(s.lower_whisker) + s.lower_whisker) {
    s.lower_whisker = psi_low;
    s.o_lower = 0.0;
    out.lower_is_extreme_quantile = true;
  } else {
    s.o_lower = noisy_count(ds, s.lower_whisker, Side::kBelow, plan.count_lower, rng);
  }
  if (psi_high < s.upper_whisker - lambda * std::abs(s.upper_whisker)) {
    s.upper_whisker = psi_high;
    s.o_upper = 0.0;
    out.upper_is_extreme_quantile = true;
  } else {
    s.o_upper = noisy_count(ds, s.upper_whisker, Side::kAbove, plan.count_upper, rng);
  }
  return out;
}

}  // namespace dpbox

#endif  // DPBOX_DP_BOXPLOT_HPP_
