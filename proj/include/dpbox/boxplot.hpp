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

#ifndef DPBOX_BOXPLOT_HPP_
#define DPBOX_BOXPLOT_HPP_

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "dpbox/dataset.hpp"
#include "dpbox/distribution.hpp"

namespace dpbox {

enum class SummaryKind { kPrivate, kEmpirical, kPopulation };

inline std::string to_string(SummaryKind kind) {
  switch (kind) {
    case SummaryKind::kPrivate: return "private";
    case SummaryKind::kEmpirical: return "empirical";
    case SummaryKind::kPopulation: return "population";
  }
  return "unknown";
}

inline constexpr double kDefaultWhiskerMultiplier = 1.5;

/// Seven-number summary (o_lower, lower whisker, q1, median, q3, upper
/// whisker, o_upper).
///
/// The outlyingness fields are integer counts for empirical summaries,
/// probability masses for population summaries, and raw noisy counts (which
/// may be negative) for private summaries.
struct BoxplotSummary {
  double o_lower = 0.0;
  double lower_whisker = 0.0;
  double q1 = 0.0;
  double median = 0.0;
  double q3 = 0.0;
  double upper_whisker = 0.0;
  double o_upper = 0.0;
  SummaryKind kind = SummaryKind::kEmpirical;
  double whisker_multiplier = kDefaultWhiskerMultiplier;

  double iqr() const { return q3 - q1; }

  bool operator==(const BoxplotSummary&) const = default;
};

inline void check_whisker_multiplier(double k) {
  if (!(k > 0.0) || !std::isfinite(k)) {
    throw std::invalid_argument("whisker multiplier must be positive");
  }
}

/// Tukey boxplot of the empirical measure, quartiles by the inf-definition.
inline BoxplotSummary nonprivate_boxplot(
    const Dataset& ds, double whisker_multiplier = kDefaultWhiskerMultiplier) {
  check_whisker_multiplier(whisker_multiplier);
  BoxplotSummary s;
  s.kind = SummaryKind::kEmpirical;
  s.whisker_multiplier = whisker_multiplier;
  s.q1 = sample_quantile(ds, 0.25);
  s.median = sample_quantile(ds, 0.5);
  s.q3 = sample_quantile(ds, 0.75);
  const double arm = whisker_multiplier * (s.q3 - s.q1);
  s.lower_whisker = std::max(s.q1 - arm, ds.min());
  s.upper_whisker = std::min(s.q3 + arm, ds.max());
  s.o_lower = static_cast<double>(ds.count_below(s.lower_whisker));
  s.o_upper = static_cast<double>(ds.count_above(s.upper_whisker));
  return s;
}

/// Boxplot of a population measure. Whiskers are clipped at the support
/// (possibly infinite) and the outlyingness fields are probability masses
/// strictly beyond each whisker.
inline BoxplotSummary population_boxplot(
    const Distribution& dist,
    double whisker_multiplier = kDefaultWhiskerMultiplier) {
  check_whisker_multiplier(whisker_multiplier);
  BoxplotSummary s;
  s.kind = SummaryKind::kPopulation;
  s.whisker_multiplier = whisker_multiplier;
  s.q1 = dist.quantile(0.25);
  s.median = dist.quantile(0.5);
  s.q3 = dist.quantile(0.75);
  const double arm = whisker_multiplier * (s.q3 - s.q1);
  s.lower_whisker = std::max(s.q1 - arm, dist.support_min());
  s.upper_whisker = std::min(s.q3 + arm, dist.support_max());
  s.o_lower = dist.mass_below(s.lower_whisker);
  s.o_upper = dist.mass_above(s.upper_whisker);
  return s;
}

// Boxplot of the law of scale * X + shift given the boxplot of X (scale > 0).
// Masses are unchanged.
inline BoxplotSummary affine_image(const BoxplotSummary& s, double scale,
                                   double shift) {
  BoxplotSummary out = s;
  out.lower_whisker = scale * s.lower_whisker + shift;
  out.q1 = scale * s.q1 + shift;
  out.median = scale * s.median + shift;
  out.q3 = scale * s.q3 + shift;
  out.upper_whisker = scale * s.upper_whisker + shift;
  return out;
}

}  // namespace dpbox

#endif  // DPBOX_BOXPLOT_HPP_
