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

#ifndef DPBOX_METRICS_HPP_
#define DPBOX_METRICS_HPP_

#include <cmath>
#include <cstddef>

#include "dpbox/boxplot.hpp"

namespace dpbox {

/// Distances between two boxplots along the four visual characteristics.
struct ErrorMetrics {
  double location = 0.0;  // |median_x - median_y|
  double scale = 0.0;     // |IQR_x - IQR_y|
  double skewness = 0.0;  // |l_x - l_y| + |u_x - u_y|
  double tails = 0.0;     // |o_l,x - o_l,y| + |o_u,x - o_u,y| on the count scale

  bool operator==(const ErrorMetrics&) const = default;
};

namespace detail {
inline double count_scale(const BoxplotSummary& s, double n, double o) {
  return s.kind == SummaryKind::kPopulation ? o * n : o;
}
}  // namespace detail

// Population masses are multiplied by n so that tails compare counts.
inline ErrorMetrics boxplot_distance(const BoxplotSummary& x,
                                     const BoxplotSummary& y, std::size_t n) {
  const double nd = static_cast<double>(n);
  ErrorMetrics d;
  d.location = std::abs(x.median - y.median);
  d.scale = std::abs(x.iqr() - y.iqr());
  d.skewness = std::abs(x.lower_whisker - y.lower_whisker) +
               std::abs(x.upper_whisker - y.upper_whisker);
  d.tails = std::abs(detail::count_scale(x, nd, x.o_lower) -
                     detail::count_scale(y, nd, y.o_lower)) +
            std::abs(detail::count_scale(x, nd, x.o_upper) -
                     detail::count_scale(y, nd, y.o_upper));
  return d;
}

/// |1 - (d_private + 1) / (d_population + 1)| per component.
inline ErrorMetrics relative_similitude(const ErrorMetrics& priv,
                                        const ErrorMetrics& pop) {
  auto rel = [](double p, double q) { return std::abs(1.0 - (p + 1.0) / (q + 1.0)); };
  return {rel(priv.location, pop.location), rel(priv.scale, pop.scale),
          rel(priv.skewness, pop.skewness), rel(priv.tails, pop.tails)};
}

}  // namespace dpbox

#endif  // DPBOX_METRICS_HPP_
