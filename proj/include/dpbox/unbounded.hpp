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

#ifndef DPBOX_UNBOUNDED_HPP_
#define DPBOX_UNBOUNDED_HPP_

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>

#include "dpbox/dataset.hpp"
#include "dpbox/random.hpp"

namespace dpbox {

inline constexpr double kDefaultBeta = 1.001;

struct UnboundedConfig {
  double q = 0.99;
  double lower_bound = 0.0;  // a
  double upper_bound = 1.0;  // b; only used for the search cap and for q < 1/2
  double beta = kDefaultBeta;
  double epsilon = 1.0;
};

struct UnboundedResult {
  double value = 0.0;
  bool truncated = false;  // the data-independent candidate cap was reached
  std::size_t index = 0;   // i* on the geometric grid
};

namespace detail {

inline void check_unbounded(double lower, double upper, double beta,
                            double epsilon) {
  if (!(lower < upper) || !std::isfinite(lower) || !std::isfinite(upper)) {
    throw std::invalid_argument("unbounded: bounds must satisfy a < b");
  }
  if (!(beta > 1.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("unbounded: beta must exceed 1");
  }
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("unbounded: epsilon must be positive");
  }
}

// Upward noisy first-crossing search on the grid lower + beta^i - 1.
// Accepts any q in (0, 1).
inline UnboundedResult unbounded_search_up(const Dataset& ds, double q,
                                           double lower, double upper,
                                           double beta, double epsilon,
                                           RandomSource& rng) {
  check_unbounded(lower, upper, beta, epsilon);
  if (!(q > 0.0 && q < 1.0)) {
    throw std::invalid_argument("unbounded: level must lie in (0, 1)");
  }
  const double n = static_cast<double>(ds.size());
  const double noise_scale = std::isinf(epsilon) ? 0.0 : 2.0 / (n * epsilon);
  const auto draw = [&] { return noise_scale > 0.0 ? std_exponential(rng) : 0.0; };
  const double threshold = q + noise_scale * draw();
  const auto cap = static_cast<std::size_t>(
                       std::ceil(std::log(upper - lower + 2.0) / std::log(beta))) +
                   64;
  for (std::size_t i = 1; i <= cap; ++i) {
    const double candidate = lower + std::pow(beta, static_cast<double>(i)) - 1.0;
    const double f = static_cast<double>(ds.count_at_most(candidate)) / n;
    if (f + noise_scale * draw() >= threshold) return {candidate, false, i};
  }
  return {lower + std::pow(beta, static_cast<double>(cap)) - 1.0, true, cap};
}

}  // namespace detail

/// Private quantile from a one-sided bound via a noisy first crossing of the
/// empirical CDF over the geometric grid a + beta^i - 1, i = 1, 2, ...
///
/// The crossing threshold is q + 2 V_0 / (n eps) and candidate i passes when
/// F(a + beta^i - 1) + 2 V_i / (n eps) reaches it, with V_i standard
/// exponentials drawn lazily. Levels below 1/2 run the same search on the
/// negated data with lower bound -b and level 1 - q, then negate. Output
/// lies on the grid (or its mirror image), never between grid points.
inline UnboundedResult unbounded_quantile(const Dataset& ds,
                                          const UnboundedConfig& cfg,
                                          RandomSource& rng) {
  if (!(cfg.q > 0.0 && cfg.q < 1.0) || cfg.q == 0.5) {
    throw std::invalid_argument(
        "unbounded: level must lie in (0, 1/2) or (1/2, 1), got " +
        std::to_string(cfg.q));
  }
  if (cfg.q > 0.5) {
    return detail::unbounded_search_up(ds, cfg.q, cfg.lower_bound,
                                       cfg.upper_bound, cfg.beta, cfg.epsilon,
                                       rng);
  }
  UnboundedResult mirrored = detail::unbounded_search_up(
      ds.negated(), 1.0 - cfg.q, -cfg.upper_bound, -cfg.lower_bound, cfg.beta,
      cfg.epsilon, rng);
  mirrored.value = -mirrored.value;
  return mirrored;
}

}  // namespace dpbox

#endif  // DPBOX_UNBOUNDED_HPP_
