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

#ifndef DPBOX_LOG_SPACE_HPP_
#define DPBOX_LOG_SPACE_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "dpbox/random.hpp"

namespace dpbox {

inline constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// log(exp(x) + exp(y))
inline double log_add(double x, double y) {
  if (x == kNegInf) return y;
  if (y == kNegInf) return x;
  const double hi = std::max(x, y);
  return hi + std::log1p(std::exp(-std::abs(x - y)));
}

inline double log_sum(std::span<const double> xs) {
  double hi = kNegInf;
  for (double x : xs) hi = std::max(hi, x);
  if (hi == kNegInf) return kNegInf;
  double acc = 0.0;
  for (double x : xs) acc += std::exp(x - hi);
  return hi + std::log(acc);
}

/// Draws an index with probability proportional to exp(log_weights[i]).
inline std::size_t sample_log_categorical(std::span<const double> log_weights,
                                          RandomSource& rng) {
  double hi = kNegInf;
  for (double w : log_weights) hi = std::max(hi, w);
  if (hi == kNegInf || std::isnan(hi)) {
    throw std::domain_error("sample_log_categorical: no positive weight");
  }
  double total = 0.0;
  for (double w : log_weights) total += std::exp(w - hi);
  double target = rng.uniform() * total;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < log_weights.size(); ++i) {
    const double p = std::exp(log_weights[i] - hi);
    if (p <= 0.0) continue;
    last_positive = i;
    if (target < p) return i;
    target -= p;
  }
  // Rounding left a sliver of mass past the end.
  return last_positive;
}

/// FIFO window over log-values that reports log(sum(exp(window))) without
/// ever subtracting, using the two-stack queue construction.
class LogSumWindow {
 public:
  void push(double v) {
    back_.push_back(v);
    back_sum_ = log_add(back_sum_, v);
  }

  void pop() {
    if (front_.empty()) {
      for (auto it = back_.rbegin(); it != back_.rend(); ++it) {
        const double below = front_.empty() ? kNegInf : front_.back();
        front_.push_back(log_add(*it, below));
      }
      back_.clear();
      back_sum_ = kNegInf;
    }
    front_.pop_back();
  }

  double sum() const {
    return log_add(front_.empty() ? kNegInf : front_.back(), back_sum_);
  }

 private:
  std::vector<double> front_;  // suffix sums, oldest element on top
  std::vector<double> back_;
  double back_sum_ = kNegInf;
};

}  // namespace dpbox

#endif  // DPBOX_LOG_SPACE_HPP_
