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

#ifndef DPBOX_QUANTILE_LEVELS_HPP_
#define DPBOX_QUANTILE_LEVELS_HPP_

#include <cstddef>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace dpbox {

/// Strictly increasing quantile levels 0 < q_1 < ... < q_m < 1.
class QuantileLevels {
 public:
  QuantileLevels(std::initializer_list<double> q)
      : QuantileLevels(std::vector<double>(q)) {}

  explicit QuantileLevels(std::vector<double> q) : q_(std::move(q)) {
    if (q_.empty()) throw std::invalid_argument("QuantileLevels: empty");
    for (std::size_t j = 0; j < q_.size(); ++j) {
      if (!(q_[j] > 0.0 && q_[j] < 1.0)) {
        throw std::invalid_argument("QuantileLevels: levels must lie in (0, 1)");
      }
      if (j > 0 && !(q_[j - 1] < q_[j])) {
        throw std::invalid_argument("QuantileLevels: levels must be strictly increasing");
      }
    }
  }

  std::size_t size() const { return q_.size(); }
  double operator[](std::size_t j) const { return q_[j]; }
  std::span<const double> values() const { return q_; }

  // q_j - q_{j-1} for j = 1..m+1 with q_0 = 0, q_{m+1} = 1 (0-based: gap(0)
  // is q_1).
  double gap(std::size_t j) const {
    const double hi = j < q_.size() ? q_[j] : 1.0;
    const double lo = j == 0 ? 0.0 : q_[j - 1];
    return hi - lo;
  }

 private:
  std::vector<double> q_;
};

}  // namespace dpbox

#endif  // DPBOX_QUANTILE_LEVELS_HPP_
