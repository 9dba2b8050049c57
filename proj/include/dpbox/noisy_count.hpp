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

#ifndef DPBOX_NOISY_COUNT_HPP_
#define DPBOX_NOISY_COUNT_HPP_

#include <cmath>
#include <stdexcept>

#include "dpbox/dataset.hpp"
#include "dpbox/random.hpp"

namespace dpbox {

enum class Side { kBelow, kAbove };

/// Laplace mechanism on a threshold count (sensitivity 1): #{X_i < t} or
/// #{X_i > t}, plus Laplace(1/eps) noise. The raw real value is returned.
/// eps = +inf gives the exact count.
inline double noisy_count(const Dataset& ds, double threshold, Side side,
                          double epsilon, RandomSource& rng) {
  if (!(epsilon > 0.0)) {
    throw std::invalid_argument("noisy_count: epsilon must be positive");
  }
  const double count = static_cast<double>(
      side == Side::kBelow ? ds.count_below(threshold) : ds.count_above(threshold));
  if (std::isinf(epsilon)) return count;
  return count + laplace(1.0 / epsilon, rng);
}

}  // namespace dpbox

#endif  // DPBOX_NOISY_COUNT_HPP_
