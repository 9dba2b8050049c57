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

#ifndef DPBOX_DATASET_HPP_
#define DPBOX_DATASET_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace dpbox {

/// A non-empty multiset of finite reals, stored sorted ascending.
class Dataset {
 public:
  explicit Dataset(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
      throw std::invalid_argument("Dataset: at least one value is required");
    }
    for (double v : values_) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("Dataset: values must be finite");
      }
    }
    std::sort(values_.begin(), values_.end());
  }

  std::size_t size() const { return values_.size(); }
  std::span<const double> values() const { return values_; }
  double operator[](std::size_t i) const { return values_[i]; }
  double min() const { return values_.front(); }
  double max() const { return values_.back(); }

  // #{i : X_i <= x}
  std::size_t count_at_most(double x) const {
    return static_cast<std::size_t>(
        std::upper_bound(values_.begin(), values_.end(), x) - values_.begin());
  }
  // #{i : X_i < x}
  std::size_t count_below(double x) const {
    return static_cast<std::size_t>(
        std::lower_bound(values_.begin(), values_.end(), x) - values_.begin());
  }
  // #{i : X_i > x}
  std::size_t count_above(double x) const { return size() - count_at_most(x); }

  // Affine image a*X + b; a must be positive so the order is preserved.
  Dataset affine(double scale, double shift) const {
    std::vector<double> out(values_.size());
    std::transform(values_.begin(), values_.end(), out.begin(),
                   [&](double v) { return scale * v + shift; });
    return Dataset(std::move(out));
  }

  Dataset negated() const {
    std::vector<double> out(values_.rbegin(), values_.rend());
    for (double& v : out) v = -v;
    return Dataset(std::move(out));
  }

 private:
  std::vector<double> values_;
};

/// Empirical CDF, #{X_i <= x} / n.
inline double ecdf_eval(const Dataset& ds, double x) {
  return static_cast<double>(ds.count_at_most(x)) /
         static_cast<double>(ds.size());
}

/// Smallest data value x with F(x) >= p, i.e. the ceil(p*n)-th order
/// statistic. F is evaluated as count / n, the same arithmetic as
/// ecdf_eval, so the two never disagree at the boundary.
inline double sample_quantile(const Dataset& ds, double p) {
  if (!(p > 0.0 && p < 1.0)) {
    throw std::invalid_argument("sample_quantile: level must lie in (0, 1), got " +
                                std::to_string(p));
  }
  const std::size_t n = ds.size();
  const double nd = static_cast<double>(n);
  auto reaches = [&](std::size_t k) { return static_cast<double>(k) / nd >= p; };
  std::size_t k = static_cast<std::size_t>(std::ceil(p * nd));
  k = std::clamp<std::size_t>(k, 1, n);
  while (k > 1 && reaches(k - 1)) --k;
  while (k < n && !reaches(k)) ++k;
  return ds[k - 1];
}

}  // namespace dpbox

#endif  // DPBOX_DATASET_HPP_
