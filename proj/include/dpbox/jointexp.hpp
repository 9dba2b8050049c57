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

#ifndef DPBOX_JOINTEXP_HPP_
#define DPBOX_JOINTEXP_HPP_

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "dpbox/dataset.hpp"
#include "dpbox/log_space.hpp"
#include "dpbox/quantile_levels.hpp"
#include "dpbox/random.hpp"

namespace dpbox {

/// Gap-matching utility
///   phi(x) = -sum_{j=1}^{m+1} |F(x_j) - F(x_{j-1}) - (q_j - q_{j-1})|
/// with F(x_0) = 0 and F(x_{m+1}) = 1. Maximum 0.
inline double utility_phi(const Dataset& ds, std::span<const double> x,
                          const QuantileLevels& levels) {
  if (x.size() != levels.size()) {
    throw std::invalid_argument("utility_phi: need one point per level");
  }
  if (!std::is_sorted(x.begin(), x.end())) {
    throw std::invalid_argument("utility_phi: points must be sorted");
  }
  double total = 0.0;
  double prev = 0.0;
  for (std::size_t j = 0; j <= x.size(); ++j) {
    const double cur = j < x.size() ? ecdf_eval(ds, x[j]) : 1.0;
    total += std::abs(cur - prev - levels.gap(j));
    prev = cur;
  }
  return -total;
}

struct JointExpResult {
  std::vector<double> xi;
  double epsilon_spent = 0.0;
};

/// Exact sampler for the joint exponential mechanism: density proportional
/// to exp(eps * n * phi(x) / 2) on a < x_1 <= ... <= x_m < b.
///
/// The data split (a, b) into cells on which F is constant. The sampler
/// picks a non-decreasing assignment of the m coordinates to cells from its
/// exact probability (a chain DP over quantile index and cell, where r
/// coordinates sharing a cell of length L contribute L^r / r!), then draws
/// the coordinates uniformly inside their cells and sorts them.
///
/// Construction costs O(m^2 K) time and memory for K cells; each draw costs
/// O(m K). Construct once to take many draws from the same input.
class JointExpSampler {
 public:
  JointExpSampler(const Dataset& ds, QuantileLevels levels, double lower,
                  double upper, double epsilon)
      : levels_(std::move(levels)), epsilon_(epsilon) {
    if (!(lower < upper) || !std::isfinite(lower) || !std::isfinite(upper)) {
      throw std::invalid_argument("JointExp: bounds must satisfy a < b");
    }
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
      throw std::invalid_argument("JointExp: epsilon must be positive and finite");
    }
    n_ = static_cast<double>(ds.size());
    coef_ = epsilon / 2.0;

    edges_.push_back(lower);
    for (double v : ds.values()) {
      if (v > lower && v < upper && v != edges_.back()) edges_.push_back(v);
    }
    edges_.push_back(upper);
    const std::size_t cells = edges_.size() - 1;
    counts_.resize(cells);
    log_len_.resize(cells);
    for (std::size_t i = 0; i < cells; ++i) {
      counts_[i] = static_cast<double>(ds.count_at_most(edges_[i]));
      log_len_[i] = std::log(edges_[i + 1] - edges_[i]);
    }
    build_tables();
  }

  const QuantileLevels& levels() const { return levels_; }
  double epsilon() const { return epsilon_; }
  // Cell i is the open interval (edges()[i], edges()[i + 1]).
  std::span<const double> edges() const { return edges_; }
  std::size_t cell_count() const { return counts_.size(); }

  JointExpResult draw(RandomSource& rng) const {
    const std::size_t m = levels_.size();
    const std::size_t cells = cell_count();
    std::vector<std::size_t> cell(m);

    std::vector<double> final_weights(layer_[m - 1].size());
    const double tail_target = n_ * levels_.gap(m);
    for (std::size_t i = 0; i < cells; ++i) {
      const double tail = coef_ * std::abs(n_ - counts_[i] - tail_target);
      for (std::size_t r = 1; r <= m; ++r) {
        final_weights[slot(m - 1, i, r)] = layer_[m - 1][slot(m - 1, i, r)] - tail;
      }
    }
    std::size_t pick = sample_log_categorical(final_weights, rng);
    std::size_t i = pick / m;
    std::size_t r = pick % m + 1;

    std::vector<double> scratch;
    for (std::size_t j = m; j-- > 0;) {
      cell[j] = i;
      if (j == 0) break;
      if (r > 1) {
        --r;
        continue;
      }
      scratch.assign(i, kNegInf);
      const double target = n_ * levels_.gap(j);
      for (std::size_t p = 0; p < i; ++p) {
        scratch[p] = totals_[j - 1][p] -
                     coef_ * std::abs(counts_[i] - counts_[p] - target);
      }
      i = sample_log_categorical(scratch, rng);
      scratch.assign(j, kNegInf);
      for (std::size_t rr = 1; rr <= j; ++rr) {
        scratch[rr - 1] = layer_[j - 1][slot(j - 1, i, rr)];
      }
      r = sample_log_categorical(scratch, rng) + 1;
    }

    JointExpResult out;
    out.epsilon_spent = epsilon_;
    out.xi.resize(m);
    for (std::size_t j = 0; j < m; ++j) {
      out.xi[j] = uniform_in(edges_[cell[j]], edges_[cell[j] + 1], rng);
    }
    std::sort(out.xi.begin(), out.xi.end());
    return out;
  }

 private:
  // layer_[j] holds the log-mass of the first j+1 coordinates with the last
  // one in cell i, as the r-th of a run sharing that cell (r = 1..j+1).
  // Stored with stride m for uniform indexing; unused slots are -inf.
  std::size_t slot(std::size_t, std::size_t i, std::size_t r) const {
    return i * levels_.size() + (r - 1);
  }

  void build_tables() {
    const std::size_t m = levels_.size();
    const std::size_t cells = cell_count();
    layer_.assign(m, std::vector<double>(cells * m, kNegInf));
    totals_.assign(m, std::vector<double>(cells, kNegInf));

    const double first_target = n_ * levels_.gap(0);
    for (std::size_t i = 0; i < cells; ++i) {
      layer_[0][slot(0, i, 1)] =
          log_len_[i] - coef_ * std::abs(counts_[i] - first_target);
      totals_[0][i] = layer_[0][slot(0, i, 1)];
    }

    std::vector<double> prefix_a(cells + 1);
    for (std::size_t j = 1; j < m; ++j) {
      const double target = n_ * levels_.gap(j);
      const auto& prev = totals_[j - 1];

      // Predecessor p < i contributes prev[p] - coef*|c_i - c_p - target|.
      // With D = c_i - c_p - target, counts are strictly increasing in p, so
      // {D > 0} is a prefix [0, s_i) and {D <= 0} is the window [s_i, i).
      prefix_a[0] = kNegInf;
      for (std::size_t p = 0; p < cells; ++p) {
        prefix_a[p + 1] = log_add(prefix_a[p], prev[p] + coef_ * counts_[p]);
      }
      LogSumWindow window;
      std::size_t head = 0;  // first index in the window
      std::size_t tail = 0;  // one past the last index pushed
      std::size_t split = 0;
      for (std::size_t i = 0; i < cells; ++i) {
        while (tail < i) {
          window.push(prev[tail] - coef_ * counts_[tail]);
          ++tail;
        }
        while (split < i && counts_[split] < counts_[i] - target) ++split;
        while (head < split) {
          window.pop();
          ++head;
        }
        const double shift = coef_ * (counts_[i] - target);
        const double from_a = prefix_a[split] - shift;
        const double from_b = head < tail ? window.sum() + shift : kNegInf;
        double cross = log_add(from_a, from_b);

        auto& cur = layer_[j];
        cur[slot(j, i, 1)] = log_len_[i] + cross;
        for (std::size_t r = 2; r <= j + 1; ++r) {
          cur[slot(j, i, r)] = layer_[j - 1][slot(j - 1, i, r - 1)] + log_len_[i] -
                               std::log(static_cast<double>(r)) - coef_ * target;
        }
        double total = kNegInf;
        for (std::size_t r = 1; r <= j + 1; ++r) total = log_add(total, cur[slot(j, i, r)]);
        totals_[j][i] = total;
      }
    }
  }

  QuantileLevels levels_;
  double epsilon_;
  double n_ = 0.0;
  double coef_ = 0.0;
  std::vector<double> edges_;
  std::vector<double> counts_;   // F * n on each cell
  std::vector<double> log_len_;
  std::vector<std::vector<double>> layer_;
  std::vector<std::vector<double>> totals_;
};

inline JointExpResult jointexp_sample(const Dataset& ds,
                                      const QuantileLevels& levels,
                                      double lower, double upper,
                                      double epsilon, RandomSource& rng) {
  return JointExpSampler(ds, levels, lower, upper, epsilon).draw(rng);
}

// Single-quantile exponential mechanism; the m = 1 case of JointExp.
inline double private_quantile(const Dataset& ds, double q, double lower,
                               double upper, double epsilon,
                               RandomSource& rng) {
  return jointexp_sample(ds, QuantileLevels{q}, lower, upper, epsilon, rng).xi[0];
}

}  // namespace dpbox

#endif  // DPBOX_JOINTEXP_HPP_
