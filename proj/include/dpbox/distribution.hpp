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

#ifndef DPBOX_DISTRIBUTION_HPP_
#define DPBOX_DISTRIBUTION_HPP_

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include <boost/math/distributions/beta.hpp>
#include <boost/math/distributions/normal.hpp>
#include <boost/math/distributions/skew_normal.hpp>

#include "dpbox/dataset.hpp"
#include "dpbox/random.hpp"

namespace dpbox {

namespace dist {

struct Normal {};

// Standardized skew normal with slant `shape`: S = d|Z1| + sqrt(1-d^2) Z2,
// d = shape / sqrt(1 + shape^2), shifted and scaled to mean 0, variance 1.
struct SkewNormal {
  double shape = 20.0;
};

struct Uniform {
  double lo = -std::numbers::sqrt3;
  double hi = std::numbers::sqrt3;
};

// Beta(alpha, beta) shifted and scaled to mean 0, variance 1.
struct StandardizedBeta {
  double alpha = 2.0;
  double beta = 2.0;
};

struct Empirical {
  Dataset data;
};

}  // namespace dist

/// A population measure: CDF, quantile function, support and sampler.
class Distribution {
 public:
  using Variant = std::variant<dist::Normal, dist::SkewNormal, dist::Uniform,
                               dist::StandardizedBeta, dist::Empirical>;

  static Distribution normal() { return Distribution(dist::Normal{}); }
  static Distribution skew_normal(double shape) {
    return Distribution(dist::SkewNormal{shape});
  }
  static Distribution uniform(double lo, double hi) {
    if (!(lo < hi)) throw std::invalid_argument("uniform: need lo < hi");
    return Distribution(dist::Uniform{lo, hi});
  }
  static Distribution standard_uniform() {
    return uniform(-std::numbers::sqrt3, std::numbers::sqrt3);
  }
  static Distribution standardized_beta(double alpha, double beta) {
    if (!(alpha > 0 && beta > 0)) {
      throw std::invalid_argument("standardized_beta: shapes must be positive");
    }
    return Distribution(dist::StandardizedBeta{alpha, beta});
  }
  // When `standardize` is set the data are mapped to mean 0, variance 1
  // (population variance) before use.
  static Distribution empirical(const Dataset& data, bool standardize) {
    if (!standardize) return Distribution(dist::Empirical{data});
    auto v = data.values();
    const double n = static_cast<double>(v.size());
    const double mean = std::accumulate(v.begin(), v.end(), 0.0) / n;
    double ss = 0.0;
    for (double x : v) ss += (x - mean) * (x - mean);
    const double sd = std::sqrt(ss / n);
    if (!(sd > 0.0)) {
      throw std::invalid_argument("empirical: cannot standardize constant data");
    }
    return Distribution(dist::Empirical{data.affine(1.0 / sd, -mean / sd)});
  }

  // Parses the tags used on the command line and in result tables.
  static Distribution from_tag(const std::string& tag) {
    if (tag == "normal") return normal();
    if (tag == "skew") return skew_normal(20.0);
    if (tag == "uniform") return standard_uniform();
    if (tag == "beta") return standardized_beta(2.0, 2.0);
    throw std::invalid_argument("unknown distribution tag: " + tag);
  }

  const Variant& variant() const { return v_; }

  std::string tag() const {
    struct {
      std::string operator()(const dist::Normal&) const { return "normal"; }
      std::string operator()(const dist::SkewNormal&) const { return "skew"; }
      std::string operator()(const dist::Uniform&) const { return "uniform"; }
      std::string operator()(const dist::StandardizedBeta&) const { return "beta"; }
      std::string operator()(const dist::Empirical&) const { return "empirical"; }
    } visitor;
    return std::visit(visitor, v_);
  }

  double cdf(double x) const {
    return std::visit([x](const auto& d) { return cdf_of(d, x); }, v_);
  }

  // F(x) - nu({x}); equals cdf(x) for continuous laws.
  double mass_below(double x) const {
    if (const auto* e = std::get_if<dist::Empirical>(&v_)) {
      return static_cast<double>(e->data.count_below(x)) /
             static_cast<double>(e->data.size());
    }
    return cdf(x);
  }

  // 1 - F(x)
  double mass_above(double x) const {
    if (const auto* e = std::get_if<dist::Empirical>(&v_)) {
      return static_cast<double>(e->data.count_above(x)) /
             static_cast<double>(e->data.size());
    }
    if (std::isinf(x)) return x > 0 ? 0.0 : 1.0;
    return std::visit([x](const auto& d) { return survival_of(d, x); }, v_);
  }

  // inf{x : p <= F(x)} for p in (0, 1).
  double quantile(double p) const {
    if (!(p > 0.0 && p < 1.0)) {
      throw std::invalid_argument("quantile: level must lie in (0, 1)");
    }
    return std::visit([p](const auto& d) { return quantile_of(d, p); }, v_);
  }

  double support_min() const {
    return std::visit([](const auto& d) { return support_of(d).first; }, v_);
  }
  double support_max() const {
    return std::visit([](const auto& d) { return support_of(d).second; }, v_);
  }

  double sample(RandomSource& rng) const {
    return std::visit([&rng](const auto& d) { return sample_of(d, rng); }, v_);
  }

 private:
  explicit Distribution(Variant v) : v_(std::move(v)) {}

  static constexpr double kInf = std::numeric_limits<double>::infinity();

  // Skew normal moments of the unstandardized law SN(0, 1, shape).
  static double skew_delta(const dist::SkewNormal& d) {
    return d.shape / std::sqrt(1.0 + d.shape * d.shape);
  }
  static double skew_mean(const dist::SkewNormal& d) {
    return skew_delta(d) * std::sqrt(2.0 / std::numbers::pi);
  }
  static double skew_sd(const dist::SkewNormal& d) {
    const double delta = skew_delta(d);
    return std::sqrt(1.0 - 2.0 * delta * delta / std::numbers::pi);
  }
  static boost::math::skew_normal_distribution<double> skew_law(
      const dist::SkewNormal& d) {
    const double sd = skew_sd(d);
    return boost::math::skew_normal_distribution<double>(-skew_mean(d) / sd,
                                                         1.0 / sd, d.shape);
  }

  static double beta_mean(const dist::StandardizedBeta& d) {
    return d.alpha / (d.alpha + d.beta);
  }
  static double beta_sd(const dist::StandardizedBeta& d) {
    const double s = d.alpha + d.beta;
    return std::sqrt(d.alpha * d.beta / (s * s * (s + 1.0)));
  }

  static double cdf_of(const dist::Normal&, double x) {
    if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
    return boost::math::cdf(boost::math::normal_distribution<double>(), x);
  }
  static double cdf_of(const dist::SkewNormal& d, double x) {
    if (std::isinf(x)) return x > 0 ? 1.0 : 0.0;
    return boost::math::cdf(skew_law(d), x);
  }
  static double cdf_of(const dist::Uniform& d, double x) {
    if (x <= d.lo) return 0.0;
    if (x >= d.hi) return 1.0;
    return (x - d.lo) / (d.hi - d.lo);
  }
  static double cdf_of(const dist::StandardizedBeta& d, double x) {
    const double u = beta_mean(d) + x * beta_sd(d);
    if (u <= 0.0) return 0.0;
    if (u >= 1.0) return 1.0;
    return boost::math::cdf(boost::math::beta_distribution<double>(d.alpha, d.beta), u);
  }
  static double cdf_of(const dist::Empirical& d, double x) {
    return ecdf_eval(d.data, x);
  }

  static double survival_of(const dist::Normal&, double x) {
    return boost::math::cdf(
        boost::math::complement(boost::math::normal_distribution<double>(), x));
  }
  static double survival_of(const dist::SkewNormal& d, double x) {
    return boost::math::cdf(boost::math::complement(skew_law(d), x));
  }
  template <typename D>
  static double survival_of(const D& d, double x) {
    return 1.0 - cdf_of(d, x);
  }

  static double quantile_of(const dist::Normal&, double p) {
    return boost::math::quantile(boost::math::normal_distribution<double>(), p);
  }
  static double quantile_of(const dist::SkewNormal& d, double p) {
    return boost::math::quantile(skew_law(d), p);
  }
  static double quantile_of(const dist::Uniform& d, double p) {
    return d.lo + p * (d.hi - d.lo);
  }
  static double quantile_of(const dist::StandardizedBeta& d, double p) {
    const double u = boost::math::quantile(
        boost::math::beta_distribution<double>(d.alpha, d.beta), p);
    return (u - beta_mean(d)) / beta_sd(d);
  }
  static double quantile_of(const dist::Empirical& d, double p) {
    return sample_quantile(d.data, p);
  }

  static std::pair<double, double> support_of(const dist::Normal&) {
    return {-kInf, kInf};
  }
  static std::pair<double, double> support_of(const dist::SkewNormal&) {
    return {-kInf, kInf};
  }
  static std::pair<double, double> support_of(const dist::Uniform& d) {
    return {d.lo, d.hi};
  }
  static std::pair<double, double> support_of(const dist::StandardizedBeta& d) {
    return {-beta_mean(d) / beta_sd(d), (1.0 - beta_mean(d)) / beta_sd(d)};
  }
  static std::pair<double, double> support_of(const dist::Empirical& d) {
    return {d.data.min(), d.data.max()};
  }

  static double sample_of(const dist::Normal&, RandomSource& rng) {
    return standard_normal(rng);
  }
  static double sample_of(const dist::SkewNormal& d, RandomSource& rng) {
    const double delta = skew_delta(d);
    const double z1 = standard_normal(rng);
    const double z2 = standard_normal(rng);
    const double s = delta * std::abs(z1) + std::sqrt(1.0 - delta * delta) * z2;
    return (s - skew_mean(d)) / skew_sd(d);
  }
  static double sample_of(const dist::Uniform& d, RandomSource& rng) {
    return uniform_in(d.lo, d.hi, rng);
  }
  static double sample_of(const dist::StandardizedBeta& d, RandomSource& rng) {
    double u;
    const bool small_integer_shapes =
        d.alpha == std::floor(d.alpha) && d.beta == std::floor(d.beta) &&
        d.alpha + d.beta <= 32;
    if (small_integer_shapes) {
      // Beta(a, b) is the a-th order statistic of a + b - 1 uniforms.
      const int a = static_cast<int>(d.alpha);
      const int total = a + static_cast<int>(d.beta) - 1;
      double draws[32];
      for (int i = 0; i < total; ++i) draws[i] = rng.uniform();
      std::nth_element(draws, draws + (a - 1), draws + total);
      u = draws[a - 1];
    } else {
      u = boost::math::quantile(
          boost::math::beta_distribution<double>(d.alpha, d.beta), rng.uniform());
    }
    return (u - beta_mean(d)) / beta_sd(d);
  }
  // A single draw from an empirical law is with replacement; use
  // sample_distribution for draws without replacement.
  static double sample_of(const dist::Empirical& d, RandomSource& rng) {
    auto idx = static_cast<std::size_t>(rng.uniform() * static_cast<double>(d.data.size()));
    return d.data[std::min(idx, d.data.size() - 1)];
  }

  Variant v_;
};

/// n independent draws. Empirical laws are sampled without replacement.
inline Dataset sample_distribution(const Distribution& dist, std::size_t n,
                                   RandomSource& rng) {
  if (n == 0) throw std::invalid_argument("sample_distribution: n must be >= 1");
  std::vector<double> out;
  out.reserve(n);
  if (const auto* e = std::get_if<dist::Empirical>(&dist.variant())) {
    const std::size_t pool_size = e->data.size();
    if (n > pool_size) {
      throw std::invalid_argument(
          "sample_distribution: requested " + std::to_string(n) +
          " draws without replacement from " + std::to_string(pool_size) +
          " values");
    }
    std::vector<double> pool(e->data.values().begin(), e->data.values().end());
    // Partial Fisher-Yates.
    for (std::size_t i = 0; i < n; ++i) {
      const std::size_t span = pool_size - i;
      std::size_t j = i + std::min<std::size_t>(
                              static_cast<std::size_t>(rng.uniform() * static_cast<double>(span)),
                              span - 1);
      std::swap(pool[i], pool[j]);
      out.push_back(pool[i]);
    }
    return Dataset(std::move(out));
  }
  for (std::size_t i = 0; i < n; ++i) out.push_back(dist.sample(rng));
  return Dataset(std::move(out));
}

}  // namespace dpbox

#endif  // DPBOX_DISTRIBUTION_HPP_
