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

#ifndef DPBOX_RANDOM_HPP_
#define DPBOX_RANDOM_HPP_

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace dpbox {

// splitmix64 finalizer; used to decorrelate seeds before they reach the
// Mersenne Twister and to derive child streams.
constexpr std::uint64_t mix_seed(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Seedable stream of uniform variates. All noise in the library is derived
/// from this type.
///
/// The engine is std::mt19937_64, whose output sequence is fixed by the C++
/// standard, and uniforms are built from its top 53 bits, so a given seed
/// yields the same stream on every conforming toolchain. This is a
/// statistical generator, not a cryptographic one: it is fit for
/// reproducible experiments, not for releasing statistics about real people
/// against an adversary who can observe timing or floating-point artifacts.
///
/// Child streams depend only on (seed, index), never on how many variates
/// the parent has produced, so replications can run in any order.
class RandomSource {
 public:
  explicit RandomSource(std::uint64_t seed)
      : seed_(seed), engine_(mix_seed(seed)) {}

  std::uint64_t seed() const { return seed_; }

  RandomSource child(std::uint64_t index) const {
    return RandomSource(mix_seed(seed_ ^ mix_seed(index + 0x632be59bd9b4e019ULL)));
  }

  std::uint64_t next_u64() { return engine_(); }

  // Uniform in [0, 1).
  double uniform() {
    return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t seed_;
  std::mt19937_64 engine_;
};

inline double uniform_in(double lo, double hi, RandomSource& rng) {
  if (!(lo < hi)) {
    throw std::invalid_argument("uniform_in: empty interval [" +
                                std::to_string(lo) + ", " +
                                std::to_string(hi) + ")");
  }
  double x = lo + (hi - lo) * rng.uniform();
  // Rounding can land exactly on hi for wide intervals.
  return x < hi ? x : std::nextafter(hi, lo);
}

inline double std_exponential(RandomSource& rng) {
  return -std::log1p(-rng.uniform());
}

/// Laplace(0, scale) as the difference of two standard exponentials.
inline double laplace(double scale, RandomSource& rng) {
  if (!(scale > 0.0) || !std::isfinite(scale)) {
    throw std::invalid_argument("laplace: scale must be positive and finite");
  }
  double e1 = std_exponential(rng);
  double e2 = std_exponential(rng);
  return scale * (e1 - e2);
}

// Box-Muller; the second variate is discarded so the source stays stateless.
inline double standard_normal(RandomSource& rng) {
  double r = std::sqrt(-2.0 * std::log1p(-rng.uniform()));
  return r * std::cos(2.0 * std::numbers::pi * rng.uniform());
}

}  // namespace dpbox

#endif  // DPBOX_RANDOM_HPP_
