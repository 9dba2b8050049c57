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

// Draws a normal sample and prints its private and non-private boxplots.

#include <cstdio>

#include "dpbox/dpbox.hpp"

namespace {

void print(const char* name, const dpbox::BoxplotSummary& s) {
  std::printf("%-12s %9.3f | %7.3f [%7.3f %7.3f %7.3f] %7.3f | %9.3f\n", name, s.o_lower,
              s.lower_whisker, s.q1, s.median, s.q3, s.upper_whisker, s.o_upper);
}

}  // namespace

int main() {
  dpbox::RandomSource rng(7);
  const dpbox::Dataset data =
      dpbox::sample_distribution(dpbox::Distribution::normal(), 20000, rng);

  dpbox::DpBoxplotParams params;
  params.lower_bound = -50.0;
  params.upper_bound = 50.0;

  std::printf("%-12s %9s | %7s [%7s %7s %7s] %7s | %9s\n", "", "o_lower", "lower", "q1",
              "median", "q3", "upper", "o_upper");
  print("empirical", dpbox::nonprivate_boxplot(data));
  print("population", dpbox::population_boxplot(dpbox::Distribution::normal()));
  for (double eps : {0.1, 1.0, 10.0}) {
    const auto result = dpbox::dp_boxplot(data, eps, params, rng);
    char name[32];
    std::snprintf(name, sizeof name, "eps = %g", eps);
    print(name, result.summary);
  }
  return 0;
}
