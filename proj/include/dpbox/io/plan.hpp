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

#ifndef DPBOX_IO_PLAN_HPP_
#define DPBOX_IO_PLAN_HPP_

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <fstream>
#include <istream>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "dpbox/dp_boxplot.hpp"
#include "dpbox/io/csv.hpp"

namespace dpbox::io {

/// A visualization is one panel; each group of its key columns is one box.
struct Visualization {
  std::vector<std::string> group_columns;
};

/// Everything a `compare` run needs. One plan is one privacy budget.
struct AnalysisPlan {
  std::string input;
  std::string value_column;
  std::vector<Visualization> visualizations;
  double epsilon = 1.0;
  DpBoxplotParams params;
  std::vector<Filter> filters;
  std::vector<Derivation> derivations;
  std::uint64_t seed = 0;
  std::size_t min_group_size = 20;

  void validate() const {
    if (visualizations.empty()) throw std::invalid_argument("plan: no visualization");
    if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
      throw std::invalid_argument("plan: epsilon must be positive");
    }
    if (!(params.lower_bound < params.upper_bound)) {
      throw std::invalid_argument("plan: need lower_bound < upper_bound");
    }
    if (value_column.empty()) throw std::invalid_argument("plan: value_column is required");
  }
};

/// Reads the `key = value` plan format. Blank lines and `#` comments are
/// ignored. `filter`, `derive` and `visualization` may repeat; a
/// visualization value is a comma-separated list of group columns.
inline AnalysisPlan parse_plan(std::istream& in) {
  AnalysisPlan plan;
  std::string line;
  std::size_t line_no = 0;
  bool saw_lower = false;
  bool saw_upper = false;
  auto number = [&](const std::string& v, const std::string& key) {
    auto x = parse_number(v);
    if (!x) {
      throw std::invalid_argument("plan line " + std::to_string(line_no) + ": '" + key +
                                  "' expects a number, got '" + v + "'");
    }
    return *x;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    const std::string stripped = detail::trim(line);
    if (stripped.empty() || stripped == "\r") continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      throw std::invalid_argument("plan line " + std::to_string(line_no) + ": expected key = value");
    }
    const std::string key = detail::trim(std::string_view(stripped).substr(0, eq));
    std::string value = detail::trim(std::string_view(stripped).substr(eq + 1));
    if (!value.empty() && value.back() == '\r') value.pop_back();

    if (key == "input") {
      plan.input = value;
    } else if (key == "value_column") {
      plan.value_column = value;
    } else if (key == "epsilon") {
      plan.epsilon = number(value, key);
    } else if (key == "lower_bound") {
      plan.params.lower_bound = number(value, key);
      saw_lower = true;
    } else if (key == "upper_bound") {
      plan.params.upper_bound = number(value, key);
      saw_upper = true;
    } else if (key == "seed") {
      plan.seed = std::stoull(value);
    } else if (key == "c") {
      plan.params.c = number(value, key);
    } else if (key == "beta") {
      plan.params.beta = number(value, key);
    } else if (key == "whisker_multiplier") {
      plan.params.whisker_multiplier = number(value, key);
    } else if (key == "lambda_exponent") {
      plan.params.lambda_exponent = number(value, key);
    } else if (key == "min_group_size") {
      plan.min_group_size = static_cast<std::size_t>(number(value, key));
    } else if (key == "filter") {
      plan.filters.push_back(Filter::parse(value));
    } else if (key == "derive") {
      plan.derivations.push_back(Derivation::parse(value));
    } else if (key == "visualization") {
      Visualization vis;
      std::size_t start = 0;
      while (start <= value.size()) {
        const auto comma = value.find(',', start);
        const auto end = comma == std::string::npos ? value.size() : comma;
        std::string col = detail::trim(std::string_view(value).substr(start, end - start));
        if (!col.empty()) vis.group_columns.push_back(col);
        if (comma == std::string::npos) break;
        start = comma + 1;
      }
      plan.visualizations.push_back(std::move(vis));
    } else {
      throw std::invalid_argument("plan line " + std::to_string(line_no) + ": unknown key '" +
                                  key + "'");
    }
  }
  if (!saw_lower || !saw_upper) {
    throw std::invalid_argument("plan: lower_bound and upper_bound are required");
  }
  plan.validate();
  return plan;
}

inline AnalysisPlan parse_plan_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return parse_plan(in);
}

/// Exact share numerator / denominator of the total budget, and its value.
struct BudgetShare {
  std::size_t numerator = 0;
  std::size_t denominator = 1;
  double epsilon = 0.0;
};

struct BudgetAllocation {
  std::vector<BudgetShare> visualizations;
  BudgetShare per_boxplot;
  std::size_t total_boxplots = 0;
};

/// Visualization i with k_i boxes out of K receives eps * k_i / K, split
/// equally among its boxes, so every box receives eps / K.
inline BudgetAllocation allocate_budgets(double epsilon,
                                         std::span<const std::size_t> boxplots) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) {
    throw std::invalid_argument("allocate_budgets: epsilon must be positive");
  }
  const std::size_t total = std::accumulate(boxplots.begin(), boxplots.end(), std::size_t{0});
  if (total == 0) throw std::invalid_argument("allocate_budgets: no boxplots");
  BudgetAllocation out;
  out.total_boxplots = total;
  const double denom = static_cast<double>(total);
  for (std::size_t k : boxplots) {
    out.visualizations.push_back({k, total, epsilon * static_cast<double>(k) / denom});
  }
  out.per_boxplot = {1, total, epsilon / denom};
  return out;
}

}  // namespace dpbox::io

#endif  // DPBOX_IO_PLAN_HPP_
