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

#ifndef DPBOX_IO_JSON_IO_HPP_
#define DPBOX_IO_JSON_IO_HPP_

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "json.hpp"

#include "dpbox/boxplot.hpp"

namespace dpbox::io {

inline constexpr int kSchemaVersion = 1;

/// One released boxplot and the public parameters it was computed with.
struct BoxplotRecord {
  std::string method = "dpboxplot";
  std::string visualization;  // empty for single-dataset runs
  std::string group = "all";
  double epsilon = 0.0;
  std::size_t n = 0;
  double lower_bound = 0.0;
  double upper_bound = 0.0;
  std::uint64_t seed = 0;
  BoxplotSummary summary;
  bool lower_is_extreme_quantile = false;
  bool upper_is_extreme_quantile = false;
  bool jointexp_bounds_fallback = false;
  std::vector<std::string> warnings;

  bool operator==(const BoxplotRecord&) const = default;
};

inline SummaryKind kind_from_string(const std::string& s) {
  if (s == "private") return SummaryKind::kPrivate;
  if (s == "empirical") return SummaryKind::kEmpirical;
  if (s == "population") return SummaryKind::kPopulation;
  throw std::invalid_argument("unknown summary kind: " + s);
}

inline nlohmann::json to_json(const BoxplotRecord& r) {
  const BoxplotSummary& s = r.summary;
  nlohmann::json j;
  j["method"] = r.method;
  j["visualization"] = r.visualization;
  j["group"] = r.group;
  j["epsilon"] = r.epsilon;
  j["n"] = r.n;
  j["bounds"] = {{"lower", r.lower_bound}, {"upper", r.upper_bound}};
  j["seed"] = r.seed;
  j["kind"] = to_string(s.kind);
  j["whisker_multiplier"] = s.whisker_multiplier;
  j["summary"] = {{"o_lower", s.o_lower},   {"lower_whisker", s.lower_whisker},
                  {"q1", s.q1},             {"median", s.median},
                  {"q3", s.q3},             {"upper_whisker", s.upper_whisker},
                  {"o_upper", s.o_upper}};
  j["flags"] = {{"lower_is_extreme_quantile", r.lower_is_extreme_quantile},
                {"upper_is_extreme_quantile", r.upper_is_extreme_quantile},
                {"jointexp_bounds_fallback", r.jointexp_bounds_fallback}};
  j["warnings"] = r.warnings;
  return j;
}

inline BoxplotRecord record_from_json(const nlohmann::json& j) {
  BoxplotRecord r;
  r.method = j.at("method").get<std::string>();
  r.visualization = j.value("visualization", std::string());
  r.group = j.at("group").get<std::string>();
  r.epsilon = j.at("epsilon").get<double>();
  r.n = j.at("n").get<std::size_t>();
  r.lower_bound = j.at("bounds").at("lower").get<double>();
  r.upper_bound = j.at("bounds").at("upper").get<double>();
  r.seed = j.at("seed").get<std::uint64_t>();
  BoxplotSummary& s = r.summary;
  s.kind = kind_from_string(j.at("kind").get<std::string>());
  s.whisker_multiplier = j.at("whisker_multiplier").get<double>();
  const auto& js = j.at("summary");
  s.o_lower = js.at("o_lower").get<double>();
  s.lower_whisker = js.at("lower_whisker").get<double>();
  s.q1 = js.at("q1").get<double>();
  s.median = js.at("median").get<double>();
  s.q3 = js.at("q3").get<double>();
  s.upper_whisker = js.at("upper_whisker").get<double>();
  s.o_upper = js.at("o_upper").get<double>();
  const auto& jf = j.at("flags");
  r.lower_is_extreme_quantile = jf.at("lower_is_extreme_quantile").get<bool>();
  r.upper_is_extreme_quantile = jf.at("upper_is_extreme_quantile").get<bool>();
  r.jointexp_bounds_fallback = jf.at("jointexp_bounds_fallback").get<bool>();
  r.warnings = j.value("warnings", std::vector<std::string>{});
  return r;
}

/// Document {"schema_version": 1, "records": [...]}. Doubles are written in
/// shortest round-trip form, so parse_json(emit_json(x)) == x.
inline nlohmann::json emit_json(const std::vector<BoxplotRecord>& records) {
  if (records.empty()) throw std::invalid_argument("emit_json: no records");
  nlohmann::json doc;
  doc["schema_version"] = kSchemaVersion;
  doc["records"] = nlohmann::json::array();
  for (const auto& r : records) doc["records"].push_back(to_json(r));
  return doc;
}

inline std::vector<BoxplotRecord> parse_json(const nlohmann::json& doc) {
  const int version = doc.at("schema_version").get<int>();
  if (version != kSchemaVersion) {
    throw std::invalid_argument("unsupported schema_version " + std::to_string(version));
  }
  std::vector<BoxplotRecord> out;
  for (const auto& j : doc.at("records")) out.push_back(record_from_json(j));
  return out;
}

}  // namespace dpbox::io

#endif  // DPBOX_IO_JSON_IO_HPP_
