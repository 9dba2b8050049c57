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

#ifndef DPBOX_IO_CSV_HPP_
#define DPBOX_IO_CSV_HPP_

#include <charconv>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <utility>
#include <vector>

#include "dpbox/dataset.hpp"

namespace dpbox::io {

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw std::invalid_argument("unknown column: " + name);
  }
};

// RFC 4180 style: comma separated, double-quoted fields may contain commas,
// newlines and doubled quotes. A UTF-8 byte order mark is skipped.
inline CsvTable read_csv(std::istream& in) {
  std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  if (text.rfind("\xEF\xBB\xBF", 0) == 0) text.erase(0, 3);

  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string field;
  bool quoted = false;
  bool field_started = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        field += ch;
      }
      continue;
    }
    switch (ch) {
      case '"':
        quoted = true;
        field_started = true;
        break;
      case ',':
        record.push_back(std::move(field));
        field.clear();
        field_started = true;
        break;
      case '\r':
        break;
      case '\n':
        if (field_started || !field.empty() || !record.empty()) {
          record.push_back(std::move(field));
          records.push_back(std::move(record));
        }
        field.clear();
        record.clear();
        field_started = false;
        break;
      default:
        field += ch;
        field_started = true;
    }
  }
  if (quoted) throw std::invalid_argument("csv: unterminated quoted field");
  if (field_started || !field.empty() || !record.empty()) {
    record.push_back(std::move(field));
    records.push_back(std::move(record));
  }
  if (records.empty()) throw std::invalid_argument("csv: missing header row");

  CsvTable table;
  table.header = std::move(records.front());
  for (std::size_t r = 1; r < records.size(); ++r) {
    if (records[r].size() != table.header.size()) {
      throw std::invalid_argument("csv: row " + std::to_string(r + 1) + " has " +
                                  std::to_string(records[r].size()) + " fields, header has " +
                                  std::to_string(table.header.size()));
    }
    table.rows.push_back(std::move(records[r]));
  }
  return table;
}

inline CsvTable read_csv_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::invalid_argument("cannot open " + path);
  return read_csv(in);
}

inline std::optional<double> parse_number(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v)) {
    return std::nullopt;
  }
  return v;
}

enum class Comparison { kLess, kLessEqual, kGreater, kGreaterEqual, kEqual, kNotEqual };

inline bool compare(double lhs, Comparison op, double rhs) {
  switch (op) {
    case Comparison::kLess: return lhs < rhs;
    case Comparison::kLessEqual: return lhs <= rhs;
    case Comparison::kGreater: return lhs > rhs;
    case Comparison::kGreaterEqual: return lhs >= rhs;
    case Comparison::kEqual: return lhs == rhs;
    case Comparison::kNotEqual: return lhs != rhs;
  }
  return false;
}

namespace detail {

inline std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return std::string(s.substr(b, e - b + 1));
}

// Splits "lhs OP rhs" at the first comparison operator.
inline std::tuple<std::string, Comparison, std::string> split_comparison(
    std::string_view expr) {
  static const std::pair<std::string_view, Comparison> kOps[] = {
      {"<=", Comparison::kLessEqual}, {">=", Comparison::kGreaterEqual},
      {"==", Comparison::kEqual},     {"!=", Comparison::kNotEqual},
      {"<", Comparison::kLess},       {">", Comparison::kGreater}};
  std::size_t best = std::string_view::npos;
  std::size_t best_len = 0;
  Comparison best_op = Comparison::kLess;
  for (const auto& [tok, op] : kOps) {
    const auto at = expr.find(tok);
    if (at != std::string_view::npos && (at < best || (at == best && tok.size() > best_len))) {
      best = at;
      best_len = tok.size();
      best_op = op;
    }
  }
  if (best == std::string_view::npos) {
    throw std::invalid_argument("expected a comparison in '" + std::string(expr) + "'");
  }
  return {trim(expr.substr(0, best)), best_op, trim(expr.substr(best + best_len))};
}

}  // namespace detail

/// Row predicate `column OP number`, OP one of < <= > >= == !=.
struct Filter {
  std::string column;
  Comparison op = Comparison::kLessEqual;
  double value = 0.0;

  static Filter parse(std::string_view expr) {
    auto [col, op, rhs] = detail::split_comparison(expr);
    auto v = parse_number(rhs);
    if (col.empty() || !v) {
      throw std::invalid_argument("bad filter '" + std::string(expr) + "'");
    }
    return {col, op, *v};
  }
};

/// Derived categorical column `name = column OP number ? yes : no`, e.g.
/// `nights = minimum_nights <= 3 ? low : high`.
struct Derivation {
  std::string name;
  Filter test;
  std::string if_true;
  std::string if_false;

  static Derivation parse(std::string_view expr) {
    const auto eq = expr.find('=');
    const auto qm = expr.find('?');
    const auto colon = expr.rfind(':');
    if (eq == std::string_view::npos || qm == std::string_view::npos ||
        colon == std::string_view::npos || !(eq < qm && qm < colon)) {
      throw std::invalid_argument("bad derivation '" + std::string(expr) + "'");
    }
    Derivation d;
    d.name = detail::trim(expr.substr(0, eq));
    d.test = Filter::parse(expr.substr(eq + 1, qm - eq - 1));
    d.if_true = detail::trim(expr.substr(qm + 1, colon - qm - 1));
    d.if_false = detail::trim(expr.substr(colon + 1));
    if (d.name.empty()) throw std::invalid_argument("derivation needs a name");
    return d;
  }
};

using GroupKey = std::vector<std::string>;

inline std::string group_label(const GroupKey& key) {
  if (key.empty()) return "all";
  std::string out;
  for (std::size_t i = 0; i < key.size(); ++i) {
    if (i) out += " / ";
    out += key[i];
  }
  return out;
}

struct LoadedGroups {
  std::map<GroupKey, Dataset> groups;  // ordered by key
  std::size_t retained_rows = 0;
  std::vector<std::string> warnings;
};

/// Applies derivations then filters, and groups the value column by the
/// Cartesian key of group_columns (no group columns: one group "all").
/// Combinations of observed levels with no retained rows are skipped with a
/// warning.
inline LoadedGroups group_table(const CsvTable& table, const std::string& value_column,
                                const std::vector<std::string>& group_columns,
                                const std::vector<Filter>& filters,
                                const std::vector<Derivation>& derivations = {}) {
  // Derived columns are appended to a working copy of the header.
  std::vector<std::string> header = table.header;
  std::vector<std::size_t> derive_src;
  for (const auto& d : derivations) {
    std::size_t src = header.size();
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == d.test.column) src = i;
    }
    if (src == header.size()) throw std::invalid_argument("unknown column: " + d.test.column);
    derive_src.push_back(src);
    header.push_back(d.name);
  }
  auto column = [&](const std::string& name) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return i;
    }
    throw std::invalid_argument("unknown column: " + name);
  };
  const std::size_t value_idx = column(value_column);
  std::vector<std::size_t> group_idx;
  for (const auto& g : group_columns) group_idx.push_back(column(g));
  std::vector<std::size_t> filter_idx;
  for (const auto& f : filters) filter_idx.push_back(column(f.column));

  auto numeric = [](const std::string& cell, const std::string& name, std::size_t row) {
    auto v = parse_number(cell);
    if (!v) {
      throw std::invalid_argument("row " + std::to_string(row + 2) + ": column '" + name +
                                  "' is not numeric: '" + cell + "'");
    }
    return *v;
  };

  std::map<GroupKey, std::vector<double>> buckets;
  std::vector<std::set<std::string>> levels(group_columns.size());
  std::size_t retained = 0;
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    std::vector<std::string> row = table.rows[r];
    for (std::size_t d = 0; d < derivations.size(); ++d) {
      const auto& der = derivations[d];
      const double x = numeric(row[derive_src[d]], der.test.column, r);
      row.push_back(compare(x, der.test.op, der.test.value) ? der.if_true : der.if_false);
    }
    bool keep = true;
    for (std::size_t f = 0; f < filters.size() && keep; ++f) {
      keep = compare(numeric(row[filter_idx[f]], filters[f].column, r), filters[f].op,
                     filters[f].value);
    }
    if (!keep) continue;
    GroupKey key;
    for (std::size_t g = 0; g < group_idx.size(); ++g) {
      key.push_back(row[group_idx[g]]);
      levels[g].insert(row[group_idx[g]]);
    }
    buckets[key].push_back(numeric(row[value_idx], value_column, r));
    ++retained;
  }
  if (retained == 0) throw std::invalid_argument("no rows left after filtering");

  LoadedGroups out;
  out.retained_rows = retained;
  // Enumerate the Cartesian product of observed levels to report empty cells.
  std::vector<std::vector<std::string>> lv;
  for (const auto& s : levels) lv.emplace_back(s.begin(), s.end());
  std::vector<std::size_t> pos(lv.size(), 0);
  for (bool done = false; !done;) {
    GroupKey key;
    for (std::size_t g = 0; g < lv.size(); ++g) key.push_back(lv[g][pos[g]]);
    auto it = buckets.find(key);
    if (it == buckets.end()) {
      out.warnings.push_back("group '" + group_label(key) + "' has no rows; skipped");
    } else {
      out.groups.emplace(key, Dataset(std::move(it->second)));
    }
    done = true;
    for (std::size_t g = lv.size(); g-- > 0;) {
      if (++pos[g] < lv[g].size()) {
        done = false;
        break;
      }
      pos[g] = 0;
    }
  }
  return out;
}

inline LoadedGroups load_csv(const std::string& path, const std::string& value_column,
                             const std::vector<std::string>& group_columns,
                             const std::vector<Filter>& filters,
                             const std::vector<Derivation>& derivations = {}) {
  return group_table(read_csv_file(path), value_column, group_columns, filters, derivations);
}

}  // namespace dpbox::io

#endif  // DPBOX_IO_CSV_HPP_
