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

// Command-line front end: boxplot, compare, simulate and render.

#include <cstdint>
#include <exception>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "dpbox/dpbox.hpp"
#include "dpbox/io/csv.hpp"
#include "dpbox/io/json_io.hpp"
#include "dpbox/io/plan.hpp"
#include "dpbox/io/svg.hpp"

namespace fs = std::filesystem;
using dpbox::io::BoxplotRecord;

namespace {

struct GlobalOptions {
  double epsilon = 1.0;
  std::optional<double> lower_bound;
  std::optional<double> upper_bound;
  std::uint64_t seed = 0;
  std::optional<double> c;
  std::optional<double> beta;
  std::optional<double> whisker_multiplier;
  std::string output_dir = ".";
};

// Exit codes: 1 runtime failure, 2 usage error.
class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

void apply_overrides(const GlobalOptions& g, dpbox::DpBoxplotParams& p) {
  if (g.lower_bound) p.lower_bound = *g.lower_bound;
  if (g.upper_bound) p.upper_bound = *g.upper_bound;
  if (g.c) p.c = *g.c;
  if (g.beta) p.beta = *g.beta;
  if (g.whisker_multiplier) p.whisker_multiplier = *g.whisker_multiplier;
}

dpbox::DpBoxplotParams required_bounds_params(const GlobalOptions& g) {
  if (!g.lower_bound || !g.upper_bound) {
    throw UsageError("--lower-bound and --upper-bound are required");
  }
  dpbox::DpBoxplotParams p;
  apply_overrides(g, p);
  return p;
}

fs::path output_path(const GlobalOptions& g, const std::string& file) {
  fs::path dir(g.output_dir);
  fs::create_directories(dir);
  return dir / file;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

BoxplotRecord make_record(const std::string& method, const std::string& vis,
                          const std::string& group, double eps, std::size_t n,
                          const dpbox::DpBoxplotParams& p, std::uint64_t seed) {
  BoxplotRecord r;
  r.method = method;
  r.visualization = vis;
  r.group = group;
  r.epsilon = eps;
  r.n = n;
  r.lower_bound = p.lower_bound;
  r.upper_bound = p.upper_bound;
  r.seed = seed;
  return r;
}

void fill_private(BoxplotRecord& r, const dpbox::DpBoxplotResult& res) {
  r.summary = res.summary;
  r.lower_is_extreme_quantile = res.lower_is_extreme_quantile;
  r.upper_is_extreme_quantile = res.upper_is_extreme_quantile;
  r.jointexp_bounds_fallback = res.jointexp_bounds_fallback;
}

std::string dump(const std::vector<BoxplotRecord>& records) {
  return dpbox::io::emit_json(records).dump(2) + "\n";
}

std::vector<dpbox::io::Panel> panels_from(const std::vector<BoxplotRecord>& records) {
  std::vector<dpbox::io::Panel> panels;
  std::map<std::string, std::size_t> index;
  for (const auto& r : records) {
    auto [it, fresh] = index.emplace(r.visualization, panels.size());
    if (fresh) panels.push_back({r.visualization, {}});
    std::string label = r.group;
    if (r.summary.kind != dpbox::SummaryKind::kPrivate) {
      label += " (" + dpbox::to_string(r.summary.kind) + ")";
    }
    panels[it->second].boxes.push_back({label, r.summary});
  }
  return panels;
}

dpbox::io::RenderSpec spec_for(const std::vector<BoxplotRecord>& records,
                               const GlobalOptions& g) {
  double lo = records.front().lower_bound;
  double hi = records.front().upper_bound;
  for (const auto& r : records) {
    lo = std::min(lo, r.lower_bound);
    hi = std::max(hi, r.upper_bound);
  }
  if (g.lower_bound) lo = *g.lower_bound;
  if (g.upper_bound) hi = *g.upper_bound;
  return dpbox::io::RenderSpec::for_bounds(lo, hi);
}

std::string render(const std::vector<BoxplotRecord>& records, const GlobalOptions& g) {
  const auto panels = panels_from(records);
  return dpbox::io::render_panels(panels, spec_for(records, g));
}

std::vector<std::string> split_list(const std::string& s) {
  std::vector<std::string> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = dpbox::io::detail::trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

struct BoxplotArgs {
  std::string input;
  std::string column;
  std::string method = "dpboxplot";
  std::string name = "boxplot";
  bool include_nonprivate = false;
  std::vector<std::string> filters;
};

void run_boxplot(const GlobalOptions& g, const BoxplotArgs& a) {
  const auto params = required_bounds_params(g);
  std::vector<dpbox::io::Filter> filters;
  for (const auto& f : a.filters) filters.push_back(dpbox::io::Filter::parse(f));
  const auto loaded = dpbox::io::load_csv(a.input, a.column, {}, filters);
  const dpbox::Dataset& ds = loaded.groups.begin()->second;
  const dpbox::Method method = dpbox::method_from_string(a.method);
  dpbox::RandomSource rng(g.seed);

  std::vector<BoxplotRecord> records;
  BoxplotRecord r = make_record(a.method, "", a.column, g.epsilon, ds.size(), params, g.seed);
  if (method == dpbox::Method::kDpBoxplot) {
    fill_private(r, dpbox::dp_boxplot(ds, g.epsilon, params, rng));
  } else {
    r.summary = dpbox::naive_boxplot(ds, method, g.epsilon, params, rng);
  }
  r.warnings = loaded.warnings;
  records.push_back(r);
  if (a.include_nonprivate) {
    BoxplotRecord e = make_record("nonprivate", "", a.column, 0.0, ds.size(), params, g.seed);
    e.summary = dpbox::nonprivate_boxplot(ds, params.whisker_multiplier);
    records.push_back(e);
  }
  write_file(output_path(g, a.name + ".json"), dump(records));
  write_file(output_path(g, a.name + ".svg"), render(records, g));
}

struct CompareArgs {
  std::string plan;
  std::string name = "compare";
};

void run_compare(const GlobalOptions& g, const CompareArgs& a, bool epsilon_given,
                 bool seed_given) {
  dpbox::io::AnalysisPlan plan = dpbox::io::parse_plan_file(a.plan);
  apply_overrides(g, plan.params);
  if (epsilon_given) plan.epsilon = g.epsilon;
  if (seed_given) plan.seed = g.seed;
  plan.validate();
  fs::path input(plan.input);
  if (input.is_relative()) input = fs::path(a.plan).parent_path() / input;
  const auto table = dpbox::io::read_csv_file(input.string());

  std::vector<dpbox::io::LoadedGroups> loaded;
  std::vector<std::size_t> counts;
  for (const auto& vis : plan.visualizations) {
    loaded.push_back(dpbox::io::group_table(table, plan.value_column, vis.group_columns,
                                            plan.filters, plan.derivations));
    counts.push_back(loaded.back().groups.size());
  }
  const auto alloc = dpbox::io::allocate_budgets(plan.epsilon, counts);
  const double eps = alloc.per_boxplot.epsilon;

  const dpbox::RandomSource root(plan.seed);
  std::vector<BoxplotRecord> records;
  for (std::size_t v = 0; v < loaded.size(); ++v) {
    std::string vis_name;
    for (const auto& col : plan.visualizations[v].group_columns) {
      vis_name += (vis_name.empty() ? "" : " x ") + col;
    }
    if (vis_name.empty()) vis_name = "all";
    std::size_t gi = 0;
    for (const auto& [key, ds] : loaded[v].groups) {
      dpbox::RandomSource rng = root.child(v).child(gi++);
      BoxplotRecord r = make_record("dpboxplot", vis_name, dpbox::io::group_label(key), eps,
                                    ds.size(), plan.params, plan.seed);
      fill_private(r, dpbox::dp_boxplot(ds, eps, plan.params, rng));
      if (ds.size() < plan.min_group_size) {
        r.warnings.push_back("low sample: n = " + std::to_string(ds.size()) + " < " +
                             std::to_string(plan.min_group_size));
      }
      records.push_back(std::move(r));
    }
    for (const auto& w : loaded[v].warnings) std::cerr << "warning: " << w << "\n";
  }
  write_file(output_path(g, a.name + ".json"), dump(records));
  write_file(output_path(g, a.name + ".svg"), render(records, g));
}

struct SimulateArgs {
  std::string mode = "single";
  std::string distribution = "normal";
  std::string method = "dpboxplot";
  std::vector<std::size_t> n_grid{1000, 10000, 100000};
  std::vector<double> epsilon_grid;
  std::size_t replications = 100;
  std::size_t groups = 5;
  std::size_t n_total = 5000;
  std::string mixture = "normal,skew,uniform,beta";
  unsigned threads = 0;
  std::string name = "simulation";
};

void run_simulate(const GlobalOptions& g, const SimulateArgs& a) {
  dpbox::DpBoxplotParams params;
  apply_overrides(g, params);
  const std::vector<double> eps_grid =
      a.epsilon_grid.empty() ? std::vector<double>{g.epsilon} : a.epsilon_grid;
  const dpbox::Method method = dpbox::method_from_string(a.method);
  dpbox::StudyResult result;
  if (a.mode == "single") {
    dpbox::SimulationScenario sc;
    sc.distribution = dpbox::Distribution::from_tag(a.distribution);
    sc.n_grid = a.n_grid;
    sc.epsilon_grid = eps_grid;
    sc.replications = a.replications;
    sc.method = method;
    sc.params = params;
    sc.seed = g.seed;
    sc.threads = a.threads;
    result = dpbox::run_single_study(sc);
  } else if (a.mode == "multi") {
    dpbox::MultiScenario ms;
    ms.groups = a.groups;
    ms.n_total = a.n_total;
    ms.mixture = split_list(a.mixture);
    ms.epsilon_grid = eps_grid;
    ms.replications = a.replications;
    ms.method = method;
    ms.params = params;
    ms.seed = g.seed;
    ms.threads = a.threads;
    result = dpbox::run_multi_study(ms);
  } else {
    throw UsageError("--mode must be single or multi");
  }
  std::ostringstream rows;
  dpbox::write_results_csv(rows, result.rows);
  write_file(output_path(g, a.name + "_results.csv"), rows.str());
  std::ostringstream summary;
  dpbox::write_summary_csv(summary, dpbox::aggregate(result.rows));
  write_file(output_path(g, a.name + "_summary.csv"), summary.str());
  for (const auto& f : result.failures) {
    std::cerr << "warning: " << f.method << " n=" << f.n << " epsilon=" << f.epsilon << ": "
              << f.message << "\n";
  }
}

struct RenderArgs {
  std::string input;
  std::string output;
};

void run_render(const GlobalOptions& g, const RenderArgs& a) {
  std::ifstream in(a.input);
  if (!in) throw std::runtime_error("cannot open " + a.input);
  const auto records = dpbox::io::parse_json(nlohmann::json::parse(in));
  fs::path out = a.output.empty()
                     ? output_path(g, fs::path(a.input).stem().string() + ".svg")
                     : fs::path(a.output);
  write_file(out, render(records, g));
}

void print_error(const std::string& kind, const std::string& message) {
  nlohmann::json err = {{"error", {{"type", kind}, {"message", message}}}};
  std::cerr << err.dump() << "\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private boxplots"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions g;
  double lower = 0.0;
  double upper = 0.0;
  double c = 0.0;
  double beta = 0.0;
  double k = 0.0;
  auto* eps_opt = app.add_option("--epsilon", g.epsilon, "Total privacy budget")
                      ->check(CLI::PositiveNumber);
  auto* lower_opt = app.add_option("--lower-bound", lower, "Public lower bound a");
  auto* upper_opt = app.add_option("--upper-bound", upper, "Public upper bound b");
  auto* seed_opt = app.add_option("--seed", g.seed, "Random seed");
  auto* c_opt = app.add_option("--c", c, "Extreme quantile constant");
  auto* beta_opt = app.add_option("--beta", beta, "Search grid ratio (> 1)");
  auto* k_opt = app.add_option("--whisker-multiplier", k, "Whisker length in IQRs");
  app.add_option("--output-dir", g.output_dir, "Directory for output files");

  BoxplotArgs box;
  auto* box_cmd = app.add_subcommand("boxplot", "One CSV column to JSON and SVG");
  box_cmd->add_option("--input", box.input, "CSV file")->required();
  box_cmd->add_option("--column", box.column, "Value column")->required();
  box_cmd->add_option("--method", box.method, "dpboxplot or a naive baseline");
  box_cmd->add_option("--name", box.name, "Output file stem");
  box_cmd->add_option("--filter", box.filters, "Row filter such as 'price <= 500'");
  box_cmd->add_flag("--include-nonprivate", box.include_nonprivate,
                    "Also emit the non-private boxplot (not private)");

  CompareArgs cmp;
  auto* cmp_cmd = app.add_subcommand("compare", "Grouped boxplots from an analysis plan");
  cmp_cmd->add_option("--plan", cmp.plan, "Plan file")->required();
  cmp_cmd->add_option("--name", cmp.name, "Output file stem");

  SimulateArgs sim;
  auto* sim_cmd = app.add_subcommand("simulate", "Monte Carlo error study");
  sim_cmd->add_option("--mode", sim.mode, "single or multi");
  sim_cmd->add_option("--distribution", sim.distribution, "normal, skew, uniform or beta");
  sim_cmd->add_option("--method", sim.method, "Method under study");
  sim_cmd->add_option("--n", sim.n_grid, "Sample sizes")->delimiter(',');
  sim_cmd->add_option("--epsilon-grid", sim.epsilon_grid, "Budgets")->delimiter(',');
  sim_cmd->add_option("--reps", sim.replications, "Replications per cell");
  sim_cmd->add_option("--groups", sim.groups, "Groups per replication (multi)");
  sim_cmd->add_option("--n-total", sim.n_total, "Total sample size (multi)");
  sim_cmd->add_option("--mixture", sim.mixture, "Base laws for groups (multi)");
  sim_cmd->add_option("--threads", sim.threads, "Worker threads, 0 for all cores");
  sim_cmd->add_option("--name", sim.name, "Output file stem");

  RenderArgs rnd;
  auto* rnd_cmd = app.add_subcommand("render", "Draw an SVG from a JSON result");
  rnd_cmd->add_option("--input", rnd.input, "JSON file")->required();
  rnd_cmd->add_option("--output", rnd.output, "SVG path");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    print_error("usage", e.what());
    return 2;
  }
  if (*lower_opt) g.lower_bound = lower;
  if (*upper_opt) g.upper_bound = upper;
  if (*c_opt) g.c = c;
  if (*beta_opt) g.beta = beta;
  if (*k_opt) g.whisker_multiplier = k;

  try {
    if (*box_cmd) run_boxplot(g, box);
    if (*cmp_cmd) run_compare(g, cmp, eps_opt->count() > 0, seed_opt->count() > 0);
    if (*sim_cmd) run_simulate(g, sim);
    if (*rnd_cmd) run_render(g, rnd);
  } catch (const UsageError& e) {
    print_error("usage", e.what());
    return 2;
  } catch (const std::exception& e) {
    print_error("runtime", e.what());
    return 1;
  }
  return 0;
}
