/*
 * Copyright 2026 The coexplore Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *      http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

// Command-line entry point: run scenarios, recompute metrics, compare runs
// and validate configurations.
//
// Exit codes: 0 success, 1 configuration or usage error, 2 runtime error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "coexplore/errors.h"
#include "coexplore/metrics.h"
#include "coexplore/pgm_io.h"
#include "coexplore/run_log.h"
#include "coexplore/scenario_config.h"
#include "coexplore/simulation.h"
#include "coexplore/svg_plot.h"
#include "coexplore/world_model.h"

namespace coexplore {
namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct Overrides {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> policy;
  std::optional<int> ticks;
};

ScenarioConfig LoadWithOverrides(const std::filesystem::path& path,
                                 const Overrides& o) {
  ScenarioConfig config = LoadScenarioConfig(path);
  if (o.seed) config.seed = *o.seed;
  if (o.policy) config.policy = ParsePolicy(*o.policy);
  if (o.ticks) config.ticks = *o.ticks;
  config.Validate();
  return config;
}

int RunCommand(const std::filesystem::path& config_path, const Overrides& o,
               const std::filesystem::path& out) {
  const ScenarioConfig config = LoadWithOverrides(config_path, o);
  const MetricsLog log = RunScenario(config, out);
  const RunSummary& s = log.summary;
  fmt::print("policy={} seed={} ticks={} coverage={:.2f}% iou_area={:.3f}m2 "
             "reloc={} frontier_reduction={:.1f}% ssim={:.4f}\n",
             s.policy, s.seed, s.ticks, s.final_coverage, s.mean_iou_area,
             s.reloc_total, s.mean_frontier_reduction, s.ssim);
  return kExitOk;
}

int MetricsCommand(const std::filesystem::path& run) {
  MetricsLog log = LoadRun(run);
  SummarizeRows(log.rows, log.summary);
  const auto merged = run / "maps" / "merged.pgm";
  const auto truth = run / "maps" / "truth.pgm";
  if (std::filesystem::exists(merged) && std::filesystem::exists(truth)) {
    const MapQuality q = ComputeMapQuality(ReadMap(merged), ReadMap(truth));
    log.summary.mse = q.mse;
    log.summary.ssim = q.ssim;
    log.summary.ncc = q.ncc;
    log.summary.cs = q.cs;
  }
  std::cout << FormatSummaryCsv(log.summary);
  return kExitOk;
}

int CompareCommand(const std::vector<std::filesystem::path>& runs,
                   const std::filesystem::path& out) {
  std::vector<std::string> order;
  std::map<std::string, std::vector<MetricsLog>> groups;
  for (const auto& dir : runs) {
    MetricsLog log = LoadRun(dir);
    const std::string policy = log.summary.policy;
    if (!groups.contains(policy)) order.push_back(policy);
    groups[policy].push_back(std::move(log));
  }
  if (order.empty()) throw std::invalid_argument("no runs given");
  const auto& reference = groups[order.front()];
  std::vector<Comparison> comparisons;
  if (order.size() == 1) {
    comparisons.push_back(CompareRuns(reference, reference));
  }
  for (std::size_t i = 1; i < order.size(); ++i) {
    comparisons.push_back(CompareRuns(reference, groups[order[i]]));
  }

  std::filesystem::create_directories(out / "plots");
  WriteTextFile(out / "comparison.csv", FormatComparisonCsv(comparisons));

  LineChart chart{"Mean merged coverage", "tick", "% of reachable area",
                  {}, {}, 640, 400};
  for (std::size_t g = 0; g < order.size(); ++g) {
    const auto& logs = groups[order[g]];
    PlotSeries series{order[g], {}, {}, SeriesColor(g), false};
    for (std::size_t t = 0; t < logs.front().rows.size(); ++t) {
      double sum = 0.0;
      for (const MetricsLog& log : logs) sum += log.rows[t].merged_coverage;
      series.x.push_back(logs.front().rows[t].tick);
      series.y.push_back(sum / static_cast<double>(logs.size()));
    }
    chart.series.push_back(std::move(series));
  }
  WriteTextFile(out / "plots" / "coverage_compare.svg", RenderLineChart(chart));

  for (const Comparison& c : comparisons) {
    int coverage_wins = 0;
    int iou_wins = 0;
    for (const PairedDelta& d : c.deltas) {
      if (d.coverage >= 0.0) ++coverage_wins;
      if (d.iou_area < 0.0) ++iou_wins;
    }
    fmt::print("{} vs {}: coverage >= on {}/{} seeds, smaller IoU area on "
               "{}/{} seeds\n",
               c.reference, c.candidate, coverage_wins, c.deltas.size(),
               iou_wins, c.deltas.size());
  }
  return kExitOk;
}

int ValidateCommand(const std::filesystem::path& config_path,
                    const Overrides& o) {
  const ScenarioConfig config = LoadWithOverrides(config_path, o);
  try {
    LoadWorldFile(config.world);
  } catch (const std::exception& e) {
    throw ConfigError(
        fmt::format("world file {}: {}", config.world.string(), e.what()));
  }
  std::cout << FormatResolvedConfig(config);
  return kExitOk;
}

}  // namespace
}  // namespace coexplore

int main(int argc, char** argv) {
  using namespace coexplore;
  CLI::App app{"Multi-robot frontier exploration simulator"};
  app.require_subcommand(1);

  std::filesystem::path config_path;
  std::filesystem::path out_dir;
  std::filesystem::path run_dir;
  std::vector<std::filesystem::path> run_dirs;
  Overrides overrides;
  std::uint64_t seed = 0;
  std::string policy;
  int ticks = 0;

  const auto add_overrides = [&](CLI::App* cmd) {
    cmd->add_option("--seed", seed, "RNG seed")->check(CLI::NonNegativeNumber);
    cmd->add_option("--policy", policy, "ours, mexp or dcm")
        ->check(CLI::IsMember({"ours", "mexp", "dcm"}));
    cmd->add_option("--ticks", ticks, "Tick budget")->check(CLI::PositiveNumber);
  };

  CLI::App* run = app.add_subcommand("run", "Run a scenario");
  run->add_option("--config", config_path, "Scenario file")->required();
  run->add_option("--out", out_dir, "Output directory")->required();
  add_overrides(run);

  CLI::App* metrics = app.add_subcommand("metrics", "Recompute run metrics");
  metrics->add_option("--run", run_dir, "Run directory")->required();

  CLI::App* compare = app.add_subcommand("compare", "Compare runs by seed");
  compare->add_option("--runs", run_dirs, "Run directories")->required();
  compare->add_option("--out", out_dir, "Output directory")->required();

  CLI::App* validate =
      app.add_subcommand("validate", "Print the resolved configuration");
  validate->add_option("--config", config_path, "Scenario file")->required();
  add_overrides(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  for (CLI::App* cmd : {run, validate}) {
    if (cmd->count("--seed") > 0) overrides.seed = seed;
    if (cmd->count("--policy") > 0) overrides.policy = policy;
    if (cmd->count("--ticks") > 0) overrides.ticks = ticks;
  }

  try {
    if (run->parsed()) return RunCommand(config_path, overrides, out_dir);
    if (metrics->parsed()) return MetricsCommand(run_dir);
    if (compare->parsed()) return CompareCommand(run_dirs, out_dir);
    if (validate->parsed()) return ValidateCommand(config_path, overrides);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitConfig;
}
