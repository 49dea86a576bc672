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

#ifndef COEXPLORE_RUN_LOG_H_
#define COEXPLORE_RUN_LOG_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace coexplore {

// One sample of the per-tick metrics. Pair series follow (0,1), (0,2), ...,
// (1,2), ... order.
struct MetricsRow {
  int tick = 0;
  double merged_coverage = 0.0;
  std::vector<double> robot_coverage;
  std::vector<double> iou_area;  // m^2
  int frontiers_raw = 0;
  int frontiers_filtered = 0;
  std::vector<double> d_opti;
  std::vector<int> reloc;  // cumulative
  std::vector<int> lost;   // 0 or 1

  friend bool operator==(const MetricsRow&, const MetricsRow&) = default;
};

struct RunSummary {
  std::string policy;
  std::uint64_t seed = 0;
  int robots = 0;
  int ticks = 0;
  double transient_fraction = 0.25;
  double final_coverage = 0.0;
  double mean_iou_area = 0.0;  // after the transient, summed over pairs
  double free_area = 0.0;      // reachable free area of the world, m^2
  int reloc_total = 0;
  double mean_frontier_reduction = 0.0;
  double mse = 0.0;
  double ssim = 0.0;
  double ncc = 0.0;
  double cs = 0.0;

  friend bool operator==(const RunSummary&, const RunSummary&) = default;
};

struct MetricsLog {
  int robot_count = 0;
  std::vector<MetricsRow> rows;
  RunSummary summary;
};

int PairCount(int robots);

std::string FormatMetricsCsv(int robot_count, std::span<const MetricsRow> rows);
// Throws ParseError on malformed input.
std::vector<MetricsRow> ParseMetricsCsv(std::string_view text,
                                        int* robot_count = nullptr);

std::string FormatSummaryCsv(const RunSummary& summary);
RunSummary ParseSummaryCsv(std::string_view text);

// Fills the series-derived summary fields (final coverage, mean IoU area
// after the transient, reloc total, mean frontier reduction) from the rows.
void SummarizeRows(std::span<const MetricsRow> rows, RunSummary& summary);

// Reads metrics.csv and summary.csv from a run directory.
MetricsLog LoadRun(const std::filesystem::path& dir);

std::string ReadTextFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, std::string_view text);

// Seed-paired differences reference - candidate.
struct PairedDelta {
  std::uint64_t seed = 0;
  double coverage = 0.0;
  double iou_area = 0.0;
  double reloc = 0.0;
  double frontier_reduction = 0.0;
};

struct Comparison {
  std::string reference;
  std::string candidate;
  std::vector<PairedDelta> deltas;  // ascending seed
};

// Pairs runs by seed. Throws std::invalid_argument when a seed is missing
// from either side, appears twice on one side, or when paired runs do not
// share the same tick grid.
Comparison CompareRuns(std::span<const MetricsLog> reference,
                       std::span<const MetricsLog> candidate);

std::string FormatComparisonCsv(std::span<const Comparison> comparisons);

}  // namespace coexplore

#endif  // COEXPLORE_RUN_LOG_H_
