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

#include "coexplore/run_log.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

#include "coexplore/errors.h"
#include "coexplore/metrics.h"

namespace coexplore {
namespace {

std::vector<std::string_view> SplitLines(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t pos = 0;
  while (pos < text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    pos = end + 1;
  }
  return lines;
}

std::vector<std::string_view> SplitFields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t pos = 0;
  while (true) {
    const auto comma = line.find(',', pos);
    if (comma == std::string_view::npos) {
      fields.push_back(line.substr(pos));
      return fields;
    }
    fields.push_back(line.substr(pos, comma - pos));
    pos = comma + 1;
  }
}

template <typename T>
T ParseNumber(std::string_view field, int line, int column) {
  T value{};
  const auto [ptr, ec] =
      std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size()) {
    throw ParseError(fmt::format("bad number '{}'", field), line, column);
  }
  return value;
}

std::string MetricsHeader(int robots) {
  std::string h = "tick,merged_coverage";
  for (int r = 0; r < robots; ++r) h += fmt::format(",coverage_r{}", r);
  for (int i = 0; i < robots; ++i) {
    for (int j = i + 1; j < robots; ++j) h += fmt::format(",iou_area_{}_{}", i, j);
  }
  h += ",frontiers_raw,frontiers_filtered";
  for (int r = 0; r < robots; ++r) h += fmt::format(",d_opti_r{}", r);
  for (int r = 0; r < robots; ++r) h += fmt::format(",reloc_r{}", r);
  for (int r = 0; r < robots; ++r) h += fmt::format(",lost_r{}", r);
  return h;
}

}  // namespace

int PairCount(int robots) { return robots * (robots - 1) / 2; }

std::string FormatMetricsCsv(int robot_count, std::span<const MetricsRow> rows) {
  std::string out = MetricsHeader(robot_count) + "\n";
  for (const MetricsRow& row : rows) {
    out += fmt::format("{},{}", row.tick, row.merged_coverage);
    for (double v : row.robot_coverage) out += fmt::format(",{}", v);
    for (double v : row.iou_area) out += fmt::format(",{}", v);
    out += fmt::format(",{},{}", row.frontiers_raw, row.frontiers_filtered);
    for (double v : row.d_opti) out += fmt::format(",{}", v);
    for (int v : row.reloc) out += fmt::format(",{}", v);
    for (int v : row.lost) out += fmt::format(",{}", v);
    out += '\n';
  }
  return out;
}

std::vector<MetricsRow> ParseMetricsCsv(std::string_view text,
                                        int* robot_count) {
  const auto lines = SplitLines(text);
  if (lines.empty()) throw ParseError("missing header", 1, 1);
  const auto header = SplitFields(lines[0]);
  const int robots = static_cast<int>(std::count_if(
      header.begin(), header.end(),
      [](std::string_view f) { return f.starts_with("coverage_r"); }));
  if (lines[0] != MetricsHeader(robots)) {
    throw ParseError("unexpected metrics header", 1, 1);
  }
  if (robot_count != nullptr) *robot_count = robots;
  const std::size_t expected = header.size();
  std::vector<MetricsRow> rows;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    if (lines[l].empty()) continue;
    const int line = static_cast<int>(l + 1);
    const auto fields = SplitFields(lines[l]);
    if (fields.size() != expected) {
      throw ParseError(fmt::format("expected {} fields, got {}", expected,
                                   fields.size()),
                       line, static_cast<int>(std::min(fields.size(), expected)));
    }
    int col = 0;
    const auto next_double = [&] {
      ++col;
      return ParseNumber<double>(fields[col - 1], line, col);
    };
    const auto next_int = [&] {
      ++col;
      return ParseNumber<int>(fields[col - 1], line, col);
    };
    MetricsRow row;
    row.tick = next_int();
    row.merged_coverage = next_double();
    for (int r = 0; r < robots; ++r) row.robot_coverage.push_back(next_double());
    for (int p = 0; p < PairCount(robots); ++p) row.iou_area.push_back(next_double());
    row.frontiers_raw = next_int();
    row.frontiers_filtered = next_int();
    for (int r = 0; r < robots; ++r) row.d_opti.push_back(next_double());
    for (int r = 0; r < robots; ++r) row.reloc.push_back(next_int());
    for (int r = 0; r < robots; ++r) row.lost.push_back(next_int());
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string FormatSummaryCsv(const RunSummary& s) {
  std::string out = "key,value\n";
  const auto put = [&out](std::string_view key, const auto& value) {
    out += fmt::format("{},{}\n", key, value);
  };
  put("policy", s.policy);
  put("seed", s.seed);
  put("robots", s.robots);
  put("ticks", s.ticks);
  put("transient_fraction", s.transient_fraction);
  put("final_coverage", s.final_coverage);
  put("mean_iou_area", s.mean_iou_area);
  put("free_area", s.free_area);
  put("reloc_total", s.reloc_total);
  put("mean_frontier_reduction", s.mean_frontier_reduction);
  put("mse", s.mse);
  put("ssim", s.ssim);
  put("ncc", s.ncc);
  put("cs", s.cs);
  return out;
}

RunSummary ParseSummaryCsv(std::string_view text) {
  const auto lines = SplitLines(text);
  if (lines.empty() || lines[0] != "key,value") {
    throw ParseError("expected 'key,value' header", 1, 1);
  }
  std::map<std::string, std::pair<std::string_view, int>, std::less<>> values;
  for (std::size_t l = 1; l < lines.size(); ++l) {
    if (lines[l].empty()) continue;
    const auto comma = lines[l].find(',');
    if (comma == std::string_view::npos) {
      throw ParseError("expected 'key,value'", static_cast<int>(l + 1), 1);
    }
    values[std::string(lines[l].substr(0, comma))] = {
        lines[l].substr(comma + 1), static_cast<int>(l + 1)};
  }
  const auto get = [&values](std::string_view key) {
    const auto it = values.find(key);
    if (it == values.end()) {
      throw ParseError(fmt::format("missing key '{}'", key), 1, 1);
    }
    return it->second;
  };
  const auto num = [&](std::string_view key) {
    const auto [v, line] = get(key);
    return ParseNumber<double>(v, line, 2);
  };
  const auto integer = [&](std::string_view key) {
    const auto [v, line] = get(key);
    return ParseNumber<long long>(v, line, 2);
  };
  RunSummary s;
  s.policy = std::string(get("policy").first);
  s.seed = static_cast<std::uint64_t>(integer("seed"));
  s.robots = static_cast<int>(integer("robots"));
  s.ticks = static_cast<int>(integer("ticks"));
  s.transient_fraction = num("transient_fraction");
  s.final_coverage = num("final_coverage");
  s.mean_iou_area = num("mean_iou_area");
  s.free_area = num("free_area");
  s.reloc_total = static_cast<int>(integer("reloc_total"));
  s.mean_frontier_reduction = num("mean_frontier_reduction");
  s.mse = num("mse");
  s.ssim = num("ssim");
  s.ncc = num("ncc");
  s.cs = num("cs");
  return s;
}

void SummarizeRows(std::span<const MetricsRow> rows, RunSummary& summary) {
  summary.ticks = static_cast<int>(rows.size());
  if (rows.empty()) return;
  summary.final_coverage = rows.back().merged_coverage;
  summary.reloc_total = 0;
  for (int v : rows.back().reloc) summary.reloc_total += v;

  const auto first = static_cast<std::size_t>(
      std::floor(summary.transient_fraction * static_cast<double>(rows.size())));
  double iou = 0.0;
  std::size_t count = 0;
  for (std::size_t i = first; i < rows.size(); ++i, ++count) {
    for (double a : rows[i].iou_area) iou += a;
  }
  summary.mean_iou_area = count > 0 ? iou / static_cast<double>(count) : 0.0;

  std::vector<int> raw;
  std::vector<int> filtered;
  for (const MetricsRow& row : rows) {
    raw.push_back(row.frontiers_raw);
    filtered.push_back(row.frontiers_filtered);
  }
  summary.mean_frontier_reduction = ComputeFrontierReduction(raw, filtered).mean;
}

std::string ReadTextFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void WriteTextFile(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw std::runtime_error("write failed for " + path.string());
}

MetricsLog LoadRun(const std::filesystem::path& dir) {
  MetricsLog log;
  log.rows = ParseMetricsCsv(ReadTextFile(dir / "metrics.csv"), &log.robot_count);
  log.summary = ParseSummaryCsv(ReadTextFile(dir / "summary.csv"));
  return log;
}

Comparison CompareRuns(std::span<const MetricsLog> reference,
                       std::span<const MetricsLog> candidate) {
  const auto index = [](std::span<const MetricsLog> logs) {
    std::map<std::uint64_t, const MetricsLog*> by_seed;
    for (const MetricsLog& log : logs) {
      if (!by_seed.emplace(log.summary.seed, &log).second) {
        throw std::invalid_argument(
            fmt::format("seed {} appears twice in one group", log.summary.seed));
      }
    }
    return by_seed;
  };
  const auto ref = index(reference);
  const auto cand = index(candidate);
  Comparison out;
  if (!reference.empty()) out.reference = reference.front().summary.policy;
  if (!candidate.empty()) out.candidate = candidate.front().summary.policy;
  for (const auto& [seed, log] : ref) {
    if (!cand.contains(seed)) {
      throw std::invalid_argument(
          fmt::format("seed {} has no {} run to pair with", seed, out.candidate));
    }
  }
  for (const auto& [seed, log] : cand) {
    const auto it = ref.find(seed);
    if (it == ref.end()) {
      throw std::invalid_argument(
          fmt::format("seed {} has no {} run to pair with", seed, out.reference));
    }
    const MetricsLog& a = *it->second;
    const MetricsLog& b = *log;
    const bool same_grid =
        a.rows.size() == b.rows.size() &&
        std::equal(a.rows.begin(), a.rows.end(), b.rows.begin(),
                   [](const MetricsRow& x, const MetricsRow& y) {
                     return x.tick == y.tick;
                   });
    if (!same_grid) {
      throw std::invalid_argument(
          fmt::format("seed {}: runs do not share a tick grid", seed));
    }
    out.deltas.push_back(
        {seed, a.summary.final_coverage - b.summary.final_coverage,
         a.summary.mean_iou_area - b.summary.mean_iou_area,
         static_cast<double>(a.summary.reloc_total - b.summary.reloc_total),
         a.summary.mean_frontier_reduction - b.summary.mean_frontier_reduction});
  }
  return out;
}

std::string FormatComparisonCsv(std::span<const Comparison> comparisons) {
  std::string out =
      "reference,candidate,seed,coverage_delta,iou_area_delta,reloc_delta,"
      "frontier_reduction_delta\n";
  for (const Comparison& c : comparisons) {
    for (const PairedDelta& d : c.deltas) {
      out += fmt::format("{},{},{},{},{},{},{}\n", c.reference, c.candidate,
                         d.seed, d.coverage, d.iou_area, d.reloc,
                         d.frontier_reduction);
    }
  }
  return out;
}

}  // namespace coexplore
