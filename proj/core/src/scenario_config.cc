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

#include "coexplore/scenario_config.h"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <set>
#include <sstream>

#include <fmt/format.h>

#include "coexplore/errors.h"

namespace coexplore {
namespace {

std::string_view Trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

double ToDouble(std::string_view key, std::string_view text) {
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size() || !std::isfinite(v)) {
    throw ConfigError(fmt::format("{}: expected a number, got '{}'", key, text));
  }
  return v;
}

long long ToInteger(std::string_view key, std::string_view text) {
  long long v = 0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError(fmt::format("{}: expected an integer, got '{}'", key, text));
  }
  return v;
}

int ToInt(std::string_view key, std::string_view text) {
  const long long v = ToInteger(key, text);
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max()) {
    throw ConfigError(fmt::format("{}: value out of range", key));
  }
  return static_cast<int>(v);
}

bool ToBool(std::string_view key, std::string_view text) {
  if (text == "true" || text == "on" || text == "1") return true;
  if (text == "false" || text == "off" || text == "0") return false;
  throw ConfigError(fmt::format("{}: expected true or false, got '{}'", key, text));
}

std::string_view BoolText(bool b) { return b ? "true" : "false"; }

Point2 ToPoint(std::string_view key, std::string_view text) {
  const auto space = text.find_first_of(" \t");
  if (space == std::string_view::npos) {
    throw ConfigError(fmt::format("{}: expected 'x y'", key));
  }
  return {ToDouble(key, Trim(text.substr(0, space))),
          ToDouble(key, Trim(text.substr(space + 1)))};
}

using Setter = std::function<void(ScenarioConfig&, std::string_view key,
                                  std::string_view value)>;

const std::map<std::string, Setter, std::less<>>& Setters() {
  static const auto* setters = new std::map<std::string, Setter, std::less<>>{
      {"world", [](ScenarioConfig& c, auto, auto v) { c.world = std::string(v); }},
      {"policy", [](ScenarioConfig& c, auto, auto v) { c.policy = ParsePolicy(v); }},
      {"seed", [](ScenarioConfig& c, auto k, auto v) {
         const long long s = ToInteger(k, v);
         if (s < 0) throw ConfigError("seed: must be non-negative");
         c.seed = static_cast<std::uint64_t>(s);
       }},
      {"ticks", [](ScenarioConfig& c, auto k, auto v) { c.ticks = ToInt(k, v); }},
      {"transient-fraction",
       [](ScenarioConfig& c, auto k, auto v) { c.transient_fraction = ToDouble(k, v); }},
      {"spawn-jitter",
       [](ScenarioConfig& c, auto k, auto v) { c.spawn_jitter = ToDouble(k, v); }},
      {"clutter", [](ScenarioConfig& c, auto k, auto v) { c.clutter = ToInt(k, v); }},
      {"sensor-rays",
       [](ScenarioConfig& c, auto k, auto v) { c.sensor.ray_count = ToInt(k, v); }},
      {"sensor-range",
       [](ScenarioConfig& c, auto k, auto v) { c.sensor.max_range = ToDouble(k, v); }},
      {"sensor-fov",
       [](ScenarioConfig& c, auto k, auto v) { c.sensor.fov = ToDouble(k, v); }},
      {"speed", [](ScenarioConfig& c, auto k, auto v) { c.speed = ToDouble(k, v); }},
      {"idle-turn",
       [](ScenarioConfig& c, auto k, auto v) { c.idle_turn = ToDouble(k, v); }},
      {"min-cluster",
       [](ScenarioConfig& c, auto k, auto v) { c.min_cluster = ToInt(k, v); }},
      {"DIST_THRESH",
       [](ScenarioConfig& c, auto k, auto v) { c.filter.dist_thresh = ToDouble(k, v); }},
      {"filter-order",
       [](ScenarioConfig& c, auto k, auto v) {
         if (v == "iou-first") {
           c.filter.order = FilterOrder::kIouFirst;
         } else if (v == "literal") {
           c.filter.order = FilterOrder::kLiteral;
         } else {
           throw ConfigError(fmt::format("{}: expected iou-first or literal", k));
         }
       }},
      {"filter-keep-iou",
       [](ScenarioConfig& c, auto k, auto v) { c.filter.keep_iou = ToBool(k, v); }},
      {"PRC_UNK",
       [](ScenarioConfig& c, auto k, auto v) { c.server.prc_unk = ToDouble(k, v); }},
      {"RAD", [](ScenarioConfig& c, auto k, auto v) { c.server.rad = ToDouble(k, v); }},
      {"MIN_PTS",
       [](ScenarioConfig& c, auto k, auto v) { c.server.min_pts = ToInt(k, v); }},
      {"MAX_PTS",
       [](ScenarioConfig& c, auto k, auto v) { c.server.max_pts = ToInt(k, v); }},
      {"DIST_THRES",
       [](ScenarioConfig& c, auto k, auto v) { c.server.dist_thres = ToDouble(k, v); }},
      {"lambda-d",
       [](ScenarioConfig& c, auto k, auto v) { c.reward.lambda_d = ToDouble(k, v); }},
      {"entropy-weight",
       [](ScenarioConfig& c, auto k, auto v) { c.reward.w_h = ToDouble(k, v); }},
      {"plan-through-unknown",
       [](ScenarioConfig& c, auto k, auto v) {
         c.reward.plan.through_unknown = ToBool(k, v);
       }},
      {"history-window",
       [](ScenarioConfig& c, auto k, auto v) { c.history_window = ToInt(k, v); }},
      {"reloc", [](ScenarioConfig& c, auto k, auto v) { c.reloc = ToBool(k, v); }},
      {"D_MAX",
       [](ScenarioConfig& c, auto k, auto v) { c.reloc_policy.d_max = ToDouble(k, v); }},
      {"reloc-selector",
       [](ScenarioConfig& c, auto k, auto v) {
         if (v == "max-entropy") {
           c.reloc_policy.selector = RelocSelector::kMaxEntropy;
         } else if (v == "literal") {
           c.reloc_policy.selector = RelocSelector::kLiteral;
         } else {
           throw ConfigError(fmt::format("{}: expected max-entropy or literal", k));
         }
       }},
      {"reloc-trigger",
       [](ScenarioConfig& c, auto k, auto v) {
         c.reloc_trigger_auto = false;
         if (v == "auto") {
           c.reloc_trigger_auto = true;
         } else if (v == "below") {
           c.reloc_policy.trigger = RelocTrigger::kBelow;
         } else if (v == "above") {
           c.reloc_policy.trigger = RelocTrigger::kAbove;
         } else {
           throw ConfigError(fmt::format("{}: expected auto, below or above", k));
         }
       }},
      {"dopt-form",
       [](ScenarioConfig& c, auto k, auto v) {
         if (v == "normalized") {
           c.uncertainty.form = DOptForm::kNormalized;
         } else if (v == "literal") {
           c.uncertainty.form = DOptForm::kLiteral;
         } else {
           throw ConfigError(fmt::format("{}: expected normalized or literal", k));
         }
       }},
      {"odom-sigma",
       [](ScenarioConfig& c, auto k, auto v) {
         c.uncertainty.sigmas.fill(ToDouble(k, v));
       }},
      {"odom-epsilon",
       [](ScenarioConfig& c, auto k, auto v) { c.uncertainty.epsilon = ToDouble(k, v); }},
      {"d-cap",
       [](ScenarioConfig& c, auto k, auto v) { c.uncertainty.d_cap = ToDouble(k, v); }},
      {"closure-retain",
       [](ScenarioConfig& c, auto k, auto v) { c.uncertainty.retain = ToDouble(k, v); }},
      {"lost-distance",
       [](ScenarioConfig& c, auto k, auto v) {
         c.uncertainty.lost_distance = ToDouble(k, v);
       }},
      {"closure-radius",
       [](ScenarioConfig& c, auto k, auto v) { c.closure_radius = ToDouble(k, v); }},
      {"closure-min-travel",
       [](ScenarioConfig& c, auto k, auto v) { c.closure_min_travel = ToDouble(k, v); }},
      {"uav", [](ScenarioConfig& c, auto k, auto v) { c.uav.enabled = ToBool(k, v); }},
      {"uav-min-height",
       [](ScenarioConfig& c, auto k, auto v) { c.uav.sweep.min_height = ToDouble(k, v); }},
      {"uav-swath",
       [](ScenarioConfig& c, auto k, auto v) { c.uav.sweep.swath = ToDouble(k, v); }},
      {"uav-footprint",
       [](ScenarioConfig& c, auto k, auto v) { c.uav.sweep.footprint = ToDouble(k, v); }},
  };
  return *setters;
}

void Require(bool ok, std::string_view key, std::string_view what) {
  if (!ok) throw ConfigError(fmt::format("{}: {}", key, what));
}

}  // namespace

std::string_view ToString(Policy policy) {
  switch (policy) {
    case Policy::kOurs:
      return "ours";
    case Policy::kMexp:
      return "mexp";
    case Policy::kDcm:
      return "dcm";
  }
  return "unknown";
}

Policy ParsePolicy(std::string_view text) {
  if (text == "ours") return Policy::kOurs;
  if (text == "mexp") return Policy::kMexp;
  if (text == "dcm") return Policy::kDcm;
  throw ConfigError(fmt::format("policy: expected ours, mexp or dcm, got '{}'", text));
}

RelocPolicy ScenarioConfig::EffectiveRelocPolicy() const {
  RelocPolicy p = reloc_policy;
  if (reloc_trigger_auto) {
    p.trigger = uncertainty.form == DOptForm::kLiteral ? RelocTrigger::kAbove
                                                       : RelocTrigger::kBelow;
  }
  return p;
}

ServerPolicy ScenarioConfig::EffectiveServerPolicy() const {
  ServerPolicy p;
  p.history_window = history_window;
  if (policy != Policy::kOurs) {
    p.dedup = false;
    p.history_spacing = false;
    p.merged_gain = false;
  }
  return p;
}

void ScenarioConfig::Validate() const {
  Require(!world.empty(), "world", "required");
  Require(!spawns.empty(), "robot.0", "at least one robot is required");
  Require(ticks >= 1, "ticks", "must be at least 1");
  Require(transient_fraction >= 0.0 && transient_fraction < 1.0,
          "transient-fraction", "must be in [0, 1)");
  Require(spawn_jitter >= 0.0, "spawn-jitter", "must be non-negative");
  Require(clutter >= 0, "clutter", "must be non-negative");
  Require(sensor.ray_count >= 1, "sensor-rays", "must be at least 1");
  Require(sensor.max_range > 0.0, "sensor-range", "must be positive");
  Require(sensor.fov > 0.0 && sensor.fov <= 2.0 * std::numbers::pi + 1e-12,
          "sensor-fov", "must be in (0, 2 pi] radians");
  Require(speed > 0.0, "speed", "must be positive");
  Require(std::abs(idle_turn) <= std::numbers::pi, "idle-turn",
          "must be within [-pi, pi]");
  Require(min_cluster >= 1, "min-cluster", "must be at least 1");
  Require(filter.dist_thresh >= 0.0, "DIST_THRESH", "must be non-negative");
  Require(server.prc_unk >= 0.0 && server.prc_unk <= 1.0, "PRC_UNK",
          "must be in [0, 1]");
  Require(server.rad > 0.0, "RAD", "must be positive");
  Require(server.min_pts >= 0, "MIN_PTS", "must be non-negative");
  Require(server.max_pts >= 0, "MAX_PTS", "must be non-negative");
  Require(server.min_pts <= server.max_pts, "MIN_PTS",
          "must not exceed MAX_PTS");
  Require(server.dist_thres >= 0.0, "DIST_THRES", "must be non-negative");
  Require(reward.lambda_d > 0.0, "lambda-d", "must be positive");
  Require(reward.w_h >= 0.0, "entropy-weight", "must be non-negative");
  Require(history_window >= 0, "history-window", "must be non-negative");
  Require(reloc_policy.d_max > 0.0, "D_MAX", "must be positive");
  Require(uncertainty.sigmas[0] > 0.0, "odom-sigma", "must be positive");
  Require(uncertainty.epsilon > 0.0, "odom-epsilon", "must be positive");
  Require(uncertainty.d_cap > 0.0, "d-cap", "must be positive");
  Require(uncertainty.retain >= 0.0 && uncertainty.retain <= 1.0,
          "closure-retain", "must be in [0, 1]");
  Require(uncertainty.lost_distance > 0.0, "lost-distance", "must be positive");
  Require(closure_radius > 0.0, "closure-radius", "must be positive");
  Require(closure_min_travel >= 0.0, "closure-min-travel",
          "must be non-negative");
  Require(uav.sweep.min_height > 0.0, "uav-min-height", "must be positive");
  Require(uav.sweep.swath > 0.0, "uav-swath", "must be positive");
  Require(uav.sweep.footprint >= 0.0, "uav-footprint", "must be non-negative");
}

ScenarioConfig ParseScenarioConfig(std::string_view text,
                                   const std::filesystem::path& base_dir) {
  ScenarioConfig config;
  std::set<std::string, std::less<>> seen;
  std::map<int, Point2> spawns;
  int line_number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_number;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = Trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw ConfigError(
          fmt::format("line {}: expected 'key = value'", line_number));
    }
    const std::string_view key = Trim(line.substr(0, eq));
    const std::string_view value = Trim(line.substr(eq + 1));
    if (key.empty() || value.empty()) {
      throw ConfigError(
          fmt::format("line {}: expected 'key = value'", line_number));
    }
    if (!seen.insert(std::string(key)).second) {
      throw ConfigError(fmt::format("line {}: {}: repeated key", line_number, key));
    }
    try {
      if (key.starts_with("robot.")) {
        const int index = ToInt(key, key.substr(6));
        Require(index >= 0, key, "robot index must be non-negative");
        spawns[index] = ToPoint(key, value);
        continue;
      }
      const auto setter = Setters().find(key);
      if (setter == Setters().end()) {
        throw ConfigError(fmt::format("{}: unknown key", key));
      }
      setter->second(config, key, value);
    } catch (const ConfigError& e) {
      throw ConfigError(fmt::format("line {}: {}", line_number, e.what()));
    }
  }
  for (const auto& [index, p] : spawns) {
    if (index != static_cast<int>(config.spawns.size())) {
      throw ConfigError(fmt::format("robot.{}: robots must be numbered from 0 "
                                    "without gaps",
                                    config.spawns.size()));
    }
    config.spawns.push_back(p);
  }
  if (!config.world.empty() && config.world.is_relative() && !base_dir.empty()) {
    config.world =
        std::filesystem::absolute(base_dir / config.world).lexically_normal();
  }
  config.Validate();
  return config;
}

ScenarioConfig LoadScenarioConfig(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return ParseScenarioConfig(buffer.str(), path.parent_path());
}

std::string FormatResolvedConfig(const ScenarioConfig& c) {
  std::string out;
  const auto put = [&out](std::string_view key, const auto& value) {
    out += fmt::format("{} = {}\n", key, value);
  };
  put("world", c.world.string());
  for (std::size_t i = 0; i < c.spawns.size(); ++i) {
    out += fmt::format("robot.{} = {} {}\n", i, c.spawns[i].x, c.spawns[i].y);
  }
  put("policy", ToString(c.policy));
  put("seed", c.seed);
  put("ticks", c.ticks);
  put("transient-fraction", c.transient_fraction);
  put("spawn-jitter", c.spawn_jitter);
  put("clutter", c.clutter);
  put("sensor-rays", c.sensor.ray_count);
  put("sensor-range", c.sensor.max_range);
  put("sensor-fov", c.sensor.fov);
  put("speed", c.speed);
  put("idle-turn", c.idle_turn);
  put("min-cluster", c.min_cluster);
  put("DIST_THRESH", c.filter.dist_thresh);
  put("filter-order",
      c.filter.order == FilterOrder::kIouFirst ? "iou-first" : "literal");
  put("filter-keep-iou", BoolText(c.filter.keep_iou));
  put("PRC_UNK", c.server.prc_unk);
  put("RAD", c.server.rad);
  put("MIN_PTS", c.server.min_pts);
  put("MAX_PTS", c.server.max_pts);
  put("DIST_THRES", c.server.dist_thres);
  put("lambda-d", c.reward.lambda_d);
  put("entropy-weight", c.reward.w_h);
  put("plan-through-unknown", BoolText(c.reward.plan.through_unknown));
  put("history-window", c.history_window);
  put("reloc", BoolText(c.reloc));
  put("D_MAX", c.reloc_policy.d_max);
  put("reloc-selector", c.reloc_policy.selector == RelocSelector::kMaxEntropy
                            ? "max-entropy"
                            : "literal");
  put("reloc-trigger",
      c.reloc_trigger_auto ? "auto"
      : c.reloc_policy.trigger == RelocTrigger::kBelow ? "below"
                                                       : "above");
  put("dopt-form", ToString(c.uncertainty.form));
  put("odom-sigma", c.uncertainty.sigmas[0]);
  put("odom-epsilon", c.uncertainty.epsilon);
  put("d-cap", c.uncertainty.d_cap);
  put("closure-retain", c.uncertainty.retain);
  put("lost-distance", c.uncertainty.lost_distance);
  put("closure-radius", c.closure_radius);
  put("closure-min-travel", c.closure_min_travel);
  put("uav", BoolText(c.uav.enabled));
  put("uav-min-height", c.uav.sweep.min_height);
  put("uav-swath", c.uav.sweep.swath);
  put("uav-footprint", c.uav.sweep.footprint);
  return out;
}

}  // namespace coexplore
