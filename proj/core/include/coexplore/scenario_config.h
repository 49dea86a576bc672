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

#ifndef COEXPLORE_SCENARIO_CONFIG_H_
#define COEXPLORE_SCENARIO_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "coexplore/agent.h"
#include "coexplore/coordination_server.h"
#include "coexplore/frontier.h"
#include "coexplore/geometry.h"
#include "coexplore/pose_graph.h"
#include "coexplore/world_model.h"

namespace coexplore {

enum class Policy {
  kOurs,  // IoU filtering, server dedup and spacing, re-localization
  kMexp,  // raw local frontiers, server reward only, no re-localization
  kDcm,   // decentralized per-robot choice, no server reductions
};

std::string_view ToString(Policy policy);
Policy ParsePolicy(std::string_view text);  // throws ConfigError

struct UavConfig {
  bool enabled = true;
  UavSweep sweep;
};

struct ScenarioConfig {
  std::filesystem::path world;
  std::vector<Point2> spawns;  // one per robot
  double spawn_jitter = 0.0;   // meters
  int clutter = 0;             // random low obstacles added to the world
  Policy policy = Policy::kOurs;
  std::uint64_t seed = 1;
  int ticks = 400;
  double transient_fraction = 0.25;

  SensorParams sensor;
  double speed = 0.4;  // meters per tick
  double idle_turn = 0.7853981633974483;  // radians per tick without a goal
  int min_cluster = 1;
  FrontierFilterOptions filter;
  ServerParams server;
  RewardParams reward;
  int history_window = 0;

  bool reloc = true;
  RelocPolicy reloc_policy;
  bool reloc_trigger_auto = true;  // trigger follows the D-optimality form
  UncertaintyParams uncertainty;
  double closure_radius = 0.5;
  double closure_min_travel = 2.0;

  UavConfig uav;

  int robot_count() const { return static_cast<int>(spawns.size()); }
  // Re-localization policy with the trigger resolved.
  RelocPolicy EffectiveRelocPolicy() const;
  // Server switches implied by the policy.
  ServerPolicy EffectiveServerPolicy() const;
  bool RelocEnabled() const { return reloc && policy == Policy::kOurs; }

  // Throws ConfigError naming the offending key.
  void Validate() const;
};

// Parses "key = value" lines; '#' starts a comment. A relative world path is
// resolved against base_dir. Throws ConfigError (with the line number) for
// syntax errors, unknown or repeated keys and invalid values.
ScenarioConfig ParseScenarioConfig(std::string_view text,
                                   const std::filesystem::path& base_dir = {});
ScenarioConfig LoadScenarioConfig(const std::filesystem::path& path);

// Every key with its resolved value, in the parser's syntax. Parsing the
// result gives back the same configuration.
std::string FormatResolvedConfig(const ScenarioConfig& config);

}  // namespace coexplore

#endif  // COEXPLORE_SCENARIO_CONFIG_H_
