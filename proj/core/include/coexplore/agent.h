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

#ifndef COEXPLORE_AGENT_H_
#define COEXPLORE_AGENT_H_

#include <numbers>
#include <optional>
#include <string_view>
#include <vector>

#include "coexplore/geometry.h"
#include "coexplore/occupancy_grid.h"
#include "coexplore/planner.h"
#include "coexplore/pose_graph.h"
#include "coexplore/world_model.h"

namespace coexplore {

// Height of the ground robots' sensing plane. Anything at least this tall
// blocks rays, so both obstacle classes are visible to ground robots.
inline constexpr double kGroundSensorHeight = 0.2;

struct SensorParams {
  int ray_count = 360;
  double max_range = 2.5;  // meters
  double fov = 2.0 * std::numbers::pi;

  void Validate() const;
};

// Casts ray_count rays spread over fov (centered on the heading) out to
// max_range. Cells before the first blocking cell become free, the blocking
// cell becomes occupied, cells beyond are untouched. Throws
// std::invalid_argument when the pose is outside the world or on an obstacle.
void Sense(const WorldModel& world, const Pose2D& pose,
           const SensorParams& params, OccupancyGrid& map);

// -p log2 p - (1 - p) log2 (1 - p), with H(0) = H(1) = 0.
double BinaryEntropy(double p);

// Mean per-cell binary entropy along the straight grid traversal from -> to:
// free and occupied cells contribute 0, unknown cells 1. Empty traversal
// gives 0.
double PathEntropy(const OccupancyGrid& map, Point2 from, Point2 to);

enum class OrbStatus { kOk, kLost };
enum class GoalKind { kExplore, kRelocalize };

struct Goal {
  Point2 position;
  GoalKind kind = GoalKind::kExplore;
  double reward = 0.0;
};

struct SavedGoal {
  Point2 position;
  int tick = 0;  // tick the entry was appended
};

enum class AgentEventType {
  kGoalAssigned,
  kGoalReached,
  kGoalAbandoned,
  kReplanned,
  kRelocalized,
  kLost,
  kClosure,
};

std::string_view ToString(AgentEventType type);

struct AgentEvent {
  int tick = 0;
  int robot_id = 0;
  AgentEventType type = AgentEventType::kGoalAssigned;
  Point2 position;
};

struct AgentState {
  int id = 0;
  Pose2D pose;
  OccupancyGrid local_map;
  // Saved goals, append-only. The first entry is the spawn point, recorded
  // at tick -1 as the place where the SLAM map was initialized.
  std::vector<SavedGoal> sg_list;
  OrbStatus orb_status = OrbStatus::kOk;
  double d_opti = 0.0;
  int reloc = 0;
  std::optional<Goal> current_goal;
  std::vector<CellIndex> path;      // planned cells, start first
  std::vector<Point2> waypoints;    // path[1..] centers, last = goal point
  std::size_t waypoint_cursor = 0;  // next waypoint to reach
  int last_closure_tick = 0;
  bool needs_goal = true;
  SlamUncertainty slam{UncertaintyParams{}};

  // Copies d_opti and orb_status from the SLAM model.
  void SyncSlamStatus();
};

AgentState MakeAgent(int id, const Pose2D& spawn, OccupancyGrid blank_map,
                     const UncertaintyParams& uncertainty);

// Plans a path to the goal on plan_map and installs it. Returns false (and
// leaves the agent goal-less) when the goal is unreachable.
bool AssignGoal(AgentState& agent, const Goal& goal,
                const OccupancyGrid& plan_map, const PlanOptions& options);

void ClearGoal(AgentState& agent);

enum class RelocSelector {
  kMaxEntropy,  // goal with the largest path entropy
  kLiteral,     // goal maximizing (1 - entropy)
};

enum class RelocTrigger {
  kBelow,  // trigger when d_opti < d_max
  kAbove,  // trigger when d_opti > d_max
};

struct RelocPolicy {
  double d_max = 1.5;
  RelocSelector selector = RelocSelector::kMaxEntropy;
  RelocTrigger trigger = RelocTrigger::kBelow;
};

bool RelocalizationTriggered(const AgentState& agent,
                             const RelocPolicy& policy);

// Saved goals that can close a loop: entries appended before the last
// closure.
std::vector<std::size_t> LoopClosureCandidates(const AgentState& agent);

struct RelocOutcome {
  std::optional<Point2> goal;
  bool triggered = false;
  bool no_candidates = false;  // triggered but nothing to return to
};

// Saved-goal selection by path entropy. When triggered and a candidate
// exists, increments reloc, appends the winner to sg_list and returns it.
RelocOutcome MaybeRelocalize(AgentState& agent, const RelocPolicy& policy,
                             int tick);

struct StepResult {
  bool moved = false;
  Pose3 delta;  // motion in the frame of the previous pose
  bool reached = false;
  bool replanned = false;
  bool abandoned = false;
};

// Advances along the current path by at most speed meters. Replans when a
// remaining path cell is no longer traversable on plan_map. On arrival at an
// exploration goal the goal is appended to sg_list; either way the agent
// flags that it needs a new goal.
StepResult Step(AgentState& agent, const OccupancyGrid& plan_map, double speed,
                const PlanOptions& options, int tick,
                std::vector<AgentEvent>* events = nullptr);

// Index of a loop-closure candidate within radius of the current pose.
std::optional<std::size_t> FindLoopClosure(const AgentState& agent,
                                           double radius);

}  // namespace coexplore

#endif  // COEXPLORE_AGENT_H_
