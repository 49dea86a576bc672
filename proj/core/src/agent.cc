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

#include "coexplore/agent.h"

#include <cmath>
#include <stdexcept>

#include "coexplore/grid_traversal.h"

namespace coexplore {
namespace {

constexpr double kArrivalTolerance = 1e-9;
constexpr double kFullCircle = 2.0 * std::numbers::pi;

void Emit(std::vector<AgentEvent>* events, int tick, const AgentState& agent,
          AgentEventType type, Point2 where) {
  if (events != nullptr) events->push_back({tick, agent.id, type, where});
}

}  // namespace

void SensorParams::Validate() const {
  if (ray_count < 1) throw std::invalid_argument("ray_count must be >= 1");
  if (!(max_range > 0.0)) throw std::invalid_argument("max_range must be > 0");
  if (!(fov > 0.0)) throw std::invalid_argument("fov must be > 0");
}

void Sense(const WorldModel& world, const Pose2D& pose,
           const SensorParams& params, OccupancyGrid& map) {
  params.Validate();
  const auto pose_cell = map.WorldToGrid(pose.position());
  if (!pose_cell || !world.Contains(*pose_cell)) {
    throw std::invalid_argument("sensing pose outside the world");
  }
  if (world.Blocks(*pose_cell, kGroundSensorHeight)) {
    throw std::invalid_argument("sensing pose lies on an obstacle");
  }
  const bool full_circle = params.fov >= kFullCircle;
  for (int k = 0; k < params.ray_count; ++k) {
    const double angle =
        full_circle
            ? pose.theta + kFullCircle * k / params.ray_count
            : pose.theta - 0.5 * params.fov +
                  params.fov * (k + 0.5) / params.ray_count;
    const Point2 end{pose.x + params.max_range * std::cos(angle),
                     pose.y + params.max_range * std::sin(angle)};
    for (const CellIndex& cell : TraverseLine(map, pose.position(), end)) {
      if (!world.Contains(cell)) break;
      if (world.Blocks(cell, kGroundSensorHeight)) {
        map.Set(cell, kOccupied);
        break;
      }
      map.Set(cell, kFree);
    }
  }
}

double BinaryEntropy(double p) {
  if (p <= 0.0 || p >= 1.0) return 0.0;
  return -p * std::log2(p) - (1.0 - p) * std::log2(1.0 - p);
}

double PathEntropy(const OccupancyGrid& map, Point2 from, Point2 to) {
  const std::vector<CellIndex> cells = TraverseLine(map, from, to);
  if (cells.empty()) return 0.0;
  double total = 0.0;
  for (const CellIndex& c : cells) {
    const Occupancy v = map[c];
    const double p = v == kUnknown ? 0.5 : (v == kOccupied ? 1.0 : 0.0);
    total += BinaryEntropy(p);
  }
  return total / static_cast<double>(cells.size());
}

std::string_view ToString(AgentEventType type) {
  switch (type) {
    case AgentEventType::kGoalAssigned:
      return "goal_assigned";
    case AgentEventType::kGoalReached:
      return "goal_reached";
    case AgentEventType::kGoalAbandoned:
      return "goal_abandoned";
    case AgentEventType::kReplanned:
      return "replanned";
    case AgentEventType::kRelocalized:
      return "relocalized";
    case AgentEventType::kLost:
      return "lost";
    case AgentEventType::kClosure:
      return "closure";
  }
  return "unknown";
}

void AgentState::SyncSlamStatus() {
  d_opti = slam.reported_d_opti();
  orb_status = slam.lost() ? OrbStatus::kLost : OrbStatus::kOk;
}

AgentState MakeAgent(int id, const Pose2D& spawn, OccupancyGrid blank_map,
                     const UncertaintyParams& uncertainty) {
  AgentState agent;
  agent.slam = SlamUncertainty(uncertainty,
                               Pose3{spawn.x, spawn.y, 0, 0, 0, spawn.theta});
  agent.id = id;
  agent.pose = {spawn.x, spawn.y, NormalizeAngle(spawn.theta)};
  agent.local_map = std::move(blank_map);
  agent.sg_list = {{spawn.position(), -1}};
  agent.SyncSlamStatus();
  return agent;
}

void ClearGoal(AgentState& agent) {
  agent.current_goal.reset();
  agent.path.clear();
  agent.waypoints.clear();
  agent.waypoint_cursor = 0;
  agent.needs_goal = true;
}

bool AssignGoal(AgentState& agent, const Goal& goal,
                const OccupancyGrid& plan_map, const PlanOptions& options) {
  ClearGoal(agent);
  std::optional<GridPath> path;
  try {
    path = PlanPath(plan_map, agent.pose.position(), goal.position, options);
  } catch (const std::invalid_argument&) {
    path.reset();
  }
  if (!path) return false;
  agent.current_goal = goal;
  agent.path = std::move(path->cells);
  for (std::size_t i = 1; i < agent.path.size(); ++i) {
    agent.waypoints.push_back(plan_map.GridToWorld(agent.path[i]));
  }
  if (agent.waypoints.empty()) {
    agent.waypoints.push_back(goal.position);
  } else {
    agent.waypoints.back() = goal.position;
  }
  agent.needs_goal = false;
  return true;
}

bool RelocalizationTriggered(const AgentState& agent,
                             const RelocPolicy& policy) {
  if (agent.orb_status == OrbStatus::kLost) return true;
  return policy.trigger == RelocTrigger::kBelow ? agent.d_opti < policy.d_max
                                                : agent.d_opti > policy.d_max;
}

std::vector<std::size_t> LoopClosureCandidates(const AgentState& agent) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < agent.sg_list.size(); ++i) {
    if (agent.sg_list[i].tick < agent.last_closure_tick) out.push_back(i);
  }
  return out;
}

RelocOutcome MaybeRelocalize(AgentState& agent, const RelocPolicy& policy,
                             int tick) {
  RelocOutcome outcome;
  if (!RelocalizationTriggered(agent, policy)) return outcome;
  outcome.triggered = true;
  const std::vector<std::size_t> candidates = LoopClosureCandidates(agent);
  if (candidates.empty()) {
    outcome.no_candidates = true;
    return outcome;
  }
  std::size_t winner = candidates.front();
  double best = -1.0;
  for (std::size_t i : candidates) {
    const double ent = PathEntropy(agent.local_map, agent.pose.position(),
                                   agent.sg_list[i].position);
    const double score =
        policy.selector == RelocSelector::kMaxEntropy ? ent : 1.0 - ent;
    if (score > best) {
      best = score;
      winner = i;
    }
  }
  const Point2 win = agent.sg_list[winner].position;
  ++agent.reloc;
  agent.sg_list.push_back({win, tick});
  outcome.goal = win;
  return outcome;
}

StepResult Step(AgentState& agent, const OccupancyGrid& plan_map, double speed,
                const PlanOptions& options, int tick,
                std::vector<AgentEvent>* events) {
  if (!(speed > 0.0)) throw std::invalid_argument("speed must be > 0");
  StepResult result;
  if (!agent.current_goal) return result;

  bool blocked = false;
  for (std::size_t i = agent.waypoint_cursor + 1; i < agent.path.size(); ++i) {
    if (!IsTraversable(plan_map.ValueOr(agent.path[i]), options)) {
      blocked = true;
      break;
    }
  }
  if (blocked) {
    const Goal goal = *agent.current_goal;
    if (AssignGoal(agent, goal, plan_map, options)) {
      result.replanned = true;
      Emit(events, tick, agent, AgentEventType::kReplanned, goal.position);
    } else {
      result.abandoned = true;
      Emit(events, tick, agent, AgentEventType::kGoalAbandoned, goal.position);
      return result;
    }
  }

  const Pose2D before = agent.pose;
  double budget = speed;
  Point2 position = agent.pose.position();
  while (budget > kArrivalTolerance &&
         agent.waypoint_cursor < agent.waypoints.size()) {
    const Point2 target = agent.waypoints[agent.waypoint_cursor];
    const double d = Distance(position, target);
    if (d <= budget + kArrivalTolerance) {
      position = target;
      budget -= d;
      ++agent.waypoint_cursor;
    } else {
      position.x += (target.x - position.x) * budget / d;
      position.y += (target.y - position.y) * budget / d;
      budget = 0.0;
    }
  }
  const double dx = position.x - before.x;
  const double dy = position.y - before.y;
  if (dx != 0.0 || dy != 0.0) {
    agent.pose = {position.x, position.y, std::atan2(dy, dx)};
    result.moved = true;
    result.delta = Between(Pose3{before.x, before.y, 0, 0, 0, before.theta},
                           Pose3{agent.pose.x, agent.pose.y, 0, 0, 0,
                                 agent.pose.theta});
  }

  if (agent.waypoint_cursor >= agent.waypoints.size()) {
    const Goal goal = *agent.current_goal;
    result.reached = true;
    if (goal.kind == GoalKind::kExplore) {
      agent.sg_list.push_back({goal.position, tick});
    }
    Emit(events, tick, agent, AgentEventType::kGoalReached, goal.position);
    ClearGoal(agent);
  }
  return result;
}

std::optional<std::size_t> FindLoopClosure(const AgentState& agent,
                                           double radius) {
  for (std::size_t i : LoopClosureCandidates(agent)) {
    if (Distance(agent.pose.position(), agent.sg_list[i].position) <= radius) {
      return i;
    }
  }
  return std::nullopt;
}

}  // namespace coexplore
