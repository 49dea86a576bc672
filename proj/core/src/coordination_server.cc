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

#include "coexplore/coordination_server.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace coexplore {
namespace {

constexpr double kDiskTolerance = 1e-9;

bool GainOrder(const FrontierPoint& a, const FrontierPoint& b) {
  if (a.info_gain != b.info_gain) return a.info_gain > b.info_gain;
  if (a.position.x != b.position.x) return a.position.x < b.position.x;
  return a.position.y < b.position.y;
}

bool FarFromAll(const FrontierPoint& p, const std::vector<FrontierPoint>& kept,
                double spacing) {
  return std::all_of(kept.begin(), kept.end(), [&](const FrontierPoint& k) {
    return Distance(p.position, k.position) >= spacing;
  });
}

// Unique candidates scored on map, without any admission or spacing.
std::vector<FrontierPoint> ScoreUnique(std::span<const FrontierPoint> candidates,
                                       const OccupancyGrid& map, double rad) {
  std::vector<FrontierPoint> scored;
  for (const FrontierPoint& c : candidates) {
    const bool duplicate =
        std::any_of(scored.begin(), scored.end(), [&](const FrontierPoint& s) {
          return s.position == c.position;
        });
    if (duplicate) continue;
    FrontierPoint p = c;
    p.info_gain = InformationGain(map, p.position, rad);
    scored.push_back(p);
  }
  return scored;
}

}  // namespace

void ServerParams::Validate() const {
  if (min_pts < 0 || max_pts < min_pts) {
    throw std::invalid_argument("need MAX_PTS >= MIN_PTS >= 0");
  }
  if (!(rad > 0.0)) throw std::invalid_argument("RAD must be > 0");
  if (!(prc_unk >= 0.0 && prc_unk <= 1.0)) {
    throw std::invalid_argument("PRC_UNK must lie in [0, 1]");
  }
  if (!(dist_thres >= 0.0)) throw std::invalid_argument("DIST_THRES must be >= 0");
}

double InformationGain(const OccupancyGrid& map, Point2 p, double rad) {
  if (!(rad > 0.0)) throw std::invalid_argument("RAD must be > 0");
  const double res = map.resolution();
  const CellIndex lo = map.LatticeIndex({p.x - rad, p.y - rad});
  const CellIndex hi = map.LatticeIndex({p.x + rad, p.y + rad});
  int covered = 0;
  int unknown = 0;
  for (int y = lo.y; y <= hi.y; ++y) {
    for (int x = lo.x; x <= hi.x; ++x) {
      const double cx = map.origin().x + (x + 0.5) * res;
      const double cy = map.origin().y + (y + 0.5) * res;
      if (std::hypot(cx - p.x, cy - p.y) > rad + kDiskTolerance) continue;
      ++covered;
      if (map.ValueOr({x, y}) == kUnknown) ++unknown;
    }
  }
  return covered == 0 ? 1.0 : static_cast<double>(unknown) / covered;
}

std::vector<FrontierPoint> MergePoints(
    std::span<const FrontierPoint> candidates, const OccupancyGrid& map,
    const ServerParams& params) {
  params.Validate();
  std::vector<FrontierPoint> scored = ScoreUnique(candidates, map, params.rad);
  std::stable_sort(scored.begin(), scored.end(), GainOrder);

  std::vector<FrontierPoint> kept;
  std::vector<FrontierPoint> rejected;
  for (const FrontierPoint& p : scored) {
    if (p.info_gain < params.prc_unk) {
      rejected.push_back(p);
      continue;
    }
    if (static_cast<int>(kept.size()) >= params.max_pts) break;
    if (FarFromAll(p, kept, params.dist_thres)) kept.push_back(p);
  }
  for (const FrontierPoint& p : rejected) {
    if (static_cast<int>(kept.size()) >= params.min_pts) break;
    if (FarFromAll(p, kept, params.dist_thres)) kept.push_back(p);
  }
  return kept;
}

Reward ComputeReward(Point2 robot_position, const OccupancyGrid& robot_map,
                     const FrontierPoint& point, const OccupancyGrid& plan_map,
                     const RewardParams& params) {
  Reward r;
  r.gain = point.info_gain;
  std::optional<GridPath> path;
  try {
    path = PlanPath(plan_map, robot_position, point.position, params.plan);
  } catch (const std::invalid_argument&) {
    path.reset();
  }
  r.reachable = path.has_value();
  r.path_length =
      path ? path->length : Distance(robot_position, point.position);
  r.entropy = PathEntropy(robot_map, robot_position, point.position);
  r.value = r.gain * std::exp(-r.path_length / params.lambda_d) *
            (1.0 + params.w_h * r.entropy);
  return r;
}

Reward ComputeReward(const AgentState& robot, const FrontierPoint& point,
                     const OccupancyGrid& plan_map, const RewardParams& params) {
  return ComputeReward(robot.pose.position(), robot.local_map, point, plan_map,
                       params);
}

std::optional<std::size_t> ChooseGoalIndex(
    std::span<const FrontierPoint> points, std::span<const double> rewards,
    const ServerState& state, int robot_id, const ServerParams& params,
    const ServerPolicy& policy) {
  if (points.size() != rewards.size()) {
    throw std::invalid_argument("one reward per point required");
  }
  const std::size_t history_begin =
      policy.history_window > 0 &&
              state.assigned.size() > static_cast<std::size_t>(policy.history_window)
          ? state.assigned.size() - policy.history_window
          : 0;
  std::optional<std::size_t> best;
  for (std::size_t i = 0; i < points.size(); ++i) {
    const Point2& p = points[i].position;
    bool allowed = true;
    for (const auto& [other, active] : state.active) {
      if (other == robot_id) continue;
      if (active.goal == p ||
          (policy.history_spacing &&
           Distance(active.goal, p) < params.dist_thres)) {
        allowed = false;
        break;
      }
    }
    if (allowed) {
      // Without spacing, only the exact points handed out before are
      // excluded, so an unreachable point is not assigned forever.
      for (std::size_t h = history_begin; h < state.assigned.size(); ++h) {
        const Point2& past = state.assigned[h].goal;
        if (policy.history_spacing ? Distance(past, p) < params.dist_thres
                                   : past == p) {
          allowed = false;
          break;
        }
      }
    }
    if (!allowed) continue;
    if (!best || rewards[i] > rewards[*best]) best = i;
  }
  return best;
}

CoordinationServer::CoordinationServer(const ServerParams& params,
                                       const RewardParams& reward,
                                       const ServerPolicy& policy)
    : params_(params), reward_(reward), policy_(policy) {
  params_.Validate();
}

void CoordinationServer::UpdateMaps(
    std::shared_ptr<const OccupancyGrid> merged,
    std::map<int, std::shared_ptr<const OccupancyGrid>> robots) {
  merged_ = std::move(merged);
  robot_maps_ = std::move(robots);
}

const OccupancyGrid& CoordinationServer::RobotMap(int robot_id) const {
  const auto it = robot_maps_.find(robot_id);
  if (it != robot_maps_.end() && it->second) return *it->second;
  if (!merged_) throw std::logic_error("server has no map snapshot");
  return *merged_;
}

const OccupancyGrid& CoordinationServer::GainMap(int robot_id) const {
  if (policy_.merged_gain) {
    if (!merged_) throw std::logic_error("server has no map snapshot");
    return *merged_;
  }
  return RobotMap(robot_id);
}

void CoordinationServer::SubmitPoints(int robot_id,
                                      std::vector<FrontierPoint> points) {
  for (FrontierPoint& p : points) p.robot_id = robot_id;
  state_.submissions[robot_id] = std::move(points);
}

std::vector<FrontierPoint> CoordinationServer::BuildGlobalList(
    int robot_id) const {
  std::vector<FrontierPoint> candidates;
  for (const auto& [robot, points] : state_.submissions) {
    candidates.insert(candidates.end(), points.begin(), points.end());
  }
  const OccupancyGrid& gain_map = GainMap(robot_id);
  if (policy_.dedup) return MergePoints(candidates, gain_map, params_);
  return ScoreUnique(candidates, gain_map, params_.rad);
}

std::optional<Assignment> CoordinationServer::RequestGoal(int robot_id,
                                                          int tick,
                                                          Point2 position) {
  if (!merged_) throw std::logic_error("server has no map snapshot");
  state_.active.erase(robot_id);
  state_.global_points = BuildGlobalList(robot_id);
  std::vector<double>& rewards = state_.reward_matrix[robot_id];
  rewards.clear();
  for (const FrontierPoint& p : state_.global_points) {
    rewards.push_back(
        ComputeReward(position, RobotMap(robot_id), p, *merged_, reward_)
            .value);
  }
  const auto choice = ChooseGoalIndex(state_.global_points, rewards, state_,
                                      robot_id, params_, policy_);
  if (!choice) return std::nullopt;
  const Assignment assignment{robot_id, state_.global_points[*choice].position,
                              tick, rewards[*choice]};
  state_.assigned.push_back(assignment);
  state_.active[robot_id] = assignment;
  return assignment;
}

void CoordinationServer::ReportReached(int robot_id, int /*tick*/,
                                       bool /*reached*/) {
  state_.active.erase(robot_id);
}

Response CoordinationServer::Handle(const Request& request) {
  return std::visit(
      [this](const auto& r) -> Response {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, SubmitPointsRequest>) {
          std::vector<FrontierPoint> points;
          for (const Point2& p : r.points) {
            points.push_back({p, FrontierSource::kLocal, r.robot_id, 0.0});
          }
          SubmitPoints(r.robot_id, std::move(points));
          return NoneResponse{r.robot_id};
        } else if constexpr (std::is_same_v<T, RequestGoalRequest>) {
          const auto a = RequestGoal(r.robot_id, r.tick, r.position);
          if (!a) return NoneResponse{r.robot_id};
          return GoalResponse{r.robot_id, a->goal, a->reward};
        } else {
          ReportReached(r.robot_id, r.tick, r.reached);
          return NoneResponse{r.robot_id};
        }
      },
      request);
}

}  // namespace coexplore
