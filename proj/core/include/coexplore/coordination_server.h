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

#ifndef COEXPLORE_COORDINATION_SERVER_H_
#define COEXPLORE_COORDINATION_SERVER_H_

#include <map>
#include <memory>
#include <optional>
#include <span>
#include <vector>

#include "coexplore/agent.h"
#include "coexplore/frontier.h"
#include "coexplore/occupancy_grid.h"
#include "coexplore/planner.h"
#include "coexplore/server_protocol.h"

namespace coexplore {

struct ServerParams {
  int max_pts = 5;
  int min_pts = 0;
  double rad = 1.0;         // meters
  double prc_unk = 0.6;     // minimum fraction of unknown cells
  double dist_thres = 1.0;  // goal spacing, meters

  void Validate() const;
};

struct RewardParams {
  double lambda_d = 5.0;  // distance decay, meters
  double w_h = 0.5;       // path entropy weight
  PlanOptions plan;
};

// Which server-side reductions are active. The defaults are the full
// pipeline; baselines switch parts off.
struct ServerPolicy {
  bool dedup = true;            // PRC_UNK admission, spacing, MAX_PTS cap
  bool history_spacing = true;  // DIST_THRES against past and active goals
  bool merged_gain = true;      // gain on the merged map, else robot map
  int history_window = 0;       // most recent assignments checked; 0 = all
};

// Fraction of unknown cells among cells whose centers lie within rad of p.
// Cells outside the map count as unknown.
double InformationGain(const OccupancyGrid& map, Point2 p, double rad);

// Scores candidates on map, drops those below PRC_UNK, thins greedily by
// DIST_THRES in descending gain order and keeps at most MAX_PTS. Ties in
// gain are broken by x then y ascending. When fewer than MIN_PTS survive,
// the best rejected candidates that still respect the spacing are added.
std::vector<FrontierPoint> MergePoints(
    std::span<const FrontierPoint> candidates, const OccupancyGrid& map,
    const ServerParams& params);

struct Reward {
  double value = 0.0;
  double gain = 0.0;
  double path_length = 0.0;  // A* length, Euclidean when unreachable
  double entropy = 0.0;
  bool reachable = false;
};

// gain * exp(-d_path / lambda_d) * (1 + w_h * path_entropy).
Reward ComputeReward(Point2 robot_position, const OccupancyGrid& robot_map,
                     const FrontierPoint& point, const OccupancyGrid& plan_map,
                     const RewardParams& params);
Reward ComputeReward(const AgentState& robot, const FrontierPoint& point,
                     const OccupancyGrid& plan_map, const RewardParams& params);

struct Assignment {
  int robot_id = 0;
  Point2 goal;
  int tick = 0;
  double reward = 0.0;
};

struct ServerState {
  std::vector<FrontierPoint> global_points;
  std::vector<Assignment> assigned;   // append-only history
  std::map<int, Assignment> active;   // robot -> goal in progress
  std::map<int, std::vector<double>> reward_matrix;  // robot -> per point
  std::map<int, std::vector<FrontierPoint>> submissions;
};

// Argmax-reward point that is at least DIST_THRES from every goal in the
// (windowed) history and from other robots' active goals, and not actively
// assigned to another robot. Without history spacing only exact repeats of
// past goals are excluded. Ties go to the lower index.
std::optional<std::size_t> ChooseGoalIndex(
    std::span<const FrontierPoint> points, std::span<const double> rewards,
    const ServerState& state, int robot_id, const ServerParams& params,
    const ServerPolicy& policy);

// Central frontier and reward manager. Requests are handled one at a time;
// responses depend only on the server state and the request order.
class CoordinationServer {
 public:
  CoordinationServer(const ServerParams& params, const RewardParams& reward,
                     const ServerPolicy& policy = {});

  // Map snapshots used for gains, planning and path entropy.
  void UpdateMaps(std::shared_ptr<const OccupancyGrid> merged,
                  std::map<int, std::shared_ptr<const OccupancyGrid>> robots);

  Response Handle(const Request& request);

  void SubmitPoints(int robot_id, std::vector<FrontierPoint> points);
  std::optional<Assignment> RequestGoal(int robot_id, int tick,
                                        Point2 position);
  void ReportReached(int robot_id, int tick, bool reached);

  // Global list the server would build for this robot right now.
  std::vector<FrontierPoint> BuildGlobalList(int robot_id) const;

  const ServerState& state() const { return state_; }
  const ServerParams& params() const { return params_; }
  const ServerPolicy& policy() const { return policy_; }

 private:
  const OccupancyGrid& GainMap(int robot_id) const;
  const OccupancyGrid& RobotMap(int robot_id) const;

  ServerParams params_;
  RewardParams reward_;
  ServerPolicy policy_;
  ServerState state_;
  std::shared_ptr<const OccupancyGrid> merged_;
  std::map<int, std::shared_ptr<const OccupancyGrid>> robot_maps_;
};

}  // namespace coexplore

#endif  // COEXPLORE_COORDINATION_SERVER_H_
