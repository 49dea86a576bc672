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

#ifndef COEXPLORE_SIMULATION_H_
#define COEXPLORE_SIMULATION_H_

#include <cstdint>
#include <filesystem>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "coexplore/agent.h"
#include "coexplore/coordination_server.h"
#include "coexplore/frontier.h"
#include "coexplore/metrics.h"
#include "coexplore/occupancy_grid.h"
#include "coexplore/overlap.h"
#include "coexplore/run_log.h"
#include "coexplore/scenario_config.h"
#include "coexplore/world_model.h"

namespace coexplore {

enum class FrontierStage { kRaw, kIou, kFiltered, kGlobal };

std::string_view ToString(FrontierStage stage);

struct FrontierRecord {
  int tick = 0;
  int robot_id = -1;  // -1 for the server's global list
  FrontierStage stage = FrontierStage::kRaw;
  FrontierPoint point;
};

struct DOptSample {
  int tick = 0;
  int robot_id = 0;
  double d_opti = 0.0;
  bool closure = false;
  bool lost = false;
};

// Deterministic, single-threaded multi-robot exploration loop. Within a tick
// agents are processed in ascending id order; every random draw comes from
// one generator seeded by the configuration.
class Simulation {
 public:
  // Loads the world file named by the configuration.
  explicit Simulation(const ScenarioConfig& config);
  Simulation(const ScenarioConfig& config, WorldModel world);

  // Advances one tick. Throws std::logic_error once the budget is spent.
  void Tick();
  void Run();
  bool Finished() const { return tick_ >= config_.ticks; }

  int tick() const { return tick_; }
  const ScenarioConfig& config() const { return config_; }
  const WorldModel& world() const { return world_; }
  const std::vector<AgentState>& agents() const { return agents_; }
  const OccupancyGrid& merged_map() const { return *merged_; }
  const std::optional<OccupancyGrid>& uav_prior() const { return uav_prior_; }
  // Pair order (0,1), (0,2), ..., (1,2), ...
  const std::vector<IoUMap>& iou_maps() const { return iou_maps_; }
  const CoordinationServer& server() const { return server_; }
  const CoverageReference& coverage_reference() const { return *reference_; }

  const std::vector<MetricsRow>& rows() const { return rows_; }
  const std::vector<AgentEvent>& events() const { return events_; }
  const std::vector<DOptSample>& d_opti_samples() const { return d_opti_; }
  const std::vector<Assignment>& assignments() const { return assignments_; }
  const std::vector<FrontierRecord>& frontier_records() const {
    return frontier_records_;
  }
  const std::vector<std::string>& warnings() const { return warnings_; }

  // Summary of the ticks run so far, map quality against the ground-robot
  // rendering of the world.
  RunSummary Summary() const;
  MetricsLog Log() const;

  // metrics.csv, summary.csv, events.csv, dopti.csv, assignments.csv,
  // frontiers.csv, maps/*.pgm (+ .yaml) and plots/*.svg.
  void WriteArtifacts(const std::filesystem::path& dir) const;

 private:
  void PlaceRobots();
  void AddClutter();
  void SenseAll();
  void RebuildMaps();
  void DetectAndSubmitFrontiers();
  void CheckRelocalization();
  void AssignGoals();
  void AssignDcmGoal(AgentState& agent);
  void StepAgents();
  void SampleMetrics();
  void Warn(std::string message);

  std::uint64_t NextRandom() { return rng_(); }
  double UniformUnit();  // [0, 1)
  std::size_t UniformIndex(std::size_t n);

  ScenarioConfig config_;
  WorldModel world_;
  std::mt19937_64 rng_;
  int tick_ = 0;
  std::vector<AgentState> agents_;
  std::optional<OccupancyGrid> uav_prior_;
  std::shared_ptr<const OccupancyGrid> merged_;
  std::vector<IoUMap> iou_maps_;
  CoordinationServer server_;
  std::optional<CoverageReference> reference_;
  OccupancyGrid truth_rendering_;
  RelocPolicy reloc_policy_;

  std::vector<std::vector<FrontierPoint>> raw_frontiers_;
  int tick_raw_count_ = 0;
  int tick_filtered_count_ = 0;
  std::vector<char> closed_this_tick_;

  std::vector<MetricsRow> rows_;
  std::vector<AgentEvent> events_;
  std::vector<DOptSample> d_opti_;
  std::vector<Assignment> assignments_;
  std::vector<FrontierRecord> frontier_records_;
  std::vector<std::string> warnings_;
};

// Runs the configured scenario to its tick budget. Writes the artifacts when
// out_dir is given.
MetricsLog RunScenario(const ScenarioConfig& config,
                       const std::optional<std::filesystem::path>& out_dir = {});

}  // namespace coexplore

#endif  // COEXPLORE_SIMULATION_H_
