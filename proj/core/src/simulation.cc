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

#include "coexplore/simulation.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <fmt/format.h>

#include "coexplore/errors.h"
#include "coexplore/pgm_io.h"
#include "coexplore/planner.h"
#include "coexplore/server_protocol.h"
#include "coexplore/svg_plot.h"

namespace coexplore {
namespace {

// Keeps clutter away from the spawn points.
constexpr double kClutterClearance = 1.0;

std::vector<std::pair<int, int>> RobotPairs(int robots) {
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < robots; ++i) {
    for (int j = i + 1; j < robots; ++j) pairs.emplace_back(i, j);
  }
  return pairs;
}

std::string FormatPoint(Point2 p) { return fmt::format("{:.4f},{:.4f}", p.x, p.y); }

}  // namespace

std::string_view ToString(FrontierStage stage) {
  switch (stage) {
    case FrontierStage::kRaw:
      return "raw";
    case FrontierStage::kIou:
      return "iou";
    case FrontierStage::kFiltered:
      return "filtered";
    case FrontierStage::kGlobal:
      return "global";
  }
  return "unknown";
}

Simulation::Simulation(const ScenarioConfig& config)
    : Simulation(config, [&config] {
        try {
          return LoadWorldFile(config.world);
        } catch (const ParseError& e) {
          throw ConfigError(
              fmt::format("world file {}: {}", config.world.string(), e.what()));
        } catch (const std::invalid_argument& e) {
          throw ConfigError(
              fmt::format("world file {}: {}", config.world.string(), e.what()));
        }
      }()) {}

Simulation::Simulation(const ScenarioConfig& config, WorldModel world)
    : config_(config),
      world_(std::move(world)),
      rng_(config.seed),
      server_(config.server, config.reward, config.EffectiveServerPolicy()),
      reloc_policy_(config.EffectiveRelocPolicy()) {
  config_.Validate();
  config_.sensor.Validate();
  PlaceRobots();
  AddClutter();

  std::vector<Point2> seeds;
  for (const AgentState& a : agents_) seeds.push_back(a.pose.position());
  reference_.emplace(world_, seeds);
  truth_rendering_ = world_.Render(kGroundSensorHeight);
  if (config_.uav.enabled) uav_prior_ = UavPriorMap(world_, config_.uav.sweep);
  merged_ = std::make_shared<OccupancyGrid>(
      uav_prior_ ? *uav_prior_ : world_.BlankGrid(kUnknown));
  raw_frontiers_.resize(agents_.size());
  closed_this_tick_.assign(agents_.size(), 0);
}

double Simulation::UniformUnit() {
  return static_cast<double>(NextRandom() >> 11) * 0x1.0p-53;
}

std::size_t Simulation::UniformIndex(std::size_t n) {
  return static_cast<std::size_t>(NextRandom() % n);
}

void Simulation::PlaceRobots() {
  const double res = world_.resolution();
  for (int id = 0; id < config_.robot_count(); ++id) {
    const Point2 base = config_.spawns[id];
    const CellIndex base_cell{static_cast<int>(std::floor(base.x / res)),
                              static_cast<int>(std::floor(base.y / res))};
    std::vector<CellIndex> candidates;
    const int reach = static_cast<int>(std::ceil(config_.spawn_jitter / res));
    for (int dy = -reach; dy <= reach; ++dy) {
      for (int dx = -reach; dx <= reach; ++dx) {
        const CellIndex c{base_cell.x + dx, base_cell.y + dy};
        if (!world_.Contains(c) || world_.Blocks(c, kGroundSensorHeight)) continue;
        const Point2 center{(c.x + 0.5) * res, (c.y + 0.5) * res};
        if ((dx == 0 && dy == 0) ||
            Distance(center, base) <= config_.spawn_jitter) {
          candidates.push_back(c);
        }
      }
    }
    const bool base_ok = world_.Contains(base_cell) &&
                         !world_.Blocks(base_cell, kGroundSensorHeight);
    if (!base_ok) {
      throw ConfigError(fmt::format(
          "robot.{}: spawn ({}, {}) is outside the world or on an obstacle", id,
          base.x, base.y));
    }
    const CellIndex cell = candidates[UniformIndex(candidates.size())];
    const double heading = (2.0 * UniformUnit() - 1.0) * std::numbers::pi;
    const Pose2D pose{(cell.x + 0.5) * res, (cell.y + 0.5) * res,
                      NormalizeAngle(heading)};
    agents_.push_back(
        MakeAgent(id, pose, world_.BlankGrid(kUnknown), config_.uncertainty));
  }
}

void Simulation::AddClutter() {
  if (config_.clutter == 0) return;
  std::vector<CellIndex> free_cells;
  for (int y = 0; y < world_.height(); ++y) {
    for (int x = 0; x < world_.width(); ++x) {
      if (!world_.IsFree({x, y})) continue;
      const Point2 center{(x + 0.5) * world_.resolution(),
                          (y + 0.5) * world_.resolution()};
      const bool near_spawn =
          std::any_of(agents_.begin(), agents_.end(), [&](const AgentState& a) {
            return Distance(a.pose.position(), center) < kClutterClearance;
          });
      if (!near_spawn) free_cells.push_back({x, y});
    }
  }
  for (int k = 0; k < config_.clutter && !free_cells.empty(); ++k) {
    const std::size_t pick = UniformIndex(free_cells.size());
    world_.SetObstacleHeight(free_cells[pick], kLowObstacleHeight);
    free_cells.erase(free_cells.begin() + static_cast<std::ptrdiff_t>(pick));
  }
}

void Simulation::Warn(std::string message) {
  warnings_.push_back(fmt::format("tick {}: {}", tick_, message));
}

void Simulation::Tick() {
  if (Finished()) throw std::logic_error("tick budget exhausted");
  std::fill(closed_this_tick_.begin(), closed_this_tick_.end(), 0);
  SenseAll();
  RebuildMaps();
  DetectAndSubmitFrontiers();
  CheckRelocalization();
  AssignGoals();
  StepAgents();
  SampleMetrics();
  ++tick_;
}

void Simulation::Run() {
  while (!Finished()) Tick();
}

void Simulation::SenseAll() {
  for (AgentState& agent : agents_) {
    if (agent.orb_status == OrbStatus::kLost) continue;
    Sense(world_, agent.pose, config_.sensor, agent.local_map);
  }
}

void Simulation::RebuildMaps() {
  std::vector<OccupancyGrid> inputs;
  inputs.reserve(agents_.size() + 1);
  for (const AgentState& agent : agents_) inputs.push_back(agent.local_map);
  if (uav_prior_) inputs.push_back(*uav_prior_);
  merged_ = std::make_shared<OccupancyGrid>(MergeMaps(inputs, 0));

  iou_maps_.clear();
  for (const auto& [i, j] : RobotPairs(config_.robot_count())) {
    iou_maps_.push_back(ComputeIoU(agents_[i].local_map, agents_[j].local_map));
  }

  std::map<int, std::shared_ptr<const OccupancyGrid>> robot_maps;
  for (const AgentState& agent : agents_) {
    robot_maps[agent.id] = std::make_shared<OccupancyGrid>(agent.local_map);
  }
  server_.UpdateMaps(merged_, std::move(robot_maps));
}

void Simulation::DetectAndSubmitFrontiers() {
  const auto pairs = RobotPairs(config_.robot_count());
  tick_raw_count_ = 0;
  tick_filtered_count_ = 0;
  for (AgentState& agent : agents_) {
    std::vector<FrontierPoint> raw = DetectFrontiers(
        agent.local_map, config_.min_cluster, FrontierSource::kLocal, agent.id);
    for (const FrontierPoint& p : raw) {
      frontier_records_.push_back({tick_, agent.id, FrontierStage::kRaw, p});
    }
    tick_raw_count_ += static_cast<int>(raw.size());

    std::vector<FrontierPoint> submitted = raw;
    if (config_.policy == Policy::kOurs) {
      std::vector<FrontierPoint> iou_points;
      for (std::size_t k = 0; k < pairs.size(); ++k) {
        if (pairs[k].first != agent.id && pairs[k].second != agent.id) continue;
        for (const FrontierPoint& p :
             DetectFrontiers(iou_maps_[k].map, config_.min_cluster,
                             FrontierSource::kIou, agent.id)) {
          iou_points.push_back(p);
        }
      }
      for (const FrontierPoint& p : iou_points) {
        frontier_records_.push_back({tick_, agent.id, FrontierStage::kIou, p});
      }
      submitted = FilterFrontiers(raw, iou_points, config_.filter);
      for (const FrontierPoint& p : submitted) {
        frontier_records_.push_back(
            {tick_, agent.id, FrontierStage::kFiltered, p});
      }
    }
    raw_frontiers_[agent.id] = std::move(raw);

    if (config_.policy != Policy::kDcm) {
      SubmitPointsRequest request{agent.id, {}};
      for (const FrontierPoint& p : submitted) request.points.push_back(p.position);
      server_.Handle(request);
    }
  }

  if (config_.policy == Policy::kDcm) {
    tick_filtered_count_ = tick_raw_count_;
    return;
  }
  const std::vector<FrontierPoint> global = server_.BuildGlobalList(0);
  for (const FrontierPoint& p : global) {
    frontier_records_.push_back({tick_, -1, FrontierStage::kGlobal, p});
  }
  tick_filtered_count_ = static_cast<int>(global.size());
}

void Simulation::CheckRelocalization() {
  if (!config_.RelocEnabled()) return;
  for (AgentState& agent : agents_) {
    if (agent.current_goal && agent.current_goal->kind == GoalKind::kRelocalize) {
      continue;
    }
    const RelocOutcome outcome = MaybeRelocalize(agent, reloc_policy_, tick_);
    if (outcome.no_candidates) {
      Warn(fmt::format("robot {}: re-localization triggered without saved goals",
                       agent.id));
    }
    if (!outcome.goal) continue;
    if (agent.current_goal) {
      server_.Handle(ReportReachedRequest{agent.id, tick_, false});
      events_.push_back({tick_, agent.id, AgentEventType::kGoalAbandoned,
                         agent.current_goal->position});
    }
    events_.push_back(
        {tick_, agent.id, AgentEventType::kRelocalized, *outcome.goal});
    const Goal goal{*outcome.goal, GoalKind::kRelocalize, 0.0};
    if (!AssignGoal(agent, goal, *merged_, config_.reward.plan)) {
      Warn(fmt::format("robot {}: saved goal ({}, {}) is unreachable", agent.id,
                       goal.position.x, goal.position.y));
    }
  }
}

void Simulation::AssignGoals() {
  for (AgentState& agent : agents_) {
    if (!agent.needs_goal) continue;
    if (config_.policy == Policy::kDcm) {
      AssignDcmGoal(agent);
      continue;
    }
    const Response response = server_.Handle(
        RequestGoalRequest{agent.id, tick_, agent.pose.position()});
    const auto* goal = std::get_if<GoalResponse>(&response);
    if (goal == nullptr) continue;
    assignments_.push_back({agent.id, goal->goal, tick_, goal->reward});
    if (AssignGoal(agent, {goal->goal, GoalKind::kExplore, goal->reward},
                   *merged_, config_.reward.plan)) {
      events_.push_back(
          {tick_, agent.id, AgentEventType::kGoalAssigned, goal->goal});
    } else {
      server_.Handle(ReportReachedRequest{agent.id, tick_, false});
      events_.push_back(
          {tick_, agent.id, AgentEventType::kGoalAbandoned, goal->goal});
    }
  }
}

void Simulation::AssignDcmGoal(AgentState& agent) {
  // Candidates are every robot's raw frontiers; utility is the gain on the
  // robot's own map minus the path length normalized by the world diagonal.
  const double diagonal = std::hypot(world_.width() * world_.resolution(),
                                     world_.height() * world_.resolution());
  std::vector<FrontierPoint> candidates;
  for (const auto& list : raw_frontiers_) {
    candidates.insert(candidates.end(), list.begin(), list.end());
  }
  std::optional<std::size_t> best;
  double best_utility = 0.0;
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    const Point2 p = candidates[i].position;
    const bool visited = std::any_of(
        assignments_.begin(), assignments_.end(), [&](const Assignment& a) {
          return a.robot_id == agent.id && a.goal == p;
        });
    if (visited) continue;
    std::optional<GridPath> path;
    try {
      path = PlanPath(*merged_, agent.pose.position(), p, config_.reward.plan);
    } catch (const std::invalid_argument&) {
      path.reset();
    }
    if (!path) continue;
    const double length = path->length;
    const double utility =
        InformationGain(agent.local_map, p, config_.server.rad) - length / diagonal;
    if (!best || utility > best_utility) {
      best = i;
      best_utility = utility;
    }
  }
  if (!best) return;
  const Point2 goal = candidates[*best].position;
  assignments_.push_back({agent.id, goal, tick_, best_utility});
  if (AssignGoal(agent, {goal, GoalKind::kExplore, best_utility}, *merged_,
                 config_.reward.plan)) {
    events_.push_back({tick_, agent.id, AgentEventType::kGoalAssigned, goal});
  }
}

void Simulation::StepAgents() {
  for (AgentState& agent : agents_) {
    const std::optional<Goal> goal = agent.current_goal;
    const StepResult step = Step(agent, *merged_, config_.speed,
                                 config_.reward.plan, tick_, &events_);
    if (goal && goal->kind == GoalKind::kExplore &&
        config_.policy != Policy::kDcm && (step.reached || step.abandoned)) {
      server_.Handle(ReportReachedRequest{agent.id, tick_, step.reached});
    }
    if (!step.moved) {
      // Idle robots scan by turning in place.
      if (!agent.current_goal) {
        agent.pose.theta = NormalizeAngle(agent.pose.theta + config_.idle_turn);
      }
      continue;
    }

    const bool was_lost = agent.orb_status == OrbStatus::kLost;
    agent.slam.Propagate(step.delta);
    if (agent.slam.distance_since_closure() >= config_.closure_min_travel) {
      if (FindLoopClosure(agent, config_.closure_radius)) {
        agent.slam.ApplyLoopClosure(agent.slam.last_node());
        agent.last_closure_tick = tick_;
        closed_this_tick_[agent.id] = 1;
        events_.push_back(
            {tick_, agent.id, AgentEventType::kClosure, agent.pose.position()});
        if (agent.current_goal &&
            agent.current_goal->kind == GoalKind::kRelocalize) {
          ClearGoal(agent);
        }
      }
    }
    agent.SyncSlamStatus();
    if (!was_lost && agent.orb_status == OrbStatus::kLost) {
      events_.push_back(
          {tick_, agent.id, AgentEventType::kLost, agent.pose.position()});
    }
  }
}

void Simulation::SampleMetrics() {
  MetricsRow row;
  row.tick = tick_;
  row.merged_coverage = CoveragePercent(*merged_, *reference_);
  for (const AgentState& agent : agents_) {
    row.robot_coverage.push_back(CoveragePercent(agent.local_map, *reference_));
    row.d_opti.push_back(agent.d_opti);
    row.reloc.push_back(agent.reloc);
    row.lost.push_back(agent.orb_status == OrbStatus::kLost ? 1 : 0);
    d_opti_.push_back({tick_, agent.id, agent.d_opti,
                       closed_this_tick_[agent.id] != 0,
                       agent.orb_status == OrbStatus::kLost});
  }
  for (const IoUMap& iou : iou_maps_) row.iou_area.push_back(IoUArea(iou));
  row.frontiers_raw = tick_raw_count_;
  row.frontiers_filtered = tick_filtered_count_;
  rows_.push_back(std::move(row));
}

RunSummary Simulation::Summary() const {
  RunSummary s;
  s.policy = std::string(ToString(config_.policy));
  s.seed = config_.seed;
  s.robots = config_.robot_count();
  s.transient_fraction = config_.transient_fraction;
  s.free_area = reference_->free_area();
  SummarizeRows(rows_, s);
  const MapQuality q = ComputeMapQuality(*merged_, truth_rendering_);
  s.mse = q.mse;
  s.ssim = q.ssim;
  s.ncc = q.ncc;
  s.cs = q.cs;
  return s;
}

MetricsLog Simulation::Log() const {
  return {config_.robot_count(), rows_, Summary()};
}

void Simulation::WriteArtifacts(const std::filesystem::path& dir) const {
  namespace fs = std::filesystem;
  fs::create_directories(dir / "maps");
  fs::create_directories(dir / "plots");
  const int robots = config_.robot_count();

  WriteTextFile(dir / "metrics.csv", FormatMetricsCsv(robots, rows_));
  WriteTextFile(dir / "summary.csv", FormatSummaryCsv(Summary()));

  std::string events = "tick,robot_id,event,x,y\n";
  for (const AgentEvent& e : events_) {
    events += fmt::format("{},{},{},{}\n", e.tick, e.robot_id, ToString(e.type),
                          FormatPoint(e.position));
  }
  WriteTextFile(dir / "events.csv", events);

  std::string dopti = "tick,robot_id,d_opti,event\n";
  for (const DOptSample& d : d_opti_) {
    dopti += fmt::format("{},{},{},{}\n", d.tick, d.robot_id, d.d_opti,
                         d.closure ? "closure" : d.lost ? "lost" : "none");
  }
  WriteTextFile(dir / "dopti.csv", dopti);

  std::string assignments = "tick,robot_id,goal_x,goal_y,reward\n";
  for (const Assignment& a : assignments_) {
    assignments += fmt::format("{},{},{},{}\n", a.tick, a.robot_id,
                               FormatPoint(a.goal), a.reward);
  }
  WriteTextFile(dir / "assignments.csv", assignments);

  std::string frontiers = "tick,robot_id,stage,source,x,y\n";
  for (const FrontierRecord& f : frontier_records_) {
    frontiers += fmt::format("{},{},{},{},{}\n", f.tick, f.robot_id,
                             ToString(f.stage), ToString(f.point.source),
                             FormatPoint(f.point.position));
  }
  WriteTextFile(dir / "frontiers.csv", frontiers);

  if (!warnings_.empty()) {
    std::string text;
    for (const std::string& w : warnings_) text += w + "\n";
    WriteTextFile(dir / "warnings.txt", text);
  }

  WriteMap(*merged_, dir / "maps" / "merged.pgm");
  WriteMap(truth_rendering_, dir / "maps" / "truth.pgm");
  if (uav_prior_) WriteMap(*uav_prior_, dir / "maps" / "uav.pgm");
  for (const AgentState& agent : agents_) {
    WriteMap(agent.local_map, dir / "maps" / fmt::format("robot_{}.pgm", agent.id));
  }
  const auto pairs = RobotPairs(robots);
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (iou_maps_[k].map.size() == 0) continue;
    WriteMap(iou_maps_[k].map,
             dir / "maps" /
                 fmt::format("iou_{}_{}.pgm", pairs[k].first, pairs[k].second));
  }

  std::vector<double> ticks;
  for (const MetricsRow& r : rows_) ticks.push_back(r.tick);

  LineChart coverage{"Coverage", "tick", "% of reachable area", {}, {}, 640, 400};
  {
    PlotSeries merged{"merged", ticks, {}, SeriesColor(0), false};
    for (const MetricsRow& r : rows_) merged.y.push_back(r.merged_coverage);
    coverage.series.push_back(std::move(merged));
  }
  for (int i = 0; i < robots; ++i) {
    PlotSeries s{fmt::format("robot {}", i), ticks, {}, SeriesColor(i + 1), true};
    for (const MetricsRow& r : rows_) s.y.push_back(r.robot_coverage[i]);
    coverage.series.push_back(std::move(s));
  }
  WriteTextFile(dir / "plots" / "coverage.svg", RenderLineChart(coverage));

  LineChart iou{"IoU map area", "tick", "m^2", {}, {}, 640, 400};
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    PlotSeries s{fmt::format("robots {}-{}", pairs[k].first, pairs[k].second),
                 ticks, {}, SeriesColor(k), false};
    for (const MetricsRow& r : rows_) s.y.push_back(r.iou_area[k]);
    iou.series.push_back(std::move(s));
  }
  WriteTextFile(dir / "plots" / "iou_area.svg", RenderLineChart(iou));

  LineChart dopt{"Edge D-optimality", "tick", "D-opt", {}, {}, 640, 400};
  dopt.threshold = config_.reloc_policy.d_max;
  for (int i = 0; i < robots; ++i) {
    PlotSeries s{fmt::format("robot {}", i), ticks, {}, SeriesColor(i), false};
    for (const MetricsRow& r : rows_) s.y.push_back(r.d_opti[i]);
    dopt.series.push_back(std::move(s));
  }
  WriteTextFile(dir / "plots" / "d_opti.svg", RenderLineChart(dopt));

  std::vector<int> raw;
  std::vector<int> filtered;
  for (const MetricsRow& r : rows_) {
    raw.push_back(r.frontiers_raw);
    filtered.push_back(r.frontiers_filtered);
  }
  const FrontierReduction red = ComputeFrontierReduction(raw, filtered);
  LineChart frontier{"Frontier points", "tick", "points", {}, {}, 640, 400};
  PlotSeries raw_series{"all points", ticks, {}, SeriesColor(5), false};
  PlotSeries filtered_series{"filtered", ticks, {}, SeriesColor(0), false};
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    raw_series.y.push_back(raw[i]);
    filtered_series.y.push_back(filtered[i]);
  }
  frontier.series = {raw_series, filtered_series,
                     {"mean all", ticks, red.raw_running_mean, "#000000", true},
                     {"mean filtered", ticks, red.filtered_running_mean,
                      "#999999", true}};
  WriteTextFile(dir / "plots" / "frontiers.svg", RenderLineChart(frontier));
}

MetricsLog RunScenario(const ScenarioConfig& config,
                       const std::optional<std::filesystem::path>& out_dir) {
  Simulation sim(config);
  sim.Run();
  if (out_dir) sim.WriteArtifacts(*out_dir);
  return sim.Log();
}

}  // namespace coexplore
