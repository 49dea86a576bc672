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

#include <memory>
#include <random>
#include <vector>

#include "benchmark/benchmark.h"
#include "coexplore/frontier.h"
#include "coexplore/overlap.h"
#include "coexplore/planner.h"
#include "coexplore/scenario_config.h"
#include "coexplore/simulation.h"
#include "coexplore/world_model.h"

namespace coexplore {
namespace {

const WorldModel& House() {
  static const WorldModel world = LoadWorldFile(COEXPLORE_BENCH_WORLD);
  return world;
}

// The rendered house with each cell hidden with probability p_unknown.
OccupancyGrid PartialMap(std::mt19937_64& rng, double p_unknown) {
  OccupancyGrid map = House().Render(0.0);
  std::bernoulli_distribution hide(p_unknown);
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      if (hide(rng)) map.Set({x, y}, kUnknown);
    }
  }
  return map;
}

// Map half-explored by the two-robot scenario.
const OccupancyGrid& ExploredMap() {
  static const OccupancyGrid map = [] {
    ScenarioConfig config = LoadScenarioConfig(COEXPLORE_BENCH_SCENARIO);
    config.ticks = 120;
    Simulation sim(config);
    sim.Run();
    return sim.merged_map();
  }();
  return map;
}

void BM_ComputeIoU(benchmark::State& state) {
  std::mt19937_64 rng(1);
  const OccupancyGrid a = PartialMap(rng, 0.4);
  const OccupancyGrid b = PartialMap(rng, 0.4);
  for (auto _ : state) benchmark::DoNotOptimize(ComputeIoU(a, b));
}
BENCHMARK(BM_ComputeIoU);

void BM_DetectFrontiers(benchmark::State& state) {
  const OccupancyGrid& map = ExploredMap();
  for (auto _ : state) {
    benchmark::DoNotOptimize(DetectFrontiers(map, static_cast<int>(state.range(0))));
  }
}
BENCHMARK(BM_DetectFrontiers)->Arg(1)->Arg(3);

void BM_FilterFrontiers(benchmark::State& state) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> coord(0.0, 16.0);
  std::vector<FrontierPoint> local;
  std::vector<FrontierPoint> iou;
  for (int i = 0; i < state.range(0); ++i) {
    local.push_back({{coord(rng), coord(rng)}, FrontierSource::kLocal, 0, 0.0});
    iou.push_back({{coord(rng), coord(rng)}, FrontierSource::kIou, 0, 0.0});
  }
  for (auto _ : state) benchmark::DoNotOptimize(FilterFrontiers(local, iou, {}));
}
BENCHMARK(BM_FilterFrontiers)->Arg(16)->Arg(128);

void BM_PlanPathAcrossHouse(benchmark::State& state) {
  const OccupancyGrid map = House().Render(0.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(PlanPath(map, {6.2, 1.4}, {9.8, 15.0}));
  }
}
BENCHMARK(BM_PlanPathAcrossHouse);

void BM_SimulationTick(benchmark::State& state) {
  const ScenarioConfig config = LoadScenarioConfig(COEXPLORE_BENCH_SCENARIO);
  auto sim = std::make_unique<Simulation>(config);
  for (auto _ : state) {
    if (sim->Finished()) {
      state.PauseTiming();
      sim = std::make_unique<Simulation>(config);
      state.ResumeTiming();
    }
    sim->Tick();
  }
}
BENCHMARK(BM_SimulationTick);

}  // namespace
}  // namespace coexplore

BENCHMARK_MAIN();
