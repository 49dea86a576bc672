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

#include "coexplore/planner.h"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <queue>
#include <stdexcept>
#include <tuple>

namespace coexplore {

bool IsTraversable(Occupancy value, const PlanOptions& options) {
  return value == kFree || (options.through_unknown && value == kUnknown);
}

double OctileDistance(const CellIndex& a, const CellIndex& b,
                      double resolution) {
  const int dx = std::abs(a.x - b.x);
  const int dy = std::abs(a.y - b.y);
  const int diagonal = std::min(dx, dy);
  const int straight = std::max(dx, dy) - diagonal;
  return (diagonal * std::numbers::sqrt2 + straight) * resolution;
}

std::optional<GridPath> PlanPath(const OccupancyGrid& map, Point2 start,
                                 Point2 goal, const PlanOptions& options) {
  const auto start_cell = map.WorldToGrid(start);
  if (!start_cell || !IsTraversable(map[*start_cell], options)) {
    throw std::invalid_argument("planner start is outside the map or blocked");
  }
  const auto goal_cell = map.WorldToGrid(goal);
  if (!goal_cell || !IsTraversable(map[*goal_cell], options)) {
    return std::nullopt;
  }

  const double res = map.resolution();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> cost(map.size(), kInf);
  std::vector<std::int64_t> parent(map.size(), -1);
  std::vector<char> closed(map.size(), 0);

  // (f, insertion order, cell index); the counter makes ties deterministic.
  using Entry = std::tuple<double, std::uint64_t, std::size_t>;
  std::priority_queue<Entry, std::vector<Entry>, std::greater<>> open;
  std::uint64_t counter = 0;
  const std::size_t start_index = map.Index(*start_cell);
  const std::size_t goal_index = map.Index(*goal_cell);
  cost[start_index] = 0.0;
  open.emplace(OctileDistance(*start_cell, *goal_cell, res), counter++,
               start_index);

  constexpr CellIndex kMoves[] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                  {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};
  while (!open.empty()) {
    const auto [f, order, index] = open.top();
    open.pop();
    if (closed[index]) continue;
    closed[index] = 1;
    if (index == goal_index) break;
    const CellIndex cell = map.CellAt(index);
    for (const CellIndex& m : kMoves) {
      const CellIndex next{cell.x + m.x, cell.y + m.y};
      if (!map.Contains(next) || !IsTraversable(map[next], options)) continue;
      const bool diagonal = m.x != 0 && m.y != 0;
      if (diagonal && (!IsTraversable(map[{cell.x + m.x, cell.y}], options) ||
                       !IsTraversable(map[{cell.x, cell.y + m.y}], options))) {
        continue;
      }
      const std::size_t next_index = map.Index(next);
      if (closed[next_index]) continue;
      const double step = diagonal ? std::numbers::sqrt2 * res : res;
      const double candidate = cost[index] + step;
      if (candidate < cost[next_index]) {
        cost[next_index] = candidate;
        parent[next_index] = static_cast<std::int64_t>(index);
        open.emplace(candidate + OctileDistance(next, *goal_cell, res),
                     counter++, next_index);
      }
    }
  }
  if (!closed[goal_index]) return std::nullopt;

  GridPath path;
  path.length = cost[goal_index];
  for (std::int64_t i = static_cast<std::int64_t>(goal_index); i >= 0;
       i = parent[i]) {
    path.cells.push_back(map.CellAt(static_cast<std::size_t>(i)));
  }
  std::reverse(path.cells.begin(), path.cells.end());
  return path;
}

}  // namespace coexplore
