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

#ifndef COEXPLORE_PLANNER_H_
#define COEXPLORE_PLANNER_H_

#include <optional>
#include <vector>

#include "coexplore/geometry.h"
#include "coexplore/occupancy_grid.h"

namespace coexplore {

struct PlanOptions {
  // Treat unknown cells as traversable.
  bool through_unknown = false;
};

struct GridPath {
  std::vector<CellIndex> cells;  // start cell first, goal cell last
  double length = 0.0;           // meters
};

bool IsTraversable(Occupancy value, const PlanOptions& options);

// Octile distance between two cells, in meters.
double OctileDistance(const CellIndex& a, const CellIndex& b,
                      double resolution);

// 8-connected A* with an octile heuristic. Diagonal moves require both
// adjacent orthogonal cells to be traversable. Returns std::nullopt when the
// goal is outside the map, blocked or disconnected. Throws
// std::invalid_argument when the start is outside the map or not traversable.
std::optional<GridPath> PlanPath(const OccupancyGrid& map, Point2 start,
                                 Point2 goal, const PlanOptions& options = {});

}  // namespace coexplore

#endif  // COEXPLORE_PLANNER_H_
