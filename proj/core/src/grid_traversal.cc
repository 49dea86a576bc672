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

#include "coexplore/grid_traversal.h"

#include <cmath>
#include <cstdlib>
#include <limits>

namespace coexplore {

std::vector<CellIndex> TraverseLine(const OccupancyGrid& grid, Point2 from,
                                    Point2 to) {
  std::vector<CellIndex> cells;
  const double res = grid.resolution();
  const double x0 = (from.x - grid.origin().x) / res;
  const double y0 = (from.y - grid.origin().y) / res;
  const double x1 = (to.x - grid.origin().x) / res;
  const double y1 = (to.y - grid.origin().y) / res;

  CellIndex cell{static_cast<int>(std::floor(x0)),
                 static_cast<int>(std::floor(y0))};
  const CellIndex last{static_cast<int>(std::floor(x1)),
                       static_cast<int>(std::floor(y1))};
  const double dx = x1 - x0;
  const double dy = y1 - y0;
  const int step_x = dx > 0 ? 1 : (dx < 0 ? -1 : 0);
  const int step_y = dy > 0 ? 1 : (dy < 0 ? -1 : 0);
  constexpr double kInf = std::numeric_limits<double>::infinity();
  const double t_delta_x = step_x != 0 ? std::abs(1.0 / dx) : kInf;
  const double t_delta_y = step_y != 0 ? std::abs(1.0 / dy) : kInf;
  double t_max_x = step_x > 0   ? (std::floor(x0) + 1.0 - x0) * t_delta_x
                   : step_x < 0 ? (x0 - std::floor(x0)) * t_delta_x
                                : kInf;
  double t_max_y = step_y > 0   ? (std::floor(y0) + 1.0 - y0) * t_delta_y
                   : step_y < 0 ? (y0 - std::floor(y0)) * t_delta_y
                                : kInf;

  const int max_steps = std::abs(last.x - cell.x) + std::abs(last.y - cell.y);
  bool entered = false;
  for (int i = 0; i <= max_steps; ++i) {
    if (grid.Contains(cell)) {
      cells.push_back(cell);
      entered = true;
    } else if (entered) {
      break;
    }
    if (cell == last) break;
    if (t_max_x < t_max_y) {
      cell.x += step_x;
      t_max_x += t_delta_x;
    } else {
      cell.y += step_y;
      t_max_y += t_delta_y;
    }
  }
  return cells;
}

}  // namespace coexplore
