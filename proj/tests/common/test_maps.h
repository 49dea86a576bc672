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

#ifndef COEXPLORE_TESTS_COMMON_TEST_MAPS_H_
#define COEXPLORE_TESTS_COMMON_TEST_MAPS_H_

#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "coexplore/occupancy_grid.h"

namespace coexplore {
namespace testing {

// Text picture of a grid: '.' free, '#' occupied, '?' unknown. The first
// row is the highest y, like world files.
inline OccupancyGrid GridFromRows(const std::vector<std::string>& rows,
                                  double resolution = 1.0,
                                  Point2 origin = {0.0, 0.0}) {
  const int height = static_cast<int>(rows.size());
  const int width = static_cast<int>(rows.front().size());
  OccupancyGrid grid(width, height, resolution, origin);
  for (int row = 0; row < height; ++row) {
    for (int x = 0; x < width; ++x) {
      const char c = rows[row][x];
      grid.Set({x, height - 1 - row},
               c == '.' ? kFree : c == '#' ? kOccupied : kUnknown);
    }
  }
  return grid;
}

inline Occupancy RandomOccupancy(std::mt19937_64& rng) {
  static constexpr Occupancy kValues[] = {kUnknown, kFree, kOccupied};
  return kValues[std::uniform_int_distribution<int>(0, 2)(rng)];
}

inline OccupancyGrid RandomGrid(std::mt19937_64& rng, int width, int height,
                                double resolution = 1.0,
                                Point2 origin = {0.0, 0.0}) {
  std::vector<Occupancy> cells(static_cast<std::size_t>(width) * height);
  for (Occupancy& c : cells) c = RandomOccupancy(rng);
  return OccupancyGrid(width, height, resolution, origin, std::move(cells));
}

}  // namespace testing
}  // namespace coexplore

#endif  // COEXPLORE_TESTS_COMMON_TEST_MAPS_H_
