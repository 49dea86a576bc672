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

#ifndef COEXPLORE_WORLD_MODEL_H_
#define COEXPLORE_WORLD_MODEL_H_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "coexplore/geometry.h"
#include "coexplore/occupancy_grid.h"

namespace coexplore {

// Heights assigned to the two obstacle classes of the world-file alphabet.
inline constexpr double kTallObstacleHeight = 2.0;  // '#'
inline constexpr double kLowObstacleHeight = 0.4;   // 'x'

// Ground-truth world: per-cell obstacle height in meters, 0 for free space.
// Cell (0, 0) is the lower-left corner; the world origin is (0, 0).
class WorldModel {
 public:
  WorldModel(int width, int height, double resolution,
             std::vector<double> obstacle_heights);

  int width() const { return width_; }
  int height() const { return height_; }
  double resolution() const { return resolution_; }
  Point2 origin() const { return {0.0, 0.0}; }

  bool Contains(const CellIndex& cell) const {
    return cell.x >= 0 && cell.y >= 0 && cell.x < width_ && cell.y < height_;
  }
  double ObstacleHeight(const CellIndex& cell) const {
    return heights_[static_cast<std::size_t>(cell.y) * width_ + cell.x];
  }
  bool IsFree(const CellIndex& cell) const {
    return ObstacleHeight(cell) <= 0.0;
  }
  // True when an obstacle at this cell reaches a sensor plane at
  // sensor_height.
  bool Blocks(const CellIndex& cell, double sensor_height) const {
    const double h = ObstacleHeight(cell);
    return h > 0.0 && h >= sensor_height;
  }
  void SetObstacleHeight(const CellIndex& cell, double height);

  std::size_t FreeCount() const;

  // Empty grid with the world's geometry.
  OccupancyGrid BlankGrid(Occupancy fill = kUnknown) const;
  // Fully known rendering as seen by a sensor plane at sensor_height.
  OccupancyGrid Render(double sensor_height) const;

 private:
  int width_;
  int height_;
  double resolution_;
  std::vector<double> heights_;
};

// Parses the world-file format:
//
//   resolution <meters per cell>
//   <row>          rows of '.', '#', 'x'; first row is the top (max y)
//   ...
//
// Throws ParseError carrying the offending file line and column.
WorldModel LoadWorld(std::string_view text);
WorldModel LoadWorldFile(const std::filesystem::path& path);

// Combines maps expressed in one world frame. The output lattice follows
// maps[frame] and spans the bounding box of every input. Per cell, occupied
// dominates free, free dominates unknown. Throws GeometryMismatch when the
// inputs do not share resolution and lattice, std::out_of_range for a bad
// frame index.
OccupancyGrid MergeMaps(std::span<const OccupancyGrid> maps, std::size_t frame);

struct UavSweep {
  double min_height = 1.0;  // obstacles below this are invisible
  double swath = 4.0;       // spacing between sweep rows
  // Half-width of the band seen on each side of a sweep row; <= 0 selects
  // swath / 2, which tiles the world without gaps.
  double footprint = 0.0;
};

// Lawn-mower sweep at t = 0. Rows run along x at y = swath / 2 + k * swath.
// Cells whose centers fall inside a row's band are known (100 for obstacles at
// least min_height tall, 0 otherwise); everything else stays unknown.
OccupancyGrid UavPriorMap(const WorldModel& world, const UavSweep& sweep);
OccupancyGrid UavPriorMap(const WorldModel& world, double min_height,
                          double swath);

}  // namespace coexplore

#endif  // COEXPLORE_WORLD_MODEL_H_
