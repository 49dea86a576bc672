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

#ifndef COEXPLORE_OCCUPANCY_GRID_H_
#define COEXPLORE_OCCUPANCY_GRID_H_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "coexplore/geometry.h"

namespace coexplore {

using Occupancy = std::int8_t;

inline constexpr Occupancy kUnknown = -1;
inline constexpr Occupancy kFree = 0;
inline constexpr Occupancy kOccupied = 100;

bool IsValidOccupancy(int value);

// A 2D lattice of {-1, 0, 100} cells stored row-major. Cell (0, 0) has its
// lower-left corner at origin(); cell centers sit at half-resolution offsets.
class OccupancyGrid {
 public:
  OccupancyGrid() = default;
  OccupancyGrid(int width, int height, double resolution, Point2 origin,
                Occupancy fill = kUnknown);
  // Throws std::invalid_argument when cells.size() != width * height or a
  // value is outside the occupancy alphabet.
  OccupancyGrid(int width, int height, double resolution, Point2 origin,
                std::vector<Occupancy> cells);

  int width() const { return width_; }
  int height() const { return height_; }
  double resolution() const { return resolution_; }
  const Point2& origin() const { return origin_; }
  std::span<const Occupancy> cells() const { return cells_; }
  std::size_t size() const { return cells_.size(); }

  bool Contains(const CellIndex& cell) const {
    return cell.x >= 0 && cell.y >= 0 && cell.x < width_ && cell.y < height_;
  }
  std::size_t Index(const CellIndex& cell) const {
    return static_cast<std::size_t>(cell.y) * width_ + cell.x;
  }
  CellIndex CellAt(std::size_t index) const {
    return {static_cast<int>(index % width_), static_cast<int>(index / width_)};
  }

  // Unchecked access; use at() for bounds-checked reads.
  Occupancy operator[](const CellIndex& cell) const {
    return cells_[Index(cell)];
  }
  Occupancy at(const CellIndex& cell) const;
  // Out-of-range reads report kUnknown.
  Occupancy ValueOr(const CellIndex& cell, Occupancy fallback = kUnknown) const {
    return Contains(cell) ? (*this)[cell] : fallback;
  }
  void Set(const CellIndex& cell, Occupancy value);

  // Cell center in world coordinates. Throws std::out_of_range.
  Point2 GridToWorld(const CellIndex& cell) const;
  // Floor-rule lookup; std::nullopt when the point lies outside the grid.
  std::optional<CellIndex> WorldToGrid(const Point2& point) const;
  // Floor-rule lattice index without bounds check.
  CellIndex LatticeIndex(const Point2& point) const;

  std::size_t KnownCount() const;
  double KnownArea() const;

  friend bool operator==(const OccupancyGrid&, const OccupancyGrid&) = default;

 private:
  int width_ = 0;
  int height_ = 0;
  double resolution_ = 1.0;
  Point2 origin_;
  std::vector<Occupancy> cells_;
};

// Free-function spellings of the coordinate transforms.
Point2 GridToWorld(const OccupancyGrid& map, int ix, int iy);
std::optional<CellIndex> WorldToGrid(const OccupancyGrid& map, double wx,
                                     double wy);

// True when both grids use the same resolution and their origins differ by a
// whole number of cells.
bool SameLattice(const OccupancyGrid& a, const OccupancyGrid& b);

// Offset in cells of b's origin relative to a's origin. Requires SameLattice.
CellIndex LatticeOffset(const OccupancyGrid& a, const OccupancyGrid& b);

}  // namespace coexplore

#endif  // COEXPLORE_OCCUPANCY_GRID_H_
