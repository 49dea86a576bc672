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

#include "coexplore/occupancy_grid.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace coexplore {
namespace {

constexpr double kLatticeTolerance = 1e-6;

void CheckDimensions(int width, int height, double resolution) {
  if (width < 0 || height < 0) {
    throw std::invalid_argument("grid dimensions must be non-negative");
  }
  if (!(resolution > 0.0) || !std::isfinite(resolution)) {
    throw std::invalid_argument("grid resolution must be positive");
  }
}

}  // namespace

bool IsValidOccupancy(int value) {
  return value == kUnknown || value == kFree || value == kOccupied;
}

OccupancyGrid::OccupancyGrid(int width, int height, double resolution,
                             Point2 origin, Occupancy fill)
    : width_(width), height_(height), resolution_(resolution), origin_(origin) {
  CheckDimensions(width, height, resolution);
  if (!IsValidOccupancy(fill)) {
    throw std::invalid_argument("fill value outside {-1, 0, 100}");
  }
  cells_.assign(static_cast<std::size_t>(width) * height, fill);
}

OccupancyGrid::OccupancyGrid(int width, int height, double resolution,
                             Point2 origin, std::vector<Occupancy> cells)
    : width_(width),
      height_(height),
      resolution_(resolution),
      origin_(origin),
      cells_(std::move(cells)) {
  CheckDimensions(width, height, resolution);
  if (cells_.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("cell count " + std::to_string(cells_.size()) +
                                " does not match " + std::to_string(width) +
                                "x" + std::to_string(height));
  }
  for (Occupancy v : cells_) {
    if (!IsValidOccupancy(v)) {
      throw std::invalid_argument("cell value " + std::to_string(v) +
                                  " outside {-1, 0, 100}");
    }
  }
}

Occupancy OccupancyGrid::at(const CellIndex& cell) const {
  if (!Contains(cell)) {
    throw std::out_of_range("cell (" + std::to_string(cell.x) + ", " +
                            std::to_string(cell.y) + ") outside grid");
  }
  return (*this)[cell];
}

void OccupancyGrid::Set(const CellIndex& cell, Occupancy value) {
  if (!Contains(cell)) {
    throw std::out_of_range("cell (" + std::to_string(cell.x) + ", " +
                            std::to_string(cell.y) + ") outside grid");
  }
  if (!IsValidOccupancy(value)) {
    throw std::invalid_argument("cell value outside {-1, 0, 100}");
  }
  cells_[Index(cell)] = value;
}

Point2 OccupancyGrid::GridToWorld(const CellIndex& cell) const {
  if (!Contains(cell)) {
    throw std::out_of_range("cell (" + std::to_string(cell.x) + ", " +
                            std::to_string(cell.y) + ") outside grid");
  }
  return {origin_.x + (cell.x + 0.5) * resolution_,
          origin_.y + (cell.y + 0.5) * resolution_};
}

CellIndex OccupancyGrid::LatticeIndex(const Point2& point) const {
  return {static_cast<int>(std::floor((point.x - origin_.x) / resolution_)),
          static_cast<int>(std::floor((point.y - origin_.y) / resolution_))};
}

std::optional<CellIndex> OccupancyGrid::WorldToGrid(const Point2& point) const {
  if (!std::isfinite(point.x) || !std::isfinite(point.y)) return std::nullopt;
  const double fx = std::floor((point.x - origin_.x) / resolution_);
  const double fy = std::floor((point.y - origin_.y) / resolution_);
  if (fx < 0.0 || fy < 0.0 || fx >= width_ || fy >= height_) {
    return std::nullopt;
  }
  return CellIndex{static_cast<int>(fx), static_cast<int>(fy)};
}

std::size_t OccupancyGrid::KnownCount() const {
  return static_cast<std::size_t>(std::count_if(
      cells_.begin(), cells_.end(), [](Occupancy v) { return v != kUnknown; }));
}

double OccupancyGrid::KnownArea() const {
  return static_cast<double>(KnownCount()) * resolution_ * resolution_;
}

Point2 GridToWorld(const OccupancyGrid& map, int ix, int iy) {
  return map.GridToWorld({ix, iy});
}

std::optional<CellIndex> WorldToGrid(const OccupancyGrid& map, double wx,
                                     double wy) {
  return map.WorldToGrid({wx, wy});
}

bool SameLattice(const OccupancyGrid& a, const OccupancyGrid& b) {
  const double res = a.resolution();
  if (std::abs(res - b.resolution()) > kLatticeTolerance * res) return false;
  const double dx = (b.origin().x - a.origin().x) / res;
  const double dy = (b.origin().y - a.origin().y) / res;
  return std::abs(dx - std::round(dx)) < kLatticeTolerance &&
         std::abs(dy - std::round(dy)) < kLatticeTolerance;
}

CellIndex LatticeOffset(const OccupancyGrid& a, const OccupancyGrid& b) {
  const double res = a.resolution();
  return {static_cast<int>(std::lround((b.origin().x - a.origin().x) / res)),
          static_cast<int>(std::lround((b.origin().y - a.origin().y) / res))};
}

}  // namespace coexplore
