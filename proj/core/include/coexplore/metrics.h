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

#ifndef COEXPLORE_METRICS_H_
#define COEXPLORE_METRICS_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "coexplore/geometry.h"
#include "coexplore/occupancy_grid.h"
#include "coexplore/world_model.h"

namespace coexplore {

// Denominator of the coverage metric: free cells reachable by a ground robot
// from the seeds (8-connected, no corner cutting) plus the obstacle cells
// 4-adjacent to them.
class CoverageReference {
 public:
  // With no seeds, the largest reachable free component is used.
  CoverageReference(const WorldModel& truth, std::span<const Point2> seeds);

  bool Counts(const CellIndex& cell) const {
    return mask_[static_cast<std::size_t>(cell.y) * width_ + cell.x] != 0;
  }
  std::size_t total() const { return total_; }
  std::size_t free_cells() const { return free_cells_; }
  double free_area() const { return free_cells_ * resolution_ * resolution_; }
  int width() const { return width_; }
  int height() const { return height_; }
  double resolution() const { return resolution_; }

 private:
  int width_;
  int height_;
  double resolution_;
  std::vector<char> mask_;
  std::size_t total_ = 0;
  std::size_t free_cells_ = 0;
};

// 100 * known counted cells / counted cells. Throws GeometryMismatch when
// the map does not use the truth's frame and size.
double CoveragePercent(const OccupancyGrid& map,
                       const CoverageReference& reference);
double CoveragePercent(const OccupancyGrid& map, const WorldModel& truth);

struct MapQuality {
  double mse = 0.0;
  double ssim = 0.0;
  double ncc = 0.0;  // (r + 1) / 2
  double cs = 0.0;
};

inline constexpr int kSsimWindow = 8;

double MeanSquaredError(std::span<const std::uint8_t> a,
                        std::span<const std::uint8_t> b);
// Mean of per-window SSIM over all 8x8 windows at stride 1 (window clipped
// to the image when smaller), C1 = (0.01 * 255)^2, C2 = (0.03 * 255)^2.
double StructuralSimilarity(std::span<const std::uint8_t> a,
                            std::span<const std::uint8_t> b, int width,
                            int height);
// Pearson correlation of the two images mapped to [0, 1].
double NormalizedCrossCorrelation(std::span<const std::uint8_t> a,
                                  std::span<const std::uint8_t> b);
double CosineSimilarity(std::span<const std::uint8_t> a,
                        std::span<const std::uint8_t> b);

MapQuality CompareImages(std::span<const std::uint8_t> a,
                         std::span<const std::uint8_t> b, int width,
                         int height);

// Renders both maps (free 255, occupied 0, unknown 127) and compares them.
// Throws GeometryMismatch on a size mismatch.
MapQuality ComputeMapQuality(const OccupancyGrid& map,
                             const OccupancyGrid& truth);

struct FrontierReduction {
  std::vector<double> per_tick;          // percent
  std::vector<double> running_mean;      // of per_tick
  std::vector<double> raw_running_mean;  // of raw counts
  std::vector<double> filtered_running_mean;
  double mean = 0.0;
};

// Per tick 100 * (1 - filtered / raw), or 0 when raw is 0. Throws
// std::invalid_argument for series of different lengths.
FrontierReduction ComputeFrontierReduction(std::span<const int> raw,
                                           std::span<const int> filtered);

}  // namespace coexplore

#endif  // COEXPLORE_METRICS_H_
