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

#ifndef COEXPLORE_FRONTIER_H_
#define COEXPLORE_FRONTIER_H_

#include <span>
#include <string_view>
#include <vector>

#include "coexplore/geometry.h"
#include "coexplore/occupancy_grid.h"

namespace coexplore {

enum class FrontierSource { kLocal, kIou };

std::string_view ToString(FrontierSource source);

struct FrontierPoint {
  Point2 position;
  FrontierSource source = FrontierSource::kLocal;
  int robot_id = -1;       // owning robot for local points
  double info_gain = 0.0;  // filled in by the coordination server
};

// True for a free cell with at least one unknown cell among its in-bounds
// 8-neighbors.
bool IsFrontierCell(const OccupancyGrid& map, const CellIndex& cell);

// Groups frontier cells into 8-connected components, drops components with
// fewer than min_cluster cells and emits one point per component: the member
// cell whose center is nearest the component centroid. Components are
// reported in row-major order of their first cell.
std::vector<FrontierPoint> DetectFrontiers(
    const OccupancyGrid& map, int min_cluster,
    FrontierSource source = FrontierSource::kLocal, int robot_id = -1);

enum class FilterOrder {
  kIouFirst,  // IoU points are placed first and suppress local points
  kLiteral,   // local points first, then IoU points
};

struct FrontierFilterOptions {
  double dist_thresh = 1.0;
  FilterOrder order = FilterOrder::kIouFirst;
  bool keep_iou = false;  // return surviving IoU points too
};

// Greedy thinning of the concatenated point list: a point survives when it is
// at least dist_thresh away from every point kept before it. With IoU points
// first, a local point must also clear every IoU point, kept or not.
std::vector<FrontierPoint> FilterFrontiers(
    std::span<const FrontierPoint> local_points,
    std::span<const FrontierPoint> iou_points,
    const FrontierFilterOptions& options);

}  // namespace coexplore

#endif  // COEXPLORE_FRONTIER_H_
