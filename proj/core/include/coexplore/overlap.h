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

#ifndef COEXPLORE_OVERLAP_H_
#define COEXPLORE_OVERLAP_H_

#include <optional>

#include "coexplore/occupancy_grid.h"

namespace coexplore {

// Occupancy over the region where two robots' maps overlap. Cells are known
// only where both inputs are known.
struct IoUMap {
  OccupancyGrid map;

  int width() const { return map.width(); }
  int height() const { return map.height(); }
};

// Bounding box, in map-local cells, of the cells that are not unknown.
struct KnownExtent {
  CellIndex min;  // inclusive
  CellIndex max;  // exclusive
};
std::optional<KnownExtent> KnownBoundingBox(const OccupancyGrid& map);

// The overlap region is the intersection of the two known-extent bounding
// boxes. For each region cell whose counterparts in M1 and M2 are both known:
// both free -> free, both occupied -> occupied, either occupied -> occupied.
// Throws GeometryMismatch when the maps do not share resolution and lattice.
IoUMap ComputeIoU(const OccupancyGrid& m1, const OccupancyGrid& m2);

// Known cells times the cell area, in square meters.
double IoUArea(const IoUMap& iou);

}  // namespace coexplore

#endif  // COEXPLORE_OVERLAP_H_
