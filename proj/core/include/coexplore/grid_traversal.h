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

#ifndef COEXPLORE_GRID_TRAVERSAL_H_
#define COEXPLORE_GRID_TRAVERSAL_H_

#include <vector>

#include "coexplore/geometry.h"
#include "coexplore/occupancy_grid.h"

namespace coexplore {

// Cells pierced by the segment from -> to, in order, using the grid's
// lattice (Amanatides-Woo voxel walk). Only in-bounds cells are returned and
// the walk stops once the segment leaves the grid.
std::vector<CellIndex> TraverseLine(const OccupancyGrid& grid, Point2 from,
                                    Point2 to);

}  // namespace coexplore

#endif  // COEXPLORE_GRID_TRAVERSAL_H_
