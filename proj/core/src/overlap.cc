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

#include "coexplore/overlap.h"

#include <algorithm>

#include "coexplore/errors.h"

namespace coexplore {

std::optional<KnownExtent> KnownBoundingBox(const OccupancyGrid& map) {
  std::optional<KnownExtent> box;
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      if (map[{x, y}] == kUnknown) continue;
      if (!box) {
        box = KnownExtent{{x, y}, {x + 1, y + 1}};
      } else {
        box->min = {std::min(box->min.x, x), std::min(box->min.y, y)};
        box->max = {std::max(box->max.x, x + 1), std::max(box->max.y, y + 1)};
      }
    }
  }
  return box;
}

IoUMap ComputeIoU(const OccupancyGrid& m1, const OccupancyGrid& m2) {
  if (!SameLattice(m1, m2)) {
    throw GeometryMismatch("IoU inputs must share resolution and lattice");
  }
  const double res = m1.resolution();
  const auto box1 = KnownBoundingBox(m1);
  const auto box2 = KnownBoundingBox(m2);
  if (!box1 || !box2) return {OccupancyGrid(0, 0, res, m1.origin())};

  // Work in m1's lattice.
  const CellIndex offset = LatticeOffset(m1, m2);
  const int min_x = std::max(box1->min.x, box2->min.x + offset.x);
  const int min_y = std::max(box1->min.y, box2->min.y + offset.y);
  const int max_x = std::min(box1->max.x, box2->max.x + offset.x);
  const int max_y = std::min(box1->max.y, box2->max.y + offset.y);
  const Point2 corner{m1.origin().x + min_x * res, m1.origin().y + min_y * res};
  if (max_x <= min_x || max_y <= min_y) {
    return {OccupancyGrid(0, 0, res, corner)};
  }

  OccupancyGrid result(max_x - min_x, max_y - min_y, res, corner, kUnknown);
  for (int h = 0; h < result.height(); ++h) {
    for (int w = 0; w < result.width(); ++w) {
      const Point2 world = result.GridToWorld({w, h});
      const auto idx1 = m1.WorldToGrid(world);
      const auto idx2 = m2.WorldToGrid(world);
      if (!idx1 || !idx2) continue;
      const Occupancy a = m1[*idx1];
      const Occupancy b = m2[*idx2];
      if (a == kUnknown || b == kUnknown) continue;
      if (a == kFree && b == kFree) {
        result.Set({w, h}, kFree);
      } else if (a == kOccupied && b == kOccupied) {
        result.Set({w, h}, kOccupied);
      } else if (a == kOccupied || b == kOccupied) {
        result.Set({w, h}, kOccupied);
      }
    }
  }
  return {std::move(result)};
}

double IoUArea(const IoUMap& iou) { return iou.map.KnownArea(); }

}  // namespace coexplore
