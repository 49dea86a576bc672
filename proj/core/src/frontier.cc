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

#include "coexplore/frontier.h"

#include <algorithm>
#include <limits>
#include <stdexcept>

namespace coexplore {
namespace {

constexpr CellIndex kNeighbors8[] = {{-1, -1}, {0, -1}, {1, -1}, {-1, 0},
                                     {1, 0},   {-1, 1}, {0, 1},  {1, 1}};

}  // namespace

std::string_view ToString(FrontierSource source) {
  return source == FrontierSource::kIou ? "iou" : "local";
}

bool IsFrontierCell(const OccupancyGrid& map, const CellIndex& cell) {
  if (map[cell] != kFree) return false;
  for (const CellIndex& d : kNeighbors8) {
    const CellIndex n{cell.x + d.x, cell.y + d.y};
    if (map.Contains(n) && map[n] == kUnknown) return true;
  }
  return false;
}

std::vector<FrontierPoint> DetectFrontiers(const OccupancyGrid& map,
                                           int min_cluster,
                                           FrontierSource source,
                                           int robot_id) {
  if (min_cluster < 1) throw std::invalid_argument("min_cluster must be >= 1");
  std::vector<char> frontier(map.size(), 0);
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      frontier[map.Index({x, y})] = IsFrontierCell(map, {x, y}) ? 1 : 0;
    }
  }

  std::vector<FrontierPoint> points;
  std::vector<char> visited(map.size(), 0);
  std::vector<CellIndex> component;
  std::vector<CellIndex> stack;
  for (std::size_t seed = 0; seed < map.size(); ++seed) {
    if (!frontier[seed] || visited[seed]) continue;
    component.clear();
    stack.assign(1, map.CellAt(seed));
    visited[seed] = 1;
    while (!stack.empty()) {
      const CellIndex cell = stack.back();
      stack.pop_back();
      component.push_back(cell);
      for (const CellIndex& d : kNeighbors8) {
        const CellIndex n{cell.x + d.x, cell.y + d.y};
        if (!map.Contains(n)) continue;
        const std::size_t i = map.Index(n);
        if (frontier[i] && !visited[i]) {
          visited[i] = 1;
          stack.push_back(n);
        }
      }
    }
    if (static_cast<int>(component.size()) < min_cluster) continue;

    double sum_x = 0.0;
    double sum_y = 0.0;
    for (const CellIndex& c : component) {
      sum_x += c.x;
      sum_y += c.y;
    }
    const double cx = sum_x / component.size();
    const double cy = sum_y / component.size();
    // Nearest member; ties go to the lowest row-major index.
    CellIndex best = component.front();
    double best_d2 = std::numeric_limits<double>::infinity();
    for (const CellIndex& c : component) {
      const double d2 = (c.x - cx) * (c.x - cx) + (c.y - cy) * (c.y - cy);
      if (d2 < best_d2 || (d2 == best_d2 && map.Index(c) < map.Index(best))) {
        best = c;
        best_d2 = d2;
      }
    }
    points.push_back({map.GridToWorld(best), source, robot_id, 0.0});
  }
  return points;
}

std::vector<FrontierPoint> FilterFrontiers(
    std::span<const FrontierPoint> local_points,
    std::span<const FrontierPoint> iou_points,
    const FrontierFilterOptions& options) {
  if (options.dist_thresh < 0.0) {
    throw std::invalid_argument("DIST_THRESH must be >= 0");
  }
  struct Tagged {
    const FrontierPoint* point;
    bool is_iou;
  };
  std::vector<Tagged> all;
  all.reserve(local_points.size() + iou_points.size());
  auto append = [&all](std::span<const FrontierPoint> pts, bool is_iou) {
    for (const FrontierPoint& p : pts) all.push_back({&p, is_iou});
  };
  if (options.order == FilterOrder::kIouFirst) {
    append(iou_points, true);
    append(local_points, false);
  } else {
    append(local_points, false);
    append(iou_points, true);
  }

  auto near = [&options](const FrontierPoint& a, const FrontierPoint& b) {
    return Distance(a.position, b.position) < options.dist_thresh;
  };
  std::vector<Tagged> kept;
  for (const Tagged& candidate : all) {
    bool too_close = false;
    for (const Tagged& fp : kept) {
      if (near(*candidate.point, *fp.point)) {
        too_close = true;
        break;
      }
    }
    // IoU points thinned away among themselves still suppress local points.
    if (!too_close && !candidate.is_iou &&
        options.order == FilterOrder::kIouFirst) {
      too_close = std::any_of(
          iou_points.begin(), iou_points.end(),
          [&](const FrontierPoint& q) { return near(*candidate.point, q); });
    }
    if (!too_close) kept.push_back(candidate);
  }

  std::vector<FrontierPoint> result;
  for (const Tagged& t : kept) {
    if (!t.is_iou || options.keep_iou) result.push_back(*t.point);
  }
  return result;
}

}  // namespace coexplore
