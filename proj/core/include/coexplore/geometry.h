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

#ifndef COEXPLORE_GEOMETRY_H_
#define COEXPLORE_GEOMETRY_H_

#include <compare>

namespace coexplore {

// World coordinates in meters.
struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend bool operator==(const Point2&, const Point2&) = default;
};

double Distance(const Point2& a, const Point2& b);

// Integer lattice index of a grid cell; x is the column, y the row.
struct CellIndex {
  int x = 0;
  int y = 0;

  friend auto operator<=>(const CellIndex&, const CellIndex&) = default;
};

// Planar robot pose. theta is kept in (-pi, pi].
struct Pose2D {
  double x = 0.0;
  double y = 0.0;
  double theta = 0.0;

  Point2 position() const { return {x, y}; }
};

// Wraps an angle into (-pi, pi].
double NormalizeAngle(double angle);

}  // namespace coexplore

#endif  // COEXPLORE_GEOMETRY_H_
