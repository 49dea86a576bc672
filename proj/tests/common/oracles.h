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

#ifndef COEXPLORE_TESTS_COMMON_ORACLES_H_
#define COEXPLORE_TESTS_COMMON_ORACLES_H_

// Direct reimplementations used to cross-check the library. They share no
// code with it beyond the grid container.

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <vector>

#include "coexplore/occupancy_grid.h"
#include "coexplore/pose_graph.h"

namespace coexplore {
namespace oracle {

struct Box {
  int min_x, min_y, max_x, max_y;  // exclusive max
};

inline std::optional<Box> KnownBox(const OccupancyGrid& m) {
  std::optional<Box> box;
  for (int y = 0; y < m.height(); ++y) {
    for (int x = 0; x < m.width(); ++x) {
      if (m[{x, y}] == kUnknown) continue;
      if (!box) {
        box = Box{x, y, x + 1, y + 1};
      } else {
        box->min_x = std::min(box->min_x, x);
        box->min_y = std::min(box->min_y, y);
        box->max_x = std::max(box->max_x, x + 1);
        box->max_y = std::max(box->max_y, y + 1);
      }
    }
  }
  return box;
}

// Branch ladder over two maps on the same lattice and origin: both free ->
// free, both occupied -> occupied, one occupied -> occupied, otherwise
// unknown. Cells outside the intersection of the known boxes are unknown.
// Returns a map with the inputs' geometry.
inline OccupancyGrid IoUBruteForce(const OccupancyGrid& m1,
                                   const OccupancyGrid& m2) {
  OccupancyGrid out(m1.width(), m1.height(), m1.resolution(), m1.origin());
  const auto b1 = KnownBox(m1);
  const auto b2 = KnownBox(m2);
  if (!b1 || !b2) return out;
  for (int y = 0; y < m1.height(); ++y) {
    for (int x = 0; x < m1.width(); ++x) {
      const bool inside = x >= b1->min_x && x < b1->max_x && y >= b1->min_y &&
                          y < b1->max_y && x >= b2->min_x && x < b2->max_x &&
                          y >= b2->min_y && y < b2->max_y;
      if (!inside) continue;
      const Occupancy a = m1[{x, y}];
      const Occupancy b = m2[{x, y}];
      Occupancy v = kUnknown;
      if (a == kFree && b == kFree) {
        v = kFree;
      } else if (a == kOccupied && b == kOccupied) {
        v = kOccupied;
      } else if ((a == kOccupied && b != kUnknown) ||
                 (b == kOccupied && a != kUnknown)) {
        v = kOccupied;
      }
      out.Set({x, y}, v);
    }
  }
  return out;
}

// Compares an IoU result (cropped to the overlap region) with the
// full-frame oracle. Cells outside the cropped region must be unknown in
// the oracle.
inline bool SameAsFullFrame(const OccupancyGrid& cropped,
                            const OccupancyGrid& full) {
  const double res = full.resolution();
  for (int y = 0; y < full.height(); ++y) {
    for (int x = 0; x < full.width(); ++x) {
      const Point2 center{full.origin().x + (x + 0.5) * res,
                          full.origin().y + (y + 0.5) * res};
      const auto cell = cropped.size() == 0 ? std::nullopt
                                            : cropped.WorldToGrid(center);
      const Occupancy got = cell ? cropped[*cell] : kUnknown;
      if (got != full[{x, y}]) return false;
    }
  }
  return true;
}

// Geometric mean of the eigenvalues from a self-adjoint eigensolver.
inline double GeometricMeanEigenvalue(const Matrix6& m) {
  Eigen::SelfAdjointEigenSolver<Matrix6> solver(m, Eigen::EigenvaluesOnly);
  double log_sum = 0.0;
  for (int k = 0; k < 6; ++k) log_sum += std::log(solver.eigenvalues()[k]);
  return std::exp(log_sum / 6.0);
}

// Random rotation from the QR decomposition of a Gaussian matrix, with the
// sign fixed so det = +1.
template <typename Rng>
Matrix6 RandomRotation(Rng& rng) {
  std::normal_distribution<double> normal;
  Matrix6 g;
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) g(r, c) = normal(rng);
  }
  Eigen::HouseholderQR<Matrix6> qr(g);
  Matrix6 q = qr.householderQ();
  if (q.determinant() < 0.0) q.col(0) *= -1.0;
  return q;
}

// A * A^T + 6 * I for a Gaussian A: comfortably positive definite.
template <typename Rng>
Matrix6 RandomSpd(Rng& rng) {
  std::normal_distribution<double> normal;
  Matrix6 a;
  for (int r = 0; r < 6; ++r) {
    for (int c = 0; c < 6; ++c) a(r, c) = normal(rng);
  }
  return a * a.transpose() + 6.0 * Matrix6::Identity();
}

}  // namespace oracle
}  // namespace coexplore

#endif  // COEXPLORE_TESTS_COMMON_ORACLES_H_
