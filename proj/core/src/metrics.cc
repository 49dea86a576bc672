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

#include "coexplore/metrics.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coexplore/agent.h"
#include "coexplore/errors.h"
#include "coexplore/pgm_io.h"

namespace coexplore {
namespace {

constexpr CellIndex kNeighbors8[] = {{1, 0},  {-1, 0}, {0, 1},  {0, -1},
                                     {1, 1},  {1, -1}, {-1, 1}, {-1, -1}};
constexpr CellIndex kNeighbors4[] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};

void CheckSameLength(std::span<const std::uint8_t> a,
                     std::span<const std::uint8_t> b) {
  if (a.size() != b.size()) {
    throw GeometryMismatch("images must have the same number of pixels");
  }
}

struct Moments {
  std::int64_t n = 0;
  std::int64_t sa = 0;
  std::int64_t sb = 0;
  std::int64_t saa = 0;
  std::int64_t sbb = 0;
  std::int64_t sab = 0;
};

Moments Accumulate(std::span<const std::uint8_t> a,
                   std::span<const std::uint8_t> b) {
  Moments m;
  m.n = static_cast<std::int64_t>(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::int64_t x = a[i];
    const std::int64_t y = b[i];
    m.sa += x;
    m.sb += y;
    m.saa += x * x;
    m.sbb += y * y;
    m.sab += x * y;
  }
  return m;
}

}  // namespace

CoverageReference::CoverageReference(const WorldModel& truth,
                                     std::span<const Point2> seeds)
    : width_(truth.width()),
      height_(truth.height()),
      resolution_(truth.resolution()),
      mask_(static_cast<std::size_t>(truth.width()) * truth.height(), 0) {
  const auto index = [this](const CellIndex& c) {
    return static_cast<std::size_t>(c.y) * width_ + c.x;
  };
  const auto passable = [&truth](const CellIndex& c) {
    return truth.Contains(c) && !truth.Blocks(c, kGroundSensorHeight);
  };
  // Labels 8-connected free components without corner cutting.
  std::vector<int> label(mask_.size(), -1);
  std::vector<std::size_t> sizes;
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      if (!passable({x, y}) || label[index({x, y})] >= 0) continue;
      const int id = static_cast<int>(sizes.size());
      std::size_t count = 0;
      std::vector<CellIndex> stack{{x, y}};
      label[index({x, y})] = id;
      while (!stack.empty()) {
        const CellIndex c = stack.back();
        stack.pop_back();
        ++count;
        for (const CellIndex& d : kNeighbors8) {
          const CellIndex n{c.x + d.x, c.y + d.y};
          if (!passable(n) || label[index(n)] >= 0) continue;
          if (d.x != 0 && d.y != 0 &&
              (!passable({c.x + d.x, c.y}) || !passable({c.x, c.y + d.y}))) {
            continue;
          }
          label[index(n)] = id;
          stack.push_back(n);
        }
      }
      sizes.push_back(count);
    }
  }

  std::vector<char> chosen(sizes.size(), 0);
  if (seeds.empty()) {
    if (!sizes.empty()) {
      chosen[std::max_element(sizes.begin(), sizes.end()) - sizes.begin()] = 1;
    }
  } else {
    for (const Point2& s : seeds) {
      const CellIndex c{static_cast<int>(std::floor(s.x / resolution_)),
                        static_cast<int>(std::floor(s.y / resolution_))};
      if (truth.Contains(c) && label[index(c)] >= 0) chosen[label[index(c)]] = 1;
    }
  }

  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      const int l = label[index({x, y})];
      if (l >= 0 && chosen[l]) {
        mask_[index({x, y})] = 1;
        ++free_cells_;
      }
    }
  }
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      if (passable({x, y})) continue;
      // Diagonal-only contacts such as room corners are never hit by a ray.
      for (const CellIndex& d : kNeighbors4) {
        const CellIndex n{x + d.x, y + d.y};
        if (truth.Contains(n) && label[index(n)] >= 0 &&
            chosen[label[index(n)]]) {
          mask_[index({x, y})] = 1;
          break;
        }
      }
    }
  }
  total_ = static_cast<std::size_t>(std::count(mask_.begin(), mask_.end(), 1));
}

double CoveragePercent(const OccupancyGrid& map,
                       const CoverageReference& reference) {
  if (map.width() != reference.width() || map.height() != reference.height() ||
      map.origin() != Point2{0.0, 0.0} ||
      std::abs(map.resolution() - reference.resolution()) > 1e-9) {
    throw GeometryMismatch("coverage map does not match the world frame");
  }
  if (reference.total() == 0) return 0.0;
  std::size_t known = 0;
  for (int y = 0; y < map.height(); ++y) {
    for (int x = 0; x < map.width(); ++x) {
      if (reference.Counts({x, y}) && map[{x, y}] != kUnknown) ++known;
    }
  }
  return 100.0 * static_cast<double>(known) /
         static_cast<double>(reference.total());
}

double CoveragePercent(const OccupancyGrid& map, const WorldModel& truth) {
  return CoveragePercent(map, CoverageReference(truth, {}));
}

double MeanSquaredError(std::span<const std::uint8_t> a,
                        std::span<const std::uint8_t> b) {
  CheckSameLength(a, b);
  if (a.empty()) return 0.0;
  std::int64_t total = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const std::int64_t d = static_cast<std::int64_t>(a[i]) - b[i];
    total += d * d;
  }
  return static_cast<double>(total) / static_cast<double>(a.size());
}

double StructuralSimilarity(std::span<const std::uint8_t> a,
                            std::span<const std::uint8_t> b, int width,
                            int height) {
  CheckSameLength(a, b);
  if (static_cast<std::size_t>(width) * height != a.size()) {
    throw GeometryMismatch("image size does not match width * height");
  }
  if (a.empty()) return 1.0;
  constexpr double kC1 = (0.01 * 255) * (0.01 * 255);
  constexpr double kC2 = (0.03 * 255) * (0.03 * 255);
  const int wx = std::min(kSsimWindow, width);
  const int wy = std::min(kSsimWindow, height);

  // Integral images of the five moments, (width + 1) x (height + 1).
  const int stride = width + 1;
  std::vector<Moments> integral(static_cast<std::size_t>(stride) * (height + 1));
  for (int y = 0; y < height; ++y) {
    Moments row;
    for (int x = 0; x < width; ++x) {
      const std::int64_t p = a[static_cast<std::size_t>(y) * width + x];
      const std::int64_t q = b[static_cast<std::size_t>(y) * width + x];
      row.sa += p;
      row.sb += q;
      row.saa += p * p;
      row.sbb += q * q;
      row.sab += p * q;
      const Moments& above = integral[static_cast<std::size_t>(y) * stride + x + 1];
      Moments& out = integral[static_cast<std::size_t>(y + 1) * stride + x + 1];
      out.sa = above.sa + row.sa;
      out.sb = above.sb + row.sb;
      out.saa = above.saa + row.saa;
      out.sbb = above.sbb + row.sbb;
      out.sab = above.sab + row.sab;
    }
  }
  const auto at = [&](int x, int y) -> const Moments& {
    return integral[static_cast<std::size_t>(y) * stride + x];
  };

  const std::int64_t n = static_cast<std::int64_t>(wx) * wy;
  const double n2 = static_cast<double>(n) * static_cast<double>(n);
  double total = 0.0;
  std::size_t windows = 0;
  for (int y = 0; y + wy <= height; ++y) {
    for (int x = 0; x + wx <= width; ++x) {
      const Moments& br = at(x + wx, y + wy);
      const Moments& tr = at(x + wx, y);
      const Moments& bl = at(x, y + wy);
      const Moments& tl = at(x, y);
      const std::int64_t sa = br.sa - tr.sa - bl.sa + tl.sa;
      const std::int64_t sb = br.sb - tr.sb - bl.sb + tl.sb;
      const std::int64_t saa = br.saa - tr.saa - bl.saa + tl.saa;
      const std::int64_t sbb = br.sbb - tr.sbb - bl.sbb + tl.sbb;
      const std::int64_t sab = br.sab - tr.sab - bl.sab + tl.sab;
      const double mu_a = static_cast<double>(sa) / n;
      const double mu_b = static_cast<double>(sb) / n;
      const double var_a = static_cast<double>(n * saa - sa * sa) / n2;
      const double var_b = static_cast<double>(n * sbb - sb * sb) / n2;
      const double cov = static_cast<double>(n * sab - sa * sb) / n2;
      total += ((2.0 * mu_a * mu_b + kC1) * (2.0 * cov + kC2)) /
               ((mu_a * mu_a + mu_b * mu_b + kC1) * (var_a + var_b + kC2));
      ++windows;
    }
  }
  return total / static_cast<double>(windows);
}

double NormalizedCrossCorrelation(std::span<const std::uint8_t> a,
                                  std::span<const std::uint8_t> b) {
  CheckSameLength(a, b);
  const Moments m = Accumulate(a, b);
  const std::int64_t num = m.n * m.sab - m.sa * m.sb;
  const std::int64_t da = m.n * m.saa - m.sa * m.sa;
  const std::int64_t db = m.n * m.sbb - m.sb * m.sb;
  double r = 0.0;
  if (da == 0 && db == 0) {
    r = std::equal(a.begin(), a.end(), b.begin()) ? 1.0 : 0.0;
  } else if (da != 0 && db != 0) {
    r = static_cast<double>(num) /
        std::sqrt(static_cast<double>(da) * static_cast<double>(db));
  }
  return (std::clamp(r, -1.0, 1.0) + 1.0) / 2.0;
}

double CosineSimilarity(std::span<const std::uint8_t> a,
                        std::span<const std::uint8_t> b) {
  CheckSameLength(a, b);
  const Moments m = Accumulate(a, b);
  if (m.saa == 0 && m.sbb == 0) return 1.0;
  if (m.saa == 0 || m.sbb == 0) return 0.0;
  return static_cast<double>(m.sab) /
         std::sqrt(static_cast<double>(m.saa) * static_cast<double>(m.sbb));
}

MapQuality CompareImages(std::span<const std::uint8_t> a,
                         std::span<const std::uint8_t> b, int width,
                         int height) {
  return {MeanSquaredError(a, b), StructuralSimilarity(a, b, width, height),
          NormalizedCrossCorrelation(a, b), CosineSimilarity(a, b)};
}

MapQuality ComputeMapQuality(const OccupancyGrid& map,
                             const OccupancyGrid& truth) {
  if (map.width() != truth.width() || map.height() != truth.height()) {
    throw GeometryMismatch("map and truth rendering differ in size");
  }
  const std::vector<std::uint8_t> a = RenderIntensity(map);
  const std::vector<std::uint8_t> b = RenderIntensity(truth);
  return CompareImages(a, b, map.width(), map.height());
}

FrontierReduction ComputeFrontierReduction(std::span<const int> raw,
                                           std::span<const int> filtered) {
  if (raw.size() != filtered.size()) {
    throw std::invalid_argument("raw and filtered series differ in length");
  }
  FrontierReduction out;
  double sum = 0.0;
  double raw_sum = 0.0;
  double filtered_sum = 0.0;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const double r =
        raw[i] > 0 ? 100.0 * (1.0 - static_cast<double>(filtered[i]) / raw[i])
                   : 0.0;
    out.per_tick.push_back(r);
    sum += r;
    raw_sum += raw[i];
    filtered_sum += filtered[i];
    const double count = static_cast<double>(i + 1);
    out.running_mean.push_back(sum / count);
    out.raw_running_mean.push_back(raw_sum / count);
    out.filtered_running_mean.push_back(filtered_sum / count);
  }
  out.mean = raw.empty() ? 0.0 : sum / static_cast<double>(raw.size());
  return out;
}

}  // namespace coexplore
