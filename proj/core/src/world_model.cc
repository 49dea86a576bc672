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

#include "coexplore/world_model.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>

#include "coexplore/errors.h"

namespace coexplore {
namespace {

std::string_view StripLineEnd(std::string_view line) {
  while (!line.empty() && (line.back() == '\r' || line.back() == ' ' ||
                           line.back() == '\t')) {
    line.remove_suffix(1);
  }
  return line;
}

int Rank(Occupancy v) {
  switch (v) {
    case kOccupied:
      return 2;
    case kFree:
      return 1;
    default:
      return 0;
  }
}

}  // namespace

WorldModel::WorldModel(int width, int height, double resolution,
                       std::vector<double> obstacle_heights)
    : width_(width),
      height_(height),
      resolution_(resolution),
      heights_(std::move(obstacle_heights)) {
  if (width <= 0 || height <= 0) {
    throw std::invalid_argument("world must have at least one cell");
  }
  if (!(resolution > 0.0)) {
    throw std::invalid_argument("world resolution must be positive");
  }
  if (heights_.size() != static_cast<std::size_t>(width) * height) {
    throw std::invalid_argument("obstacle height count does not match size");
  }
  for (double h : heights_) {
    if (h < 0.0 || !std::isfinite(h)) {
      throw std::invalid_argument("obstacle heights must be >= 0");
    }
  }
  if (FreeCount() == 0) {
    throw std::invalid_argument("world has no free cell to spawn on");
  }
}

void WorldModel::SetObstacleHeight(const CellIndex& cell, double height) {
  if (!Contains(cell)) throw std::out_of_range("cell outside world");
  if (height < 0.0) throw std::invalid_argument("negative obstacle height");
  heights_[static_cast<std::size_t>(cell.y) * width_ + cell.x] = height;
}

std::size_t WorldModel::FreeCount() const {
  return static_cast<std::size_t>(
      std::count_if(heights_.begin(), heights_.end(),
                    [](double h) { return h <= 0.0; }));
}

OccupancyGrid WorldModel::BlankGrid(Occupancy fill) const {
  return OccupancyGrid(width_, height_, resolution_, origin(), fill);
}

OccupancyGrid WorldModel::Render(double sensor_height) const {
  OccupancyGrid grid = BlankGrid(kFree);
  for (int y = 0; y < height_; ++y) {
    for (int x = 0; x < width_; ++x) {
      if (Blocks({x, y}, sensor_height)) grid.Set({x, y}, kOccupied);
    }
  }
  return grid;
}

WorldModel LoadWorld(std::string_view text) {
  std::vector<std::string_view> lines;
  std::size_t start = 0;
  while (start <= text.size()) {
    const std::size_t end = text.find('\n', start);
    const std::size_t stop = end == std::string_view::npos ? text.size() : end;
    lines.push_back(StripLineEnd(text.substr(start, stop - start)));
    if (end == std::string_view::npos) break;
    start = end + 1;
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();

  if (lines.empty()) throw ParseError("empty world file", 1, 1);

  constexpr std::string_view kKeyword = "resolution";
  std::string_view header = lines.front();
  if (header.substr(0, kKeyword.size()) != kKeyword ||
      header.size() <= kKeyword.size() ||
      (header[kKeyword.size()] != ' ' && header[kKeyword.size()] != '\t')) {
    throw ParseError("expected 'resolution <meters>'", 1, 1);
  }
  std::string_view number = header.substr(kKeyword.size());
  const std::size_t first = number.find_first_not_of(" \t");
  const int number_column = static_cast<int>(kKeyword.size() + first) + 1;
  number.remove_prefix(first);
  double resolution = 0.0;
  const auto [ptr, ec] =
      std::from_chars(number.data(), number.data() + number.size(), resolution);
  if (ec != std::errc() || ptr != number.data() + number.size() ||
      !(resolution > 0.0) || !std::isfinite(resolution)) {
    throw ParseError("resolution must be a positive number", 1, number_column);
  }

  if (lines.size() < 2) throw ParseError("world has no rows", 2, 1);
  const int height = static_cast<int>(lines.size()) - 1;
  const int width = static_cast<int>(lines[1].size());
  if (width == 0) throw ParseError("empty row", 2, 1);

  std::vector<double> heights(static_cast<std::size_t>(width) * height, 0.0);
  for (int row = 0; row < height; ++row) {
    const int file_line = row + 2;
    const std::string_view line = lines[row + 1];
    if (static_cast<int>(line.size()) != width) {
      throw ParseError("row has " + std::to_string(line.size()) +
                           " cells, expected " + std::to_string(width),
                       file_line,
                       static_cast<int>(std::min<std::size_t>(line.size(),
                                                              width)) + 1);
    }
    const int y = height - 1 - row;
    for (int x = 0; x < width; ++x) {
      double h = 0.0;
      switch (line[x]) {
        case '.':
          h = 0.0;
          break;
        case '#':
          h = kTallObstacleHeight;
          break;
        case 'x':
          h = kLowObstacleHeight;
          break;
        default:
          throw ParseError(std::string("unknown cell character '") + line[x] +
                               "'",
                           file_line, x + 1);
      }
      heights[static_cast<std::size_t>(y) * width + x] = h;
    }
  }
  if (std::none_of(heights.begin(), heights.end(),
                   [](double h) { return h <= 0.0; })) {
    throw ParseError("world has no free cell", 2, 1);
  }
  return WorldModel(width, height, resolution, std::move(heights));
}

WorldModel LoadWorldFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw std::runtime_error("cannot open world file '" + path.string() + "'");
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return LoadWorld(buffer.str());
}

OccupancyGrid MergeMaps(std::span<const OccupancyGrid> maps,
                        std::size_t frame) {
  if (frame >= maps.size()) {
    throw std::out_of_range("merge reference frame index out of range");
  }
  const OccupancyGrid& reference = maps[frame];
  int min_x = std::numeric_limits<int>::max();
  int min_y = std::numeric_limits<int>::max();
  int max_x = std::numeric_limits<int>::min();
  int max_y = std::numeric_limits<int>::min();
  for (const OccupancyGrid& map : maps) {
    if (!SameLattice(reference, map)) {
      throw GeometryMismatch("maps to merge must share resolution and lattice");
    }
    const CellIndex offset = LatticeOffset(reference, map);
    min_x = std::min(min_x, offset.x);
    min_y = std::min(min_y, offset.y);
    max_x = std::max(max_x, offset.x + map.width());
    max_y = std::max(max_y, offset.y + map.height());
  }
  const double res = reference.resolution();
  OccupancyGrid merged(max_x - min_x, max_y - min_y, res,
                       {reference.origin().x + min_x * res,
                        reference.origin().y + min_y * res});
  std::vector<Occupancy> cells(merged.cells().begin(), merged.cells().end());
  for (const OccupancyGrid& map : maps) {
    const CellIndex offset = LatticeOffset(reference, map);
    for (int y = 0; y < map.height(); ++y) {
      for (int x = 0; x < map.width(); ++x) {
        const Occupancy v = map[{x, y}];
        const std::size_t out =
            merged.Index({x + offset.x - min_x, y + offset.y - min_y});
        if (Rank(v) > Rank(cells[out])) cells[out] = v;
      }
    }
  }
  return OccupancyGrid(merged.width(), merged.height(), res, merged.origin(),
                       std::move(cells));
}

OccupancyGrid UavPriorMap(const WorldModel& world, const UavSweep& sweep) {
  if (!(sweep.min_height > 0.0) || !(sweep.swath > 0.0)) {
    throw std::invalid_argument("UAV min_height and swath must be positive");
  }
  const double footprint =
      sweep.footprint > 0.0 ? sweep.footprint : 0.5 * sweep.swath;
  const double res = world.resolution();
  const double extent_y = world.height() * res;
  OccupancyGrid prior = world.BlankGrid(kUnknown);
  for (double row_y = 0.5 * sweep.swath; row_y - footprint < extent_y;
       row_y += sweep.swath) {
    for (int y = 0; y < world.height(); ++y) {
      const double center_y = (y + 0.5) * res;
      if (std::abs(center_y - row_y) > footprint) continue;
      for (int x = 0; x < world.width(); ++x) {
        prior.Set({x, y}, world.ObstacleHeight({x, y}) >= sweep.min_height
                              ? kOccupied
                              : kFree);
      }
    }
  }
  return prior;
}

OccupancyGrid UavPriorMap(const WorldModel& world, double min_height,
                          double swath) {
  return UavPriorMap(world, UavSweep{min_height, swath, 0.0});
}

}  // namespace coexplore
