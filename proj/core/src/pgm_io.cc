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

#include "coexplore/pgm_io.h"

#include <fmt/format.h>

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "coexplore/errors.h"

namespace coexplore {
namespace {

Occupancy IntensityToOccupancy(std::uint8_t intensity) {
  if (intensity >= 192) return kFree;
  if (intensity < 64) return kOccupied;
  return kUnknown;
}

std::string ReadAll(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Reads the next whitespace-separated header token, skipping '#' comments.
std::string NextToken(const std::string& bytes, std::size_t& pos) {
  while (pos < bytes.size()) {
    if (bytes[pos] == '#') {
      while (pos < bytes.size() && bytes[pos] != '\n') ++pos;
    } else if (std::isspace(static_cast<unsigned char>(bytes[pos]))) {
      ++pos;
    } else {
      break;
    }
  }
  const std::size_t start = pos;
  while (pos < bytes.size() &&
         !std::isspace(static_cast<unsigned char>(bytes[pos]))) {
    ++pos;
  }
  return bytes.substr(start, pos - start);
}

int ParsePositive(const std::string& token, int field) {
  try {
    std::size_t used = 0;
    const int value = std::stoi(token, &used);
    if (used == token.size() && value >= 0) return value;
  } catch (const std::exception&) {
  }
  throw ParseError("bad PGM header field '" + token + "'", 1, field);
}

}  // namespace

std::uint8_t OccupancyToIntensity(Occupancy value) {
  switch (value) {
    case kFree:
      return kFreeIntensity;
    case kOccupied:
      return kOccupiedIntensity;
    default:
      return kUnknownIntensity;
  }
}

std::vector<std::uint8_t> RenderIntensity(const OccupancyGrid& map) {
  std::vector<std::uint8_t> pixels;
  pixels.reserve(map.size());
  for (Occupancy v : map.cells()) pixels.push_back(OccupancyToIntensity(v));
  return pixels;
}

std::string EncodePgm(const OccupancyGrid& map) {
  std::string out = fmt::format("P5\n{} {}\n255\n", map.width(), map.height());
  out.reserve(out.size() + map.size());
  for (int y = map.height() - 1; y >= 0; --y) {
    for (int x = 0; x < map.width(); ++x) {
      out.push_back(static_cast<char>(OccupancyToIntensity(map[{x, y}])));
    }
  }
  return out;
}

OccupancyGrid DecodePgm(const std::string& bytes, double resolution,
                        Point2 origin) {
  std::size_t pos = 0;
  if (NextToken(bytes, pos) != "P5") throw ParseError("not a P5 image", 1, 1);
  const int width = ParsePositive(NextToken(bytes, pos), 2);
  const int height = ParsePositive(NextToken(bytes, pos), 3);
  const int max_value = ParsePositive(NextToken(bytes, pos), 4);
  if (max_value != 255) throw ParseError("only 8-bit PGM supported", 1, 4);
  ++pos;  // single whitespace byte before the raster
  const std::size_t expected = static_cast<std::size_t>(width) * height;
  if (bytes.size() < pos + expected) {
    throw ParseError("truncated PGM raster", 1, 5);
  }
  std::vector<Occupancy> cells(expected);
  for (int row = 0; row < height; ++row) {
    const int y = height - 1 - row;
    for (int x = 0; x < width; ++x) {
      cells[static_cast<std::size_t>(y) * width + x] = IntensityToOccupancy(
          static_cast<std::uint8_t>(bytes[pos + row * width + x]));
    }
  }
  return OccupancyGrid(width, height, resolution, origin, std::move(cells));
}

void WriteMap(const OccupancyGrid& map, const std::filesystem::path& path) {
  std::ofstream image(path, std::ios::binary);
  if (!image) throw std::runtime_error("cannot write '" + path.string() + "'");
  image << EncodePgm(map);

  std::filesystem::path sidecar = path;
  sidecar.replace_extension(".yaml");
  std::ofstream meta(sidecar);
  if (!meta) {
    throw std::runtime_error("cannot write '" + sidecar.string() + "'");
  }
  meta << fmt::format(
      "image: {}\nresolution: {}\norigin: [{}, {}, 0.0]\nwidth: {}\n"
      "height: {}\n",
      path.filename().string(), map.resolution(), map.origin().x,
      map.origin().y, map.width(), map.height());
}

OccupancyGrid ReadMap(const std::filesystem::path& path) {
  std::filesystem::path sidecar = path;
  sidecar.replace_extension(".yaml");
  double resolution = 0.0;
  Point2 origin;
  std::istringstream meta(ReadAll(sidecar));
  std::string line;
  while (std::getline(meta, line)) {
    if (line.rfind("resolution:", 0) == 0) {
      resolution = std::stod(line.substr(11));
    } else if (line.rfind("origin:", 0) == 0) {
      const std::size_t open = line.find('[');
      const std::size_t comma = line.find(',', open);
      if (open == std::string::npos || comma == std::string::npos) {
        throw ParseError("bad origin line in " + sidecar.string(), 0, 1);
      }
      origin.x = std::stod(line.substr(open + 1, comma - open - 1));
      origin.y = std::stod(line.substr(comma + 1));
    }
  }
  if (!(resolution > 0.0)) {
    throw ParseError("missing resolution in " + sidecar.string(), 0, 1);
  }
  return DecodePgm(ReadAll(path), resolution, origin);
}

}  // namespace coexplore
