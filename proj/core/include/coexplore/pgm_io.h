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

#ifndef COEXPLORE_PGM_IO_H_
#define COEXPLORE_PGM_IO_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "coexplore/occupancy_grid.h"

namespace coexplore {

inline constexpr std::uint8_t kFreeIntensity = 255;
inline constexpr std::uint8_t kOccupiedIntensity = 0;
inline constexpr std::uint8_t kUnknownIntensity = 127;

std::uint8_t OccupancyToIntensity(Occupancy value);

// Intensities in grid order (row 0 is y = 0).
std::vector<std::uint8_t> RenderIntensity(const OccupancyGrid& map);

// Binary P5 image, top row = highest y. Returns the bytes of the whole file.
std::string EncodePgm(const OccupancyGrid& map);
// Throws ParseError on malformed input. Geometry other than size comes from
// the caller because PGM carries no georeference.
OccupancyGrid DecodePgm(const std::string& bytes, double resolution,
                        Point2 origin);

// Writes <path> and a sidecar <path without extension>.yaml holding
// resolution and origin.
void WriteMap(const OccupancyGrid& map, const std::filesystem::path& path);
// Reads a map written by WriteMap, sidecar included.
OccupancyGrid ReadMap(const std::filesystem::path& path);

}  // namespace coexplore

#endif  // COEXPLORE_PGM_IO_H_
