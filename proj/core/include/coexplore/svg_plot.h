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

#ifndef COEXPLORE_SVG_PLOT_H_
#define COEXPLORE_SVG_PLOT_H_

#include <optional>
#include <string>
#include <vector>

namespace coexplore {

struct PlotSeries {
  std::string name;
  std::vector<double> x;
  std::vector<double> y;
  std::string color = "#1f77b4";
  bool dashed = false;
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  std::vector<PlotSeries> series;
  std::optional<double> threshold;  // horizontal reference line
  int width = 640;
  int height = 400;
};

// Standalone SVG document with axes, ticks, a legend and one polyline per
// series.
std::string RenderLineChart(const LineChart& chart);

// Colors cycled across series.
const std::string& SeriesColor(std::size_t index);

}  // namespace coexplore

#endif  // COEXPLORE_SVG_PLOT_H_
