// Copyright 2026 The ucoalign Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.


#ifndef UCOALIGN_TOOLS_CLI_SVG_H_
#define UCOALIGN_TOOLS_CLI_SVG_H_

#include <string>
#include <utility>
#include <vector>

namespace ucoalign::cli {

struct Series {
  std::string label;
  std::vector<std::pair<double, double>> points;  // (x, y)
};

struct LineChart {
  std::string title;
  std::string x_label;
  std::string y_label;
  bool log_x = false;
  std::vector<Series> series;
};

// A standalone SVG document: axes with ticks, a legend and one <polyline> per
// series (possibly with no points). Non-finite points, and non-positive x on a
// log axis, are dropped.
std::string render_svg(const LineChart& chart);

}  // namespace ucoalign::cli

#endif  // UCOALIGN_TOOLS_CLI_SVG_H_
