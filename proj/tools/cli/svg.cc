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


#include "cli/svg.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace ucoalign::cli {
namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 440;
constexpr double kLeft = 80;
constexpr double kRight = 190;  // room for the legend
constexpr double kTop = 40;
constexpr double kBottom = 60;

constexpr std::array<const char*, 8> kPalette = {
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
    "#9467bd", "#8c564b", "#e377c2", "#17becf"};

std::string escape(const std::string& text) {
  std::string out;
  for (char c : text) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Range {
  double lo = std::numeric_limits<double>::infinity();
  double hi = -std::numeric_limits<double>::infinity();

  void add(double v) {
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  void settle() {
    if (!(lo <= hi)) {
      lo = 0.0;
      hi = 1.0;
    }
    if (hi - lo < 1e-12 * std::max(1.0, std::abs(hi))) {
      const double pad = std::max(0.5, 0.05 * std::abs(hi));
      lo -= pad;
      hi += pad;
    }
  }
};

// Round step (1, 2 or 5 times a power of ten) giving about `target` ticks.
double nice_step(double span, int target) {
  const double raw = span / target;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  const double r = raw / mag;
  return (r < 1.5 ? 1.0 : r < 3.5 ? 2.0 : r < 7.5 ? 5.0 : 10.0) * mag;
}

std::string tick_label(double v) {
  if (std::abs(v) < 1e-12) return "0";
  return fmt::format("{:.4g}", v);
}

}  // namespace

std::string render_svg(const LineChart& chart) {
  auto to_x = [&](double x) { return chart.log_x ? std::log10(x) : x; };
  auto usable = [&](double x, double y) {
    return std::isfinite(x) && std::isfinite(y) && (!chart.log_x || x > 0.0);
  };

  Range xr, yr;
  for (const Series& s : chart.series) {
    for (const auto& [x, y] : s.points) {
      if (!usable(x, y)) continue;
      xr.add(to_x(x));
      yr.add(y);
    }
  }
  xr.settle();
  yr.settle();
  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double x) { return kLeft + (x - xr.lo) / (xr.hi - xr.lo) * plot_w; };
  auto py = [&](double y) {
    return kTop + plot_h - (y - yr.lo) / (yr.hi - yr.lo) * plot_h;
  };

  std::string svg = fmt::format(
      "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" "
      "viewBox=\"0 0 {0} {1}\" font-family=\"sans-serif\" font-size=\"12\">\n"
      "<rect width=\"{0}\" height=\"{1}\" fill=\"white\"/>\n",
      kWidth, kHeight);
  svg += fmt::format(
      "<text x=\"{:.1f}\" y=\"24\" text-anchor=\"middle\" font-size=\"15\">{}"
      "</text>\n",
      kLeft + plot_w / 2, escape(chart.title));

  // Axes.
  svg += fmt::format(
      "<g stroke=\"black\" fill=\"none\">"
      "<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\"/>"
      "<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{3:.1f}\"/></g>\n",
      kLeft, kTop + plot_h, kLeft + plot_w, kTop);

  // Ticks. A log axis gets one tick per decade.
  svg += "<g class=\"ticks\">\n";
  const double xstep = chart.log_x ? std::max(1.0, std::round(nice_step(xr.hi - xr.lo, 6)))
                                   : nice_step(xr.hi - xr.lo, 6);
  for (double t = std::ceil(xr.lo / xstep - 1e-9) * xstep; t <= xr.hi + 1e-9 * xstep;
       t += xstep) {
    const std::string label =
        chart.log_x ? tick_label(std::pow(10.0, t)) : tick_label(t);
    svg += fmt::format(
        "<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{0:.1f}\" y2=\"{2:.1f}\" "
        "stroke=\"black\"/><text x=\"{0:.1f}\" y=\"{3:.1f}\" "
        "text-anchor=\"middle\">{4}</text>\n",
        px(t), kTop + plot_h, kTop + plot_h + 5, kTop + plot_h + 19, label);
  }
  const double ystep = nice_step(yr.hi - yr.lo, 6);
  for (double t = std::ceil(yr.lo / ystep - 1e-9) * ystep; t <= yr.hi + 1e-9 * ystep;
       t += ystep) {
    svg += fmt::format(
        "<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" "
        "stroke=\"black\"/><text x=\"{3:.1f}\" y=\"{4:.1f}\" "
        "text-anchor=\"end\">{5}</text>\n",
        kLeft - 5, py(t), kLeft, kLeft - 8, py(t) + 4, tick_label(t));
  }
  svg += "</g>\n";
  svg += fmt::format(
      "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\">{}</text>\n",
      kLeft + plot_w / 2, kHeight - 18, escape(chart.x_label));
  svg += fmt::format(
      "<text x=\"18\" y=\"{0:.1f}\" text-anchor=\"middle\" "
      "transform=\"rotate(-90 18 {0:.1f})\">{1}</text>\n",
      kTop + plot_h / 2, escape(chart.y_label));

  // Series and legend.
  for (std::size_t i = 0; i < chart.series.size(); ++i) {
    const Series& s = chart.series[i];
    const char* color = kPalette[i % kPalette.size()];
    std::string points;
    for (const auto& [x, y] : s.points) {
      if (!usable(x, y)) continue;
      if (!points.empty()) points += ' ';
      points += fmt::format("{:.2f},{:.2f}", px(to_x(x)), py(y));
    }
    svg += fmt::format(
        "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\" "
        "points=\"{}\"><title>{}</title></polyline>\n",
        color, points, escape(s.label));
    const double ly = kTop + 10 + 20 * static_cast<double>(i);
    const double lx = kWidth - kRight + 20;
    svg += fmt::format(
        "<line x1=\"{0:.1f}\" y1=\"{1:.1f}\" x2=\"{2:.1f}\" y2=\"{1:.1f}\" "
        "stroke=\"{3}\" stroke-width=\"2\"/><text x=\"{4:.1f}\" y=\"{5:.1f}\">"
        "{6}</text>\n",
        lx, ly, lx + 24, color, lx + 30, ly + 4, escape(s.label));
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace ucoalign::cli
