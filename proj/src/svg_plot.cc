/*
 * Copyright 2026 The frenet_avoid Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#include "frenet_avoid/svg_plot.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "frenet_avoid/error.h"

namespace frenet_avoid::plot {
namespace {

constexpr double kWidth = 900.0;
constexpr double kHeight = 360.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 20.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;

std::string Format(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof(buffer), format, args...);
  return buffer;
}

std::string Escape(const std::string& text) {
  std::string out;
  for (const char c : text) {
    switch (c) {
      case '&':
        out += "&amp;";
        break;
      case '<':
        out += "&lt;";
        break;
      case '>':
        out += "&gt;";
        break;
      default:
        out += c;
    }
  }
  return out;
}

// Round tick step: 1, 2 or 5 times a power of ten.
double NiceStep(double span, int target_ticks) {
  const double raw = span / target_ticks;
  const double magnitude = std::pow(10.0, std::floor(std::log10(raw)));
  for (const double m : {1.0, 2.0, 5.0}) {
    if (m * magnitude >= raw) return m * magnitude;
  }
  return 10.0 * magnitude;
}

}  // namespace

const char* PhaseColor(sim::PhaseLabel label) {
  switch (label) {
    case sim::PhaseLabel::kStraight:
      return kStraightColor;
    case sim::PhaseLabel::kAvoidLeft:
      return kLeftColor;
    case sim::PhaseLabel::kReturnRight:
      return kRightColor;
  }
  return "#000000";
}

std::string SteeringSvg(std::span<const double> times,
                        std::span<const double> steering,
                        std::span<const sim::PhaseSegment> phases,
                        const std::string& title) {
  if (times.empty() || times.size() != steering.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "steering plot needs matching nonempty series");
  }
  constexpr double kRadToDeg = 180.0 / std::numbers::pi;
  const double t0 = times.front();
  const double t1 = std::max(times.back(), t0 + 1e-6);
  double peak = 5.0;
  for (const double d : steering) peak = std::max(peak, std::abs(d) * kRadToDeg);
  const double step_y = NiceStep(2.0 * peak, 6);
  const double y_max = std::ceil(peak / step_y) * step_y;

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  const auto px = [&](double t) { return kLeft + (t - t0) / (t1 - t0) * plot_w; };
  const auto py = [&](double deg) {
    return kTop + (y_max - deg) / (2.0 * y_max) * plot_h;
  };

  std::string svg = Format(
      "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"%.0f\" "
      "height=\"%.0f\" viewBox=\"0 0 %.0f %.0f\" font-family=\"sans-serif\" "
      "font-size=\"12\">\n",
      kWidth, kHeight, kWidth, kHeight);
  svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  svg += Format("<text x=\"%.1f\" y=\"24\" font-size=\"15\">%s</text>\n",
                kLeft, Escape(title).c_str());

  for (const sim::PhaseSegment& s : phases) {
    const double x0 = px(std::clamp(s.start, t0, t1));
    const double x1 = px(std::clamp(s.end, t0, t1));
    svg += Format(
        "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
        "fill=\"%s\" fill-opacity=\"0.25\"><title>%s %.2f-%.2f s</title>"
        "</rect>\n",
        x0, kTop, std::max(0.0, x1 - x0), plot_h, PhaseColor(s.label),
        std::string(sim::PhaseLabelName(s.label)).c_str(), s.start, s.end);
  }

  // Axes and grid.
  for (double v = -y_max; v <= y_max + 1e-9; v += step_y) {
    svg += Format(
        "<line x1=\"%.2f\" y1=\"%.2f\" x2=\"%.2f\" y2=\"%.2f\" "
        "stroke=\"#cccccc\" stroke-width=\"0.5\"/>\n"
        "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"end\">%g</text>\n",
        kLeft, py(v), kWidth - kRight, py(v), kLeft - 6.0, py(v) + 4.0,
        std::abs(v) < 1e-9 ? 0.0 : v);
  }
  const double step_t = NiceStep(t1 - t0, 10);
  for (double t = std::ceil(t0 / step_t) * step_t; t <= t1 + 1e-9;
       t += step_t) {
    svg += Format(
        "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">%g</text>\n",
        px(t), kHeight - kBottom + 18.0, t);
  }
  svg += Format(
      "<rect x=\"%.2f\" y=\"%.2f\" width=\"%.2f\" height=\"%.2f\" "
      "fill=\"none\" stroke=\"black\"/>\n",
      kLeft, kTop, plot_w, plot_h);
  svg += Format(
      "<text x=\"%.2f\" y=\"%.2f\" text-anchor=\"middle\">time (s)</text>\n",
      kLeft + plot_w / 2.0, kHeight - 10.0);
  svg += Format(
      "<text x=\"16\" y=\"%.2f\" text-anchor=\"middle\" "
      "transform=\"rotate(-90 16 %.2f)\">steering (deg)</text>\n",
      kTop + plot_h / 2.0, kTop + plot_h / 2.0);

  svg += "<polyline fill=\"none\" stroke=\"black\" stroke-width=\"1.5\" points=\"";
  for (std::size_t i = 0; i < times.size(); ++i) {
    svg += Format("%s%.2f,%.2f", i == 0 ? "" : " ", px(times[i]),
                  py(steering[i] * kRadToDeg));
  }
  svg += "\"/>\n";

  // Legend.
  double lx = kWidth - kRight - 300.0;
  for (const sim::PhaseLabel label :
       {sim::PhaseLabel::kStraight, sim::PhaseLabel::kAvoidLeft,
        sim::PhaseLabel::kReturnRight}) {
    svg += Format(
        "<rect x=\"%.1f\" y=\"14\" width=\"12\" height=\"12\" fill=\"%s\" "
        "fill-opacity=\"0.5\"/>\n<text x=\"%.1f\" y=\"24\">%s</text>\n",
        lx, PhaseColor(label), lx + 16.0,
        std::string(sim::PhaseLabelName(label)).c_str());
    lx += 100.0;
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace frenet_avoid::plot
