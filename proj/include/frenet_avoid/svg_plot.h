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

#ifndef FRENET_AVOID_SVG_PLOT_H_
#define FRENET_AVOID_SVG_PLOT_H_

#include <span>
#include <string>

#include "frenet_avoid/scenario.h"

namespace frenet_avoid::plot {

inline constexpr const char* kStraightColor = "#2ca02c";  // green
inline constexpr const char* kLeftColor = "#1f77b4";      // blue
inline constexpr const char* kRightColor = "#d62728";     // red

const char* PhaseColor(sim::PhaseLabel label);

// Steering angle (degrees) over time with the phase segments shaded behind
// the curve. Output is deterministic for identical inputs.
std::string SteeringSvg(std::span<const double> times,
                        std::span<const double> steering,
                        std::span<const sim::PhaseSegment> phases,
                        const std::string& title);

}  // namespace frenet_avoid::plot

#endif  // FRENET_AVOID_SVG_PLOT_H_
