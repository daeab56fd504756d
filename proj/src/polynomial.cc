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

#include "frenet_avoid/polynomial.h"

#include <cmath>
#include <string>

#include "frenet_avoid/error.h"

namespace frenet_avoid::planner {
namespace {

void RequireHorizon(double horizon) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw Error(ErrorCode::kNonPositiveHorizon,
                "horizon must be positive, got " + std::to_string(horizon));
  }
}

}  // namespace

QuinticPolynomial SolveQuintic(double x0, double v0, double a0, double x1,
                               double v1, double a1, double horizon) {
  RequireHorizon(horizon);
  const double t = horizon;
  const double t2 = t * t;
  const double t3 = t2 * t;
  const double h = x1 - x0;
  return QuinticPolynomial({
      x0,
      v0,
      0.5 * a0,
      (20.0 * h - (8.0 * v1 + 12.0 * v0) * t - (3.0 * a0 - a1) * t2) /
          (2.0 * t3),
      (-30.0 * h + (14.0 * v1 + 16.0 * v0) * t + (3.0 * a0 - 2.0 * a1) * t2) /
          (2.0 * t3 * t),
      (12.0 * h - 6.0 * (v1 + v0) * t + (a1 - a0) * t2) / (2.0 * t3 * t2),
  });
}

QuarticPolynomial SolveQuartic(double x0, double v0, double a0, double v1,
                               double a1, double horizon) {
  RequireHorizon(horizon);
  const double t = horizon;
  const double velocity_gap = v1 - v0 - a0 * t;
  const double accel_gap = a1 - a0;
  const double a4 = (accel_gap * t - 2.0 * velocity_gap) / (4.0 * t * t * t);
  const double a3 = (velocity_gap - 4.0 * t * t * t * a4) / (3.0 * t * t);
  return QuarticPolynomial({x0, v0, 0.5 * a0, a3, a4});
}

}  // namespace frenet_avoid::planner
