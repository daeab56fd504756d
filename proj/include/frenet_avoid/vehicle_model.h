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

#ifndef FRENET_AVOID_VEHICLE_MODEL_H_
#define FRENET_AVOID_VEHICLE_MODEL_H_

#include <Eigen/Core>

#include "frenet_avoid/tracker.h"

namespace frenet_avoid::vehicle {

struct VehicleState {
  Eigen::Vector2d position = Eigen::Vector2d::Zero();
  double heading = 0.0;
  double speed = 0.0;
};

struct VehicleParams {
  double wheelbase = 1.7;          // m
  double max_steering = 0.6;       // rad
  double max_accel = 2.0;          // m/s^2
  double max_steering_rate = 1.0;  // rad/s
  double width = 1.2;              // m, only used for clearance reporting

  void Validate() const;
};

// Clamps steering to +-max_steering and to within max_steering_rate * dt of
// the previous command; limits the speed change to max_accel * dt. Negative
// speeds are clamped to zero.
tracker::ControlCommand ApplyLimits(const tracker::ControlCommand& previous,
                                    const tracker::ControlCommand& command,
                                    double dt, const VehicleParams& params);

// Forward-Euler kinematic bicycle about the rear axle. Position and heading
// advance with the current speed; the speed then moves toward the command by
// at most max_accel * dt.
VehicleState Step(const VehicleState& state,
                  const tracker::ControlCommand& command, double dt,
                  const VehicleParams& params);

}  // namespace frenet_avoid::vehicle

#endif  // FRENET_AVOID_VEHICLE_MODEL_H_
