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

#include "frenet_avoid/vehicle_model.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "frenet_avoid/error.h"
#include "frenet_avoid/geometry.h"

namespace frenet_avoid::vehicle {
namespace {

void RequirePositive(double value, const char* name) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    throw Error(ErrorCode::kInvalidConfig,
                std::string(name) + " must be positive");
  }
}

void RequirePositiveStep(double dt) {
  if (!(dt > 0.0) || !std::isfinite(dt)) {
    throw Error(ErrorCode::kInvalidArgument, "dt must be positive");
  }
}

}  // namespace

void VehicleParams::Validate() const {
  RequirePositive(wheelbase, "wheelbase");
  RequirePositive(max_steering, "max_steering");
  RequirePositive(max_accel, "max_accel");
  RequirePositive(max_steering_rate, "max_steering_rate");
  RequirePositive(width, "width");
}

tracker::ControlCommand ApplyLimits(const tracker::ControlCommand& previous,
                                    const tracker::ControlCommand& command,
                                    double dt, const VehicleParams& params) {
  RequirePositiveStep(dt);
  const double max_turn = params.max_steering_rate * dt;
  double steering =
      std::clamp(command.steering, previous.steering - max_turn,
                 previous.steering + max_turn);
  steering = std::clamp(steering, -params.max_steering, params.max_steering);
  const double max_change = params.max_accel * dt;
  const double speed =
      std::max(0.0, std::clamp(command.target_speed,
                               previous.target_speed - max_change,
                               previous.target_speed + max_change));
  return {steering, speed};
}

VehicleState Step(const VehicleState& state,
                  const tracker::ControlCommand& command, double dt,
                  const VehicleParams& params) {
  RequirePositiveStep(dt);
  const double steering =
      std::clamp(command.steering, -params.max_steering, params.max_steering);
  const double v = state.speed;
  VehicleState next;
  next.position = state.position + v * dt *
                                       Eigen::Vector2d(std::cos(state.heading),
                                                       std::sin(state.heading));
  next.heading = geometry::NormalizeAngle(
      state.heading + v / params.wheelbase * std::tan(steering) * dt);
  if (v == 0.0) next.heading = state.heading;
  const double max_change = params.max_accel * dt;
  next.speed = std::max(0.0, std::clamp(command.target_speed, v - max_change,
                                        v + max_change));
  return next;
}

}  // namespace frenet_avoid::vehicle
