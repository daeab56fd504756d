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

#include "frenet_avoid/tracker.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "frenet_avoid/error.h"

namespace frenet_avoid::tracker {

void TrackerConfig::Validate() const {
  if (!(base_lookahead > 0.0) || !std::isfinite(base_lookahead)) {
    throw Error(ErrorCode::kInvalidConfig, "base_lookahead must be positive");
  }
  if (!(speed_gain >= 0.0) || !std::isfinite(speed_gain)) {
    throw Error(ErrorCode::kInvalidConfig, "speed_gain must be non-negative");
  }
  if (!(wheelbase > 0.0) || !std::isfinite(wheelbase)) {
    throw Error(ErrorCode::kInvalidConfig, "wheelbase must be positive");
  }
  if (!(max_steering > 0.0 && max_steering < std::numbers::pi / 2)) {
    throw Error(ErrorCode::kInvalidConfig,
                "max_steering must lie in (0, pi/2)");
  }
}

double LookaheadDistance(double speed, const TrackerConfig& config) {
  return config.base_lookahead + config.speed_gain * std::max(0.0, speed);
}

std::size_t NearestSample(std::span<const planner::TrajectorySample> trajectory,
                          const Eigen::Vector2d& position) {
  if (trajectory.empty()) {
    throw Error(ErrorCode::kEmptyTrajectory, "trajectory has no samples");
  }
  std::size_t nearest = 0;
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < trajectory.size(); ++i) {
    const double d = (trajectory[i].position - position).squaredNorm();
    if (d < best) {
      best = d;
      nearest = i;
    }
  }
  return nearest;
}

TargetPoint FindTargetPoint(
    std::span<const planner::TrajectorySample> trajectory,
    const PlanarPose& pose, double lookahead) {
  const std::size_t nearest = NearestSample(trajectory, pose.position);
  double traveled = 0.0;
  for (std::size_t i = nearest; i < trajectory.size(); ++i) {
    if (i > nearest) {
      traveled += (trajectory[i].position - trajectory[i - 1].position).norm();
    }
    if (traveled >= lookahead) return {i, trajectory[i].position};
  }
  return {trajectory.size() - 1, trajectory.back().position};
}

double PurePursuitSteering(const PlanarPose& pose,
                           const Eigen::Vector2d& target,
                           const TrackerConfig& config) {
  const Eigen::Vector2d delta = target - pose.position;
  const double distance = delta.norm();
  if (distance < 1e-9) {
    throw Error(ErrorCode::kCoincidentTarget,
                "look-ahead target coincides with the vehicle position");
  }
  const double alpha = std::atan2(delta.y(), delta.x()) - pose.heading;
  const double steering =
      std::atan(2.0 * config.wheelbase * std::sin(alpha) / distance);
  return std::clamp(steering, -config.max_steering, config.max_steering);
}

ControlCommand Track(std::span<const planner::TrajectorySample> trajectory,
                     const PlanarPose& pose, double speed,
                     const TrackerConfig& config) {
  const TargetPoint target =
      FindTargetPoint(trajectory, pose, LookaheadDistance(speed, config));
  ControlCommand command;
  command.target_speed = trajectory[target.index].speed;
  // A target on top of the vehicle (end of a very short plan) keeps the
  // wheels straight instead of failing.
  if ((target.position - pose.position).norm() >= 1e-9) {
    command.steering = PurePursuitSteering(pose, target.position, config);
  }
  return command;
}

}  // namespace frenet_avoid::tracker
