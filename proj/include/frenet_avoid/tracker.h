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

#ifndef FRENET_AVOID_TRACKER_H_
#define FRENET_AVOID_TRACKER_H_

#include <Eigen/Core>
#include <cstddef>
#include <span>

#include "frenet_avoid/frenet_planner.h"

namespace frenet_avoid::tracker {

struct TrackerConfig {
  double base_lookahead = 2.0;  // L0, m
  double speed_gain = 0.5;      // k_v, s
  double wheelbase = 1.7;       // m
  double max_steering = 0.6;    // rad

  void Validate() const;
};

struct ControlCommand {
  double steering = 0.0;  // rad, positive turns left
  double target_speed = 0.0;
};

struct PlanarPose {
  Eigen::Vector2d position = Eigen::Vector2d::Zero();
  double heading = 0.0;
};

struct TargetPoint {
  std::size_t index = 0;
  Eigen::Vector2d position = Eigen::Vector2d::Zero();
};

// L0 + k_v * speed. Negative speeds are treated as zero.
double LookaheadDistance(double speed, const TrackerConfig& config);

// Index of the sample closest to the pose.
std::size_t NearestSample(std::span<const planner::TrajectorySample> trajectory,
                          const Eigen::Vector2d& position);

// First sample whose distance along the polyline from the nearest sample is at
// least `lookahead`; the last sample when the trajectory is too short.
// Throws kEmptyTrajectory.
TargetPoint FindTargetPoint(
    std::span<const planner::TrajectorySample> trajectory,
    const PlanarPose& pose, double lookahead);

// Steering of the circular arc tangent to the heading through the target,
// clamped to +-max_steering. Throws kCoincidentTarget when target == pose.
double PurePursuitSteering(const PlanarPose& pose,
                           const Eigen::Vector2d& target,
                           const TrackerConfig& config);

// Full tracker step: target lookup, steering, and the sampled speed at the
// target as the speed command.
ControlCommand Track(std::span<const planner::TrajectorySample> trajectory,
                     const PlanarPose& pose, double speed,
                     const TrackerConfig& config);

}  // namespace frenet_avoid::tracker

#endif  // FRENET_AVOID_TRACKER_H_
