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

#ifndef FRENET_AVOID_PERCEPTION_SIM_H_
#define FRENET_AVOID_PERCEPTION_SIM_H_

#include <Eigen/Core>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "frenet_avoid/geometry.h"

namespace frenet_avoid::perception {

using Rng = std::mt19937_64;

// Static obstacle modeled as an upright cylinder standing on the ground.
struct Obstacle {
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double radius = 0.5;
  double height = 1.5;
  std::string class_label = "obstacle";

  void Validate() const;
};

struct ErrorKnot {
  double distance = 0.0;  // ground truth, meters
  double error = 0.0;     // mean absolute error, meters
};

// Measured accuracy of one monocular depth model: mean absolute error of the
// longitudinal ("depth") and lateral ("offset") distance, and its frame rate.
struct DepthErrorProfile {
  std::string model_name;
  std::vector<ErrorKnot> depth_errors;
  std::vector<ErrorKnot> offset_errors;
  double fps = 20.0;

  void Validate() const;
};

struct ObstacleEstimate {
  Eigen::Vector2d center = Eigen::Vector2d::Zero();
  double radius = 0.5;
  double timestamp = 0.0;
};

// Names accepted by BuiltinProfile, in display order.
const std::vector<std::string>& BuiltinProfileNames();

// dav2 (Depth Anything V2), midas, mono2 (Monodepth2) and the noiseless
// `ideal` baseline. Throws kUnknownModel for anything else.
DepthErrorProfile BuiltinProfile(std::string_view name);

// Piecewise-linear interpolation of a knot table, clamped to the end values.
double InterpolateError(std::span<const ErrorKnot> table, double distance);

// Mean absolute depth error at `distance` meters.
double ErrorAt(const DepthErrorProfile& profile, double distance);
// Mean absolute offset error at lateral offset |offset|.
double OffsetErrorAt(const DepthErrorProfile& profile, double offset);

// Zero-mean Gaussian perturbation whose expected magnitude equals the table
// value, i.e. sigma = error * sqrt(pi / 2). Depth results are clamped to
// stay above 1 cm.
double SampleDepth(const DepthErrorProfile& profile, double true_depth,
                   Rng& rng);
double SampleOffset(const DepthErrorProfile& profile, double true_offset,
                    Rng& rng);

struct ObstacleProjection {
  geometry::BoundingBox bbox;
  geometry::PixelPoint reference_pixel;  // cylinder axis at mid height
  double true_depth = 0.0;               // camera z of the reference point
  geometry::VehiclePoint reference_point;
};

// Height above ground of the point the detector localizes.
double ReferenceHeight(const Obstacle& obstacle);

// Projects the obstacle's bounding cylinder into the image. Empty unless the
// reference point is in front of the camera, inside the image and no farther
// than `camera.max_range` ahead of the vehicle origin.
std::optional<ObstacleProjection> ProjectObstacle(
    const Obstacle& obstacle, const geometry::VehiclePose& pose,
    const geometry::CameraModel& camera);

// One perception frame: every visible obstacle has its depth and lateral
// offset perturbed by the profile, a depth map is synthesized over its box and
// the position is recovered through geometry::LocalizeObstacle.
std::vector<ObstacleEstimate> Sense(std::span<const Obstacle> world,
                                    const geometry::VehiclePose& pose,
                                    const geometry::CameraModel& camera,
                                    const DepthErrorProfile& profile,
                                    double time, Rng& rng);

}  // namespace frenet_avoid::perception

#endif  // FRENET_AVOID_PERCEPTION_SIM_H_
