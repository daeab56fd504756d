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

#include "frenet_avoid/perception_sim.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "frenet_avoid/error.h"

namespace frenet_avoid::perception {
namespace {

using geometry::BoundingBox;
using geometry::CameraModel;
using geometry::VehiclePoint;
using geometry::VehiclePose;

void Require(bool condition, const std::string& message) {
  if (!condition) throw Error(ErrorCode::kInvalidArgument, message);
}

void ValidateTable(const std::vector<ErrorKnot>& table, const char* name) {
  Require(!table.empty(), std::string(name) + " table is empty");
  for (std::size_t i = 0; i < table.size(); ++i) {
    Require(std::isfinite(table[i].error) && table[i].error >= 0.0,
            std::string(name) + " errors must be non-negative");
    if (i > 0) {
      Require(table[i].distance > table[i - 1].distance,
              std::string(name) + " table must be sorted by distance");
    }
  }
}

// Standard deviation of a zero-mean normal whose mean magnitude is `mae`.
double SigmaForMeanAbsError(double mae) {
  return mae * std::sqrt(std::numbers::pi / 2.0);
}

double Perturb(double value, double mae, Rng& rng) {
  if (mae <= 0.0) return value;
  std::normal_distribution<double> noise(0.0, SigmaForMeanAbsError(mae));
  return value + noise(rng);
}

}  // namespace

void Obstacle::Validate() const {
  Require(center.allFinite(), "obstacle center must be finite");
  Require(std::isfinite(radius) && radius > 0.0,
          "obstacle radius must be positive");
  Require(std::isfinite(height) && height > 0.0,
          "obstacle height must be positive");
}

void DepthErrorProfile::Validate() const {
  ValidateTable(depth_errors, "depth error");
  ValidateTable(offset_errors, "offset error");
  Require(std::isfinite(fps) && fps > 0.0, "fps must be positive");
}

const std::vector<std::string>& BuiltinProfileNames() {
  static const std::vector<std::string> names = {"dav2", "midas", "mono2",
                                                 "ideal"};
  return names;
}

DepthErrorProfile BuiltinProfile(std::string_view name) {
  // Mean absolute errors measured against ground truth at 3/5/8/15 m depth
  // and 0/1/2/3 m lateral offset; fps is the model's inference rate.
  if (name == "dav2") {
    return {"dav2",
            {{3, 0.148}, {5, 0.047}, {8, 0.080}, {15, 0.366}},
            {{0, 0.073}, {1, 0.045}, {2, 0.047}, {3, 0.051}},
            20.0};
  }
  if (name == "midas") {
    return {"midas",
            {{3, 0.102}, {5, 0.392}, {8, 0.156}, {15, 5.353}},
            {{0, 0.011}, {1, 0.202}, {2, 0.114}, {3, 0.104}},
            11.0};
  }
  if (name == "mono2") {
    return {"mono2",
            {{3, 0.222}, {5, 0.516}, {8, 3.919}, {15, 3.059}},
            {{0, 0.058}, {1, 0.282}, {2, 0.126}, {3, 0.330}},
            31.0};
  }
  if (name == "ideal") {
    return {"ideal",
            {{3, 0.0}, {5, 0.0}, {8, 0.0}, {15, 0.0}},
            {{0, 0.0}, {1, 0.0}, {2, 0.0}, {3, 0.0}},
            20.0};
  }
  std::string valid;
  for (const auto& n : BuiltinProfileNames()) {
    valid += (valid.empty() ? "" : ", ") + n;
  }
  throw Error(ErrorCode::kUnknownModel, "unknown depth model '" +
                                            std::string(name) +
                                            "' (valid: " + valid + ")");
}

double InterpolateError(std::span<const ErrorKnot> table, double distance) {
  Require(!table.empty(), "empty error table");
  if (distance <= table.front().distance) return table.front().error;
  if (distance >= table.back().distance) return table.back().error;
  const auto upper = std::upper_bound(
      table.begin(), table.end(), distance,
      [](double d, const ErrorKnot& knot) { return d < knot.distance; });
  const ErrorKnot& hi = *upper;
  const ErrorKnot& lo = *(upper - 1);
  const double w = (distance - lo.distance) / (hi.distance - lo.distance);
  return lo.error + w * (hi.error - lo.error);
}

double ErrorAt(const DepthErrorProfile& profile, double distance) {
  return InterpolateError(profile.depth_errors, distance);
}

double OffsetErrorAt(const DepthErrorProfile& profile, double offset) {
  return InterpolateError(profile.offset_errors, std::abs(offset));
}

double SampleDepth(const DepthErrorProfile& profile, double true_depth,
                   Rng& rng) {
  Require(true_depth > 0.0, "true depth must be positive");
  constexpr double kMinDepth = 0.01;
  const double sample =
      Perturb(true_depth, ErrorAt(profile, true_depth), rng);
  return std::max(sample, kMinDepth);
}

double SampleOffset(const DepthErrorProfile& profile, double true_offset,
                    Rng& rng) {
  return Perturb(true_offset, OffsetErrorAt(profile, true_offset), rng);
}

double ReferenceHeight(const Obstacle& obstacle) {
  return 0.5 * obstacle.height;
}

std::optional<ObstacleProjection> ProjectObstacle(const Obstacle& obstacle,
                                                  const VehiclePose& pose,
                                                  const CameraModel& camera) {
  const geometry::GlobalPoint center_global(
      obstacle.center.x(), obstacle.center.y(), ReferenceHeight(obstacle));
  const VehiclePoint reference =
      geometry::GlobalToVehicle(center_global, pose, camera.antenna_offset);
  if (!(reference.x() > 0.0) || reference.x() > camera.max_range) {
    return std::nullopt;
  }

  const geometry::RigidTransform mount =
      geometry::CameraToVehicleTransform(camera.extrinsics);
  const auto ref_pixel = geometry::CameraToPixel(
      geometry::VehicleToCamera(reference, mount), camera.intrinsics);
  if (!ref_pixel) return std::nullopt;
  const auto& px = ref_pixel->pixel;
  if (px.x < 0.0 || px.x >= camera.image_width || px.y < 0.0 ||
      px.y >= camera.image_height) {
    return std::nullopt;
  }

  // Silhouette of the cylinder: the two rims perpendicular to the line of
  // sight, at the ground and at the top.
  Eigen::Vector2d sight(reference.x() - mount.translation.x(),
                        reference.y() - mount.translation.y());
  sight.normalize();
  const Eigen::Vector2d side(-sight.y(), sight.x());
  double u_min = px.x, u_max = px.x, v_min = px.y, v_max = px.y;
  for (const double lateral : {-obstacle.radius, obstacle.radius}) {
    for (const double z : {0.0, obstacle.height}) {
      const Eigen::Vector2d rim =
          Eigen::Vector2d(reference.x(), reference.y()) + lateral * side;
      const auto p = geometry::CameraToPixel(
          geometry::VehicleToCamera(VehiclePoint(rim.x(), rim.y(), z), mount),
          camera.intrinsics);
      if (!p) continue;
      u_min = std::min(u_min, p->pixel.x);
      u_max = std::max(u_max, p->pixel.x);
      v_min = std::min(v_min, p->pixel.y);
      v_max = std::max(v_max, p->pixel.y);
    }
  }

  BoundingBox box;
  box.x_min = std::clamp(static_cast<int>(std::floor(u_min)), 0,
                         camera.image_width - 1);
  box.y_min = std::clamp(static_cast<int>(std::floor(v_min)), 0,
                         camera.image_height - 1);
  box.x_max = std::clamp(static_cast<int>(std::ceil(u_max)), box.x_min + 1,
                         camera.image_width);
  box.y_max = std::clamp(static_cast<int>(std::ceil(v_max)), box.y_min + 1,
                         camera.image_height);

  ObstacleProjection out;
  out.bbox = box;
  out.reference_pixel = px;
  out.true_depth = ref_pixel->depth;
  out.reference_point = reference;
  return out;
}

std::vector<ObstacleEstimate> Sense(std::span<const Obstacle> world,
                                    const VehiclePose& pose,
                                    const CameraModel& camera,
                                    const DepthErrorProfile& profile,
                                    double time, Rng& rng) {
  std::vector<ObstacleEstimate> estimates;
  const geometry::RigidTransform mount =
      geometry::CameraToVehicleTransform(camera.extrinsics);
  for (const Obstacle& obstacle : world) {
    const auto projection = ProjectObstacle(obstacle, pose, camera);
    if (!projection) continue;
    const VehiclePoint& truth = projection->reference_point;
    const VehiclePoint noisy(SampleDepth(profile, truth.x(), rng),
                             SampleOffset(profile, truth.y(), rng), truth.z());
    const auto observed = geometry::CameraToPixel(
        geometry::VehicleToCamera(noisy, mount), camera.intrinsics);
    if (!observed) continue;

    // The estimator's depth map holds the perturbed depth over the box.
    const geometry::BoundingBox& box = projection->bbox;
    const geometry::DepthMap depth_map(box.x_min, box.y_min, box.width(),
                                       box.height(), observed->depth);
    const geometry::GlobalPoint located = geometry::LocalizeObstacle(
        observed->pixel, depth_map, box, camera.intrinsics, camera.extrinsics,
        pose, camera.antenna_offset);
    estimates.push_back(
        {Eigen::Vector2d(located.x(), located.y()), obstacle.radius, time});
  }
  return estimates;
}

}  // namespace frenet_avoid::perception
