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

#include "frenet_avoid/geometry.h"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "frenet_avoid/error.h"

namespace frenet_avoid::geometry {
namespace {

void Require(bool condition, const std::string& message) {
  if (!condition) throw Error(ErrorCode::kInvalidArgument, message);
}

// Maps camera axes onto vehicle axes before tilt: camera z -> vehicle x,
// camera -x -> vehicle y, camera -y -> vehicle z.
Eigen::Matrix3d CameraAxesInVehicle() {
  Eigen::Matrix3d m;
  m << 0.0, 0.0, 1.0,  //
      -1.0, 0.0, 0.0,  //
      0.0, -1.0, 0.0;
  return m;
}

}  // namespace

void CameraIntrinsics::Validate() const {
  Require(std::isfinite(fx) && fx > 0.0, "fx must be positive");
  Require(std::isfinite(fy) && fy > 0.0, "fy must be positive");
  Require(std::isfinite(cx) && std::isfinite(cy),
          "principal point must be finite");
}

Eigen::Matrix3d CameraIntrinsics::Matrix() const {
  Eigen::Matrix3d k;
  k << fx, 0.0, cx,  //
      0.0, fy, cy,   //
      0.0, 0.0, 1.0;
  return k;
}

void CameraExtrinsics::Validate() const {
  Require(std::isfinite(tilt) && std::abs(tilt) < std::numbers::pi / 2.0,
          "tilt must lie in (-pi/2, pi/2)");
  Require(std::isfinite(height) && height >= 0.0,
          "camera height must be non-negative");
  Require(lateral_offset.allFinite(), "lateral offset must be finite");
}

void CameraModel::Validate() const {
  intrinsics.Validate();
  extrinsics.Validate();
  Require(antenna_offset.allFinite(), "antenna offset must be finite");
  Require(image_width > 0 && image_height > 0, "image size must be positive");
  Require(std::isfinite(max_range) && max_range > 0.0,
          "max range must be positive");
}

CameraModel CameraModel::Default() {
  CameraModel camera;
  camera.extrinsics.tilt = 10.0 * std::numbers::pi / 180.0;
  camera.extrinsics.height = 1.5;
  return camera;
}

RigidTransform RigidTransform::Inverse() const {
  RigidTransform inv;
  inv.rotation = rotation.transpose();
  inv.translation = -(inv.rotation * translation);
  return inv;
}

Eigen::Matrix4d RigidTransform::Homogeneous() const {
  Eigen::Matrix4d t = Eigen::Matrix4d::Identity();
  t.topLeftCorner<3, 3>() = rotation;
  t.topRightCorner<3, 1>() = translation;
  return t;
}

DepthMap::DepthMap(int width, int height, double fill)
    : DepthMap(0, 0, width, height, fill) {}

DepthMap::DepthMap(int origin_x, int origin_y, int width, int height,
                   double fill)
    : origin_x_(origin_x),
      origin_y_(origin_y),
      width_(width),
      height_(height) {
  Require(width > 0 && height > 0, "depth map must be nonempty");
  values_.assign(static_cast<std::size_t>(width) * height, fill);
}

double DepthMap::at(int x, int y) const {
  return values_[static_cast<std::size_t>(y - origin_y_) * width_ +
                 (x - origin_x_)];
}

double& DepthMap::at(int x, int y) {
  return values_[static_cast<std::size_t>(y - origin_y_) * width_ +
                 (x - origin_x_)];
}

bool DepthMap::Contains(const BoundingBox& box) const {
  return box.x_min >= origin_x_ && box.y_min >= origin_y_ &&
         box.x_max <= origin_x_ + width_ && box.y_max <= origin_y_ + height_;
}

double NormalizeAngle(double angle) {
  constexpr double kTwoPi = 2.0 * std::numbers::pi;
  double a = std::fmod(angle, kTwoPi);
  if (a <= -std::numbers::pi) a += kTwoPi;
  if (a > std::numbers::pi) a -= kTwoPi;
  return a;
}

double MedianDepth(const DepthMap& depth_map, const BoundingBox& box) {
  Require(!box.empty(), "bounding box is empty");
  Require(depth_map.Contains(box), "bounding box leaves the depth map");
  std::vector<double> valid;
  valid.reserve(static_cast<std::size_t>(box.width()) * box.height());
  for (int y = box.y_min; y < box.y_max; ++y) {
    for (int x = box.x_min; x < box.x_max; ++x) {
      const double d = depth_map.at(x, y);
      if (std::isfinite(d) && d > 0.0) valid.push_back(d);
    }
  }
  if (valid.empty()) {
    throw Error(ErrorCode::kEmptyRegion, "no valid depth inside bounding box");
  }
  const std::size_t mid = valid.size() / 2;
  std::nth_element(valid.begin(), valid.begin() + mid, valid.end());
  const double upper = valid[mid];
  if (valid.size() % 2 == 1) return upper;
  const double lower = *std::max_element(valid.begin(), valid.begin() + mid);
  return 0.5 * (lower + upper);
}

CameraPoint PixelToCamera(const PixelPoint& pixel, double depth,
                          const CameraIntrinsics& intrinsics) {
  if (!(depth > 0.0) || !std::isfinite(depth)) {
    throw Error(ErrorCode::kNonPositiveDepth,
                "depth must be positive, got " + std::to_string(depth));
  }
  // K^-1 in closed form; K is upper triangular with unit last row.
  const double x = (pixel.x - intrinsics.cx) / intrinsics.fx;
  const double y = (pixel.y - intrinsics.cy) / intrinsics.fy;
  return CameraPoint(depth * x, depth * y, depth);
}

std::optional<PixelProjection> CameraToPixel(
    const CameraPoint& point, const CameraIntrinsics& intrinsics) {
  if (!(point.z() > 0.0)) return std::nullopt;
  PixelProjection out;
  out.pixel.x = intrinsics.fx * point.x() / point.z() + intrinsics.cx;
  out.pixel.y = intrinsics.fy * point.y() / point.z() + intrinsics.cy;
  out.depth = point.z();
  return out;
}

RigidTransform CameraToVehicleTransform(const CameraExtrinsics& extrinsics) {
  // Downward tilt pitches the optical axis toward -z: a rotation by +tilt
  // about the vehicle y axis.
  const Eigen::Matrix3d pitch =
      Eigen::AngleAxisd(extrinsics.tilt, Eigen::Vector3d::UnitY())
          .toRotationMatrix();
  RigidTransform t;
  t.rotation = pitch * CameraAxesInVehicle();
  t.translation = Eigen::Vector3d(extrinsics.lateral_offset.x(),
                                  extrinsics.lateral_offset.y(),
                                  extrinsics.height);
  return t;
}

VehiclePoint CameraToVehicle(const CameraPoint& point,
                             const RigidTransform& transform) {
  return VehiclePoint(transform.Apply(point.xyz));
}

CameraPoint VehicleToCamera(const VehiclePoint& point,
                            const RigidTransform& transform) {
  return CameraPoint(transform.rotation.transpose() *
                     (point.xyz - transform.translation));
}

RigidTransform VehicleToGlobalTransform(const VehiclePose& pose,
                                        const Eigen::Vector2d& antenna_offset) {
  RigidTransform t;
  t.rotation = Eigen::AngleAxisd(pose.heading, Eigen::Vector3d::UnitZ())
                   .toRotationMatrix();
  t.translation =
      t.rotation * Eigen::Vector3d(antenna_offset.x(), antenna_offset.y(), 0.0) +
      Eigen::Vector3d(pose.position.x(), pose.position.y(), 0.0);
  return t;
}

GlobalPoint VehicleToGlobal(const VehiclePoint& point, const VehiclePose& pose,
                            const Eigen::Vector2d& antenna_offset) {
  return GlobalPoint(
      VehicleToGlobalTransform(pose, antenna_offset).Apply(point.xyz));
}

VehiclePoint GlobalToVehicle(const GlobalPoint& point, const VehiclePose& pose,
                             const Eigen::Vector2d& antenna_offset) {
  return VehiclePoint(VehicleToGlobalTransform(pose, antenna_offset)
                          .Inverse()
                          .Apply(point.xyz));
}

GlobalPoint LocalizeObstacle(const PixelPoint& pixel, const DepthMap& depth_map,
                             const BoundingBox& box,
                             const CameraIntrinsics& intrinsics,
                             const CameraExtrinsics& extrinsics,
                             const VehiclePose& pose,
                             const Eigen::Vector2d& antenna_offset) {
  const double depth = MedianDepth(depth_map, box);
  const CameraPoint camera_point = PixelToCamera(pixel, depth, intrinsics);
  const VehiclePoint vehicle_point =
      CameraToVehicle(camera_point, CameraToVehicleTransform(extrinsics));
  return VehicleToGlobal(vehicle_point, pose, antenna_offset);
}

std::optional<PixelProjection> ProjectGlobalPoint(const GlobalPoint& point,
                                                  const CameraModel& camera,
                                                  const VehiclePose& pose) {
  const VehiclePoint vehicle_point =
      GlobalToVehicle(point, pose, camera.antenna_offset);
  const CameraPoint camera_point = VehicleToCamera(
      vehicle_point, CameraToVehicleTransform(camera.extrinsics));
  return CameraToPixel(camera_point, camera.intrinsics);
}

}  // namespace frenet_avoid::geometry
