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

#ifndef FRENET_AVOID_GEOMETRY_H_
#define FRENET_AVOID_GEOMETRY_H_

#include <Eigen/Core>
#include <optional>
#include <vector>

namespace frenet_avoid::geometry {

// Frames:
//   camera  - x right, y down, z forward (optical axis).
//   vehicle - x forward, y left, z up; origin on the ground plane.
//   global  - planar UTM-like easting/northing, z up.
enum class Frame { kCamera, kVehicle, kGlobal };

template <Frame F>
struct FramePoint {
  Eigen::Vector3d xyz = Eigen::Vector3d::Zero();

  FramePoint() = default;
  explicit FramePoint(const Eigen::Vector3d& v) : xyz(v) {}
  FramePoint(double x, double y, double z) : xyz(x, y, z) {}

  double x() const { return xyz.x(); }
  double y() const { return xyz.y(); }
  double z() const { return xyz.z(); }
};

using CameraPoint = FramePoint<Frame::kCamera>;
using VehiclePoint = FramePoint<Frame::kVehicle>;
using GlobalPoint = FramePoint<Frame::kGlobal>;

struct PixelPoint {
  double x = 0.0;
  double y = 0.0;
};

// Pinhole intrinsics in pixels.
struct CameraIntrinsics {
  double fx = 500.0;
  double fy = 500.0;
  double cx = 320.0;
  double cy = 240.0;

  void Validate() const;
  Eigen::Matrix3d Matrix() const;
};

// Mounting of the camera on the vehicle. `tilt` is the downward pitch of the
// optical axis in radians; `lateral_offset` is (t_x, t_y) in meters.
struct CameraExtrinsics {
  double tilt = 0.0;
  double height = 0.0;
  Eigen::Vector2d lateral_offset = Eigen::Vector2d::Zero();

  void Validate() const;
};

// Full sensor description used by the perception chain.
//
// `antenna_offset` is the planar vector from the GPS antenna to the vehicle
// origin expressed in the vehicle frame; it is added to vehicle-frame points
// before they are rotated into the global frame. Image size and range bound
// the synthetic detector.
struct CameraModel {
  CameraIntrinsics intrinsics;
  CameraExtrinsics extrinsics;
  Eigen::Vector2d antenna_offset = Eigen::Vector2d::Zero();
  int image_width = 640;
  int image_height = 480;
  double max_range = 15.0;

  void Validate() const;

  // fx = fy = 500 on a 640x480 sensor, 1.5 m high, tilted down 10 degrees.
  static CameraModel Default();
};

// Planar pose reported by GPS + compass. Heading is counterclockwise from the
// global +x axis. Altitude is carried through but never used.
struct VehiclePose {
  Eigen::Vector2d position = Eigen::Vector2d::Zero();
  double heading = 0.0;
  double altitude = 0.0;
};

struct RigidTransform {
  Eigen::Matrix3d rotation = Eigen::Matrix3d::Identity();
  Eigen::Vector3d translation = Eigen::Vector3d::Zero();

  Eigen::Vector3d Apply(const Eigen::Vector3d& p) const {
    return rotation * p + translation;
  }
  RigidTransform Inverse() const;
  Eigen::Matrix4d Homogeneous() const;
};

// Half-open pixel rectangle [x_min, x_max) x [y_min, y_max).
struct BoundingBox {
  int x_min = 0;
  int y_min = 0;
  int x_max = 0;
  int y_max = 0;

  int width() const { return x_max - x_min; }
  int height() const { return y_max - y_min; }
  bool empty() const { return width() <= 0 || height() <= 0; }
};

// Row-major grid of metric depths covering the image window that starts at
// pixel (origin_x, origin_y). A full-frame map has a zero origin.
class DepthMap {
 public:
  DepthMap(int width, int height, double fill = 0.0);
  DepthMap(int origin_x, int origin_y, int width, int height,
           double fill = 0.0);

  int origin_x() const { return origin_x_; }
  int origin_y() const { return origin_y_; }
  int width() const { return width_; }
  int height() const { return height_; }

  // Image-coordinate accessors.
  double at(int x, int y) const;
  double& at(int x, int y);
  bool Contains(const BoundingBox& box) const;

 private:
  int origin_x_ = 0;
  int origin_y_ = 0;
  int width_ = 0;
  int height_ = 0;
  std::vector<double> values_;
};

double NormalizeAngle(double angle);

// Median of the valid (finite, > 0) depths inside `box`. Even counts return
// the mean of the two middle values. Throws kEmptyRegion when no cell is
// valid and kInvalidArgument when the box leaves the map.
double MedianDepth(const DepthMap& depth_map, const BoundingBox& box);

// d * K^-1 * [x, y, 1]^T. Depth is the z-forward coordinate, not ray length.
CameraPoint PixelToCamera(const PixelPoint& pixel, double depth,
                          const CameraIntrinsics& intrinsics);

struct PixelProjection {
  PixelPoint pixel;
  double depth = 0.0;
};

// Forward pinhole model; empty when the point is not in front of the camera.
std::optional<PixelProjection> CameraToPixel(const CameraPoint& point,
                                             const CameraIntrinsics& intrinsics);

RigidTransform CameraToVehicleTransform(const CameraExtrinsics& extrinsics);

VehiclePoint CameraToVehicle(const CameraPoint& point,
                             const RigidTransform& transform);
CameraPoint VehicleToCamera(const VehiclePoint& point,
                            const RigidTransform& transform);

RigidTransform VehicleToGlobalTransform(
    const VehiclePose& pose,
    const Eigen::Vector2d& antenna_offset = Eigen::Vector2d::Zero());

GlobalPoint VehicleToGlobal(
    const VehiclePoint& point, const VehiclePose& pose,
    const Eigen::Vector2d& antenna_offset = Eigen::Vector2d::Zero());
VehiclePoint GlobalToVehicle(
    const GlobalPoint& point, const VehiclePose& pose,
    const Eigen::Vector2d& antenna_offset = Eigen::Vector2d::Zero());

// Full image -> global chain: median depth in `box`, back-projection of
// `pixel`, camera mounting, then vehicle pose.
GlobalPoint LocalizeObstacle(
    const PixelPoint& pixel, const DepthMap& depth_map, const BoundingBox& box,
    const CameraIntrinsics& intrinsics, const CameraExtrinsics& extrinsics,
    const VehiclePose& pose,
    const Eigen::Vector2d& antenna_offset = Eigen::Vector2d::Zero());

// Global point -> pixel and plane depth; the inverse of LocalizeObstacle for a
// depth map that holds the returned depth.
std::optional<PixelProjection> ProjectGlobalPoint(const GlobalPoint& point,
                                                  const CameraModel& camera,
                                                  const VehiclePose& pose);

}  // namespace frenet_avoid::geometry

#endif  // FRENET_AVOID_GEOMETRY_H_
