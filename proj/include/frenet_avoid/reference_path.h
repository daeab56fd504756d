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

#ifndef FRENET_AVOID_REFERENCE_PATH_H_
#define FRENET_AVOID_REFERENCE_PATH_H_

#include <Eigen/Core>
#include <optional>
#include <span>
#include <vector>

namespace frenet_avoid::path {

struct PathSample {
  Eigen::Vector2d position = Eigen::Vector2d::Zero();
  double heading = 0.0;
  double curvature = 0.0;       // signed, positive turning left
  double curvature_rate = 0.0;  // d(curvature)/ds
};

// Path-relative kinematic state. `d` is positive to the left of the tangent.
struct FrenetState {
  double s = 0.0;
  double s_dot = 0.0;
  double s_ddot = 0.0;
  double d = 0.0;
  double d_dot = 0.0;
  double d_ddot = 0.0;
};

// Planar kinematic state. `accel` is tangential acceleration and `curvature`
// the curvature of the traveled curve.
struct CartesianState {
  Eigen::Vector2d position = Eigen::Vector2d::Zero();
  double heading = 0.0;
  double speed = 0.0;
  double accel = 0.0;
  double curvature = 0.0;
};

struct SearchWindow {
  double s_min = 0.0;
  double s_max = 0.0;
};

struct Projection {
  double s = 0.0;
  double d = 0.0;
  double distance = 0.0;
};

// Natural cubic spline through the waypoints (chord-length knots), queried by
// exact arc length. A 1 cm lookup table seeds the arc-length inversion and a
// Newton step on the Gauss-Legendre arc integral finishes it, so the curve has
// unit speed in s to machine precision.
class ReferencePath {
 public:
  // Throws kDegenerateWaypoints with fewer than two distinct points.
  static ReferencePath Build(std::span<const Eigen::Vector2d> waypoints);

  double length() const { return length_; }
  const std::vector<Eigen::Vector2d>& waypoints() const { return waypoints_; }

  // Throws kOutOfRange outside [0, length()].
  PathSample Sample(double s) const;
  Eigen::Vector2d Position(double s) const { return Sample(s).position; }

  // Closest point on the path. The search covers `window` (clamped to the
  // path) or the whole path. Throws kProjectionAmbiguous when two distinct
  // minima within 1% of each other lie more than 5 m of arc apart.
  Projection Project(const Eigen::Vector2d& point,
                     std::optional<SearchWindow> window = std::nullopt) const;

 private:
  struct Segment {
    // x(u) = ax + bx*u + cx*u^2 + dx*u^3 for local u in [0, h]; same for y.
    Eigen::Vector4d x;
    Eigen::Vector4d y;
    double h = 0.0;
    double s_start = 0.0;
  };
  struct Derivatives {
    Eigen::Vector2d p, d1, d2, d3;
  };

  Derivatives Evaluate(std::size_t segment, double u) const;
  double ArcLength(std::size_t segment, double u0, double u1) const;
  // Segment index and local parameter for arc length s.
  std::pair<std::size_t, double> Locate(double s) const;

  std::vector<Eigen::Vector2d> waypoints_;
  std::vector<Segment> segments_;
  double length_ = 0.0;
  // Dense table of (arc length, segment, local parameter) at ~1 cm spacing.
  struct TableEntry {
    double s;
    std::size_t segment;
    double u;
  };
  std::vector<TableEntry> table_;
};

// Throws kOutOfRange when the point projects before the start or past the end
// of the path, and kFoldOver when it lies beyond the center of curvature.
FrenetState CartesianToFrenet(const ReferencePath& path,
                              const CartesianState& state,
                              std::optional<SearchWindow> window = std::nullopt);

// Throws kFoldOver when |d * curvature(s)| >= 1 and kOutOfRange outside the
// path.
CartesianState FrenetToCartesian(const ReferencePath& path,
                                 const FrenetState& state);

}  // namespace frenet_avoid::path

#endif  // FRENET_AVOID_REFERENCE_PATH_H_
