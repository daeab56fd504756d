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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "test_support.h"

namespace frenet_avoid::perception {
namespace {

using geometry::CameraModel;
using geometry::VehiclePose;
using testing::CodeOf;
using testing::Gen;

// Mean absolute deviation of n draws, used against the tabulated error.
template <typename Draw>
double MeanAbsDeviation(Draw draw, double truth, int n) {
  double sum = 0.0;
  for (int i = 0; i < n; ++i) sum += std::abs(draw() - truth);
  return sum / n;
}

TEST(BuiltinProfile, Tables) {
  const DepthErrorProfile dav2 = BuiltinProfile("dav2");
  ASSERT_EQ(dav2.depth_errors.size(), 4u);
  EXPECT_DOUBLE_EQ(dav2.depth_errors[0].distance, 3.0);
  EXPECT_DOUBLE_EQ(dav2.depth_errors[0].error, 0.148);
  EXPECT_DOUBLE_EQ(dav2.depth_errors[3].error, 0.366);
  EXPECT_DOUBLE_EQ(dav2.offset_errors[0].error, 0.073);
  EXPECT_DOUBLE_EQ(BuiltinProfile("midas").depth_errors[3].error, 5.353);
  EXPECT_DOUBLE_EQ(BuiltinProfile("mono2").depth_errors[2].error, 3.919);
  for (const auto& name : BuiltinProfileNames()) {
    EXPECT_NO_THROW(BuiltinProfile(name).Validate()) << name;
  }
}

TEST(BuiltinProfile, UnknownNameListsValidOnes) {
  try {
    BuiltinProfile("zoedepth");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::kUnknownModel);
    EXPECT_NE(std::string(e.what()).find("dav2"), std::string::npos);
  }
}

TEST(ErrorAt, Examples) {
  const DepthErrorProfile dav2 = BuiltinProfile("dav2");
  EXPECT_DOUBLE_EQ(ErrorAt(dav2, 5.0), 0.047);
  EXPECT_NEAR(ErrorAt(dav2, 6.5), 0.0635, 1e-12);
  EXPECT_DOUBLE_EQ(ErrorAt(dav2, 1.0), 0.148);
  EXPECT_DOUBLE_EQ(ErrorAt(dav2, 40.0), 0.366);
  EXPECT_NEAR(OffsetErrorAt(dav2, -0.5), 0.059, 1e-12);
}

TEST(ErrorAt, MatchesHandInterpolation) {
  Gen gen(4);
  for (const auto& name : BuiltinProfileNames()) {
    const DepthErrorProfile p = BuiltinProfile(name);
    for (int i = 0; i < 200; ++i) {
      const double d = gen.Uniform(0, 20);
      double expected = p.depth_errors.front().error;
      if (d >= p.depth_errors.back().distance) {
        expected = p.depth_errors.back().error;
      }
      for (std::size_t k = 0; k + 1 < p.depth_errors.size(); ++k) {
        const ErrorKnot& a = p.depth_errors[k];
        const ErrorKnot& b = p.depth_errors[k + 1];
        if (d >= a.distance && d <= b.distance) {
          expected =
              a.error + (b.error - a.error) * (d - a.distance) /
                            (b.distance - a.distance);
        }
      }
      EXPECT_NEAR(ErrorAt(p, d), expected, 1e-12) << name << " " << d;
    }
  }
}

TEST(ErrorAt, ContinuousAndBounded) {
  Gen gen(9);
  for (const auto& name : BuiltinProfileNames()) {
    const DepthErrorProfile p = BuiltinProfile(name);
    double lo = p.depth_errors[0].error, hi = lo;
    for (const auto& k : p.depth_errors) {
      lo = std::min(lo, k.error);
      hi = std::max(hi, k.error);
    }
    for (int i = 0; i < 300; ++i) {
      const double d = gen.Uniform(0, 25);
      const double e = ErrorAt(p, d);
      EXPECT_GE(e, lo);
      EXPECT_LE(e, hi);
      // Slopes are bounded by the steepest segment.
      EXPECT_LE(std::abs(ErrorAt(p, d + 1e-6) - e), 1e-6 * 2.0);
    }
  }
}

TEST(InterpolateError, Validation) {
  std::vector<ErrorKnot> empty;
  EXPECT_EQ(CodeOf([&] { InterpolateError(empty, 1.0); }),
            ErrorCode::kInvalidArgument);
  DepthErrorProfile unsorted = BuiltinProfile("dav2");
  std::swap(unsorted.depth_errors[0], unsorted.depth_errors[1]);
  EXPECT_EQ(CodeOf([&] { unsorted.Validate(); }),
            ErrorCode::kInvalidArgument);
  DepthErrorProfile negative = BuiltinProfile("dav2");
  negative.offset_errors[2].error = -0.1;
  EXPECT_EQ(CodeOf([&] { negative.Validate(); }),
            ErrorCode::kInvalidArgument);
}

TEST(SampleDepth, IdealIsExact) {
  Rng rng(1);
  const DepthErrorProfile ideal = BuiltinProfile("ideal");
  EXPECT_DOUBLE_EQ(SampleDepth(ideal, 7.25, rng), 7.25);
  EXPECT_DOUBLE_EQ(SampleOffset(ideal, -1.5, rng), -1.5);
}

TEST(SampleDepth, MeanAbsoluteErrorMatchesTable) {
  const DepthErrorProfile dav2 = BuiltinProfile("dav2");
  Rng rng(42);
  const int n = 20000;
  for (const double d : {5.0, 6.5, 15.0}) {
    const double mae = MeanAbsDeviation(
        [&] { return SampleDepth(dav2, d, rng); }, d, n);
    EXPECT_NEAR(mae, ErrorAt(dav2, d), 0.05 * ErrorAt(dav2, d)) << d;
  }
  const double offset_mae = MeanAbsDeviation(
      [&] { return SampleOffset(dav2, 2.0, rng); }, 2.0, n);
  EXPECT_NEAR(offset_mae, 0.047, 0.05 * 0.047);
}

TEST(SampleDepth, ZeroMean) {
  const DepthErrorProfile midas = BuiltinProfile("midas");
  Rng rng(3);
  double sum = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) sum += SampleDepth(midas, 8.0, rng) - 8.0;
  EXPECT_NEAR(sum / n, 0.0, 4.0 * 0.156 * 1.26 / std::sqrt(n));
}

TEST(SampleDepth, StaysPositive) {
  const DepthErrorProfile midas = BuiltinProfile("midas");
  Rng rng(5);
  for (int i = 0; i < 5000; ++i) EXPECT_GT(SampleDepth(midas, 15.0, rng), 0.0);
  EXPECT_EQ(CodeOf([&] { SampleDepth(midas, 0.0, rng); }),
            ErrorCode::kInvalidArgument);
}

TEST(SampleDepth, SameSeedSameStream) {
  const DepthErrorProfile mono2 = BuiltinProfile("mono2");
  Rng a(77), b(77);
  for (int i = 0; i < 100; ++i) {
    EXPECT_EQ(SampleDepth(mono2, 6.0, a), SampleDepth(mono2, 6.0, b));
  }
}

TEST(ProjectObstacle, CenteredObstacleProjectsToPrincipalColumn) {
  CameraModel camera = CameraModel::Default();
  Obstacle ob;
  ob.center = {8.0, 0.0};
  ob.radius = 0.5;
  const auto proj = ProjectObstacle(ob, VehiclePose{}, camera);
  ASSERT_TRUE(proj.has_value());
  EXPECT_NEAR(proj->reference_pixel.x, camera.intrinsics.cx, 1e-9);
  EXPECT_NEAR(0.5 * (proj->bbox.x_min + proj->bbox.x_max),
              camera.intrinsics.cx, 1.0);
  // Forward pinhole oracle for the rim width: 2 r f / depth along the
  // horizontal sight line (no lateral component).
  const double tilt = camera.extrinsics.tilt;
  const double dz = ReferenceHeight(ob) - camera.extrinsics.height;
  const double cam_z = 8.0 * std::cos(tilt) - dz * std::sin(tilt);
  EXPECT_NEAR(proj->true_depth, cam_z, 1e-9);
  const double v = camera.intrinsics.fy *
                       (-(8.0 * std::sin(tilt) + dz * std::cos(tilt))) / cam_z +
                   camera.intrinsics.cy;
  EXPECT_NEAR(proj->reference_pixel.y, v, 1e-9);
  EXPECT_GE(proj->bbox.width(), 2.0 * 0.5 * 500.0 / 8.5);
}

TEST(ProjectObstacle, OutOfViewIsDropped) {
  CameraModel camera = CameraModel::Default();
  Obstacle behind;
  behind.center = {-5.0, 0.0};
  EXPECT_FALSE(ProjectObstacle(behind, VehiclePose{}, camera).has_value());
  Obstacle far;
  far.center = {16.0, 0.0};
  EXPECT_FALSE(ProjectObstacle(far, VehiclePose{}, camera).has_value());
  Obstacle wide;
  wide.center = {2.0, 5.0};
  EXPECT_FALSE(ProjectObstacle(wide, VehiclePose{}, camera).has_value());
}

TEST(Sense, IdealRecoversCenter) {
  CameraModel camera = CameraModel::Default();
  camera.antenna_offset = {0.3, -0.1};
  Gen gen(17);
  Rng rng(0);
  const DepthErrorProfile ideal = BuiltinProfile("ideal");
  for (int i = 0; i < 200; ++i) {
    const VehiclePose pose{{gen.Uniform(-50, 50), gen.Uniform(-50, 50)},
                           gen.Uniform(-std::numbers::pi, std::numbers::pi)};
    const double range = gen.Uniform(2, 14);
    const double bearing = gen.Uniform(-0.4, 0.4);
    Obstacle ob;
    const geometry::GlobalPoint g = geometry::VehicleToGlobal(
        geometry::VehiclePoint(range * std::cos(bearing),
                               range * std::sin(bearing), 0.0),
        pose, camera.antenna_offset);
    ob.center = {g.x(), g.y()};
    ob.radius = gen.Uniform(0.2, 1.0);
    const std::vector<Obstacle> world{ob};
    const auto est = Sense(world, pose, camera, ideal, 1.5, rng);
    ASSERT_EQ(est.size(), 1u);
    EXPECT_NEAR((est[0].center - ob.center).norm(), 0.0, 1e-9);
    EXPECT_DOUBLE_EQ(est[0].radius, ob.radius);
    EXPECT_DOUBLE_EQ(est[0].timestamp, 1.5);
  }
}

TEST(Sense, NoisyErrorsScaleWithTable) {
  CameraModel camera = CameraModel::Default();
  const DepthErrorProfile dav2 = BuiltinProfile("dav2");
  Rng rng(8);
  Obstacle ob;
  ob.center = {6.0, 1.0};
  const std::vector<Obstacle> world{ob};
  double ex = 0.0, ey = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    const auto est = Sense(world, VehiclePose{}, camera, dav2, 0.0, rng);
    ASSERT_EQ(est.size(), 1u);
    ex += std::abs(est[0].center.x() - 6.0);
    ey += std::abs(est[0].center.y() - 1.0);
  }
  EXPECT_NEAR(ex / n, ErrorAt(dav2, 6.0), 0.05 * ErrorAt(dav2, 6.0));
  EXPECT_NEAR(ey / n, OffsetErrorAt(dav2, 1.0), 0.05 * 0.045);
}

TEST(SampleDepth, TableExamplesAtFullSampleCount) {
  Rng rng(123);
  constexpr int n = 100000;
  const DepthErrorProfile mono2 = BuiltinProfile("mono2");
  EXPECT_NEAR(MeanAbsDeviation([&] { return SampleDepth(mono2, 8.0, rng); },
                               8.0, n),
              3.919, 0.15 * 3.919);
  const DepthErrorProfile dav2 = BuiltinProfile("dav2");
  EXPECT_NEAR(MeanAbsDeviation([&] { return SampleOffset(dav2, 1.0, rng); },
                               1.0, n),
              0.045, 0.15 * 0.045);
  const DepthErrorProfile midas = BuiltinProfile("midas");
  EXPECT_NEAR(MeanAbsDeviation([&] { return SampleOffset(midas, 3.0, rng); },
                               3.0, n),
              0.104, 0.15 * 0.104);
}

TEST(Sense, EmptyWorld) {
  Rng rng(0);
  EXPECT_TRUE(Sense({}, VehiclePose{}, CameraModel::Default(),
                    BuiltinProfile("dav2"), 0.0, rng)
                  .empty());
}

TEST(Sense, RangeErrorAtFifteenMeters) {
  CameraModel camera = CameraModel::Default();
  const DepthErrorProfile dav2 = BuiltinProfile("dav2");
  Rng rng(15);
  Obstacle ob;
  ob.center = {14.99, 0.0};
  const std::vector<Obstacle> world{ob};
  double sum = 0.0;
  constexpr int n = 100000;
  for (int i = 0; i < n; ++i) {
    const auto est = Sense(world, VehiclePose{}, camera, dav2, 0.0, rng);
    sum += std::abs(est.at(0).center.x() - ob.center.x());
  }
  EXPECT_NEAR(sum / n, 0.366, 0.15 * 0.366);
}

TEST(Sense, SameSeedSameEstimates) {
  const DepthErrorProfile dav2 = BuiltinProfile("dav2");
  Obstacle ob;
  ob.center = {7.0, -1.0};
  const std::vector<Obstacle> world{ob};
  Rng a(5), b(5);
  for (int i = 0; i < 50; ++i) {
    const auto ea = Sense(world, VehiclePose{}, CameraModel::Default(), dav2, 0, a);
    const auto eb = Sense(world, VehiclePose{}, CameraModel::Default(), dav2, 0, b);
    EXPECT_EQ(ea.at(0).center, eb.at(0).center);
  }
}

TEST(ErrorAt, KnotsExact) {
  for (const auto& name : BuiltinProfileNames()) {
    const DepthErrorProfile p = BuiltinProfile(name);
    for (const auto& k : p.depth_errors) EXPECT_EQ(ErrorAt(p, k.distance), k.error);
    for (const auto& k : p.offset_errors) {
      EXPECT_EQ(OffsetErrorAt(p, k.distance), k.error);
    }
  }
}

TEST(ProjectObstacle, AbeamIsOutOfView) {
  Obstacle abeam;
  abeam.center = {0.0, 6.0};
  EXPECT_FALSE(
      ProjectObstacle(abeam, VehiclePose{}, CameraModel::Default()).has_value());
  Obstacle ahead;
  ahead.center = {10.0, 0.0};
  const auto p = ProjectObstacle(ahead, VehiclePose{}, CameraModel::Default());
  ASSERT_TRUE(p.has_value());
  EXPECT_NEAR(0.5 * (p->bbox.x_min + p->bbox.x_max), 320.0, 1.0);
}

}  // namespace
}  // namespace frenet_avoid::perception
