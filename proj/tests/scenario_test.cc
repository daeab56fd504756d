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

#include "frenet_avoid/scenario.h"

#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <vector>

#include "test_support.h"

namespace frenet_avoid::sim {
namespace {

using perception::ObstacleEstimate;
using testing::CodeOf;
using testing::Gen;

constexpr PhaseLabel S = PhaseLabel::kStraight;
constexpr PhaseLabel L = PhaseLabel::kAvoidLeft;
constexpr PhaseLabel R = PhaseLabel::kReturnRight;

struct Series {
  std::vector<double> times;
  std::vector<double> steering;
};

// Piecewise-constant steering sampled at 50 Hz: (duration, value) pieces.
Series Piecewise(const std::vector<std::pair<double, double>>& pieces) {
  Series out;
  double t0 = 0.0;
  int k = 0;
  for (const auto& [duration, value] : pieces) {
    for (; k * 0.02 < t0 + duration - 1e-9; ++k) {
      out.times.push_back(k * 0.02);
      out.steering.push_back(value);
    }
    t0 += duration;
  }
  return out;
}

std::vector<PhaseLabel> Labels(const std::vector<PhaseSegment>& phases) {
  std::vector<PhaseLabel> out;
  for (const auto& p : phases) out.push_back(p.label);
  return out;
}

TEST(BuiltinScenario, Cases) {
  for (int c = 1; c <= 3; ++c) {
    const Scenario s = BuiltinScenario(c);
    EXPECT_NO_THROW(s.Validate());
    EXPECT_EQ(s.depth_model, "dav2");
    EXPECT_DOUBLE_EQ(s.desired_speed, 2.78);
    EXPECT_DOUBLE_EQ(s.initial_state.speed, 2.78);
    EXPECT_NEAR((s.route.back() - s.route.front()).norm(), 80.0, 1e-9);
  }
  EXPECT_EQ(BuiltinScenario(1).obstacles.size(), 1u);
  EXPECT_EQ(BuiltinScenario(2).obstacles.size(), 2u);
  const Scenario gap = BuiltinScenario(3);
  ASSERT_EQ(gap.obstacles.size(), 2u);
  // The passage between the two discs is wider than the vehicle.
  const double passage = (gap.obstacles[0].center - gap.obstacles[1].center).norm() -
                         gap.obstacles[0].radius - gap.obstacles[1].radius;
  EXPECT_GT(passage, vehicle::VehicleParams{}.width);
  EXPECT_EQ(CodeOf([] { BuiltinScenario(4); }), ErrorCode::kUnknownCase);
}

TEST(CurvedRouteScenario, MinimumRadius) {
  const Scenario s = CurvedRouteScenario();
  const path::ReferencePath route = path::ReferencePath::Build(s.route);
  double max_curvature = 0.0;
  for (double x = 0.0; x <= route.length(); x += 0.05) {
    max_curvature = std::max(max_curvature, std::abs(route.Sample(x).curvature));
  }
  EXPECT_LE(max_curvature, 1.0 / 20.0);
  EXPECT_GT(max_curvature, 1.0 / 40.0);
}

TEST(PlanningPath, ExtendsPastGoal) {
  const Scenario s = BuiltinScenario(1);
  const path::ReferencePath p = PlanningPath(s);
  EXPECT_NEAR(p.length(), 110.0, 1e-6);
  EXPECT_NEAR(GoalStation(s, p), 80.0, 1e-6);
}

TEST(Scenario, Validation) {
  Scenario s = BuiltinScenario(1);
  s.route.resize(1);
  EXPECT_EQ(CodeOf([&] { s.Validate(); }), ErrorCode::kInvalidConfig);
  s = BuiltinScenario(1);
  s.duration = 0.0;
  EXPECT_EQ(CodeOf([&] { s.Validate(); }), ErrorCode::kInvalidConfig);
}

TEST(DetectionWeight, InverseVariance) {
  const auto dav2 = perception::BuiltinProfile("dav2");
  const double w = DetectionWeight(dav2, geometry::VehiclePoint(5, 1, 0));
  EXPECT_NEAR(w, 1.0 / (0.047 * 0.047 + 0.045 * 0.045 + 1e-4), 1e-9);
  EXPECT_GT(DetectionWeight(dav2, geometry::VehiclePoint(5, 0, 0)),
            DetectionWeight(dav2, geometry::VehiclePoint(15, 0, 0)));
}

TEST(ObstacleMemory, WeightedMean) {
  ObstacleMemory memory(2.5);
  std::vector<ObstacleEstimate> a{{{10, 0}, 0.5, 0.0}};
  std::vector<ObstacleEstimate> b{{{11, 1}, 0.6, 0.1}};
  std::vector<double> wa{1.0}, wb{3.0};
  memory.Update(a, wa);
  memory.Update(b, wb);
  ASSERT_EQ(memory.estimates().size(), 1u);
  EXPECT_NEAR(memory.estimates()[0].center.x(), 10.75, 1e-12);
  EXPECT_NEAR(memory.estimates()[0].center.y(), 0.75, 1e-12);
  EXPECT_DOUBLE_EQ(memory.estimates()[0].radius, 0.6);
  EXPECT_DOUBLE_EQ(memory.estimates()[0].timestamp, 0.1);
}

TEST(ObstacleMemory, GateAndOneMatchPerFrame) {
  ObstacleMemory memory(2.5);
  std::vector<ObstacleEstimate> first{{{0, 0}, 0.5, 0.0}};
  std::vector<double> one{1.0};
  memory.Update(first, one);
  // Outside the gate: a new track.
  std::vector<ObstacleEstimate> far{{{0, 3}, 0.5, 0.0}};
  memory.Update(far, one);
  EXPECT_EQ(memory.estimates().size(), 2u);
  // Two detections near the first track in one frame: the second cannot
  // reuse it and starts its own.
  std::vector<ObstacleEstimate> pair{{{0.1, 0}, 0.5, 0.0}, {{-0.1, 0}, 0.5, 0.0}};
  std::vector<double> two{1.0, 1.0};
  memory.Update(pair, two);
  EXPECT_EQ(memory.estimates().size(), 3u);
  EXPECT_EQ(CodeOf([&] { memory.Update(pair, one); }),
            ErrorCode::kInvalidArgument);
}

TEST(ObstacleMemoryProperties, MatchesBatchWeightedMean) {
  Gen gen(5);
  for (int trial = 0; trial < 100; ++trial) {
    ObstacleMemory memory(2.5);
    const Eigen::Vector2d truth(gen.Uniform(-20, 20), gen.Uniform(-20, 20));
    Eigen::Vector2d sum = Eigen::Vector2d::Zero();
    double total = 0.0;
    for (int k = 0; k < 20; ++k) {
      const Eigen::Vector2d z =
          truth + Eigen::Vector2d(gen.Uniform(-0.5, 0.5), gen.Uniform(-0.5, 0.5));
      const double w = gen.Uniform(0.1, 10);
      std::vector<ObstacleEstimate> det{{z, 0.5, 0.0}};
      std::vector<double> ws{w};
      memory.Update(det, ws);
      sum += w * z;
      total += w;
    }
    ASSERT_EQ(memory.estimates().size(), 1u);
    EXPECT_NEAR((memory.estimates()[0].center - sum / total).norm(), 0.0, 1e-9);
  }
}

TEST(ClassifyPhases, FiveStageManeuver) {
  const Series s = Piecewise({{2, 0}, {2, 0.2}, {2, 0}, {2, -0.2}, {2, 0}});
  const auto phases = ClassifyPhases(s.times, s.steering, 0.03, 0.4);
  EXPECT_EQ(Labels(phases), (std::vector<PhaseLabel>{S, L, S, R, S}));
  EXPECT_NEAR(phases[1].start, 2.0, 1e-9);
  EXPECT_NEAR(phases[1].end, 4.0, 1e-9);
}

TEST(ClassifyPhases, ShortPulseAbsorbed) {
  const Series s = Piecewise({{2, 0}, {0.2, 0.2}, {2, 0}});
  EXPECT_EQ(Labels(ClassifyPhases(s.times, s.steering, 0.03, 0.4)),
            (std::vector<PhaseLabel>{S}));
}

TEST(ClassifyPhases, ZeroSteeringIsStraight) {
  const Series s = Piecewise({{5, 0}});
  const auto phases = ClassifyPhases(s.times, s.steering, 0.03, 0.4);
  EXPECT_EQ(Labels(phases), (std::vector<PhaseLabel>{S}));
}

TEST(ClassifyPhases, ThresholdIsStrict) {
  const Series s = Piecewise({{1, 0}, {1, 0.03}, {1, -0.03}});
  EXPECT_EQ(Labels(ClassifyPhases(s.times, s.steering, 0.03, 0.4)),
            (std::vector<PhaseLabel>{S}));
}

TEST(ClassifyPhases, WeakCounterSteerSettlesManeuver) {
  // Left, then a long shallow right correction: one left maneuver.
  const Series s =
      Piecewise({{2, 0}, {2, 0.3}, {0.6, 0}, {1.5, -0.05}, {2, 0}});
  EXPECT_EQ(Labels(ClassifyPhases(s.times, s.steering, 0.03, 0.4)),
            (std::vector<PhaseLabel>{S, L, S}));
}

TEST(ClassifyPhases, DirectReversalIsKept) {
  const Series s = Piecewise({{1, 0}, {2, 0.2}, {2, -0.2}, {2, 0.2}, {1, 0}});
  EXPECT_EQ(Labels(ClassifyPhases(s.times, s.steering, 0.03, 0.4)),
            (std::vector<PhaseLabel>{S, L, R, L, S}));
}

TEST(ClassifyPhases, Errors) {
  std::vector<double> t{0, 1}, v{0};
  EXPECT_EQ(CodeOf([&] { ClassifyPhases(t, v, 0.03, 0.4); }),
            ErrorCode::kInvalidArgument);
}

TEST(ClassifyPhasesProperties, PartitionAndMinimumDuration) {
  Gen gen(8);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::pair<double, double>> pieces;
    for (int i = gen.Int(1, 12); i > 0; --i) {
      const int kind = gen.Int(0, 2);
      const double v = kind == 0 ? gen.Uniform(-0.03, 0.03)
                                 : (kind == 1 ? 1 : -1) * gen.Uniform(0.031, 0.6);
      pieces.push_back({gen.Uniform(0.05, 3.0), v});
    }
    const Series s = Piecewise(pieces);
    if (s.times.size() < 2) continue;
    const auto phases = ClassifyPhases(s.times, s.steering, 0.03, 0.4);
    ASSERT_FALSE(phases.empty());
    EXPECT_DOUBLE_EQ(phases.front().start, s.times.front());
    EXPECT_DOUBLE_EQ(phases.back().end, s.times.back());
    for (std::size_t i = 0; i < phases.size(); ++i) {
      EXPECT_LT(phases[i].start, phases[i].end + 1e-12);
      if (i + 1 < phases.size()) {
        EXPECT_DOUBLE_EQ(phases[i].end, phases[i + 1].start);
        EXPECT_NE(phases[i].label, phases[i + 1].label);
        if (phases.size() > 1 && i > 0) {
          EXPECT_GE(phases[i].end - phases[i].start, 0.4 - 1e-9);
        }
      }
    }
    // Determinism.
    const auto again = ClassifyPhases(s.times, s.steering, 0.03, 0.4);
    EXPECT_EQ(Labels(again), Labels(phases));
  }
}

TEST(PhaseAt, Lookup) {
  std::vector<PhaseSegment> p{{S, 0, 1}, {L, 1, 2}, {S, 2, 3}};
  EXPECT_EQ(PhaseAt(p, 0.5), S);
  EXPECT_EQ(PhaseAt(p, 1.0), L);
  EXPECT_EQ(PhaseAt(p, 9.0), S);
  EXPECT_EQ(ParsePhaseLabel("AvoidLeft"), L);
  EXPECT_EQ(PhaseLabelName(R), "ReturnRight");
  EXPECT_FALSE(ParsePhaseLabel("Left").has_value());
}

TEST(Simulation, ClearRoadReachesGoalStraight) {
  Scenario s = BuiltinScenario(1);
  s.obstacles.clear();
  const SimulationConfig config;
  const SimulationLog log = sim::Run(s, config);
  EXPECT_EQ(log.termination, Termination::kGoal);
  const Metrics m = ComputeMetrics(log, s, PlanningPath(s), config);
  EXPECT_TRUE(m.completed);
  EXPECT_EQ(m.min_clearance, std::numeric_limits<double>::infinity());
  EXPECT_LT(m.max_lateral_error, 1e-6);
  EXPECT_EQ(m.phase_sequence, (std::vector<PhaseLabel>{S}));
  // About 80 m at 2.78 m/s.
  EXPECT_NEAR(m.final_time, 80.0 / 2.78, 0.5);
}

TEST(Simulation, IdealCaseOneAvoidsWithClearance) {
  Scenario s = BuiltinScenario(1);
  s.depth_model = "ideal";
  const SimulationConfig config;
  const SimulationLog log = sim::Run(s, config);
  const Metrics m = ComputeMetrics(log, s, PlanningPath(s), config);
  EXPECT_TRUE(m.completed);
  EXPECT_FALSE(m.collision);
  EXPECT_GE(m.min_clearance, config.planner.safety_radius);
  ASSERT_GE(m.phase_sequence.size(), 3u);
  EXPECT_EQ(m.phase_sequence[0], S);
  EXPECT_EQ(m.phase_sequence[1], L);
  EXPECT_EQ(m.phase_sequence.back(), S);
}

TEST(Simulation, RatesAndArchivedPlans) {
  Scenario s = BuiltinScenario(2);
  s.duration = 10.0;
  s.seed = 3;
  const SimulationConfig config;
  const SimulationLog log = sim::Run(s, config);
  EXPECT_EQ(log.termination, Termination::kDuration);
  EXPECT_EQ(log.ticks.size(), 501u);
  // 16 Hz replanning and 20 Hz perception over 10 s.
  EXPECT_EQ(log.plans.size(), 161u);
  EXPECT_EQ(log.estimates.size(), 201u);
  for (const PlanRecord& p : log.plans) {
    if (p.estimates_id < 0) continue;
    EXPECT_FALSE(planner::CheckCollision(p.trajectory,
                                         log.estimates[p.estimates_id],
                                         config.planner.safety_radius));
  }
}

TEST(Simulation, Deterministic) {
  Scenario s = BuiltinScenario(3);
  s.seed = 11;
  s.duration = 8.0;
  const SimulationLog a = sim::Run(s, {});
  const SimulationLog b = sim::Run(s, {});
  ASSERT_EQ(a.ticks.size(), b.ticks.size());
  for (std::size_t i = 0; i < a.ticks.size(); ++i) {
    EXPECT_EQ(a.ticks[i].state.position, b.ticks[i].state.position);
    EXPECT_EQ(a.ticks[i].steering, b.ticks[i].steering);
  }
}

TEST(Simulation, BlockedRoadAborts) {
  Scenario s = BuiltinScenario(1);
  s.depth_model = "ideal";
  s.obstacles.clear();
  for (double y = -5; y <= 5; y += 1.0) {
    perception::Obstacle o;
    o.center = {12.0, y};
    o.radius = 0.6;
    s.obstacles.push_back(o);
  }
  const SimulationConfig config;
  const SimulationLog log = sim::Run(s, config);
  EXPECT_EQ(log.termination, Termination::kAbort);
  EXPECT_NE(log.abort_reason.find("candidates"), std::string::npos);
  const Metrics m = ComputeMetrics(log, s, PlanningPath(s), config);
  EXPECT_TRUE(m.aborted);
  EXPECT_FALSE(m.completed);
  EXPECT_FALSE(m.collision);
}

TEST(SimulationConfig, Validation) {
  SimulationConfig c;
  EXPECT_NO_THROW(c.Validate());
  c.tick_rate = 0;
  EXPECT_EQ(CodeOf([&] { c.Validate(); }), ErrorCode::kInvalidConfig);
}

TEST(BuiltinScenario, SpecLayouts) {
  const Scenario one = BuiltinScenario(1);
  ASSERT_EQ(one.obstacles.size(), 1u);
  // The disc covers the route centerline.
  EXPECT_LT(std::abs(one.obstacles[0].center.y()), one.obstacles[0].radius);
  const Scenario two = BuiltinScenario(2);
  EXPECT_NE(two.obstacles[0].center.x(), two.obstacles[1].center.x());
  EXPECT_NEAR(two.obstacles[1].center.x() - two.obstacles[0].center.x(), 15.0,
              1e-12);
  EXPECT_LT(two.obstacles[0].center.y() * two.obstacles[1].center.y(), 0.0);
  const Scenario three = BuiltinScenario(3);
  const auto& a = three.obstacles[0];
  const auto& b = three.obstacles[1];
  const double gap = (a.center - b.center).norm() - a.radius - b.radius;
  EXPECT_NEAR(gap, 2.8, 1e-12);
  // Each side of the vehicle keeps the safety radius from the obstacle
  // surface it passes, measured from the vehicle centerline.
  const double width = vehicle::VehicleParams{}.width;
  const double safety = planner::PlannerConfig{}.safety_radius;
  EXPECT_GE(gap - width, 2.0 * (safety - 0.5 * width));
}

SimulationLog SyntheticLog(const std::vector<Eigen::Vector2d>& positions) {
  SimulationLog log;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    TickRecord r;
    r.time = 0.02 * i;
    r.state.position = positions[i];
    log.ticks.push_back(r);
  }
  log.termination = Termination::kGoal;
  return log;
}

TEST(ComputeMetrics, SyntheticLogs) {
  Scenario s = BuiltinScenario(1);
  s.obstacles[0].center = {30.0, -2.0};
  s.obstacles[0].radius = 0.5;
  const path::ReferencePath path = PlanningPath(s);
  const SimulationConfig config;
  std::vector<Eigen::Vector2d> on_path;
  for (double x = 0; x <= 80; x += 0.5) on_path.emplace_back(x, 0.0);
  Metrics m = ComputeMetrics(SyntheticLog(on_path), s, path, config);
  EXPECT_EQ(m.max_lateral_error, 0.0);
  EXPECT_NEAR(m.min_clearance, 1.5, 1e-12);
  EXPECT_TRUE(m.completed);

  std::vector<Eigen::Vector2d> grazing = on_path;
  grazing.emplace_back(30.0, -1.2);
  m = ComputeMetrics(SyntheticLog(grazing), s, path, config);
  EXPECT_NEAR(m.min_clearance, 0.3, 1e-12);
  EXPECT_FALSE(m.collision);

  std::vector<Eigen::Vector2d> hit = on_path;
  hit.emplace_back(30.0, -1.8);
  m = ComputeMetrics(SyntheticLog(hit), s, path, config);
  EXPECT_TRUE(m.collision);
  EXPECT_FALSE(m.completed);
}

TEST(ComputeMetrics, LateralErrorOnlyAwayFromObstacles) {
  Scenario s = BuiltinScenario(1);
  s.obstacles[0].center = {30.0, 3.0};
  const path::ReferencePath path = PlanningPath(s);
  std::vector<Eigen::Vector2d> pts;
  for (double x = 0; x <= 80; x += 0.5) {
    pts.emplace_back(x, std::abs(x - 30.0) < 2.0 ? 1.0 : 0.05);
  }
  const Metrics m = ComputeMetrics(SyntheticLog(pts), s, path, {});
  EXPECT_NEAR(m.max_lateral_error, 0.05, 1e-9);
}

}  // namespace
}  // namespace frenet_avoid::sim
