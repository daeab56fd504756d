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

#ifndef FRENET_AVOID_FRENET_PLANNER_H_
#define FRENET_AVOID_FRENET_PLANNER_H_

#include <Eigen/Core>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "frenet_avoid/perception_sim.h"
#include "frenet_avoid/polynomial.h"
#include "frenet_avoid/reference_path.h"

namespace frenet_avoid::planner {

struct CostWeights {
  double jerk = 0.1;
  double time = 1.0;
  double lane = 1.0;
  double speed = 1.0;
};

struct KinematicLimits {
  double max_speed = 5.0;      // m/s
  double max_accel = 2.0;      // m/s^2
  double max_curvature = 0.5;  // 1/m
};

struct PlannerConfig {
  std::vector<double> lateral_offsets = {-3.0, -2.0, -1.0, 0.0,
                                         1.0,  2.0,  3.0};
  // Terminal speeds to sample. Empty means the desired speed only.
  std::vector<double> target_speeds;
  std::vector<double> horizons = {3.0, 4.0, 5.0};
  double dt = 0.1;
  CostWeights weights;
  // Clearance the planner guarantees between trajectories and obstacle discs.
  double safety_radius = 1.0;
  // Extra inflation applied inside Plan() on top of safety_radius. It absorbs
  // the corner cutting of the path tracker and residual perception error so
  // the executed path, not just the plan, keeps safety_radius.
  double planning_margin = 0.25;
  KinematicLimits limits;

  void Validate() const;
  double CollisionRadius() const { return safety_radius + planning_margin; }
};

struct TrajectorySample {
  double t = 0.0;
  path::FrenetState frenet;
  Eigen::Vector2d position = Eigen::Vector2d::Zero();
  double heading = 0.0;
  double speed = 0.0;
  double accel = 0.0;
  double curvature = 0.0;
};

struct CostBreakdown {
  double jerk = 0.0;
  double time = 0.0;
  double lane = 0.0;
  double speed = 0.0;
  double total = 0.0;
};

enum class Violation { kNone, kSpeed, kAccel, kCurvature, kOffPath, kFoldOver };
std::string_view ViolationName(Violation violation);

struct Feasibility {
  bool feasible = true;
  Violation violation = Violation::kNone;
  std::size_t sample_index = 0;
};

struct TrajectoryCandidate {
  std::size_t index = 0;  // generation order
  double target_offset = 0.0;
  double target_speed = 0.0;
  double horizon = 0.0;
  QuinticPolynomial lateral;
  QuarticPolynomial longitudinal;
  std::vector<TrajectorySample> samples;
  // Set when a sample could not be mapped to Cartesian space (left the path
  // or folded over); `samples` then stops at the failing time.
  Violation conversion_failure = Violation::kNone;
  CostBreakdown cost;
};

// Sample times 0, dt, 2 dt, ... and finally `horizon` itself.
std::vector<double> SampleTimes(double horizon, double dt);

// Cartesian product lateral_offsets x target_speeds x horizons, in that
// nesting order. Lateral motion ends at rest at the target offset;
// longitudinal motion keeps the target speed with zero acceleration.
std::vector<TrajectoryCandidate> GenerateCandidates(
    const path::FrenetState& start, const path::ReferencePath& path,
    const PlannerConfig& config, double desired_speed);

// jerk: rectangle-rule integral of squared lateral and longitudinal jerk;
// time: horizon; lane: squared terminal offset; speed: squared terminal speed
// error. total is the weighted sum.
CostBreakdown Cost(const TrajectoryCandidate& candidate,
                   const PlannerConfig& config, double desired_speed);

Feasibility CheckFeasible(const TrajectoryCandidate& candidate,
                          const PlannerConfig& config);

// True iff some sample is strictly closer than radius + safety_radius to an
// obstacle center.
bool CheckCollision(const TrajectoryCandidate& candidate,
                    std::span<const perception::ObstacleEstimate> obstacles,
                    double safety_radius);

struct CandidateEvaluation {
  TrajectoryCandidate candidate;
  Feasibility feasibility;
  bool collision = false;
  bool accepted() const { return feasibility.feasible && !collision; }
};

struct PlanResult {
  std::vector<CandidateEvaluation> evaluations;
  std::optional<std::size_t> winner;  // index into evaluations
};

// Relative tolerance under which two total costs count as tied.
inline constexpr double kCostTieTolerance = 1e-12;

// Generates, costs and checks every candidate, then picks the cheapest
// accepted one. Ties go to the smallest |target offset|, then the shortest
// horizon, then generation order. Collisions use config.CollisionRadius().
PlanResult EvaluatePlan(const path::FrenetState& start,
                        const path::ReferencePath& path,
                        std::span<const perception::ObstacleEstimate> obstacles,
                        const PlannerConfig& config, double desired_speed);

// Winner of EvaluatePlan; throws kNoFeasiblePath when nothing is accepted.
TrajectoryCandidate Plan(const path::FrenetState& start,
                         const path::ReferencePath& path,
                         std::span<const perception::ObstacleEstimate> obstacles,
                         const PlannerConfig& config, double desired_speed);

}  // namespace frenet_avoid::planner

#endif  // FRENET_AVOID_FRENET_PLANNER_H_
