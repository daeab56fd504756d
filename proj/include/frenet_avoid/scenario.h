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

#ifndef FRENET_AVOID_SCENARIO_H_
#define FRENET_AVOID_SCENARIO_H_

#include <Eigen/Core>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "frenet_avoid/frenet_planner.h"
#include "frenet_avoid/geometry.h"
#include "frenet_avoid/perception_sim.h"
#include "frenet_avoid/reference_path.h"
#include "frenet_avoid/tracker.h"
#include "frenet_avoid/vehicle_model.h"

namespace frenet_avoid::sim {

struct Scenario {
  std::string name = "custom";
  std::vector<Eigen::Vector2d> route;
  std::vector<perception::Obstacle> obstacles;
  vehicle::VehicleState initial_state;
  double desired_speed = 2.78;  // 10 km/h
  std::string depth_model = "dav2";
  double duration = 45.0;
  std::uint64_t seed = 0;

  void Validate() const;
};

// Layouts for the three test drives: a single obstacle, two staggered
// obstacles, and a narrow gap. Throws kUnknownCase outside 1..3.
Scenario BuiltinScenario(int case_id);

// Obstacle-free S-bend used for tracking checks; arcs of `radius` meters.
Scenario CurvedRouteScenario(double radius = 30.0);

struct SimulationConfig {
  planner::PlannerConfig planner;
  tracker::TrackerConfig tracker;
  vehicle::VehicleParams vehicle;
  geometry::CameraModel camera = geometry::CameraModel::Default();
  double tick_rate = 50.0;    // Hz
  double replan_rate = 16.0;  // Hz
  // A plan is continued from its own state unless the vehicle has drifted
  // farther than this from it.
  double stitch_tolerance = 0.5;
  // Detections within this distance of a remembered obstacle are fused.
  double association_gate = 2.5;
  double straight_threshold = 0.03;  // rad
  double min_phase_duration = 0.4;   // s

  void Validate() const;
};

// Running fusion of detections into a persistent obstacle list. Each
// remembered obstacle is the inverse-variance weighted mean of the detections
// associated with it; obstacles stay remembered after leaving the view.
class ObstacleMemory {
 public:
  explicit ObstacleMemory(double gate = 2.5) : gate_(gate) {}

  void Update(std::span<const perception::ObstacleEstimate> detections,
              std::span<const double> weights);
  const std::vector<perception::ObstacleEstimate>& estimates() const {
    return estimates_;
  }

 private:
  double gate_;
  std::vector<perception::ObstacleEstimate> estimates_;
  std::vector<double> total_weight_;
};

// Fusion weight of a detection from its expected depth and offset errors.
double DetectionWeight(const perception::DepthErrorProfile& profile,
                       const geometry::VehiclePoint& relative);

struct TickRecord {
  double time = 0.0;
  vehicle::VehicleState state;
  double steering = 0.0;
  double target_speed = 0.0;
  int plan_id = -1;       // index into SimulationLog::plans, -1 before any
  int estimates_id = -1;  // index into SimulationLog::estimates
};

struct PlanRecord {
  double time = 0.0;
  path::FrenetState start;
  bool stitched = false;
  int estimates_id = -1;
  planner::TrajectoryCandidate trajectory;
};

enum class Termination { kDuration, kGoal, kCollision, kAbort };
std::string_view TerminationName(Termination termination);

struct SimulationLog {
  double dt = 0.02;
  std::vector<TickRecord> ticks;
  std::vector<PlanRecord> plans;
  std::vector<std::vector<perception::ObstacleEstimate>> estimates;
  Termination termination = Termination::kDuration;
  std::string abort_reason;
};

// Reference path the planner uses: the route extended 30 m straight past its
// end so plans near the goal stay on the path.
path::ReferencePath PlanningPath(const Scenario& scenario);
// Arc length at which the run counts as finished.
double GoalStation(const Scenario& scenario, const path::ReferencePath& path);

// Closed loop on a fixed virtual clock. Per tick, in order: perception (at the
// depth model's frame rate), replanning (at replan_rate), pure pursuit on the
// latest plan, plant step. Stops at the duration, the goal, a collision with a
// true obstacle, or when the planner finds no feasible path.
SimulationLog Run(const Scenario& scenario, const SimulationConfig& config);

enum class PhaseLabel { kStraight, kAvoidLeft, kReturnRight };
std::string_view PhaseLabelName(PhaseLabel label);
std::optional<PhaseLabel> ParsePhaseLabel(std::string_view name);

struct PhaseSegment {
  PhaseLabel label = PhaseLabel::kStraight;
  double start = 0.0;
  double end = 0.0;
};

// A turn band whose peak is below this fraction of the preceding opposite
// turn is treated as that turn's settling counter-steer.
inline constexpr double kSettlingPeakRatio = 0.5;

// Segments the steering series into straight / left / right bands. Bands
// shorter than min_duration are absorbed by their neighbors. A weak opposite
// turn right after a maneuver (the tracker easing the vehicle back onto a
// straight heading) stays part of that maneuver.
// The segments partition [times.front(), times.back()].
std::vector<PhaseSegment> ClassifyPhases(std::span<const double> times,
                                         std::span<const double> steering,
                                         double straight_threshold,
                                         double min_duration);

// Label of the segment containing time t.
PhaseLabel PhaseAt(std::span<const PhaseSegment> phases, double t);

struct Metrics {
  double max_lateral_error = 0.0;
  double min_clearance = 0.0;
  bool collision = false;
  std::vector<PhaseLabel> phase_sequence;
  std::vector<PhaseSegment> phases;
  bool completed = false;
  bool reached_goal = false;
  bool aborted = false;
  double final_time = 0.0;
  std::size_t plan_count = 0;
};

// Lateral error is |d| against the planning path, only at ticks where every
// obstacle is more than 2 * safety_radius away. Clearance is the distance from
// the vehicle reference point to an obstacle surface.
Metrics ComputeMetrics(const SimulationLog& log, const Scenario& scenario,
                       const path::ReferencePath& path,
                       const SimulationConfig& config);

}  // namespace frenet_avoid::sim

#endif  // FRENET_AVOID_SCENARIO_H_
