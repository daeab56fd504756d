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

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "frenet_avoid/error.h"

namespace frenet_avoid::sim {
namespace {

using perception::ObstacleEstimate;

constexpr double kRouteExtension = 30.0;

std::vector<Eigen::Vector2d> StraightRoute(double length, double spacing) {
  std::vector<Eigen::Vector2d> route;
  const int n = static_cast<int>(std::round(length / spacing));
  for (int i = 0; i <= n; ++i) route.emplace_back(i * spacing, 0.0);
  return route;
}

perception::Obstacle MakeObstacle(double x, double y, double radius) {
  perception::Obstacle o;
  o.center = {x, y};
  o.radius = radius;
  return o;
}

void Require(bool condition, const std::string& message) {
  if (!condition) throw Error(ErrorCode::kInvalidConfig, message);
}

double MinClearance(const Eigen::Vector2d& position,
                    std::span<const perception::Obstacle> obstacles) {
  double clearance = std::numeric_limits<double>::infinity();
  for (const perception::Obstacle& o : obstacles) {
    clearance = std::min(clearance, (position - o.center).norm() - o.radius);
  }
  return clearance;
}

path::FrenetState FrenetAt(const planner::TrajectoryCandidate& c, double t) {
  return {c.longitudinal.Value(t),  c.longitudinal.Velocity(t),
          c.longitudinal.Acceleration(t), c.lateral.Value(t),
          c.lateral.Velocity(t),    c.lateral.Acceleration(t)};
}

// Continues the previous plan from its point closest to the vehicle. Empty
// when the vehicle has left the plan.
std::optional<path::FrenetState> StitchedStart(
    const planner::TrajectoryCandidate& previous,
    const path::ReferencePath& path, const Eigen::Vector2d& position,
    double tolerance) {
  if (previous.samples.empty()) return std::nullopt;
  const std::size_t i = tracker::NearestSample(previous.samples, position);
  double a = previous.samples[i == 0 ? 0 : i - 1].t;
  double b = previous.samples[std::min(i + 1, previous.samples.size() - 1)].t;
  const auto distance = [&](double t) {
    try {
      return (path::FrenetToCartesian(path, FrenetAt(previous, t)).position -
              position)
          .squaredNorm();
    } catch (const Error&) {
      return std::numeric_limits<double>::infinity();
    }
  };
  constexpr double kInvPhi = 0.6180339887498949;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = distance(c);
  double fd = distance(d);
  for (int iter = 0; iter < 40; ++iter) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = distance(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = distance(d);
    }
  }
  const double t = 0.5 * (a + b);
  if (!(distance(t) <= tolerance * tolerance)) return std::nullopt;
  return FrenetAt(previous, t);
}

path::FrenetState VehicleStart(const path::ReferencePath& path,
                               const vehicle::VehicleState& state,
                               double steering, double wheelbase,
                               std::optional<path::SearchWindow> window) {
  path::CartesianState cart;
  cart.position = state.position;
  cart.heading = state.heading;
  cart.speed = state.speed;
  cart.curvature = std::tan(steering) / wheelbase;
  return path::CartesianToFrenet(path, cart, window);
}

}  // namespace

void Scenario::Validate() const {
  Require(route.size() >= 2, "scenario route needs at least two waypoints");
  Require(std::isfinite(duration) && duration > 0.0,
          "scenario duration must be positive");
  Require(std::isfinite(desired_speed) && desired_speed >= 0.0,
          "desired_speed must be non-negative");
  Require(std::isfinite(initial_state.speed) && initial_state.speed >= 0.0,
          "initial speed must be non-negative");
  for (const perception::Obstacle& o : obstacles) o.Validate();
  perception::BuiltinProfile(depth_model);
}

Scenario BuiltinScenario(int case_id) {
  Scenario s;
  s.route = StraightRoute(80.0, 10.0);
  s.initial_state.speed = s.desired_speed;
  s.seed = 0;
  switch (case_id) {
    case 1:
      // Sits across the centerline, biased right so passing left is the
      // cheaper side.
      s.name = "case1_single_obstacle";
      s.obstacles = {MakeObstacle(30.0, -0.5, 0.6)};
      break;
    case 2:
      // Staggered pair 15 m apart: the second one blocks the avoidance lane
      // and forces the return in between.
      s.name = "case2_multiple_obstacles";
      s.obstacles = {MakeObstacle(30.0, -1.0, 0.6),
                     MakeObstacle(45.0, 2.0, 0.5)};
      break;
    case 3:
      // 2.8 m gap between two obstacles at the same station; the gap center
      // is 1 m left of the route.
      s.name = "case3_narrow_passage";
      s.obstacles = {MakeObstacle(35.0, -1.0, 0.6),
                     MakeObstacle(35.0, 3.0, 0.6)};
      break;
    default:
      throw Error(ErrorCode::kUnknownCase,
                  "case must be 1, 2 or 3, got " + std::to_string(case_id));
  }
  return s;
}

Scenario CurvedRouteScenario(double radius) {
  Scenario s;
  s.name = "s_curve";
  const double sweep = std::numbers::pi / 6.0;
  // Straight lead-in, left arc, right arc of twice the sweep, left arc back
  // to the original heading, straight run-out.
  struct Piece {
    double length;
    double curvature;
  };
  const Piece pieces[] = {{15.0, 0.0},
                          {radius * sweep, 1.0 / radius},
                          {radius * 2.0 * sweep, -1.0 / radius},
                          {radius * sweep, 1.0 / radius},
                          {15.0, 0.0}};
  Eigen::Vector2d p = Eigen::Vector2d::Zero();
  double heading = 0.0;
  s.route.push_back(p);
  constexpr double kStep = 0.05;
  constexpr double kWaypointSpacing = 2.0;
  double since_waypoint = 0.0;
  for (const Piece& piece : pieces) {
    const int n = static_cast<int>(std::round(piece.length / kStep));
    const double ds = piece.length / n;
    for (int i = 0; i < n; ++i) {
      // Exact arc increment.
      const double dh = piece.curvature * ds;
      const double chord =
          dh == 0.0 ? ds : 2.0 * std::sin(dh / 2.0) / piece.curvature;
      p += chord * Eigen::Vector2d(std::cos(heading + dh / 2.0),
                                   std::sin(heading + dh / 2.0));
      heading += dh;
      since_waypoint += ds;
      if (since_waypoint >= kWaypointSpacing - 1e-9) {
        s.route.push_back(p);
        since_waypoint = 0.0;
      }
    }
  }
  if (since_waypoint > 1e-6) s.route.push_back(p);
  s.initial_state.speed = s.desired_speed;
  s.depth_model = "ideal";
  return s;
}

void SimulationConfig::Validate() const {
  planner.Validate();
  tracker.Validate();
  vehicle.Validate();
  camera.Validate();
  Require(tick_rate > 0.0 && std::isfinite(tick_rate),
          "tick_rate must be positive");
  Require(replan_rate > 0.0 && std::isfinite(replan_rate),
          "replan_rate must be positive");
  Require(stitch_tolerance >= 0.0, "stitch_tolerance must be non-negative");
  Require(association_gate > 0.0, "association_gate must be positive");
  Require(straight_threshold >= 0.0, "straight_threshold must be non-negative");
  Require(min_phase_duration >= 0.0, "min_phase_duration must be non-negative");
}

void ObstacleMemory::Update(std::span<const ObstacleEstimate> detections,
                            std::span<const double> weights) {
  if (weights.size() != detections.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "one weight per detection required");
  }
  std::vector<bool> matched(estimates_.size(), false);
  for (std::size_t j = 0; j < detections.size(); ++j) {
    const ObstacleEstimate& z = detections[j];
    std::optional<std::size_t> best;
    double best_distance = gate_;
    for (std::size_t i = 0; i < matched.size(); ++i) {
      if (matched[i]) continue;
      const double dist = (estimates_[i].center - z.center).norm();
      if (dist <= best_distance) {
        best_distance = dist;
        best = i;
      }
    }
    if (!best) {
      estimates_.push_back(z);
      total_weight_.push_back(weights[j]);
      continue;
    }
    matched[*best] = true;
    ObstacleEstimate& e = estimates_[*best];
    const double w = total_weight_[*best] + weights[j];
    e.center = (total_weight_[*best] * e.center + weights[j] * z.center) / w;
    e.radius = std::max(e.radius, z.radius);
    e.timestamp = z.timestamp;
    total_weight_[*best] = w;
  }
}

double DetectionWeight(const perception::DepthErrorProfile& profile,
                       const geometry::VehiclePoint& relative) {
  const double depth = perception::ErrorAt(profile, relative.x());
  const double offset = perception::OffsetErrorAt(profile, relative.y());
  return 1.0 / (depth * depth + offset * offset + 1e-4);
}

std::string_view TerminationName(Termination termination) {
  switch (termination) {
    case Termination::kDuration:
      return "duration";
    case Termination::kGoal:
      return "goal";
    case Termination::kCollision:
      return "collision";
    case Termination::kAbort:
      return "abort";
  }
  return "unknown";
}

path::ReferencePath PlanningPath(const Scenario& scenario) {
  const path::ReferencePath route = path::ReferencePath::Build(scenario.route);
  const path::PathSample end = route.Sample(route.length());
  const Eigen::Vector2d tangent(std::cos(end.heading), std::sin(end.heading));
  std::vector<Eigen::Vector2d> extended = route.waypoints();
  extended.push_back(end.position + 0.5 * kRouteExtension * tangent);
  extended.push_back(end.position + kRouteExtension * tangent);
  return path::ReferencePath::Build(extended);
}

double GoalStation(const Scenario& scenario, const path::ReferencePath& path) {
  return path.Project(scenario.route.back()).s;
}

SimulationLog Run(const Scenario& scenario, const SimulationConfig& config) {
  scenario.Validate();
  config.Validate();
  const perception::DepthErrorProfile profile =
      perception::BuiltinProfile(scenario.depth_model);
  const path::ReferencePath path = PlanningPath(scenario);
  const double goal = GoalStation(scenario, path);
  perception::Rng rng(scenario.seed);
  ObstacleMemory memory(config.association_gate);

  SimulationLog log;
  log.dt = 1.0 / config.tick_rate;
  vehicle::VehicleState state = scenario.initial_state;
  state.heading = geometry::NormalizeAngle(state.heading);
  tracker::ControlCommand applied{0.0, state.speed};
  double station = path.Project(state.position).s;
  std::size_t frames = 0;
  std::size_t replans = 0;
  int estimates_id = -1;
  int plan_id = -1;

  const auto last_tick = static_cast<std::size_t>(
      std::floor(scenario.duration * config.tick_rate + 1e-9));
  for (std::size_t k = 0; k <= last_tick; ++k) {
    const double t = static_cast<double>(k) * log.dt;
    const double kd = static_cast<double>(k);
    const geometry::VehiclePose pose{state.position, state.heading, 0.0};
    const path::SearchWindow window{station - 5.0, station + 5.0};

    if (kd * profile.fps >= static_cast<double>(frames) * config.tick_rate) {
      ++frames;
      const std::vector<ObstacleEstimate> detections = perception::Sense(
          scenario.obstacles, pose, config.camera, profile, t, rng);
      std::vector<double> weights;
      for (const ObstacleEstimate& z : detections) {
        weights.push_back(DetectionWeight(
            profile, geometry::GlobalToVehicle(
                         geometry::GlobalPoint(z.center.x(), z.center.y(), 0.0),
                         pose, config.camera.antenna_offset)));
      }
      memory.Update(detections, weights);
      log.estimates.push_back(memory.estimates());
      estimates_id = static_cast<int>(log.estimates.size()) - 1;
    }

    if (kd * config.replan_rate >=
        static_cast<double>(replans) * config.tick_rate) {
      ++replans;
      PlanRecord record;
      record.time = t;
      record.estimates_id = estimates_id;
      std::optional<path::FrenetState> start;
      if (plan_id >= 0) {
        start = StitchedStart(log.plans[plan_id].trajectory, path,
                              state.position, config.stitch_tolerance);
      }
      record.stitched = start.has_value();
      record.start =
          start ? *start
                : VehicleStart(path, state, applied.steering,
                               config.vehicle.wheelbase, window);
      const std::vector<ObstacleEstimate> empty;
      const std::vector<ObstacleEstimate>& estimates =
          estimates_id >= 0 ? log.estimates[estimates_id] : empty;
      try {
        record.trajectory = planner::Plan(record.start, path, estimates,
                                          config.planner,
                                          scenario.desired_speed);
        log.plans.push_back(std::move(record));
        plan_id = static_cast<int>(log.plans.size()) - 1;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNoFeasiblePath) throw;
        log.termination = Termination::kAbort;
        log.abort_reason = e.what();
        applied.target_speed = 0.0;
        log.ticks.push_back({t, state, applied.steering, 0.0, plan_id,
                             estimates_id});
        return log;
      }
    }

    tracker::ControlCommand command{0.0, 0.0};
    if (plan_id >= 0) {
      command = tracker::Track(log.plans[plan_id].trajectory.samples,
                               {state.position, state.heading}, state.speed,
                               config.tracker);
    }
    applied = vehicle::ApplyLimits(applied, command, log.dt, config.vehicle);
    log.ticks.push_back(
        {t, state, applied.steering, applied.target_speed, plan_id,
         estimates_id});

    if (MinClearance(state.position, scenario.obstacles) < 0.0) {
      log.termination = Termination::kCollision;
      return log;
    }
    station = path.Project(state.position, window).s;
    if (station >= goal) {
      log.termination = Termination::kGoal;
      return log;
    }
    state = vehicle::Step(state, applied, log.dt, config.vehicle);
  }
  log.termination = Termination::kDuration;
  return log;
}

std::string_view PhaseLabelName(PhaseLabel label) {
  switch (label) {
    case PhaseLabel::kStraight:
      return "Straight";
    case PhaseLabel::kAvoidLeft:
      return "AvoidLeft";
    case PhaseLabel::kReturnRight:
      return "ReturnRight";
  }
  return "Unknown";
}

std::optional<PhaseLabel> ParsePhaseLabel(std::string_view name) {
  for (const PhaseLabel label : {PhaseLabel::kStraight, PhaseLabel::kAvoidLeft,
                                 PhaseLabel::kReturnRight}) {
    if (PhaseLabelName(label) == name) return label;
  }
  return std::nullopt;
}

namespace {

// Sample range [first, last) sharing one label.
struct Band {
  PhaseLabel label;
  std::size_t first;
  std::size_t last;
};

void Coalesce(std::vector<Band>& bands) {
  std::vector<Band> out;
  for (const Band& b : bands) {
    if (!out.empty() && out.back().label == b.label) {
      out.back().last = b.last;
    } else {
      out.push_back(b);
    }
  }
  bands = std::move(out);
}

}  // namespace

std::vector<PhaseSegment> ClassifyPhases(std::span<const double> times,
                                         std::span<const double> steering,
                                         double straight_threshold,
                                         double min_duration) {
  if (times.empty() || times.size() != steering.size()) {
    throw Error(ErrorCode::kInvalidArgument,
                "steering series must be nonempty and match its timestamps");
  }
  const std::size_t n = times.size();
  const auto start_of = [&](const Band& b) { return times[b.first]; };
  const auto end_of = [&](const Band& b) {
    return b.last < n ? times[b.last] : times.back();
  };
  const auto duration_of = [&](const Band& b) {
    return end_of(b) - start_of(b);
  };
  // Largest steering magnitude in the band's own direction.
  const auto peak_of = [&](const Band& b) {
    const double sign = b.label == PhaseLabel::kAvoidLeft ? 1.0 : -1.0;
    double peak = 0.0;
    for (std::size_t i = b.first; i < b.last; ++i) {
      peak = std::max(peak, sign * steering[i]);
    }
    return peak;
  };

  std::vector<Band> bands;
  for (std::size_t i = 0; i < n; ++i) {
    PhaseLabel label = PhaseLabel::kStraight;
    if (steering[i] > straight_threshold) label = PhaseLabel::kAvoidLeft;
    if (steering[i] < -straight_threshold) label = PhaseLabel::kReturnRight;
    if (!bands.empty() && bands.back().label == label) {
      bands.back().last = i + 1;
    } else {
      bands.push_back({label, i, i + 1});
    }
  }

  // Absorb short bands, shortest first.
  while (bands.size() > 1) {
    std::optional<std::size_t> shortest;
    for (std::size_t i = 0; i < bands.size(); ++i) {
      if (duration_of(bands[i]) >= min_duration) continue;
      if (!shortest || duration_of(bands[i]) < duration_of(bands[*shortest])) {
        shortest = i;
      }
    }
    if (!shortest) break;
    const std::size_t i = *shortest;
    PhaseLabel absorb;
    if (i == 0) {
      absorb = bands[1].label;
    } else if (i + 1 == bands.size()) {
      absorb = bands[i - 1].label;
    } else if (bands[i - 1].label == bands[i + 1].label) {
      absorb = bands[i - 1].label;
    } else {
      absorb = duration_of(bands[i + 1]) > duration_of(bands[i - 1])
                   ? bands[i + 1].label
                   : bands[i - 1].label;
    }
    bands[i].label = absorb;
    Coalesce(bands);
  }

  // A turn much weaker than the opposite turn before it is the counter-steer
  // that settles that maneuver, together with any straight band in between.
  for (std::size_t i = 1; i < bands.size(); ++i) {
    if (bands[i].label == PhaseLabel::kStraight) continue;
    std::size_t j = i - 1;
    if (bands[j].label == PhaseLabel::kStraight) {
      if (j == 0) continue;
      --j;
    }
    if (bands[j].label == bands[i].label) continue;
    if (peak_of(bands[i]) < kSettlingPeakRatio * peak_of(bands[j])) {
      for (std::size_t k = j + 1; k <= i; ++k) bands[k].label = bands[j].label;
    }
  }
  Coalesce(bands);

  std::vector<PhaseSegment> segments;
  segments.reserve(bands.size());
  for (const Band& b : bands) {
    segments.push_back({b.label, start_of(b), end_of(b)});
  }
  return segments;
}

PhaseLabel PhaseAt(std::span<const PhaseSegment> phases, double t) {
  for (const PhaseSegment& s : phases) {
    if (t < s.end) return s.label;
  }
  return phases.empty() ? PhaseLabel::kStraight : phases.back().label;
}

Metrics ComputeMetrics(const SimulationLog& log, const Scenario& scenario,
                       const path::ReferencePath& path,
                       const SimulationConfig& config) {
  Metrics m;
  m.min_clearance = std::numeric_limits<double>::infinity();
  m.plan_count = log.plans.size();
  m.aborted = log.termination == Termination::kAbort;
  m.reached_goal = log.termination == Termination::kGoal;
  const double free_distance = 2.0 * config.planner.safety_radius;
  std::vector<double> times;
  std::vector<double> steering;
  std::optional<double> station;
  for (const TickRecord& tick : log.ticks) {
    times.push_back(tick.time);
    steering.push_back(tick.steering);
    const double clearance =
        MinClearance(tick.state.position, scenario.obstacles);
    m.min_clearance = std::min(m.min_clearance, clearance);
    std::optional<path::SearchWindow> window;
    if (station) window = path::SearchWindow{*station - 5.0, *station + 5.0};
    const path::Projection p = path.Project(tick.state.position, window);
    station = p.s;
    if (clearance > free_distance) {
      m.max_lateral_error = std::max(m.max_lateral_error, std::abs(p.d));
    }
  }
  m.collision = m.min_clearance < 0.0;
  m.completed = m.reached_goal && !m.collision && !m.aborted;
  if (!log.ticks.empty()) {
    m.final_time = log.ticks.back().time;
    m.phases = ClassifyPhases(times, steering, config.straight_threshold,
                              config.min_phase_duration);
    for (const PhaseSegment& s : m.phases) m.phase_sequence.push_back(s.label);
  }
  return m;
}

}  // namespace frenet_avoid::sim
