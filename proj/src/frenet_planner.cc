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

#include "frenet_avoid/frenet_planner.h"

#include <algorithm>
#include <cmath>
#include <string>

#include "frenet_avoid/error.h"

namespace frenet_avoid::planner {
namespace {

void RequireConfig(bool condition, const std::string& message) {
  if (!condition) throw Error(ErrorCode::kInvalidConfig, message);
}

bool AllFinite(const std::vector<double>& values) {
  return std::all_of(values.begin(), values.end(),
                     [](double v) { return std::isfinite(v); });
}

std::vector<double> SpeedsFor(const PlannerConfig& config,
                              double desired_speed) {
  if (config.target_speeds.empty()) return {desired_speed};
  return config.target_speeds;
}

}  // namespace

void PlannerConfig::Validate() const {
  RequireConfig(!lateral_offsets.empty() && AllFinite(lateral_offsets),
                "lateral_offsets must be a nonempty list of numbers");
  RequireConfig(AllFinite(target_speeds), "target_speeds must be finite");
  RequireConfig(std::all_of(target_speeds.begin(), target_speeds.end(),
                            [](double v) { return v >= 0.0; }),
                "target_speeds must be non-negative");
  RequireConfig(!horizons.empty() &&
                    std::all_of(horizons.begin(), horizons.end(),
                                [](double t) {
                                  return std::isfinite(t) && t > 0.0;
                                }),
                "horizons must be a nonempty list of positive numbers");
  RequireConfig(std::isfinite(dt) && dt > 0.0, "dt must be positive");
  RequireConfig(weights.jerk >= 0.0 && weights.time >= 0.0 &&
                    weights.lane >= 0.0 && weights.speed >= 0.0,
                "cost weights must be non-negative");
  RequireConfig(std::isfinite(safety_radius) && safety_radius >= 0.0,
                "safety_radius must be non-negative");
  RequireConfig(std::isfinite(planning_margin) && planning_margin >= 0.0,
                "planning_margin must be non-negative");
  RequireConfig(limits.max_speed > 0.0 && limits.max_accel > 0.0 &&
                    limits.max_curvature > 0.0,
                "limits must be positive");
}

std::string_view ViolationName(Violation violation) {
  switch (violation) {
    case Violation::kNone:
      return "none";
    case Violation::kSpeed:
      return "speed";
    case Violation::kAccel:
      return "accel";
    case Violation::kCurvature:
      return "curvature";
    case Violation::kOffPath:
      return "off_path";
    case Violation::kFoldOver:
      return "fold_over";
  }
  return "unknown";
}

std::vector<double> SampleTimes(double horizon, double dt) {
  const auto steps =
      static_cast<std::size_t>(std::ceil(horizon / dt - 1e-9));
  std::vector<double> times;
  times.reserve(steps + 1);
  for (std::size_t k = 0; k < steps; ++k) {
    times.push_back(static_cast<double>(k) * dt);
  }
  times.push_back(horizon);
  return times;
}

std::vector<TrajectoryCandidate> GenerateCandidates(
    const path::FrenetState& start, const path::ReferencePath& path,
    const PlannerConfig& config, double desired_speed) {
  config.Validate();
  const std::vector<double> speeds = SpeedsFor(config, desired_speed);
  std::vector<TrajectoryCandidate> candidates;
  candidates.reserve(config.lateral_offsets.size() * speeds.size() *
                     config.horizons.size());
  for (const double offset : config.lateral_offsets) {
    for (const double speed : speeds) {
      for (const double horizon : config.horizons) {
        TrajectoryCandidate c;
        c.index = candidates.size();
        c.target_offset = offset;
        c.target_speed = speed;
        c.horizon = horizon;
        c.lateral = SolveQuintic(start.d, start.d_dot, start.d_ddot, offset,
                                 0.0, 0.0, horizon);
        c.longitudinal = SolveQuartic(start.s, start.s_dot, start.s_ddot,
                                      speed, 0.0, horizon);
        for (const double t : SampleTimes(horizon, config.dt)) {
          TrajectorySample sample;
          sample.t = t;
          sample.frenet = {c.longitudinal.Value(t),
                           c.longitudinal.Velocity(t),
                           c.longitudinal.Acceleration(t),
                           c.lateral.Value(t),
                           c.lateral.Velocity(t),
                           c.lateral.Acceleration(t)};
          try {
            const path::CartesianState cart =
                path::FrenetToCartesian(path, sample.frenet);
            sample.position = cart.position;
            sample.heading = cart.heading;
            sample.speed = cart.speed;
            sample.accel = cart.accel;
            sample.curvature = cart.curvature;
          } catch (const Error& e) {
            if (e.code() == ErrorCode::kFoldOver) {
              c.conversion_failure = Violation::kFoldOver;
            } else if (e.code() == ErrorCode::kOutOfRange) {
              c.conversion_failure = Violation::kOffPath;
            } else {
              throw;
            }
            break;
          }
          c.samples.push_back(sample);
        }
        c.cost = Cost(c, config, desired_speed);
        candidates.push_back(std::move(c));
      }
    }
  }
  return candidates;
}

CostBreakdown Cost(const TrajectoryCandidate& candidate,
                   const PlannerConfig& config, double desired_speed) {
  const std::vector<double> times = SampleTimes(candidate.horizon, config.dt);
  CostBreakdown cost;
  for (std::size_t k = 0; k + 1 < times.size(); ++k) {
    const double step = times[k + 1] - times[k];
    const double lateral_jerk = candidate.lateral.Jerk(times[k]);
    const double longitudinal_jerk = candidate.longitudinal.Jerk(times[k]);
    cost.jerk += (lateral_jerk * lateral_jerk +
                  longitudinal_jerk * longitudinal_jerk) *
                 step;
  }
  cost.time = candidate.horizon;
  const double terminal_offset = candidate.lateral.Value(candidate.horizon);
  cost.lane = terminal_offset * terminal_offset;
  const double speed_error =
      candidate.longitudinal.Velocity(candidate.horizon) - desired_speed;
  cost.speed = speed_error * speed_error;
  const CostWeights& w = config.weights;
  cost.total = w.jerk * cost.jerk + w.time * cost.time + w.lane * cost.lane +
               w.speed * cost.speed;
  return cost;
}

Feasibility CheckFeasible(const TrajectoryCandidate& candidate,
                          const PlannerConfig& config) {
  const KinematicLimits& limits = config.limits;
  for (std::size_t i = 0; i < candidate.samples.size(); ++i) {
    const TrajectorySample& s = candidate.samples[i];
    if (s.speed > limits.max_speed) return {false, Violation::kSpeed, i};
    if (std::abs(s.accel) > limits.max_accel) {
      return {false, Violation::kAccel, i};
    }
    if (std::abs(s.curvature) > limits.max_curvature) {
      return {false, Violation::kCurvature, i};
    }
  }
  if (candidate.conversion_failure != Violation::kNone) {
    return {false, candidate.conversion_failure, candidate.samples.size()};
  }
  return {};
}

bool CheckCollision(const TrajectoryCandidate& candidate,
                    std::span<const perception::ObstacleEstimate> obstacles,
                    double safety_radius) {
  for (const perception::ObstacleEstimate& obstacle : obstacles) {
    const double limit = obstacle.radius + safety_radius;
    const double limit_sq = limit * limit;
    for (const TrajectorySample& s : candidate.samples) {
      if ((s.position - obstacle.center).squaredNorm() < limit_sq) return true;
    }
  }
  return false;
}

PlanResult EvaluatePlan(const path::FrenetState& start,
                        const path::ReferencePath& path,
                        std::span<const perception::ObstacleEstimate> obstacles,
                        const PlannerConfig& config, double desired_speed) {
  PlanResult result;
  std::vector<TrajectoryCandidate> candidates =
      GenerateCandidates(start, path, config, desired_speed);
  result.evaluations.reserve(candidates.size());
  std::optional<double> best_cost;
  for (TrajectoryCandidate& c : candidates) {
    CandidateEvaluation e;
    e.feasibility = CheckFeasible(c, config);
    e.collision = CheckCollision(c, obstacles, config.CollisionRadius());
    e.candidate = std::move(c);
    if (e.accepted() && (!best_cost || e.candidate.cost.total < *best_cost)) {
      best_cost = e.candidate.cost.total;
    }
    result.evaluations.push_back(std::move(e));
  }
  if (!best_cost) return result;

  const double tolerance = kCostTieTolerance * std::max(1.0, std::abs(*best_cost));
  for (std::size_t i = 0; i < result.evaluations.size(); ++i) {
    const CandidateEvaluation& e = result.evaluations[i];
    if (!e.accepted() || e.candidate.cost.total > *best_cost + tolerance) {
      continue;
    }
    if (!result.winner) {
      result.winner = i;
      continue;
    }
    const TrajectoryCandidate& incumbent =
        result.evaluations[*result.winner].candidate;
    const double offset = std::abs(e.candidate.target_offset);
    const double incumbent_offset = std::abs(incumbent.target_offset);
    if (offset < incumbent_offset ||
        (offset == incumbent_offset &&
         e.candidate.horizon < incumbent.horizon)) {
      result.winner = i;
    }
  }
  return result;
}

TrajectoryCandidate Plan(const path::FrenetState& start,
                         const path::ReferencePath& path,
                         std::span<const perception::ObstacleEstimate> obstacles,
                         const PlannerConfig& config, double desired_speed) {
  PlanResult result = EvaluatePlan(start, path, obstacles, config, desired_speed);
  if (!result.winner) {
    std::size_t infeasible = 0;
    std::size_t colliding = 0;
    for (const CandidateEvaluation& e : result.evaluations) {
      if (!e.feasibility.feasible) ++infeasible;
      if (e.collision) ++colliding;
    }
    throw Error(ErrorCode::kNoFeasiblePath,
                "all " + std::to_string(result.evaluations.size()) +
                    " candidates rejected (" + std::to_string(infeasible) +
                    " infeasible, " + std::to_string(colliding) +
                    " colliding)");
  }
  return std::move(result.evaluations[*result.winner].candidate);
}

}  // namespace frenet_avoid::planner
