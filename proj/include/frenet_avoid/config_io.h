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

#ifndef FRENET_AVOID_CONFIG_IO_H_
#define FRENET_AVOID_CONFIG_IO_H_

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"

#include "frenet_avoid/frenet_planner.h"
#include "frenet_avoid/geometry.h"
#include "frenet_avoid/scenario.h"

namespace frenet_avoid::io {

using Json = nlohmann::ordered_json;

// All readers throw kInvalidConfig on malformed input, unknown keys or
// values that fail validation. Missing keys keep their defaults.

// {fx, fy, cx, cy, tilt_deg, height_m, t_x_m, t_y_m, antenna_offset_m: [x, y]}
// plus optional image_width, image_height, max_range_m.
geometry::CameraModel CalibrationFromJson(const Json& json);
Json CalibrationToJson(const geometry::CameraModel& camera);

// {name, route: [[x, y], ...], obstacles: [{x, y, radius, height, class}],
//  initial: {x, y, heading_deg, speed}, desired_speed, depth_model, duration,
//  seed}
sim::Scenario ScenarioFromJson(const Json& json);
Json ScenarioToJson(const sim::Scenario& scenario);

planner::PlannerConfig PlannerConfigFromJson(const Json& json,
                                             planner::PlannerConfig base = {});
Json PlannerConfigToJson(const planner::PlannerConfig& config);

struct RunConfig {
  std::optional<std::filesystem::path> scenario_path;
  std::optional<int> case_id;
  sim::SimulationConfig simulation;
  std::filesystem::path output_dir = "runs";
  bool plot = true;
};

// Sections: scenario (path, relative to `base_dir`) or case, planner, tracker,
// vehicle, camera, simulation, output_dir, plot.
RunConfig RunConfigFromJson(const Json& json,
                            const std::filesystem::path& base_dir = {});
Json RunConfigToJson(const RunConfig& config);

Json ReadJsonFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path,
                   const std::string& contents);

struct RunSummary {
  std::string scenario;
  std::string depth_model;
  std::uint64_t seed = 0;
  sim::Metrics metrics;
  std::string termination;
  std::string abort_reason;
};

// Non-finite numbers (no obstacles: infinite clearance) are written as null.
Json MetricsToJson(const RunSummary& summary);
RunSummary MetricsFromJson(const Json& json);

struct LogRow {
  double t = 0.0;
  double x = 0.0;
  double y = 0.0;
  double heading = 0.0;
  double speed = 0.0;
  double steering = 0.0;
  sim::PhaseLabel phase = sim::PhaseLabel::kStraight;
};

// Header "t,x,y,heading,speed,steering,phase"; numbers with six decimals.
std::string LogToCsv(const sim::SimulationLog& log,
                     const std::vector<sim::PhaseSegment>& phases);
std::vector<LogRow> LogFromCsv(const std::string& csv);

// Every candidate with its cost, feasibility and collision status; samples
// only for the winner.
Json PlanResultToJson(const path::FrenetState& start,
                      const planner::PlanResult& result, double desired_speed);

}  // namespace frenet_avoid::io

#endif  // FRENET_AVOID_CONFIG_IO_H_
