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

#include "cli.h"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <future>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "frenet_avoid/config_io.h"
#include "frenet_avoid/error.h"
#include "frenet_avoid/geometry.h"
#include "frenet_avoid/perception_sim.h"
#include "frenet_avoid/scenario.h"
#include "frenet_avoid/svg_plot.h"

namespace frenet_avoid::cli {
namespace {

namespace fs = std::filesystem;

constexpr int kExitIncomplete = 1;
constexpr int kExitInvalid = 2;
constexpr char kConfigEnv[] = "FRENET_AVOID_CONFIG";

std::string Printf(const char* format, auto... args) {
  char buffer[512];
  std::snprintf(buffer, sizeof(buffer), format, args...);
  return buffer;
}

struct ScenarioArgs {
  std::optional<int> case_id;
  std::string scenario;
  std::string config;
};

void AddScenarioOptions(CLI::App* app, ScenarioArgs& args) {
  app->add_option("--case", args.case_id, "Built-in scenario 1, 2 or 3");
  app->add_option("--scenario", args.scenario, "Scenario JSON file");
  app->add_option("--config", args.config,
                  std::string("Run config JSON (default: $") + kConfigEnv +
                      ")");
}

io::RunConfig LoadRunConfig(const std::string& flag) {
  std::string path = flag;
  if (path.empty()) {
    if (const char* env = std::getenv(kConfigEnv)) path = env;
  }
  if (path.empty()) return {};
  if (!fs::exists(path)) {
    throw Error(ErrorCode::kInvalidConfig, "config file not found: " + path);
  }
  return io::RunConfigFromJson(io::ReadJsonFile(path),
                               fs::path(path).parent_path());
}

sim::Scenario ResolveScenario(const ScenarioArgs& args,
                              const io::RunConfig& config) {
  if (args.case_id && !args.scenario.empty()) {
    throw Error(ErrorCode::kInvalidConfig,
                "give either --case or --scenario, not both");
  }
  if (args.case_id) return sim::BuiltinScenario(*args.case_id);
  if (!args.scenario.empty()) {
    return io::ScenarioFromJson(io::ReadJsonFile(args.scenario));
  }
  if (config.scenario_path) {
    return io::ScenarioFromJson(io::ReadJsonFile(*config.scenario_path));
  }
  if (config.case_id) return sim::BuiltinScenario(*config.case_id);
  throw Error(ErrorCode::kInvalidConfig,
              "no scenario: pass --case, --scenario or a config with one");
}

struct SimulateArgs {
  ScenarioArgs scenario;
  std::string depth_model;
  std::optional<std::uint64_t> seed;
  std::string out;
  int repeat = 1;
  std::optional<bool> plot;
};

struct RunOutcome {
  io::RunSummary summary;
  fs::path directory;
};

RunOutcome SimulateOne(const sim::Scenario& scenario,
                       const io::RunConfig& config, const fs::path& directory,
                       bool plot) {
  const sim::SimulationLog log = sim::Run(scenario, config.simulation);
  const path::ReferencePath path = sim::PlanningPath(scenario);
  io::RunSummary summary;
  summary.scenario = scenario.name;
  summary.depth_model = scenario.depth_model;
  summary.seed = scenario.seed;
  summary.metrics =
      sim::ComputeMetrics(log, scenario, path, config.simulation);
  summary.termination = std::string(sim::TerminationName(log.termination));
  summary.abort_reason = log.abort_reason;

  io::WriteTextFile(directory / "log.csv",
                    io::LogToCsv(log, summary.metrics.phases));
  io::WriteTextFile(directory / "metrics.json",
                    io::MetricsToJson(summary).dump(2) + "\n");
  if (plot) {
    std::vector<double> times;
    std::vector<double> steering;
    for (const sim::TickRecord& tick : log.ticks) {
      times.push_back(tick.time);
      steering.push_back(tick.steering);
    }
    io::WriteTextFile(
        directory / "steering.svg",
        plot::SteeringSvg(times, steering, summary.metrics.phases,
                          scenario.name + " / " + scenario.depth_model +
                              " / seed " + std::to_string(scenario.seed)));
  }
  return {summary, directory};
}

int Simulate(const SimulateArgs& args, std::ostream& out) {
  const io::RunConfig config = LoadRunConfig(args.scenario.config);
  sim::Scenario scenario = ResolveScenario(args.scenario, config);
  if (!args.depth_model.empty()) scenario.depth_model = args.depth_model;
  if (args.seed) scenario.seed = *args.seed;
  perception::BuiltinProfile(scenario.depth_model);
  scenario.Validate();
  if (args.repeat < 1) {
    throw Error(ErrorCode::kInvalidConfig, "--repeat must be at least 1");
  }
  const fs::path root = args.out.empty() ? config.output_dir : fs::path(args.out);
  const bool plot = args.plot.value_or(config.plot);

  // Seeds run in isolation; each writes only its own directory.
  std::vector<std::future<RunOutcome>> runs;
  for (int k = 0; k < args.repeat; ++k) {
    sim::Scenario copy = scenario;
    copy.seed = scenario.seed + static_cast<std::uint64_t>(k);
    const fs::path directory =
        args.repeat == 1 ? root : root / ("seed_" + std::to_string(copy.seed));
    runs.push_back(std::async(std::launch::async, SimulateOne, copy,
                              std::cref(config), directory, plot));
  }
  bool all_completed = true;
  for (auto& run : runs) {
    const RunOutcome outcome = run.get();
    const sim::Metrics& m = outcome.summary.metrics;
    std::string phases;
    for (const sim::PhaseLabel label : m.phase_sequence) {
      if (!phases.empty()) phases += ",";
      phases += std::string(sim::PhaseLabelName(label));
    }
    out << Printf(
               "%s seed=%llu %s t=%.2f min_clearance=%.3f "
               "max_lateral_error=%.3f collision=%s",
               outcome.summary.scenario.c_str(),
               static_cast<unsigned long long>(outcome.summary.seed),
               outcome.summary.termination.c_str(), m.final_time,
               m.min_clearance, m.max_lateral_error,
               m.collision ? "true" : "false")
        << " phases=" << phases << " -> " << outcome.directory.string()
        << "\n";
    if (!outcome.summary.abort_reason.empty()) {
      out << "  abort: " << outcome.summary.abort_reason << "\n";
    }
    all_completed = all_completed && m.completed;
  }
  return all_completed ? 0 : kExitIncomplete;
}

struct TransformArgs {
  std::string calibration;
  std::vector<double> pixel;
  std::optional<double> depth;
  std::vector<double> pose;
  bool compass = false;
  std::vector<double> project;
};

int Transform(const TransformArgs& args, std::ostream& out) {
  const geometry::CameraModel camera =
      io::CalibrationFromJson(io::ReadJsonFile(args.calibration));
  constexpr double kDegToRad = std::numbers::pi / 180.0;
  geometry::VehiclePose pose;
  pose.position = {args.pose[0], args.pose[1]};
  // A compass bearing is clockwise from north; the pose heading is
  // counterclockwise from east.
  pose.heading = geometry::NormalizeAngle(
      args.compass ? (90.0 - args.pose[2]) * kDegToRad
                   : args.pose[2] * kDegToRad);

  if (!args.project.empty()) {
    const auto projection = geometry::ProjectGlobalPoint(
        geometry::GlobalPoint(args.project[0], args.project[1],
                              args.project[2]),
        camera, pose);
    if (!projection) {
      throw Error(ErrorCode::kInvalidArgument,
                  "point is not in front of the camera");
    }
    out << Printf("pixel: %.6f %.6f depth: %.6f\n", projection->pixel.x,
                  projection->pixel.y, projection->depth);
    return 0;
  }
  if (args.pixel.empty() || !args.depth) {
    throw Error(ErrorCode::kInvalidArgument,
                "transform needs --pixel and --depth, or --project");
  }
  const geometry::PixelPoint pixel{args.pixel[0], args.pixel[1]};
  // A one-cell depth map under the pixel carries the measured depth.
  const geometry::BoundingBox box{
      static_cast<int>(std::floor(pixel.x)),
      static_cast<int>(std::floor(pixel.y)),
      static_cast<int>(std::floor(pixel.x)) + 1,
      static_cast<int>(std::floor(pixel.y)) + 1};
  if (!(*args.depth > 0.0)) {
    throw Error(ErrorCode::kNonPositiveDepth,
                "depth must be positive, got " + std::to_string(*args.depth));
  }
  const geometry::DepthMap depth_map(box.x_min, box.y_min, 1, 1, *args.depth);
  const geometry::GlobalPoint global = geometry::LocalizeObstacle(
      pixel, depth_map, box, camera.intrinsics, camera.extrinsics, pose,
      camera.antenna_offset);
  out << Printf("global: %.6f %.6f %.6f\n", global.x(), global.y(),
                global.z());
  return 0;
}

int Profiles(const std::string& model, bool json, std::ostream& out) {
  std::vector<std::string> names = perception::BuiltinProfileNames();
  if (!model.empty()) names = {model};
  io::Json all = io::Json::array();
  for (const std::string& name : names) {
    const perception::DepthErrorProfile p = perception::BuiltinProfile(name);
    if (json) {
      io::Json depth = io::Json::array();
      io::Json offset = io::Json::array();
      for (const auto& k : p.depth_errors) depth.push_back({k.distance, k.error});
      for (const auto& k : p.offset_errors) {
        offset.push_back({k.distance, k.error});
      }
      all.push_back({{"model", p.model_name},
                     {"fps", p.fps},
                     {"depth_error", depth},
                     {"offset_error", offset}});
      continue;
    }
    out << p.model_name << Printf("  fps %g\n", p.fps);
    out << "  depth distance (m)  ";
    for (const auto& k : p.depth_errors) out << Printf("%8g", k.distance);
    out << "\n  depth error (m)     ";
    for (const auto& k : p.depth_errors) out << Printf("%8.3f", k.error);
    out << "\n  offset (m)          ";
    for (const auto& k : p.offset_errors) out << Printf("%8g", k.distance);
    out << "\n  offset error (m)    ";
    for (const auto& k : p.offset_errors) out << Printf("%8.3f", k.error);
    out << "\n";
  }
  if (json) out << all.dump(2) << "\n";
  return 0;
}

struct PlanArgs {
  ScenarioArgs scenario;
  std::optional<double> station;
  double offset = 0.0;
  std::string out;
};

int PlanOnce(const PlanArgs& args, std::ostream& out, std::ostream& err) {
  const io::RunConfig config = LoadRunConfig(args.scenario.config);
  const sim::Scenario scenario = ResolveScenario(args.scenario, config);
  const path::ReferencePath path = sim::PlanningPath(scenario);
  path::FrenetState start;
  if (args.station) {
    start.s = *args.station;
    start.d = args.offset;
    start.s_dot = scenario.desired_speed;
  } else {
    path::CartesianState cart;
    cart.position = scenario.initial_state.position;
    cart.heading = scenario.initial_state.heading;
    cart.speed = scenario.initial_state.speed;
    start = path::CartesianToFrenet(path, cart);
  }
  std::vector<perception::ObstacleEstimate> obstacles;
  for (const perception::Obstacle& o : scenario.obstacles) {
    obstacles.push_back({o.center, o.radius, 0.0});
  }
  const planner::PlanResult result =
      planner::EvaluatePlan(start, path, obstacles, config.simulation.planner,
                            scenario.desired_speed);
  const std::string dump =
      io::PlanResultToJson(start, result, scenario.desired_speed).dump(2) +
      "\n";
  if (args.out.empty()) {
    out << dump;
  } else {
    io::WriteTextFile(args.out, dump);
  }
  if (!result.winner) {
    err << "error: NoFeasiblePath: every candidate was rejected\n";
    return kExitIncomplete;
  }
  return 0;
}

}  // namespace

int Main(int argc, const char* const* argv, std::ostream& out,
         std::ostream& err) {
  CLI::App app{"Frenet-frame obstacle avoidance simulator"};
  app.require_subcommand(0, 1);
  bool print_defaults = false;
  app.add_flag("--print-defaults", print_defaults,
               "Print the default run config as JSON");

  SimulateArgs simulate;
  CLI::App* sim_cmd = app.add_subcommand("simulate", "Run a closed-loop scenario");
  AddScenarioOptions(sim_cmd, simulate.scenario);
  sim_cmd->add_option("--depth-model", simulate.depth_model,
                      "Depth error profile (dav2, midas, mono2, ideal)");
  sim_cmd->add_option("--seed", simulate.seed, "Perception noise seed");
  sim_cmd->add_option("--out", simulate.out, "Output directory");
  sim_cmd->add_option("--repeat", simulate.repeat,
                      "Run this many consecutive seeds");
  sim_cmd->add_flag("--plot,!--no-plot", simulate.plot,
                    "Write steering.svg (default on)");

  TransformArgs transform;
  CLI::App* tf_cmd = app.add_subcommand(
      "transform", "Localize a pixel with depth in global coordinates");
  tf_cmd->add_option("--calibration", transform.calibration,
                     "Camera calibration JSON")
      ->required();
  tf_cmd->add_option("--pixel", transform.pixel, "Pixel u v")->expected(2);
  tf_cmd->add_option("--depth", transform.depth, "Depth along the optical axis (m)");
  tf_cmd->add_option("--pose", transform.pose, "Vehicle x y heading_deg")
      ->expected(3)
      ->required();
  tf_cmd->add_flag("--compass", transform.compass,
                   "Heading is a compass bearing (clockwise from north)");
  tf_cmd->add_option("--project", transform.project,
                     "Project global X Y Z into the image instead")
      ->expected(3);

  std::string profile_model;
  bool profile_json = false;
  CLI::App* prof_cmd =
      app.add_subcommand("profiles", "Print the depth error tables");
  prof_cmd->add_option("--depth-model", profile_model, "Only this model");
  prof_cmd->add_flag("--json", profile_json, "JSON output");

  PlanArgs plan;
  CLI::App* plan_cmd = app.add_subcommand(
      "plan", "Plan once from a scenario's start and dump every candidate");
  AddScenarioOptions(plan_cmd, plan.scenario);
  plan_cmd->add_option("--station", plan.station,
                       "Start at this arc length instead of the scenario start");
  plan_cmd->add_option("--offset", plan.offset,
                       "Lateral offset at --station (m)");
  plan_cmd->add_option("--out", plan.out, "Write the JSON here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : kExitInvalid;
  }

  try {
    if (print_defaults) {
      out << io::RunConfigToJson(io::RunConfig{}).dump(2) << "\n";
      return 0;
    }
    if (sim_cmd->parsed()) return Simulate(simulate, out);
    if (tf_cmd->parsed()) return Transform(transform, out);
    if (prof_cmd->parsed()) return Profiles(profile_model, profile_json, out);
    if (plan_cmd->parsed()) return PlanOnce(plan, out, err);
    out << app.help();
    return kExitInvalid;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitInvalid;
  }
}

}  // namespace frenet_avoid::cli
