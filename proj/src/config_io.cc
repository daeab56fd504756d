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

#include "frenet_avoid/config_io.h"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <numbers>
#include <set>
#include <sstream>

#include "frenet_avoid/error.h"

namespace frenet_avoid::io {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

[[noreturn]] void Fail(const std::string& message) {
  throw Error(ErrorCode::kInvalidConfig, message);
}

// Reads keys of one JSON object and rejects the ones nobody asked for.
class ObjectReader {
 public:
  ObjectReader(const Json& json, std::string context)
      : json_(json), context_(std::move(context)) {
    if (!json_.is_object()) Fail(context_ + ": expected an object");
  }

  const Json* Find(const std::string& key) {
    seen_.insert(key);
    const auto it = json_.find(key);
    return it == json_.end() ? nullptr : &*it;
  }

  void Number(const std::string& key, double& out) {
    if (const Json* v = Find(key)) out = AsNumber(*v, Path(key));
  }

  void Integer(const std::string& key, int& out) {
    if (const Json* v = Find(key)) {
      if (!v->is_number_integer()) Fail(Path(key) + ": expected an integer");
      out = v->get<int>();
    }
  }

  void Bool(const std::string& key, bool& out) {
    if (const Json* v = Find(key)) {
      if (!v->is_boolean()) Fail(Path(key) + ": expected true or false");
      out = v->get<bool>();
    }
  }

  void String(const std::string& key, std::string& out) {
    if (const Json* v = Find(key)) {
      if (!v->is_string()) Fail(Path(key) + ": expected a string");
      out = v->get<std::string>();
    }
  }

  void NumberList(const std::string& key, std::vector<double>& out) {
    if (const Json* v = Find(key)) {
      if (!v->is_array()) Fail(Path(key) + ": expected a list of numbers");
      out.clear();
      for (const Json& item : *v) out.push_back(AsNumber(item, Path(key)));
    }
  }

  void Finish() const {
    for (const auto& [key, value] : json_.items()) {
      if (!seen_.count(key)) Fail(context_ + ": unknown key '" + key + "'");
    }
  }

  std::string Path(const std::string& key) const {
    return context_ + "." + key;
  }

  static double AsNumber(const Json& v, const std::string& where) {
    if (!v.is_number()) Fail(where + ": expected a number");
    const double x = v.get<double>();
    if (!std::isfinite(x)) Fail(where + ": expected a finite number");
    return x;
  }

 private:
  const Json& json_;
  std::string context_;
  std::set<std::string> seen_;
};

Eigen::Vector2d Pair(const Json& v, const std::string& where) {
  if (!v.is_array() || v.size() != 2) Fail(where + ": expected [x, y]");
  return {ObjectReader::AsNumber(v[0], where),
          ObjectReader::AsNumber(v[1], where)};
}

// Validation failures inside readers are configuration errors.
template <typename F>
void Validated(const std::string& context, F&& validate) {
  try {
    validate();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::kInvalidConfig) throw;
    Fail(context + ": " + e.what());
  }
}

Json Finite(double value) {
  return std::isfinite(value) ? Json(value) : Json(nullptr);
}

std::vector<double> Coefficients(const auto& polynomial) {
  const auto& c = polynomial.coefficients();
  return std::vector<double>(c.begin(), c.end());
}

}  // namespace

geometry::CameraModel CalibrationFromJson(const Json& json) {
  geometry::CameraModel camera = geometry::CameraModel::Default();
  ObjectReader r(json, "calibration");
  r.Number("fx", camera.intrinsics.fx);
  r.Number("fy", camera.intrinsics.fy);
  r.Number("cx", camera.intrinsics.cx);
  r.Number("cy", camera.intrinsics.cy);
  double tilt_deg = camera.extrinsics.tilt / kDegToRad;
  r.Number("tilt_deg", tilt_deg);
  camera.extrinsics.tilt = tilt_deg * kDegToRad;
  r.Number("height_m", camera.extrinsics.height);
  r.Number("t_x_m", camera.extrinsics.lateral_offset.x());
  r.Number("t_y_m", camera.extrinsics.lateral_offset.y());
  if (const Json* v = r.Find("antenna_offset_m")) {
    camera.antenna_offset = Pair(*v, r.Path("antenna_offset_m"));
  }
  r.Integer("image_width", camera.image_width);
  r.Integer("image_height", camera.image_height);
  r.Number("max_range_m", camera.max_range);
  r.Finish();
  Validated("calibration", [&] { camera.Validate(); });
  return camera;
}

Json CalibrationToJson(const geometry::CameraModel& camera) {
  return Json{{"fx", camera.intrinsics.fx},
              {"fy", camera.intrinsics.fy},
              {"cx", camera.intrinsics.cx},
              {"cy", camera.intrinsics.cy},
              {"tilt_deg", camera.extrinsics.tilt / kDegToRad},
              {"height_m", camera.extrinsics.height},
              {"t_x_m", camera.extrinsics.lateral_offset.x()},
              {"t_y_m", camera.extrinsics.lateral_offset.y()},
              {"antenna_offset_m",
               {camera.antenna_offset.x(), camera.antenna_offset.y()}},
              {"image_width", camera.image_width},
              {"image_height", camera.image_height},
              {"max_range_m", camera.max_range}};
}

sim::Scenario ScenarioFromJson(const Json& json) {
  sim::Scenario s;
  s.initial_state.speed = s.desired_speed;
  ObjectReader r(json, "scenario");
  r.String("name", s.name);
  if (const Json* route = r.Find("route")) {
    if (!route->is_array()) Fail("scenario.route: expected [[x, y], ...]");
    for (const Json& p : *route) s.route.push_back(Pair(p, "scenario.route"));
  }
  if (const Json* obstacles = r.Find("obstacles")) {
    if (!obstacles->is_array()) Fail("scenario.obstacles: expected a list");
    for (const Json& item : *obstacles) {
      perception::Obstacle o;
      ObjectReader ro(item, "scenario.obstacles[]");
      ro.Number("x", o.center.x());
      ro.Number("y", o.center.y());
      ro.Number("radius", o.radius);
      ro.Number("height", o.height);
      ro.String("class", o.class_label);
      ro.Finish();
      s.obstacles.push_back(o);
    }
  }
  bool speed_given = false;
  if (const Json* initial = r.Find("initial")) {
    ObjectReader ri(*initial, "scenario.initial");
    ri.Number("x", s.initial_state.position.x());
    ri.Number("y", s.initial_state.position.y());
    double heading_deg = 0.0;
    ri.Number("heading_deg", heading_deg);
    s.initial_state.heading = geometry::NormalizeAngle(heading_deg * kDegToRad);
    speed_given = ri.Find("speed") != nullptr;
    ri.Number("speed", s.initial_state.speed);
    ri.Finish();
  }
  r.Number("desired_speed", s.desired_speed);
  if (!speed_given) s.initial_state.speed = s.desired_speed;
  r.String("depth_model", s.depth_model);
  r.Number("duration", s.duration);
  if (const Json* seed = r.Find("seed")) {
    if (!seed->is_number_unsigned() && !(seed->is_number_integer() &&
                                         seed->get<std::int64_t>() >= 0)) {
      Fail("scenario.seed: expected a non-negative integer");
    }
    s.seed = seed->get<std::uint64_t>();
  }
  r.Finish();
  Validated("scenario", [&] {
    s.Validate();
    path::ReferencePath::Build(s.route);
  });
  return s;
}

Json ScenarioToJson(const sim::Scenario& s) {
  Json route = Json::array();
  for (const Eigen::Vector2d& p : s.route) route.push_back({p.x(), p.y()});
  Json obstacles = Json::array();
  for (const perception::Obstacle& o : s.obstacles) {
    obstacles.push_back({{"x", o.center.x()},
                         {"y", o.center.y()},
                         {"radius", o.radius},
                         {"height", o.height},
                         {"class", o.class_label}});
  }
  return Json{{"name", s.name},
              {"route", route},
              {"obstacles", obstacles},
              {"initial",
               {{"x", s.initial_state.position.x()},
                {"y", s.initial_state.position.y()},
                {"heading_deg", s.initial_state.heading / kDegToRad},
                {"speed", s.initial_state.speed}}},
              {"desired_speed", s.desired_speed},
              {"depth_model", s.depth_model},
              {"duration", s.duration},
              {"seed", s.seed}};
}

planner::PlannerConfig PlannerConfigFromJson(const Json& json,
                                             planner::PlannerConfig base) {
  ObjectReader r(json, "planner");
  r.NumberList("lateral_offsets", base.lateral_offsets);
  r.NumberList("target_speeds", base.target_speeds);
  r.NumberList("horizons", base.horizons);
  r.Number("dt", base.dt);
  if (const Json* w = r.Find("weights")) {
    ObjectReader rw(*w, "planner.weights");
    rw.Number("jerk", base.weights.jerk);
    rw.Number("time", base.weights.time);
    rw.Number("lane", base.weights.lane);
    rw.Number("speed", base.weights.speed);
    rw.Finish();
  }
  r.Number("safety_radius", base.safety_radius);
  r.Number("planning_margin", base.planning_margin);
  if (const Json* l = r.Find("limits")) {
    ObjectReader rl(*l, "planner.limits");
    rl.Number("max_speed", base.limits.max_speed);
    rl.Number("max_accel", base.limits.max_accel);
    rl.Number("max_curvature", base.limits.max_curvature);
    rl.Finish();
  }
  r.Finish();
  base.Validate();
  return base;
}

Json PlannerConfigToJson(const planner::PlannerConfig& c) {
  return Json{{"lateral_offsets", c.lateral_offsets},
              {"target_speeds", c.target_speeds},
              {"horizons", c.horizons},
              {"dt", c.dt},
              {"weights",
               {{"jerk", c.weights.jerk},
                {"time", c.weights.time},
                {"lane", c.weights.lane},
                {"speed", c.weights.speed}}},
              {"safety_radius", c.safety_radius},
              {"planning_margin", c.planning_margin},
              {"limits",
               {{"max_speed", c.limits.max_speed},
                {"max_accel", c.limits.max_accel},
                {"max_curvature", c.limits.max_curvature}}}};
}

RunConfig RunConfigFromJson(const Json& json,
                            const std::filesystem::path& base_dir) {
  RunConfig config;
  sim::SimulationConfig& sim = config.simulation;
  ObjectReader r(json, "config");
  if (const Json* v = r.Find("scenario")) {
    if (!v->is_string()) Fail("config.scenario: expected a file path");
    std::filesystem::path p = v->get<std::string>();
    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
    config.scenario_path = p;
  }
  if (r.Find("case")) {
    int case_id = 0;
    r.Integer("case", case_id);
    config.case_id = case_id;
  }
  if (config.scenario_path && config.case_id) {
    Fail("config: give either scenario or case, not both");
  }
  if (const Json* v = r.Find("planner")) {
    sim.planner = PlannerConfigFromJson(*v, sim.planner);
  }
  if (const Json* v = r.Find("tracker")) {
    ObjectReader rt(*v, "tracker");
    rt.Number("base_lookahead", sim.tracker.base_lookahead);
    rt.Number("speed_gain", sim.tracker.speed_gain);
    rt.Number("wheelbase", sim.tracker.wheelbase);
    rt.Number("max_steering", sim.tracker.max_steering);
    rt.Finish();
  }
  if (const Json* v = r.Find("vehicle")) {
    ObjectReader rv(*v, "vehicle");
    rv.Number("wheelbase", sim.vehicle.wheelbase);
    rv.Number("max_steering", sim.vehicle.max_steering);
    rv.Number("max_accel", sim.vehicle.max_accel);
    rv.Number("max_steering_rate", sim.vehicle.max_steering_rate);
    rv.Number("width", sim.vehicle.width);
    rv.Finish();
  }
  if (const Json* v = r.Find("camera")) sim.camera = CalibrationFromJson(*v);
  if (const Json* v = r.Find("simulation")) {
    ObjectReader rs(*v, "simulation");
    rs.Number("tick_rate", sim.tick_rate);
    rs.Number("replan_rate", sim.replan_rate);
    rs.Number("stitch_tolerance", sim.stitch_tolerance);
    rs.Number("association_gate", sim.association_gate);
    rs.Number("straight_threshold", sim.straight_threshold);
    rs.Number("min_phase_duration", sim.min_phase_duration);
    rs.Finish();
  }
  std::string output_dir = config.output_dir.string();
  r.String("output_dir", output_dir);
  config.output_dir = output_dir;
  r.Bool("plot", config.plot);
  r.Finish();
  sim.Validate();
  if (config.scenario_path && !std::filesystem::exists(*config.scenario_path)) {
    Fail("config.scenario: file not found: " + config.scenario_path->string());
  }
  return config;
}

Json RunConfigToJson(const RunConfig& config) {
  const sim::SimulationConfig& sim = config.simulation;
  Json json = Json::object();
  if (config.scenario_path) json["scenario"] = config.scenario_path->string();
  if (config.case_id) json["case"] = *config.case_id;
  json["planner"] = PlannerConfigToJson(sim.planner);
  json["tracker"] = {{"base_lookahead", sim.tracker.base_lookahead},
                     {"speed_gain", sim.tracker.speed_gain},
                     {"wheelbase", sim.tracker.wheelbase},
                     {"max_steering", sim.tracker.max_steering}};
  json["vehicle"] = {{"wheelbase", sim.vehicle.wheelbase},
                     {"max_steering", sim.vehicle.max_steering},
                     {"max_accel", sim.vehicle.max_accel},
                     {"max_steering_rate", sim.vehicle.max_steering_rate},
                     {"width", sim.vehicle.width}};
  json["camera"] = CalibrationToJson(sim.camera);
  json["simulation"] = {{"tick_rate", sim.tick_rate},
                        {"replan_rate", sim.replan_rate},
                        {"stitch_tolerance", sim.stitch_tolerance},
                        {"association_gate", sim.association_gate},
                        {"straight_threshold", sim.straight_threshold},
                        {"min_phase_duration", sim.min_phase_duration}};
  json["output_dir"] = config.output_dir.string();
  json["plot"] = config.plot;
  return json;
}

Json ReadJsonFile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) Fail("cannot open " + path.string());
  try {
    return Json::parse(in);
  } catch (const nlohmann::json::exception& e) {
    Fail(path.string() + ": " + e.what());
  }
}

void WriteTextFile(const std::filesystem::path& path,
                   const std::string& contents) {
  if (path.has_parent_path()) {
    std::filesystem::create_directories(path.parent_path());
  }
  std::ofstream out(path, std::ios::binary);
  out << contents;
  if (!out) {
    throw Error(ErrorCode::kInvalidArgument, "cannot write " + path.string());
  }
}

Json MetricsToJson(const RunSummary& summary) {
  const sim::Metrics& m = summary.metrics;
  Json sequence = Json::array();
  for (const sim::PhaseLabel label : m.phase_sequence) {
    sequence.push_back(std::string(sim::PhaseLabelName(label)));
  }
  Json phases = Json::array();
  for (const sim::PhaseSegment& s : m.phases) {
    phases.push_back({{"label", std::string(sim::PhaseLabelName(s.label))},
                      {"start", s.start},
                      {"end", s.end}});
  }
  return Json{{"scenario", summary.scenario},
              {"depth_model", summary.depth_model},
              {"seed", summary.seed},
              {"max_lateral_error", Finite(m.max_lateral_error)},
              {"min_clearance", Finite(m.min_clearance)},
              {"collision", m.collision},
              {"completed", m.completed},
              {"reached_goal", m.reached_goal},
              {"aborted", m.aborted},
              {"termination", summary.termination},
              {"abort_reason", summary.abort_reason},
              {"final_time", m.final_time},
              {"plan_count", m.plan_count},
              {"phase_sequence", sequence},
              {"phases", phases}};
}

RunSummary MetricsFromJson(const Json& json) {
  RunSummary summary;
  sim::Metrics& m = summary.metrics;
  try {
    summary.scenario = json.at("scenario").get<std::string>();
    summary.depth_model = json.at("depth_model").get<std::string>();
    summary.seed = json.at("seed").get<std::uint64_t>();
    const auto number = [&](const char* key) {
      const Json& v = json.at(key);
      return v.is_null() ? std::numeric_limits<double>::infinity()
                         : v.get<double>();
    };
    m.max_lateral_error = number("max_lateral_error");
    m.min_clearance = number("min_clearance");
    m.collision = json.at("collision").get<bool>();
    m.completed = json.at("completed").get<bool>();
    m.reached_goal = json.at("reached_goal").get<bool>();
    m.aborted = json.at("aborted").get<bool>();
    summary.termination = json.at("termination").get<std::string>();
    summary.abort_reason = json.at("abort_reason").get<std::string>();
    m.final_time = json.at("final_time").get<double>();
    m.plan_count = json.at("plan_count").get<std::size_t>();
    for (const Json& label : json.at("phase_sequence")) {
      const auto parsed = sim::ParsePhaseLabel(label.get<std::string>());
      if (!parsed) Fail("metrics: unknown phase label");
      m.phase_sequence.push_back(*parsed);
    }
    for (const Json& s : json.at("phases")) {
      const auto parsed = sim::ParsePhaseLabel(s.at("label").get<std::string>());
      if (!parsed) Fail("metrics: unknown phase label");
      m.phases.push_back(
          {*parsed, s.at("start").get<double>(), s.at("end").get<double>()});
    }
  } catch (const nlohmann::json::exception& e) {
    Fail(std::string("metrics: ") + e.what());
  }
  return summary;
}

std::string LogToCsv(const sim::SimulationLog& log,
                     const std::vector<sim::PhaseSegment>& phases) {
  std::string csv = "t,x,y,heading,speed,steering,phase\n";
  char line[256];
  for (const sim::TickRecord& tick : log.ticks) {
    std::snprintf(line, sizeof(line), "%.6f,%.6f,%.6f,%.6f,%.6f,%.6f,%s\n",
                  tick.time, tick.state.position.x(), tick.state.position.y(),
                  tick.state.heading, tick.state.speed, tick.steering,
                  std::string(sim::PhaseLabelName(
                                  sim::PhaseAt(phases, tick.time)))
                      .c_str());
    csv += line;
  }
  return csv;
}

std::vector<LogRow> LogFromCsv(const std::string& csv) {
  std::istringstream in(csv);
  std::string line;
  if (!std::getline(in, line) || line != "t,x,y,heading,speed,steering,phase") {
    Fail("log: unexpected header");
  }
  std::vector<LogRow> rows;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string cell;
    std::vector<std::string> cells;
    while (std::getline(fields, cell, ',')) cells.push_back(cell);
    if (cells.size() != 7) Fail("log: expected 7 fields in '" + line + "'");
    LogRow row;
    try {
      row.t = std::stod(cells[0]);
      row.x = std::stod(cells[1]);
      row.y = std::stod(cells[2]);
      row.heading = std::stod(cells[3]);
      row.speed = std::stod(cells[4]);
      row.steering = std::stod(cells[5]);
    } catch (const std::exception&) {
      Fail("log: bad number in '" + line + "'");
    }
    const auto phase = sim::ParsePhaseLabel(cells[6]);
    if (!phase) Fail("log: unknown phase '" + cells[6] + "'");
    row.phase = *phase;
    rows.push_back(row);
  }
  return rows;
}

Json PlanResultToJson(const path::FrenetState& start,
                      const planner::PlanResult& result, double desired_speed) {
  Json candidates = Json::array();
  for (std::size_t i = 0; i < result.evaluations.size(); ++i) {
    const planner::CandidateEvaluation& e = result.evaluations[i];
    const planner::TrajectoryCandidate& c = e.candidate;
    Json item{{"index", c.index},
              {"target_offset", c.target_offset},
              {"target_speed", c.target_speed},
              {"horizon", c.horizon},
              {"cost",
               {{"jerk", c.cost.jerk},
                {"time", c.cost.time},
                {"lane", c.cost.lane},
                {"speed", c.cost.speed},
                {"total", c.cost.total}}},
              {"feasible", e.feasibility.feasible},
              {"violation",
               std::string(planner::ViolationName(e.feasibility.violation))},
              {"collision", e.collision},
              {"lateral", Coefficients(c.lateral)},
              {"longitudinal", Coefficients(c.longitudinal)}};
    if (result.winner && *result.winner == i) {
      Json samples = Json::array();
      for (const planner::TrajectorySample& s : c.samples) {
        samples.push_back({{"t", s.t},
                           {"s", s.frenet.s},
                           {"d", s.frenet.d},
                           {"x", s.position.x()},
                           {"y", s.position.y()},
                           {"heading", s.heading},
                           {"speed", s.speed},
                           {"curvature", s.curvature}});
      }
      item["samples"] = samples;
    }
    candidates.push_back(std::move(item));
  }
  return Json{{"start",
               {{"s", start.s},
                {"s_dot", start.s_dot},
                {"s_ddot", start.s_ddot},
                {"d", start.d},
                {"d_dot", start.d_dot},
                {"d_ddot", start.d_ddot}}},
              {"desired_speed", desired_speed},
              {"winner", result.winner ? Json(*result.winner) : Json(nullptr)},
              {"candidates", candidates}};
}

}  // namespace frenet_avoid::io
