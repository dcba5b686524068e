#include "mosp/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace mosp {

using nlohmann::json;

namespace {

json attitude_to_json(const AttitudeTriple& a) {
  return json{{"pitch_deg", a.pitch_deg}, {"roll_deg", a.roll_deg}, {"yaw_deg", a.yaw_deg}};
}

AttitudeTriple attitude_from_json(const json& j) {
  return {j.at("pitch_deg").get<double>(), j.at("roll_deg").get<double>(),
          j.at("yaw_deg").get<double>()};
}

json point_to_json(const GroundPoint& p) { return json::array({p.x_km, p.y_km}); }

GroundPoint point_from_json(const json& j) {
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

json strip_to_json(const ObservationStrip& s) {
  return json{
      {"id", s.id},
      {"duration_s", s.duration_s},
      {"begin_offset_s", s.begin_offset_s},
      {"start_center_km", point_to_json(s.start_center)},
      {"end_center_km", point_to_json(s.end_center)},
      {"begin_attitude", attitude_to_json(s.begin_attitude)},
      {"end_attitude", attitude_to_json(s.end_attitude)},
  };
}

ObservationStrip strip_from_json(const json& j) {
  ObservationStrip s;
  s.id = j.at("id").get<int>();
  s.duration_s = j.at("duration_s").get<double>();
  s.begin_offset_s = j.at("begin_offset_s").get<double>();
  s.start_center = point_from_json(j.at("start_center_km"));
  s.end_center = point_from_json(j.at("end_center_km"));
  s.begin_attitude = attitude_from_json(j.at("begin_attitude"));
  s.end_attitude = attitude_from_json(j.at("end_attitude"));
  return s;
}

json window_to_json(const ObservationWindow& ow) {
  json strips = json::array();
  for (const auto& s : ow.strips) strips.push_back(strip_to_json(s));
  return json{
      {"id", ow.id},
      {"way", static_cast<int>(ow.way)},
      {"dos_deg", ow.dos_deg},
      {"begin_s", ow.begin_s},
      {"end_s", ow.end_s},
      {"begin_attitude", attitude_to_json(ow.begin_attitude)},
      {"end_attitude", attitude_to_json(ow.end_attitude)},
      {"strips", std::move(strips)},
  };
}

ObservationWindow window_from_json(const json& j) {
  ObservationWindow ow;
  ow.id = j.at("id").get<int>();
  ow.way = static_cast<ObservationWay>(j.at("way").get<int>());
  ow.dos_deg = j.at("dos_deg").get<double>();
  ow.begin_s = j.at("begin_s").get<double>();
  ow.end_s = j.at("end_s").get<double>();
  ow.begin_attitude = attitude_from_json(j.at("begin_attitude"));
  ow.end_attitude = attitude_from_json(j.at("end_attitude"));
  for (const auto& s : j.at("strips")) ow.strips.push_back(strip_from_json(s));
  return ow;
}

json target_to_json(const GroundTarget& t) {
  json polygon = json::array();
  for (const auto& p : t.polygon_km) polygon.push_back(point_to_json(p));
  json ows = json::array();
  for (const auto& ow : t.candidate_ows) ows.push_back(window_to_json(ow));
  return json{
      {"id", t.id},
      {"priority", t.priority},
      {"vtw_begin_s", t.vtw_begin_s},
      {"vtw_end_s", t.vtw_end_s},
      {"pass_midpoint_s", t.pass_midpoint_s},
      {"cross_track_roll_deg", t.cross_track_roll_deg},
      {"congestion", t.congestion},
      {"center_lat_deg", t.center_lat_deg},
      {"center_lon_deg", t.center_lon_deg},
      {"polygon_km", std::move(polygon)},
      {"candidate_ows", std::move(ows)},
  };
}

GroundTarget target_from_json(const json& j) {
  GroundTarget t;
  t.id = j.at("id").get<int>();
  t.priority = j.at("priority").get<int>();
  t.vtw_begin_s = j.at("vtw_begin_s").get<double>();
  t.vtw_end_s = j.at("vtw_end_s").get<double>();
  t.pass_midpoint_s = j.at("pass_midpoint_s").get<double>();
  t.cross_track_roll_deg = j.at("cross_track_roll_deg").get<double>();
  t.congestion = j.at("congestion").get<double>();
  t.center_lat_deg = j.at("center_lat_deg").get<double>();
  t.center_lon_deg = j.at("center_lon_deg").get<double>();
  for (const auto& p : j.at("polygon_km")) t.polygon_km.push_back(point_from_json(p));
  for (const auto& ow : j.at("candidate_ows")) t.candidate_ows.push_back(window_from_json(ow));
  return t;
}

void require_schema(const json& j, const char* what) {
  if (!j.contains("schema_version")) {
    throw std::invalid_argument(std::string(what) + ": missing schema_version");
  }
  if (j.at("schema_version").get<int>() != kSchemaVersion) {
    throw std::invalid_argument(std::string(what) + ": unsupported schema_version");
  }
}

}  // namespace

json instance_to_json(const Instance& instance) {
  json targets = json::array();
  for (const auto& t : instance.targets) targets.push_back(target_to_json(t));
  return json{
      {"schema_version", kSchemaVersion},
      {"distribution", instance.distribution == Distribution::CD ? "CD" : "WD"},
      {"seed", instance.seed},
      {"satellite",
       json{{"id", instance.satellite.id},
            {"sensor_type", "optical"},
            {"attrs",
             json{{"cone_angle_deg", instance.satellite.attrs.cone_angle_deg},
                  {"max_roll_deg", instance.satellite.attrs.max_roll_deg},
                  {"max_pitch_deg", instance.satellite.attrs.max_pitch_deg},
                  {"max_yaw_deg", instance.satellite.attrs.max_yaw_deg},
                  {"min_image_duration_s", instance.satellite.attrs.min_image_duration_s}}}}},
      {"horizon", json{{"start_s", instance.horizon.start_s}, {"end_s", instance.horizon.end_s}}},
      {"orbit", json{{"altitude_km", instance.orbit.altitude_km},
                     {"ground_speed_km_s", instance.orbit.ground_speed_km_s}}},
      {"targets", std::move(targets)},
  };
}

Instance instance_from_json(const json& j) {
  require_schema(j, "instance");
  Instance inst;
  const std::string dist = j.at("distribution").get<std::string>();
  if (dist != "CD" && dist != "WD") {
    throw std::invalid_argument("instance: unknown distribution " + dist);
  }
  inst.distribution = dist == "CD" ? Distribution::CD : Distribution::WD;
  inst.seed = j.at("seed").get<std::uint64_t>();
  const auto& sat = j.at("satellite");
  inst.satellite.id = sat.at("id").get<int>();
  if (sat.at("sensor_type").get<std::string>() != "optical") {
    throw std::invalid_argument("instance: unsupported sensor type");
  }
  const auto& attrs = sat.at("attrs");
  inst.satellite.attrs.cone_angle_deg = attrs.at("cone_angle_deg").get<double>();
  inst.satellite.attrs.max_roll_deg = attrs.at("max_roll_deg").get<double>();
  inst.satellite.attrs.max_pitch_deg = attrs.at("max_pitch_deg").get<double>();
  inst.satellite.attrs.max_yaw_deg = attrs.at("max_yaw_deg").get<double>();
  inst.satellite.attrs.min_image_duration_s = attrs.at("min_image_duration_s").get<double>();
  inst.horizon.start_s = j.at("horizon").at("start_s").get<double>();
  inst.horizon.end_s = j.at("horizon").at("end_s").get<double>();
  inst.orbit.altitude_km = j.at("orbit").at("altitude_km").get<double>();
  inst.orbit.ground_speed_km_s = j.at("orbit").at("ground_speed_km_s").get<double>();
  for (const auto& t : j.at("targets")) inst.targets.push_back(target_from_json(t));
  return inst;
}

json schedule_to_json(const Schedule& schedule) {
  json assignments = json::array();
  for (const auto& a : schedule.assignments) {
    assignments.push_back(json{{"target_index", a.target_index},
                               {"ow_id", a.ow_id},
                               {"way", static_cast<int>(a.way)},
                               {"begin_s", a.begin_s}});
  }
  return json{
      {"schema_version", kSchemaVersion},
      {"assignments", std::move(assignments)},
      {"f1", schedule.f1},
      {"f2", schedule.f2},
      {"energy_breakdown", json{{"ot_a_s", schedule.energy.ot_a_s},
                                {"ot_p_s", schedule.energy.ot_p_s},
                                {"at_in_s", schedule.energy.at_in_s},
                                {"at_out_s", schedule.energy.at_out_s},
                                {"total_W_s", schedule.energy.total_W_s}}},
  };
}

Schedule schedule_from_json(const json& j) {
  require_schema(j, "schedule");
  Schedule s;
  for (const auto& a : j.at("assignments")) {
    s.assignments.push_back({a.at("target_index").get<int>(), a.at("ow_id").get<int>(),
                             static_cast<ObservationWay>(a.at("way").get<int>()),
                             a.at("begin_s").get<double>()});
  }
  s.f1 = j.at("f1").get<double>();
  s.f2 = j.at("f2").get<double>();
  const auto& e = j.at("energy_breakdown");
  s.energy.ot_a_s = e.at("ot_a_s").get<double>();
  s.energy.ot_p_s = e.at("ot_p_s").get<double>();
  s.energy.at_in_s = e.at("at_in_s").get<double>();
  s.energy.at_out_s = e.at("at_out_s").get<double>();
  s.energy.total_W_s = e.at("total_W_s").get<double>();
  return s;
}

namespace {

json load_json_file(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error(std::string(what) + ": cannot open " + path);
  return json::parse(in);
}

void save_json_file(const std::string& path, const json& j, const char* what) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error(std::string(what) + ": cannot write " + path);
  out << j.dump(2) << '\n';
}

}  // namespace

void save_instance(const std::string& path, const Instance& instance) {
  save_json_file(path, instance_to_json(instance), "save_instance");
}

Instance load_instance(const std::string& path) {
  return instance_from_json(load_json_file(path, "load_instance"));
}

void save_schedule(const std::string& path, const Schedule& schedule) {
  save_json_file(path, schedule_to_json(schedule), "save_schedule");
}

Schedule load_schedule(const std::string& path) {
  return schedule_from_json(load_json_file(path, "load_schedule"));
}

}  // namespace mosp
