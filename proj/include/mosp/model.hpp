#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace mosp {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double deg2rad(double d) { return d * kPi / 180.0; }
inline constexpr double rad2deg(double r) { return r * 180.0 / kPi; }

// Objective vector (image-quality loss rate, normalized energy), both in [0,1],
// both minimized.
using ObjectivePair = std::array<double, 2>;

struct SensorAttributes {
  double cone_angle_deg = 1.72;
  double max_roll_deg = 45.0;
  double max_pitch_deg = 45.0;
  double max_yaw_deg = 90.0;
  double min_image_duration_s = 5.0;
  friend bool operator==(const SensorAttributes&, const SensorAttributes&) = default;
};

enum class SensorType { Optical };

struct Satellite {
  int id = 0;
  SensorType sensor_type = SensorType::Optical;
  SensorAttributes attrs;
  friend bool operator==(const Satellite&, const Satellite&) = default;
};

// Scheduling horizon; all times in the model are seconds since horizon start.
struct Horizon {
  double start_s = 0.0;
  double end_s = 86400.0;
  friend bool operator==(const Horizon&, const Horizon&) = default;
};

struct AttitudeTriple {
  double pitch_deg = 0.0;
  double roll_deg = 0.0;
  double yaw_deg = 0.0;
  friend bool operator==(const AttitudeTriple&, const AttitudeTriple&) = default;
};

// Rest attitude of the satellite, all axes zero.
inline constexpr AttitudeTriple kOriginAttitude{};

struct GroundPoint {
  double x_km = 0.0;
  double y_km = 0.0;
  friend bool operator==(const GroundPoint&, const GroundPoint&) = default;
};

enum class ObservationWay : int { Passive = 0, Active = 1 };

struct ObservationStrip {
  int id = 0;
  double duration_s = 0.0;
  // Imaging start relative to the owning window's begin moment. The window is
  // a rigid template: shifting its begin moment shifts every strip with it.
  double begin_offset_s = 0.0;
  GroundPoint start_center;
  GroundPoint end_center;
  AttitudeTriple begin_attitude;
  AttitudeTriple end_attitude;
  friend bool operator==(const ObservationStrip&, const ObservationStrip&) = default;
};

// One candidate way of covering a target: a strip direction, an observation
// way (passive holds attitude per strip, active steers continuously), and an
// ordered strip list covering the target polygon.
struct ObservationWindow {
  int id = 0;
  ObservationWay way = ObservationWay::Passive;
  double dos_deg = 0.0;  // strip direction; meaningful only for active windows
  double begin_s = 0.0;
  double end_s = 0.0;
  AttitudeTriple begin_attitude;
  AttitudeTriple end_attitude;
  std::vector<ObservationStrip> strips;  // ordered by cross-strip offset

  double span_s() const { return end_s - begin_s; }
  friend bool operator==(const ObservationWindow&, const ObservationWindow&) = default;
};

struct GroundTarget {
  int id = 0;
  int priority = 1;  // [1, 10]
  double vtw_begin_s = 0.0;
  double vtw_end_s = 0.0;
  double pass_midpoint_s = 0.0;  // nadir-crossing moment of the synthetic pass
  double cross_track_roll_deg = 0.0;
  double congestion = 0.0;  // filled once per instance; see feasibility module
  double center_lat_deg = 0.0;
  double center_lon_deg = 0.0;
  std::vector<GroundPoint> polygon_km;  // convex, local km frame around center
  std::vector<ObservationWindow> candidate_ows;

  double vtw_length_s() const { return vtw_end_s - vtw_begin_s; }
  friend bool operator==(const GroundTarget&, const GroundTarget&) = default;
};

// Flat-ground straight-track orbit substitute; enough to derive swath width,
// visible time windows and attitude profiles reproducibly.
struct PseudoOrbitModel {
  double altitude_km = 631.0;
  double ground_speed_km_s = 7.0;
  friend bool operator==(const PseudoOrbitModel&, const PseudoOrbitModel&) = default;
};

enum class Distribution { CD, WD };

struct Instance {
  Satellite satellite;
  Horizon horizon;
  PseudoOrbitModel orbit;
  std::vector<GroundTarget> targets;
  std::uint64_t seed = 0;
  Distribution distribution = Distribution::CD;
  friend bool operator==(const Instance&, const Instance&) = default;
};

// Decision triple for one target: which candidate window, which way, and the
// begin moment inside the visible time window.
struct Assignment {
  int target_index = 0;
  int ow_id = 0;
  ObservationWay way = ObservationWay::Passive;
  double begin_s = 0.0;
  friend bool operator==(const Assignment&, const Assignment&) = default;
};

struct EnergyBreakdown {
  double ot_a_s = 0.0;    // active imaging time
  double ot_p_s = 0.0;    // passive imaging time
  double at_in_s = 0.0;   // slew time between strips of one target
  double at_out_s = 0.0;  // slew time between adjacent scheduled targets
  double total_W_s = 0.0;
  friend bool operator==(const EnergyBreakdown&, const EnergyBreakdown&) = default;
};

struct Schedule {
  std::vector<Assignment> assignments;  // sorted ascending by begin_s
  double f1 = 1.0;
  double f2 = 0.0;
  EnergyBreakdown energy;
  friend bool operator==(const Schedule&, const Schedule&) = default;
};

// Structural validation of an instance. Violations are returned as data, one
// human-readable line each, naming the offending target and field.
std::vector<std::string> validate_instance(const Instance& instance);

double total_priority(const Instance& instance);

}  // namespace mosp
