#pragma once

#include <optional>
#include <vector>

#include "mosp/model.hpp"
#include "mosp/rng.hpp"

namespace mosp {

// Which candidate observation windows a target offers the solver:
//   ATO      - the single passive along-track window
//   NATO     - twelve active windows, strip direction stepped by 30 degrees
//   Complete - union of the two above
//   Envelope - ATO plus the active direction(s) minimizing the strip count
enum class PartitionMode { ATO, NATO, Complete, Envelope };

const char* to_string(PartitionMode mode);

inline constexpr int kMaxStripsPerWindow = 10;
inline constexpr double kDosStepDeg = 30.0;

struct BoundingBox {
  double lat_min_deg = 3.0;
  double lat_max_deg = 53.0;
  double lon_min_deg = 74.0;
  double lon_max_deg = 133.0;
};

struct InstanceSpec {
  Distribution distribution = Distribution::CD;
  int n_targets = 50;
  std::uint64_t seed = 1;
  BoundingBox bbox;  // CD default; WD spans the whole globe
  double area_min_km2 = 40.0;
  double area_max_km2 = 2500.0;
  int vertex_min = 3;
  int vertex_max = 6;
  int priority_min = 1;
  int priority_max = 10;
  // Window midpoints are drawn uniformly, so the horizon length sets the
  // conflict density directly; two hours give the overbooked timeline
  // that a day of real orbital passes would concentrate into.
  Horizon horizon{0.0, 7200.0};
  SensorAttributes sensor;
  PseudoOrbitModel orbit;
};

// Spec with the distribution-dependent bounding box filled in.
InstanceSpec default_spec(Distribution distribution, int n_targets, std::uint64_t seed);

// Imaged ground width of one strip: 2 * altitude * tan(cone_angle / 2).
double swath_width_km(const PseudoOrbitModel& orbit, const SensorAttributes& attrs);

// Pitch angle required to keep the boresight on the target region at moment u.
// Zero at the nadir crossing, +/- max pitch at the unclipped window edges.
double pitch_profile_deg(const PseudoOrbitModel& orbit, double pass_midpoint_s, double u);

struct VtwSample {
  double begin_s = 0.0;
  double end_s = 0.0;
  double pass_midpoint_s = 0.0;
  double cross_track_roll_deg = 0.0;
};

// Draws one visible time window: midpoint uniform in the horizon, length set
// by the pitch limit sweep, clipped to the horizon. Resamples windows that
// clip below the minimum image duration; throws after bounded retries.
VtwSample synthesize_vtw(const PseudoOrbitModel& orbit, const SensorAttributes& attrs,
                         const Horizon& horizon, Rng& rng);

// Deterministic function of the spec (including its seed).
Instance generate_instance(const InstanceSpec& spec);

struct StripLayout {
  double offset_km = 0.0;     // signed cross-strip offset from the target center
  double along_min_km = 0.0;  // polygon extent along the strip direction
  double along_max_km = 0.0;
  double duration_s = 0.0;
};

// Cheap strip count for a direction: ceil(projected width / swath).
int strip_count(const std::vector<GroundPoint>& polygon, double dos_deg,
                const PseudoOrbitModel& orbit, const SensorAttributes& attrs);

// Covers the polygon with parallel strips along dos_deg, ordered by signed
// cross-strip offset. All strips share one duration: the polygon extent along
// the direction at ground speed, floored at the minimum image duration.
std::vector<StripLayout> partition_strips(const std::vector<GroundPoint>& polygon,
                                          double dos_deg, const PseudoOrbitModel& orbit,
                                          const SensorAttributes& attrs);

// Builds one candidate window template at its nominal placement (centered on
// the pass midpoint as far as the VTW allows). Returns nullopt when the strip
// count exceeds the per-window maximum.
std::optional<ObservationWindow> build_observation_window(const GroundTarget& target,
                                                          ObservationWay way, double dos_deg,
                                                          int ow_id,
                                                          const PseudoOrbitModel& orbit,
                                                          const SensorAttributes& attrs);

// Candidate ids are stable across modes: 0 is the ATO window, 1 + dos/30 the
// NATO windows, so the Envelope and ATO sets are subsets of Complete by id.
std::vector<ObservationWindow> build_partition_set(const GroundTarget& target,
                                                   PartitionMode mode,
                                                   const PseudoOrbitModel& orbit,
                                                   const SensorAttributes& attrs);

void build_all_partition_sets(Instance& instance, PartitionMode mode);

// Shifts a template rigidly to begin at begin_s and recomputes attitudes from
// the pass profile. Passive strips hold the attitude sampled at their begin
// moment; active strips track the profile continuously.
ObservationWindow instantiate_window(const GroundTarget& target, const PseudoOrbitModel& orbit,
                                     const ObservationWindow& tmpl, double begin_s);

// Attitude during imaging of one strip of an instantiated window. Throws if u
// lies outside the strip's imaging interval.
AttitudeTriple attitude_at(const GroundTarget& target, const PseudoOrbitModel& orbit,
                           const ObservationWindow& window, std::size_t strip_index, double u);

}  // namespace mosp
