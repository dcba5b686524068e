#include "mosp/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mosp/transition.hpp"

namespace mosp {

const char* to_string(PartitionMode mode) {
  switch (mode) {
    case PartitionMode::ATO: return "ato";
    case PartitionMode::NATO: return "nato";
    case PartitionMode::Complete: return "complete";
    case PartitionMode::Envelope: return "envelope";
  }
  return "?";
}

InstanceSpec default_spec(Distribution distribution, int n_targets, std::uint64_t seed) {
  InstanceSpec spec;
  spec.distribution = distribution;
  spec.n_targets = n_targets;
  spec.seed = seed;
  if (distribution == Distribution::WD) {
    spec.bbox = BoundingBox{-90.0, 90.0, -180.0, 180.0};
  }
  return spec;
}

double swath_width_km(const PseudoOrbitModel& orbit, const SensorAttributes& attrs) {
  return 2.0 * orbit.altitude_km * std::tan(deg2rad(attrs.cone_angle_deg / 2.0));
}

double pitch_profile_deg(const PseudoOrbitModel& orbit, double pass_midpoint_s, double u) {
  return rad2deg(std::atan(orbit.ground_speed_km_s * (pass_midpoint_s - u) / orbit.altitude_km));
}

VtwSample synthesize_vtw(const PseudoOrbitModel& orbit, const SensorAttributes& attrs,
                         const Horizon& horizon, Rng& rng) {
  // Half window: time for the pitch profile to sweep from +max to 0.
  const double half_s =
      orbit.altitude_km * std::tan(deg2rad(attrs.max_pitch_deg)) / orbit.ground_speed_km_s;
  constexpr int kMaxAttempts = 64;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    const double mid = rng.uniform(horizon.start_s, horizon.end_s);
    const double begin = std::max(mid - half_s, horizon.start_s);
    const double end = std::min(mid + half_s, horizon.end_s);
    if (end - begin < attrs.min_image_duration_s) continue;
    VtwSample v;
    v.begin_s = begin;
    v.end_s = end;
    v.pass_midpoint_s = mid;
    v.cross_track_roll_deg = -attrs.max_roll_deg + 2.0 * attrs.max_roll_deg * rng.uniform_open();
    return v;
  }
  throw std::runtime_error("synthesize_vtw: could not draw a window above the minimum duration");
}

namespace {

struct Projection {
  double along_min, along_max, perp_min, perp_max;
};

Projection project_polygon(const std::vector<GroundPoint>& polygon, double dos_deg) {
  const double c = std::cos(deg2rad(dos_deg));
  const double s = std::sin(deg2rad(dos_deg));
  Projection p{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
               std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
  for (const auto& v : polygon) {
    const double along = v.x_km * c + v.y_km * s;
    const double perp = -v.x_km * s + v.y_km * c;
    p.along_min = std::min(p.along_min, along);
    p.along_max = std::max(p.along_max, along);
    p.perp_min = std::min(p.perp_min, perp);
    p.perp_max = std::max(p.perp_max, perp);
  }
  return p;
}

int count_for_width(double width_km, double swath_km) {
  return std::max(1, static_cast<int>(std::ceil(width_km / swath_km - 1e-12)));
}

// Yaw holding the strip direction, folded into the (-max, +max] steering range.
double yaw_for_dos(double dos_deg, double max_yaw_deg) {
  double y = std::fmod(dos_deg, 2.0 * max_yaw_deg);
  if (y > max_yaw_deg) y -= 2.0 * max_yaw_deg;
  if (y <= -max_yaw_deg) y += 2.0 * max_yaw_deg;
  return y;
}

}  // namespace

int strip_count(const std::vector<GroundPoint>& polygon, double dos_deg,
                const PseudoOrbitModel& orbit, const SensorAttributes& attrs) {
  const Projection p = project_polygon(polygon, dos_deg);
  return count_for_width(p.perp_max - p.perp_min, swath_width_km(orbit, attrs));
}

std::vector<StripLayout> partition_strips(const std::vector<GroundPoint>& polygon,
                                          double dos_deg, const PseudoOrbitModel& orbit,
                                          const SensorAttributes& attrs) {
  if (polygon.size() < 3) {
    throw std::invalid_argument("partition_strips: polygon needs at least 3 vertices");
  }
  const Projection p = project_polygon(polygon, dos_deg);
  const double swath = swath_width_km(orbit, attrs);
  const int k = count_for_width(p.perp_max - p.perp_min, swath);
  const double duration =
      std::max((p.along_max - p.along_min) / orbit.ground_speed_km_s,
               attrs.min_image_duration_s);
  const double perp_center = 0.5 * (p.perp_min + p.perp_max);

  std::vector<StripLayout> out;
  out.reserve(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    StripLayout s;
    // Strips tile the projected width symmetrically around its center.
    s.offset_km = perp_center + (i + 0.5 - 0.5 * k) * swath;
    s.along_min_km = p.along_min;
    s.along_max_km = p.along_max;
    s.duration_s = duration;
    out.push_back(s);
  }
  return out;
}

namespace {

struct StripFrame {
  double roll_deg;  // cross-track roll plus the strip's offset angle
  double yaw_deg;
};

StripFrame strip_frame(const GroundTarget& target, const PseudoOrbitModel& orbit,
                       ObservationWay way, double dos_deg, double offset_km,
                       double max_yaw_deg) {
  StripFrame f;
  f.roll_deg = target.cross_track_roll_deg + rad2deg(std::atan(offset_km / orbit.altitude_km));
  f.yaw_deg = way == ObservationWay::Active ? yaw_for_dos(dos_deg, max_yaw_deg) : 0.0;
  return f;
}

// Attitude during imaging: passive strips hold the profile value sampled at
// their begin moment, active strips track the profile continuously.
AttitudeTriple strip_attitude(const GroundTarget& target, const PseudoOrbitModel& orbit,
                              ObservationWay way, const StripFrame& frame, double strip_begin_s,
                              double u) {
  AttitudeTriple a;
  a.pitch_deg = way == ObservationWay::Active
                    ? pitch_profile_deg(orbit, target.pass_midpoint_s, u)
                    : pitch_profile_deg(orbit, target.pass_midpoint_s, strip_begin_s);
  a.roll_deg = frame.roll_deg;
  a.yaw_deg = frame.yaw_deg;
  return a;
}

}  // namespace

std::optional<ObservationWindow> build_observation_window(const GroundTarget& target,
                                                          ObservationWay way, double dos_deg,
                                                          int ow_id,
                                                          const PseudoOrbitModel& orbit,
                                                          const SensorAttributes& attrs) {
  const auto layouts = partition_strips(target.polygon_km, dos_deg, orbit, attrs);
  if (layouts.size() > static_cast<std::size_t>(kMaxStripsPerWindow)) return std::nullopt;

  const std::size_t k = layouts.size();
  const double d = layouts.front().duration_s;
  const double cos_d = std::cos(deg2rad(dos_deg));
  const double sin_d = std::sin(deg2rad(dos_deg));

  std::vector<StripFrame> frames;
  frames.reserve(k);
  for (const auto& l : layouts) {
    frames.push_back(strip_frame(target, orbit, way, dos_deg, l.offset_km, attrs.max_yaw_deg));
  }

  // Inter-strip gaps are frozen into the template at a nominal placement
  // around the pass midpoint; each gap is the fixed point of the slew time
  // against the attitudes it implies.
  std::vector<double> begins(k);
  begins[0] = target.pass_midpoint_s - 0.5 * (k * d + (k - 1) * kMinTransitionTime);
  for (std::size_t i = 0; i + 1 < k; ++i) {
    const double end_i = begins[i] + d;
    const AttitudeTriple from =
        strip_attitude(target, orbit, way, frames[i], begins[i], end_i);
    double gap = kMinTransitionTime;
    for (int iter = 0; iter < 100; ++iter) {
      const AttitudeTriple to =
          strip_attitude(target, orbit, way, frames[i + 1], end_i + gap, end_i + gap);
      const double next = transition_time(attitude_delta_deg(from, to));
      if (std::abs(next - gap) < 1e-9) {
        gap = next;
        break;
      }
      gap = next;
    }
    begins[i + 1] = end_i + gap;
  }
  const double span = begins[k - 1] + d - begins[0];

  ObservationWindow ow;
  ow.id = ow_id;
  ow.way = way;
  ow.dos_deg = dos_deg;
  ow.begin_s = 0.0;
  ow.end_s = span;
  ow.strips.reserve(k);
  for (std::size_t i = 0; i < k; ++i) {
    ObservationStrip s;
    s.id = static_cast<int>(i);
    s.duration_s = d;
    s.begin_offset_s = begins[i] - begins[0];
    const auto& l = layouts[i];
    s.start_center = {l.along_min_km * cos_d - l.offset_km * sin_d,
                      l.along_min_km * sin_d + l.offset_km * cos_d};
    s.end_center = {l.along_max_km * cos_d - l.offset_km * sin_d,
                    l.along_max_km * sin_d + l.offset_km * cos_d};
    s.begin_attitude.roll_deg = frames[i].roll_deg;
    s.begin_attitude.yaw_deg = frames[i].yaw_deg;
    s.end_attitude = s.begin_attitude;
    ow.strips.push_back(s);
  }

  // Nominal placement: centered on the pass midpoint, pulled inside the VTW
  // when it fits.
  double nominal = target.pass_midpoint_s - 0.5 * span;
  if (span <= target.vtw_length_s()) {
    nominal = std::clamp(nominal, target.vtw_begin_s, target.vtw_end_s - span);
  }
  return instantiate_window(target, orbit, ow, nominal);
}

std::vector<ObservationWindow> build_partition_set(const GroundTarget& target,
                                                   PartitionMode mode,
                                                   const PseudoOrbitModel& orbit,
                                                   const SensorAttributes& attrs) {
  std::vector<ObservationWindow> out;
  const auto add = [&](ObservationWay way, double dos, int id) {
    if (auto ow = build_observation_window(target, way, dos, id, orbit, attrs)) {
      out.push_back(std::move(*ow));
    }
  };
  const auto add_ato = [&] { add(ObservationWay::Passive, 0.0, 0); };
  const auto nato_id = [](int step) { return 1 + step; };

  switch (mode) {
    case PartitionMode::ATO:
      add_ato();
      break;
    case PartitionMode::NATO:
      for (int i = 0; i < 12; ++i) add(ObservationWay::Active, i * kDosStepDeg, nato_id(i));
      break;
    case PartitionMode::Complete:
      add_ato();
      for (int i = 0; i < 12; ++i) add(ObservationWay::Active, i * kDosStepDeg, nato_id(i));
      break;
    case PartitionMode::Envelope: {
      add_ato();
      // Strip counts are cheap width projections; only the minimizing
      // directions are partitioned in full.
      std::array<int, 12> counts;
      int best = std::numeric_limits<int>::max();
      for (int i = 0; i < 12; ++i) {
        counts[i] = strip_count(target.polygon_km, i * kDosStepDeg, orbit, attrs);
        best = std::min(best, counts[i]);
      }
      for (int i = 0; i < 12; ++i) {
        if (counts[i] == best) add(ObservationWay::Active, i * kDosStepDeg, nato_id(i));
      }
      break;
    }
  }
  return out;
}

void build_all_partition_sets(Instance& instance, PartitionMode mode) {
  for (auto& target : instance.targets) {
    target.candidate_ows =
        build_partition_set(target, mode, instance.orbit, instance.satellite.attrs);
  }
}

ObservationWindow instantiate_window(const GroundTarget& target, const PseudoOrbitModel& orbit,
                                     const ObservationWindow& tmpl, double begin_s) {
  ObservationWindow ow = tmpl;
  const double span = tmpl.span_s();
  ow.begin_s = begin_s;
  ow.end_s = begin_s + span;
  for (auto& strip : ow.strips) {
    const double sb = begin_s + strip.begin_offset_s;
    const double se = sb + strip.duration_s;
    if (ow.way == ObservationWay::Active) {
      strip.begin_attitude.pitch_deg = pitch_profile_deg(orbit, target.pass_midpoint_s, sb);
      strip.end_attitude.pitch_deg = pitch_profile_deg(orbit, target.pass_midpoint_s, se);
    } else {
      const double held = pitch_profile_deg(orbit, target.pass_midpoint_s, sb);
      strip.begin_attitude.pitch_deg = held;
      strip.end_attitude.pitch_deg = held;
    }
  }
  ow.begin_attitude = ow.strips.front().begin_attitude;
  ow.end_attitude = ow.strips.back().end_attitude;
  return ow;
}

AttitudeTriple attitude_at(const GroundTarget& target, const PseudoOrbitModel& orbit,
                           const ObservationWindow& window, std::size_t strip_index, double u) {
  if (strip_index >= window.strips.size()) {
    throw std::out_of_range("attitude_at: strip index out of range");
  }
  const auto& strip = window.strips[strip_index];
  const double sb = window.begin_s + strip.begin_offset_s;
  const double se = sb + strip.duration_s;
  if (u < sb - 1e-9 || u > se + 1e-9) {
    throw std::invalid_argument("attitude_at: moment outside the strip imaging interval");
  }
  AttitudeTriple a = strip.begin_attitude;
  if (window.way == ObservationWay::Active) {
    a.pitch_deg = pitch_profile_deg(orbit, target.pass_midpoint_s, u);
  }
  return a;
}

namespace {

// Convex polygon with the requested vertex count and exact area: vertices in
// angular order on an ellipse with a random elongation, then rescaled.
// Elongation makes the strip direction matter, so multi-strip targets reward
// a well-chosen direction over the fixed along-track one. Orientations lean
// cross-track with a shared trend, the regime in which direction choice pays.
std::vector<GroundPoint> random_convex_polygon(Rng& rng, int vertices, double area_km2) {
  std::vector<double> gaps(static_cast<std::size_t>(vertices));
  double gap_sum = 0.0;
  for (auto& g : gaps) {
    g = rng.uniform(0.2, 1.0);
    gap_sum += g;
  }
  const double elongation = rng.uniform(3.0, 6.0);
  const double orientation = deg2rad(rng.uniform(70.0, 90.0));
  const double c = std::cos(orientation);
  const double s = std::sin(orientation);
  std::vector<GroundPoint> poly;
  poly.reserve(gaps.size());
  double angle = rng.uniform(0.0, 2.0 * kPi);
  for (const auto& g : gaps) {
    const double ex = elongation * std::cos(angle);
    const double ey = std::sin(angle);
    poly.push_back({ex * c - ey * s, ex * s + ey * c});
    angle += 2.0 * kPi * g / gap_sum;
  }
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % poly.size()];
    twice += a.x_km * b.y_km - b.x_km * a.y_km;
  }
  const double scale = std::sqrt(area_km2 / (0.5 * std::abs(twice)));
  for (auto& p : poly) {
    p.x_km *= scale;
    p.y_km *= scale;
  }
  return poly;
}

}  // namespace

Instance generate_instance(const InstanceSpec& spec) {
  if (spec.n_targets <= 0) throw std::invalid_argument("generate_instance: n_targets must be > 0");
  Instance inst;
  inst.satellite = Satellite{0, SensorType::Optical, spec.sensor};
  inst.horizon = spec.horizon;
  inst.orbit = spec.orbit;
  inst.seed = spec.seed;
  inst.distribution = spec.distribution;
  inst.targets.reserve(static_cast<std::size_t>(spec.n_targets));

  for (int i = 0; i < spec.n_targets; ++i) {
    // One stream per target so generation order (or parallelism) cannot
    // change the result.
    Rng rng(mix_seed(spec.seed, 0x6d6f7370, static_cast<std::uint64_t>(i)));
    GroundTarget t;
    t.id = i;
    t.priority = rng.uniform_int(spec.priority_min, spec.priority_max);
    t.center_lat_deg = rng.uniform(spec.bbox.lat_min_deg, spec.bbox.lat_max_deg);
    t.center_lon_deg = rng.uniform(spec.bbox.lon_min_deg, spec.bbox.lon_max_deg);
    t.polygon_km = random_convex_polygon(rng, rng.uniform_int(spec.vertex_min, spec.vertex_max),
                                         rng.uniform(spec.area_min_km2, spec.area_max_km2));
    const VtwSample v = synthesize_vtw(spec.orbit, spec.sensor, spec.horizon, rng);
    t.vtw_begin_s = v.begin_s;
    t.vtw_end_s = v.end_s;
    t.pass_midpoint_s = v.pass_midpoint_s;
    t.cross_track_roll_deg = v.cross_track_roll_deg;
    inst.targets.push_back(std::move(t));
  }
  return inst;
}

}  // namespace mosp
