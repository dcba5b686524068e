#include "mosp/model.hpp"

#include <cmath>
#include <fmt/format.h>

namespace mosp {

namespace {

double polygon_area_km2(const std::vector<GroundPoint>& poly) {
  double twice = 0.0;
  for (std::size_t i = 0; i < poly.size(); ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % poly.size()];
    twice += a.x_km * b.y_km - b.x_km * a.y_km;
  }
  return 0.5 * std::abs(twice);
}

bool polygon_convex(const std::vector<GroundPoint>& poly) {
  const std::size_t n = poly.size();
  if (n < 3) return false;
  int sign = 0;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& a = poly[i];
    const auto& b = poly[(i + 1) % n];
    const auto& c = poly[(i + 2) % n];
    const double cross =
        (b.x_km - a.x_km) * (c.y_km - b.y_km) - (b.y_km - a.y_km) * (c.x_km - b.x_km);
    if (std::abs(cross) < 1e-9) continue;
    const int s = cross > 0 ? 1 : -1;
    if (sign == 0) {
      sign = s;
    } else if (s != sign) {
      return false;
    }
  }
  return true;
}

}  // namespace

std::vector<std::string> validate_instance(const Instance& instance) {
  std::vector<std::string> out;
  const auto& attrs = instance.satellite.attrs;

  if (!(attrs.cone_angle_deg > 0) || !(attrs.max_roll_deg > 0) || !(attrs.max_pitch_deg > 0) ||
      !(attrs.max_yaw_deg > 0)) {
    out.push_back("satellite: sensor angle limits must be strictly positive");
  }
  if (!(attrs.min_image_duration_s > 0)) {
    out.push_back("satellite: min_image_duration_s must be strictly positive");
  }
  if (!(instance.horizon.end_s > instance.horizon.start_s)) {
    out.push_back("horizon: end_s must exceed start_s");
  }
  if (instance.targets.empty()) {
    out.push_back("instance: targets must be nonempty");
  }

  for (const auto& t : instance.targets) {
    const auto bad = [&](const std::string& what) {
      out.push_back(fmt::format("target {}: {}", t.id, what));
    };
    if (t.priority < 1 || t.priority > 10) bad("priority out of [1,10]");
    if (!(t.vtw_begin_s < t.vtw_end_s)) bad("vtw_end_s must exceed vtw_begin_s");
    if (t.vtw_begin_s < instance.horizon.start_s - 1e-9 ||
        t.vtw_end_s > instance.horizon.end_s + 1e-9) {
      bad("visible time window outside horizon");
    }
    if (t.polygon_km.size() < 3 || t.polygon_km.size() > 6) {
      bad("polygon_km vertex count out of [3,6]");
    } else {
      if (!polygon_convex(t.polygon_km)) bad("polygon_km not convex");
      const double area = polygon_area_km2(t.polygon_km);
      if (area < 40.0 * (1 - 1e-6) || area > 2500.0 * (1 + 1e-6)) {
        bad(fmt::format("polygon area {:.3f} km2 out of [40,2500]", area));
      }
    }
    if (t.congestion < 0) bad("congestion must be nonnegative");

    for (const auto& ow : t.candidate_ows) {
      const auto bad_ow = [&](const std::string& what) {
        out.push_back(fmt::format("target {} ow {}: {}", t.id, ow.id, what));
      };
      if (!(ow.begin_s < ow.end_s)) bad_ow("begin_s must precede end_s");
      if (ow.strips.empty() || ow.strips.size() > 10) bad_ow("strip count out of [1,10]");
      if (ow.dos_deg < 0 || ow.dos_deg >= 360.0) bad_ow("dos_deg out of [0,360)");
      for (std::size_t s = 0; s + 1 < ow.strips.size(); ++s) {
        if (std::abs(ow.strips[s].duration_s - ow.strips[s + 1].duration_s) > 1e-9) {
          bad_ow("strip durations differ within one window");
          break;
        }
      }
      for (const auto& strip : ow.strips) {
        if (strip.duration_s < attrs.min_image_duration_s - 1e-9) {
          bad_ow(fmt::format("strip {} shorter than min image duration", strip.id));
        }
      }
    }
  }
  return out;
}

double total_priority(const Instance& instance) {
  double sum = 0.0;
  for (const auto& t : instance.targets) sum += t.priority;
  return sum;
}

}  // namespace mosp
