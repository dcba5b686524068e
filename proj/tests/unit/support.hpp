#pragma once

// Handcrafted fixtures shared across the test suites. Geometry is chosen so
// expected values are exact: a 10x10 km square is always one strip, a 20x20 km
// square is two strips along an axis, and both floor at the 5 s minimum image
// duration.

#include <vector>

#include "mosp/feasibility.hpp"
#include "mosp/geometry.hpp"
#include "mosp/model.hpp"
#include "mosp/objectives.hpp"

namespace mosp::test {

inline std::vector<GroundPoint> square_km(double side) {
  const double h = side / 2.0;
  return {{-h, -h}, {h, -h}, {h, h}, {-h, h}};
}

inline std::vector<GroundPoint> rect_km(double along_x, double along_y) {
  const double hx = along_x / 2.0;
  const double hy = along_y / 2.0;
  return {{-hx, -hy}, {hx, -hy}, {hx, hy}, {-hx, hy}};
}

inline GroundTarget make_target(int id, int priority, double vtw_begin, double vtw_end,
                                double midpoint, double roll_deg,
                                std::vector<GroundPoint> polygon) {
  GroundTarget t;
  t.id = id;
  t.priority = priority;
  t.vtw_begin_s = vtw_begin;
  t.vtw_end_s = vtw_end;
  t.pass_midpoint_s = midpoint;
  t.cross_track_roll_deg = roll_deg;
  t.polygon_km = std::move(polygon);
  return t;
}

// A target whose full unclipped pass is visible, centered at `midpoint`.
inline GroundTarget make_pass_target(int id, int priority, double midpoint, double roll_deg,
                                     std::vector<GroundPoint> polygon) {
  const double half = 631.0 / 7.0;  // default orbit, 45 deg max pitch
  return make_target(id, priority, midpoint - half, midpoint + half, midpoint, roll_deg,
                     std::move(polygon));
}

inline Instance make_instance(std::vector<GroundTarget> targets) {
  Instance inst;
  inst.targets = std::move(targets);
  return inst;
}

inline Instance prepared_instance(std::vector<GroundTarget> targets,
                                  PartitionMode mode = PartitionMode::Complete) {
  Instance inst = make_instance(std::move(targets));
  build_all_partition_sets(inst, mode);
  const ObjectiveParams params = params_for(inst);
  compute_all_congestion(inst, params);
  return inst;
}

// Irreconcilable pair: identical tight windows too short for two observations.
inline Instance either_or_instance() {
  auto a = make_target(0, 5, 1000.0, 1021.0, 1010.0, 0.0, square_km(10.0));
  auto b = make_target(1, 5, 1000.0, 1021.0, 1010.0, 10.0, square_km(10.0));
  return prepared_instance({a, b});
}

}  // namespace mosp::test
