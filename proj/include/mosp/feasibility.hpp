#pragma once

#include <string>
#include <vector>

#include "mosp/model.hpp"
#include "mosp/objectives.hpp"

namespace mosp {

enum class ViolationKind {
  DuplicateTarget,    // a target id observed more than once
  OutsideVTW,         // window not contained in the visible time window
  DurationBelowMin,   // a strip shorter than the minimum image duration
  TransitionOverlap,  // gap between adjacent targets below the slew time
  OrderingViolation,  // begin moments not strictly increasing
};

const char* to_string(ViolationKind kind);

struct Violation {
  ViolationKind kind;
  std::vector<int> target_ids;
  std::string detail;
};

// Checks the full constraint set on a schedule. Empty means feasible.
// Schedules reference candidate windows by id, so the instance must carry the
// partition set the schedule was built against.
std::vector<Violation> check_schedule(const Schedule& schedule, const Instance& instance,
                                      const ObjectiveParams& params);

// Dimensionless conflict pressure: 1/exp(1 - x/x_max), increasing in x.
double nod(double x, double x_max);

// Conflict distance between two targets: 1 when no ordering of their minimal
// observations fits both VTWs under a conservative slew estimate, 0.5 when the
// windows interact but some ordering fits, 0 when the windows are separated by
// at least the maximum slew time.
double conflict_distance(const Instance& instance, std::size_t i, std::size_t j,
                         const ObjectiveParams& params);

// Workpiece congestion of one target: summed dimensionless priority-weighted
// conflict distances against all other targets. Zero when the target conflicts
// with nothing.
double congestion(const Instance& instance, std::size_t target_index,
                  const ObjectiveParams& params);

// Fills GroundTarget::congestion for the whole instance. Requires candidate
// windows (their spans define the minimal observations).
void compute_all_congestion(Instance& instance, const ObjectiveParams& params);

}  // namespace mosp
