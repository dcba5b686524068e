#pragma once

#include <cmath>
#include <stdexcept>

#include "mosp/model.hpp"

namespace mosp {

// Shortest possible slew, realized for any attitude change of 10 degrees or
// less.
inline constexpr double kMinTransitionTime = 35.0 / 3.0;

// Time-dependent slew duration in seconds for a total attitude change of
// delta_deg. Piecewise linear with angular velocity increasing for larger
// maneuvers (1.5, 2, 2.5, 3 deg/s); continuous at every branch boundary.
inline double transition_time(double delta_deg) {
  if (!(delta_deg >= 0.0)) {
    throw std::invalid_argument("transition_time: attitude change must be nonnegative");
  }
  if (delta_deg <= 10.0) return 35.0 / 3.0;
  if (delta_deg <= 30.0) return 5.0 + delta_deg / 1.5;
  if (delta_deg <= 60.0) return 10.0 + delta_deg / 2.0;
  if (delta_deg <= 90.0) return 16.0 + delta_deg / 2.5;
  return 22.0 + delta_deg / 3.0;
}

// Total attitude change between two attitudes: |dpitch| + |droll| + |dyaw|.
inline double attitude_delta_deg(const AttitudeTriple& a, const AttitudeTriple& b) {
  return std::abs(a.pitch_deg - b.pitch_deg) + std::abs(a.roll_deg - b.roll_deg) +
         std::abs(a.yaw_deg - b.yaw_deg);
}

}  // namespace mosp
