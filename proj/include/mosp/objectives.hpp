#pragma once

#include "mosp/geometry.hpp"
#include "mosp/model.hpp"
#include "mosp/transition.hpp"

namespace mosp {

struct ObjectiveParams {
  double active_rate_W = 0.1;    // imaging, active way
  double passive_rate_W = 0.08;  // imaging, passive way
  double slew_rate_W = 0.05;     // attitude conversion
  double max_transition_s = 100.0;
  int max_strips = kMaxStripsPerWindow;
  double quality_sample_step_s = 1.0;
  double max_energy_W_s = 0.0;  // per-instance normalizer; see compute_mec
};

// Worst-case energy bound used to normalize the energy objective: every
// target imaged actively over the longest VTW plus maximal slew time for one
// inter-target and max-strip-count intra-target maneuvers each.
double compute_mec(const Instance& instance, const ObjectiveParams& params);

// Default parameters with the normalizer precomputed for the instance.
ObjectiveParams params_for(const Instance& instance);

// (1 - |pitch|/90) * (1 - |roll|/90); yaw does not affect image quality.
double instant_quality(double pitch_deg, double roll_deg);

struct WindowEvaluation {
  ObservationWindow window;   // instantiated at the chosen begin moment
  double quality = 0.0;       // cumulative image quality in [0, 1]
  double imaging_s = 0.0;     // summed strip durations
  double intra_slew_s = 0.0;  // slew time between consecutive strips
};

WindowEvaluation evaluate_window(const GroundTarget& target, const PseudoOrbitModel& orbit,
                                 const ObservationWindow& tmpl, double begin_s,
                                 const ObjectiveParams& params);

// Mean instant quality sampled over the strip imaging intervals of an
// instantiated window (slews excluded). Normalizing by the sample count keeps
// the value in [0, 1] and makes constant-attitude windows score exactly their
// instant quality.
double cumulative_quality(const GroundTarget& target, const PseudoOrbitModel& orbit,
                          const ObservationWindow& window, const ObjectiveParams& params);

EnergyBreakdown energy(const Schedule& schedule, const Instance& instance,
                       const ObjectiveParams& params);

// Objective 1: priority-weighted quality shortfall relative to observing every
// target at quality one.
double loss_rate(const Schedule& schedule, const Instance& instance,
                 const ObjectiveParams& params);

// Objective 2: total energy over the instance normalizer.
double energy_fraction(const Schedule& schedule, const Instance& instance,
                       const ObjectiveParams& params);

// Replaces the schedule's cached objective fields with a fresh evaluation.
void recompute_objectives(Schedule& schedule, const Instance& instance,
                          const ObjectiveParams& params);

}  // namespace mosp
