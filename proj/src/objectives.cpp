#include "mosp/objectives.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <stdexcept>

namespace mosp {

double compute_mec(const Instance& instance, const ObjectiveParams& params) {
  double max_vtw = 0.0;
  for (const auto& t : instance.targets) max_vtw = std::max(max_vtw, t.vtw_length_s());
  const double n = static_cast<double>(instance.targets.size());
  return n * params.active_rate_W * max_vtw +
         params.max_transition_s * (1.0 + params.max_strips) * params.slew_rate_W * n;
}

ObjectiveParams params_for(const Instance& instance) {
  ObjectiveParams params;
  params.max_energy_W_s = compute_mec(instance, params);
  return params;
}

double instant_quality(double pitch_deg, double roll_deg) {
  if (std::abs(pitch_deg) > 90.0 || std::abs(roll_deg) > 90.0) {
    throw std::invalid_argument("instant_quality: angle magnitude above 90 degrees");
  }
  return (1.0 - std::abs(pitch_deg) / 90.0) * (1.0 - std::abs(roll_deg) / 90.0);
}

double cumulative_quality(const GroundTarget& target, const PseudoOrbitModel& orbit,
                          const ObservationWindow& window, const ObjectiveParams& params) {
  if (window.strips.empty()) {
    throw std::invalid_argument("cumulative_quality: window has no strips");
  }
  double sum = 0.0;
  long count = 0;
  for (std::size_t i = 0; i < window.strips.size(); ++i) {
    const auto& strip = window.strips[i];
    if (!(strip.duration_s > 0)) {
      throw std::invalid_argument("cumulative_quality: nonpositive strip duration");
    }
    // Midpoint samples tiling the imaging interval exactly.
    const long m = std::max<long>(1, std::lround(strip.duration_s / params.quality_sample_step_s));
    const double sub = strip.duration_s / static_cast<double>(m);
    const double sb = window.begin_s + strip.begin_offset_s;
    for (long j = 0; j < m; ++j) {
      const AttitudeTriple a = attitude_at(target, orbit, window, i, sb + (j + 0.5) * sub);
      sum += instant_quality(a.pitch_deg, a.roll_deg);
    }
    count += m;
  }
  return sum / static_cast<double>(count);
}

WindowEvaluation evaluate_window(const GroundTarget& target, const PseudoOrbitModel& orbit,
                                 const ObservationWindow& tmpl, double begin_s,
                                 const ObjectiveParams& params) {
  WindowEvaluation ev;
  ev.window = instantiate_window(target, orbit, tmpl, begin_s);
  ev.quality = cumulative_quality(target, orbit, ev.window, params);
  for (const auto& strip : ev.window.strips) ev.imaging_s += strip.duration_s;
  for (std::size_t i = 0; i + 1 < ev.window.strips.size(); ++i) {
    ev.intra_slew_s += transition_time(attitude_delta_deg(ev.window.strips[i].end_attitude,
                                                          ev.window.strips[i + 1].begin_attitude));
  }
  return ev;
}

namespace {

const ObservationWindow& find_template(const Instance& instance, const Assignment& a) {
  if (a.target_index < 0 || a.target_index >= static_cast<int>(instance.targets.size())) {
    throw std::out_of_range(
        fmt::format("assignment references unknown target index {}", a.target_index));
  }
  const auto& target = instance.targets[static_cast<std::size_t>(a.target_index)];
  for (const auto& ow : target.candidate_ows) {
    if (ow.id == a.ow_id) {
      if (ow.way != a.way) {
        throw std::invalid_argument(fmt::format(
            "assignment for target {} disagrees with candidate {} on the observation way",
            a.target_index, a.ow_id));
      }
      return ow;
    }
  }
  throw std::out_of_range(fmt::format("assignment for target {} references unknown ow id {}",
                                      a.target_index, a.ow_id));
}

void require_sorted(const Schedule& schedule) {
  for (std::size_t i = 0; i + 1 < schedule.assignments.size(); ++i) {
    if (!(schedule.assignments[i].begin_s < schedule.assignments[i + 1].begin_s)) {
      throw std::invalid_argument("schedule assignments not sorted ascending by begin moment");
    }
  }
}

}  // namespace

EnergyBreakdown energy(const Schedule& schedule, const Instance& instance,
                       const ObjectiveParams& params) {
  require_sorted(schedule);
  EnergyBreakdown e;
  bool have_prev = false;
  AttitudeTriple prev_end;
  for (const auto& a : schedule.assignments) {
    const auto& target = instance.targets[static_cast<std::size_t>(a.target_index)];
    const auto& tmpl = find_template(instance, a);
    const ObservationWindow ow = instantiate_window(target, instance.orbit, tmpl, a.begin_s);
    double imaging = 0.0;
    for (const auto& strip : ow.strips) imaging += strip.duration_s;
    if (a.way == ObservationWay::Active) {
      e.ot_a_s += imaging;
    } else {
      e.ot_p_s += imaging;
    }
    for (std::size_t i = 0; i + 1 < ow.strips.size(); ++i) {
      e.at_in_s += transition_time(
          attitude_delta_deg(ow.strips[i].end_attitude, ow.strips[i + 1].begin_attitude));
    }
    if (have_prev) {
      e.at_out_s += transition_time(attitude_delta_deg(prev_end, ow.begin_attitude));
    }
    prev_end = ow.end_attitude;
    have_prev = true;
  }
  e.total_W_s = params.active_rate_W * e.ot_a_s + params.passive_rate_W * e.ot_p_s +
                params.slew_rate_W * (e.at_in_s + e.at_out_s);
  return e;
}

double loss_rate(const Schedule& schedule, const Instance& instance,
                 const ObjectiveParams& params) {
  double gained = 0.0;
  for (const auto& a : schedule.assignments) {
    const auto& target = instance.targets[static_cast<std::size_t>(a.target_index)];
    const auto& tmpl = find_template(instance, a);
    const WindowEvaluation ev =
        evaluate_window(target, instance.orbit, tmpl, a.begin_s, params);
    gained += target.priority * ev.quality;
  }
  return 1.0 - gained / total_priority(instance);
}

double energy_fraction(const Schedule& schedule, const Instance& instance,
                       const ObjectiveParams& params) {
  if (!(params.max_energy_W_s > 0)) {
    throw std::invalid_argument("energy_fraction: normalizer not precomputed");
  }
  return energy(schedule, instance, params).total_W_s / params.max_energy_W_s;
}

void recompute_objectives(Schedule& schedule, const Instance& instance,
                          const ObjectiveParams& params) {
  schedule.f1 = loss_rate(schedule, instance, params);
  schedule.energy = energy(schedule, instance, params);
  schedule.f2 = schedule.energy.total_W_s /
                (params.max_energy_W_s > 0 ? params.max_energy_W_s
                                           : compute_mec(instance, params));
}

}  // namespace mosp
