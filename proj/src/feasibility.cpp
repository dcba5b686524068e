#include "mosp/feasibility.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>
#include <limits>
#include <map>
#include <stdexcept>

#include "mosp/geometry.hpp"
#include "mosp/transition.hpp"

namespace mosp {

namespace {
constexpr double kTimeEps = 1e-9;
}

const char* to_string(ViolationKind kind) {
  switch (kind) {
    case ViolationKind::DuplicateTarget: return "duplicate-target";
    case ViolationKind::OutsideVTW: return "outside-vtw";
    case ViolationKind::DurationBelowMin: return "duration-below-min";
    case ViolationKind::TransitionOverlap: return "transition-overlap";
    case ViolationKind::OrderingViolation: return "ordering-violation";
  }
  return "?";
}

std::vector<Violation> check_schedule(const Schedule& schedule, const Instance& instance,
                                      const ObjectiveParams& params) {
  std::vector<Violation> out;
  const double d0 = instance.satellite.attrs.min_image_duration_s;

  std::map<int, std::vector<int>> by_id;  // target id -> assignment positions
  std::vector<ObservationWindow> placed;
  placed.reserve(schedule.assignments.size());

  for (const auto& a : schedule.assignments) {
    const auto& target = instance.targets.at(static_cast<std::size_t>(a.target_index));
    by_id[target.id].push_back(a.target_index);

    const ObservationWindow* tmpl = nullptr;
    for (const auto& ow : target.candidate_ows) {
      if (ow.id == a.ow_id) tmpl = &ow;
    }
    if (tmpl == nullptr) {
      throw std::out_of_range(fmt::format(
          "check_schedule: target {} has no candidate window with id {}", a.target_index, a.ow_id));
    }
    const ObservationWindow ow = instantiate_window(target, instance.orbit, *tmpl, a.begin_s);

    if (ow.begin_s < target.vtw_begin_s - kTimeEps || ow.end_s > target.vtw_end_s + kTimeEps) {
      out.push_back({ViolationKind::OutsideVTW,
                     {target.id},
                     fmt::format("target {} window [{:.3f},{:.3f}] outside VTW [{:.3f},{:.3f}]",
                                 target.id, ow.begin_s, ow.end_s, target.vtw_begin_s,
                                 target.vtw_end_s)});
    }
    for (const auto& strip : ow.strips) {
      if (strip.duration_s < d0 - kTimeEps) {
        out.push_back({ViolationKind::DurationBelowMin,
                       {target.id},
                       fmt::format("target {} strip {} duration {:.3f}s below minimum {:.3f}s",
                                   target.id, strip.id, strip.duration_s, d0)});
      }
    }
    placed.push_back(std::move(ow));
  }

  for (const auto& [id, indices] : by_id) {
    if (indices.size() > 1) {
      out.push_back({ViolationKind::DuplicateTarget,
                     {id},
                     fmt::format("target id {} observed {} times", id, indices.size())});
    }
  }

  for (std::size_t i = 0; i + 1 < placed.size(); ++i) {
    const auto& prev = placed[i];
    const auto& next = placed[i + 1];
    const int prev_id = instance.targets[schedule.assignments[i].target_index].id;
    const int next_id = instance.targets[schedule.assignments[i + 1].target_index].id;
    if (!(next.begin_s > prev.begin_s)) {
      out.push_back({ViolationKind::OrderingViolation,
                     {prev_id, next_id},
                     fmt::format("begin moments not strictly increasing ({:.3f} then {:.3f})",
                                 prev.begin_s, next.begin_s)});
      continue;
    }
    const double gap = next.begin_s - prev.end_s;
    const double needed = transition_time(attitude_delta_deg(prev.end_attitude,
                                                             next.begin_attitude));
    if (gap + kTimeEps < needed) {
      out.push_back({ViolationKind::TransitionOverlap,
                     {prev_id, next_id},
                     fmt::format("gap {:.4f}s between targets {} and {} below slew time {:.4f}s",
                                 gap, prev_id, next_id, needed)});
    }
  }
  (void)params;
  return out;
}

double nod(double x, double x_max) {
  if (!(x_max > 0)) throw std::invalid_argument("nod: x_max must be positive");
  if (x < 0 || x > x_max + 1e-12) throw std::invalid_argument("nod: x outside [0, x_max]");
  return 1.0 / std::exp(1.0 - x / x_max);
}

namespace {

// Shortest candidate window span; the least time the target can occupy.
double min_span(const GroundTarget& t, const ObjectiveParams&, double fallback) {
  double best = std::numeric_limits<double>::infinity();
  for (const auto& ow : t.candidate_ows) best = std::min(best, ow.span_s());
  return std::isfinite(best) ? best : fallback;
}

}  // namespace

double conflict_distance(const Instance& instance, std::size_t i, std::size_t j,
                         const ObjectiveParams& params) {
  if (i == j) throw std::invalid_argument("conflict_distance: identical indices");
  const auto& a = instance.targets.at(i);
  const auto& b = instance.targets.at(j);
  const double fallback = instance.satellite.attrs.min_image_duration_s;
  const double span_a = min_span(a, params, fallback);
  const double span_b = min_span(b, params, fallback);
  const double max_t = params.max_transition_s;

  const double gap_ab = b.vtw_begin_s - a.vtw_end_s;  // positive when disjoint, a first
  const double gap_ba = a.vtw_begin_s - b.vtw_end_s;
  if (gap_ab >= max_t || gap_ba >= max_t) return 0.0;

  // An ordering fits when the earliest end of the first minimal observation
  // plus a conservative slew still reaches the latest begin of the second.
  const auto order_fits = [&](const GroundTarget& first, double span_first,
                              const GroundTarget& second, double span_second) {
    if (span_first > first.vtw_length_s() + kTimeEps) return false;
    if (span_second > second.vtw_length_s() + kTimeEps) return false;
    return first.vtw_begin_s + span_first + max_t <= second.vtw_end_s - span_second + kTimeEps;
  };
  if (!order_fits(a, span_a, b, span_b) && !order_fits(b, span_b, a, span_a)) return 1.0;
  return 0.5;
}

double congestion(const Instance& instance, std::size_t target_index,
                  const ObjectiveParams& params) {
  const std::size_t n = instance.targets.size();
  std::vector<double> weighted;
  weighted.reserve(n - 1);
  double max_w = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    if (j == target_index) continue;
    const double w =
        instance.targets[j].priority * conflict_distance(instance, target_index, j, params);
    weighted.push_back(w);
    max_w = std::max(max_w, w);
  }
  if (max_w <= 0.0) return 0.0;  // conflict-free target
  double wc = 0.0;
  for (const double w : weighted) wc += nod(w, max_w);
  return wc;
}

void compute_all_congestion(Instance& instance, const ObjectiveParams& params) {
  for (std::size_t i = 0; i < instance.targets.size(); ++i) {
    instance.targets[i].congestion = congestion(instance, i, params);
  }
}

}  // namespace mosp
