#include "mosp/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "mosp/transition.hpp"

namespace mosp {

namespace {
constexpr double kTimeEps = 1e-9;
}

bool SolutionState::contains(int target_index) const {
  return std::any_of(placed.begin(), placed.end(),
                     [&](const PlacedObservation& p) { return p.target_index == target_index; });
}

ObjectivePair evaluate(const SolutionState& state, const Instance& instance,
                       const ObjectiveParams& params) {
  // Mirrors the schedule-level evaluation term for term so cached placements
  // reproduce a fresh recomputation exactly.
  double gained = 0.0;
  EnergyBreakdown e;
  for (std::size_t i = 0; i < state.placed.size(); ++i) {
    const auto& p = state.placed[i];
    const auto& target = instance.targets[static_cast<std::size_t>(p.target_index)];
    gained += target.priority * p.quality;
    if (p.way == ObservationWay::Active) {
      e.ot_a_s += p.imaging_s;
    } else {
      e.ot_p_s += p.imaging_s;
    }
    e.at_in_s += p.intra_slew_s;
    if (i + 1 < state.placed.size()) {
      e.at_out_s += transition_time(
          attitude_delta_deg(p.end_attitude, state.placed[i + 1].begin_attitude));
    }
  }
  e.total_W_s = params.active_rate_W * e.ot_a_s + params.passive_rate_W * e.ot_p_s +
                params.slew_rate_W * (e.at_in_s + e.at_out_s);
  const double f1 = 1.0 - gained / total_priority(instance);
  const double f2 = e.total_W_s / params.max_energy_W_s;
  if (!(f1 >= -1e-12 && f1 <= 1.0 + 1e-12 && f2 >= -1e-12 && f2 <= 1.0 + 1e-12)) {
    throw std::logic_error("evaluate: objective left the unit square");
  }
  return {f1, f2};
}

Schedule to_schedule(const SolutionState& state, const Instance& instance,
                     const ObjectiveParams& params) {
  Schedule s;
  s.assignments.reserve(state.placed.size());
  for (const auto& p : state.placed) {
    s.assignments.push_back({p.target_index, p.ow_id, p.way, p.begin_s});
  }
  recompute_objectives(s, instance, params);
  return s;
}

std::vector<const ObservationWindow*> candidate_view(const GroundTarget& target,
                                                     PartitionMode mode) {
  std::vector<const ObservationWindow*> out;
  switch (mode) {
    case PartitionMode::ATO:
      for (const auto& ow : target.candidate_ows) {
        if (ow.way == ObservationWay::Passive) out.push_back(&ow);
      }
      break;
    case PartitionMode::NATO:
      for (const auto& ow : target.candidate_ows) {
        if (ow.way == ObservationWay::Active) out.push_back(&ow);
      }
      break;
    case PartitionMode::Complete:
      for (const auto& ow : target.candidate_ows) out.push_back(&ow);
      break;
    case PartitionMode::Envelope: {
      std::size_t best = std::numeric_limits<std::size_t>::max();
      for (const auto& ow : target.candidate_ows) {
        if (ow.way == ObservationWay::Active) best = std::min(best, ow.strips.size());
      }
      for (const auto& ow : target.candidate_ows) {
        if (ow.way == ObservationWay::Passive || ow.strips.size() == best) out.push_back(&ow);
      }
      break;
    }
  }
  return out;
}

std::vector<int> select_targets(const Instance& instance, double skip_rate, Rng& rng) {
  if (skip_rate < 0.0 || skip_rate >= 1.0) {
    throw std::invalid_argument("select_targets: skip rate must lie in [0,1)");
  }
  std::vector<int> out;
  out.reserve(instance.targets.size());
  for (std::size_t i = 0; i < instance.targets.size(); ++i) {
    if (rng.uniform_open() > skip_rate) out.push_back(static_cast<int>(i));
  }
  return out;
}

bool try_insert_at(SolutionState& state, const Instance& instance, int target_index,
                   const ObservationWindow& tmpl, double begin_s, const ObjectiveParams& params) {
  const auto& target = instance.targets.at(static_cast<std::size_t>(target_index));
  if (begin_s < target.vtw_begin_s - kTimeEps ||
      begin_s + tmpl.span_s() > target.vtw_end_s + kTimeEps) {
    return false;
  }
  const WindowEvaluation ev = evaluate_window(target, instance.orbit, tmpl, begin_s, params);
  const auto pos = std::upper_bound(
      state.placed.begin(), state.placed.end(), begin_s,
      [](double b, const PlacedObservation& p) { return b < p.begin_s; });

  if (pos != state.placed.begin()) {
    const auto& prev = *(pos - 1);
    if (!(begin_s > prev.begin_s)) return false;
    const double needed =
        transition_time(attitude_delta_deg(prev.end_attitude, ev.window.begin_attitude));
    if (begin_s - prev.end_s + kTimeEps < needed) return false;
  }
  if (pos != state.placed.end()) {
    const auto& next = *pos;
    if (!(next.begin_s > begin_s)) return false;
    const double needed =
        transition_time(attitude_delta_deg(ev.window.end_attitude, next.begin_attitude));
    if (next.begin_s - ev.window.end_s + kTimeEps < needed) return false;
  }

  PlacedObservation p;
  p.target_index = target_index;
  p.ow_id = tmpl.id;
  p.way = tmpl.way;
  p.begin_s = begin_s;
  p.end_s = ev.window.end_s;
  p.begin_attitude = ev.window.begin_attitude;
  p.end_attitude = ev.window.end_attitude;
  p.quality = ev.quality;
  p.imaging_s = ev.imaging_s;
  p.intra_slew_s = ev.intra_slew_s;
  state.placed.insert(pos, std::move(p));
  return true;
}

bool try_insert(SolutionState& state, const Instance& instance, int target_index,
                PartitionMode mode, const ObjectiveParams& params, Rng& rng) {
  const auto& target = instance.targets.at(static_cast<std::size_t>(target_index));
  std::vector<const ObservationWindow*> fitting;
  for (const auto* ow : candidate_view(target, mode)) {
    if (ow->span_s() <= target.vtw_length_s() + kTimeEps) fitting.push_back(ow);
  }
  if (fitting.empty()) return false;
  const auto* tmpl = fitting[rng.uniform_index(fitting.size())];
  const double begin_s =
      rng.uniform(target.vtw_begin_s, target.vtw_end_s - tmpl->span_s());
  return try_insert_at(state, instance, target_index, *tmpl, begin_s, params);
}

SolutionState greedy_construct(std::vector<int> targets, const Instance& instance,
                               PartitionMode mode, const ObjectiveParams& params, Rng& rng) {
  std::stable_sort(targets.begin(), targets.end(), [&](int a, int b) {
    const int pa = instance.targets[static_cast<std::size_t>(a)].priority;
    const int pb = instance.targets[static_cast<std::size_t>(b)].priority;
    if (pa != pb) return pa > pb;
    return a < b;
  });
  SolutionState state;
  for (const int t : targets) {
    try_insert(state, instance, t, mode, params, rng);  // colliding targets are abandoned
  }
  return state;
}

SearchState make_search_state(SolutionState solution, const Instance& instance,
                              double taboo_rate) {
  SearchState s;
  s.solution = std::move(solution);
  s.universe.resize(instance.targets.size());
  for (std::size_t i = 0; i < s.universe.size(); ++i) s.universe[i] = static_cast<int>(i);
  s.taboo.assign(instance.targets.size(), 0);
  s.taboo_capacity = static_cast<std::size_t>(
      std::ceil(taboo_rate * static_cast<double>(instance.targets.size())));
  return s;
}

double guiding_energy(const PlacedObservation& placed, const ObjectiveParams& params) {
  const double rate =
      placed.way == ObservationWay::Active ? params.active_rate_W : params.passive_rate_W;
  const double slews =
      transition_time(attitude_delta_deg(kOriginAttitude, placed.begin_attitude)) +
      transition_time(attitude_delta_deg(placed.end_attitude, kOriginAttitude));
  return rate * placed.imaging_s + params.slew_rate_W * slews;
}

void destroy(SearchState& state, DestroyOp op, const Instance& instance,
             const ObjectiveParams& params, Rng& rng) {
  auto& placed = state.solution.placed;
  while (state.taboo_count < state.taboo_capacity && !placed.empty()) {
    std::size_t pick = 0;
    switch (op) {
      case DestroyOp::Random:
        pick = rng.uniform_index(placed.size());
        break;
      case DestroyOp::Quality: {
        // Lowest cumulative quality leaves first; ties fall to the smaller
        // target index.
        for (std::size_t i = 1; i < placed.size(); ++i) {
          if (placed[i].quality < placed[pick].quality ||
              (placed[i].quality == placed[pick].quality &&
               placed[i].target_index < placed[pick].target_index)) {
            pick = i;
          }
        }
        break;
      }
      case DestroyOp::Energy: {
        double best = guiding_energy(placed[0], params);
        for (std::size_t i = 1; i < placed.size(); ++i) {
          const double gi = guiding_energy(placed[i], params);
          if (gi > best ||
              (gi == best && placed[i].target_index < placed[pick].target_index)) {
            best = gi;
            pick = i;
          }
        }
        break;
      }
      case DestroyOp::Congestion: {
        const auto wc = [&](std::size_t i) {
          return instance.targets[static_cast<std::size_t>(placed[i].target_index)].congestion;
        };
        for (std::size_t i = 1; i < placed.size(); ++i) {
          if (wc(i) > wc(pick) ||
              (wc(i) == wc(pick) && placed[i].target_index < placed[pick].target_index)) {
            pick = i;
          }
        }
        break;
      }
    }
    const int removed = placed[pick].target_index;
    placed.erase(placed.begin() + static_cast<std::ptrdiff_t>(pick));
    if (!state.taboo[static_cast<std::size_t>(removed)]) {
      state.taboo[static_cast<std::size_t>(removed)] = 1;
      ++state.taboo_count;
    }
  }
}

void repair(SearchState& state, RepairOp op, const Instance& instance, PartitionMode mode,
            const ObjectiveParams& params, Rng& rng) {
  std::vector<char> scheduled(instance.targets.size(), 0);
  for (const auto& p : state.solution.placed) {
    scheduled[static_cast<std::size_t>(p.target_index)] = 1;
  }
  std::vector<int> pool;
  for (const int t : state.universe) {
    if (!state.taboo[static_cast<std::size_t>(t)] && !scheduled[static_cast<std::size_t>(t)]) {
      pool.push_back(t);
    }
  }
  const auto& targets = instance.targets;
  switch (op) {
    case RepairOp::Random:
      rng.shuffle(pool);
      break;
    case RepairOp::Priority:
      std::stable_sort(pool.begin(), pool.end(), [&](int a, int b) {
        const int pa = targets[static_cast<std::size_t>(a)].priority;
        const int pb = targets[static_cast<std::size_t>(b)].priority;
        if (pa != pb) return pa > pb;
        return a < b;
      });
      break;
    case RepairOp::WindowLength:
      std::stable_sort(pool.begin(), pool.end(), [&](int a, int b) {
        const double la = targets[static_cast<std::size_t>(a)].vtw_length_s();
        const double lb = targets[static_cast<std::size_t>(b)].vtw_length_s();
        if (la != lb) return la < lb;
        return a < b;
      });
      break;
    case RepairOp::Congestion:
      std::stable_sort(pool.begin(), pool.end(), [&](int a, int b) {
        const double ca = targets[static_cast<std::size_t>(a)].congestion;
        const double cb = targets[static_cast<std::size_t>(b)].congestion;
        if (ca != cb) return ca < cb;
        return a < b;
      });
      break;
  }
  for (const int t : pool) {
    try_insert(state.solution, instance, t, mode, params, rng);  // single pass
  }
}

}  // namespace mosp
