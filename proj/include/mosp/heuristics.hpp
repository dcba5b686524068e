#pragma once

#include <array>
#include <vector>

#include "mosp/geometry.hpp"
#include "mosp/objectives.hpp"
#include "mosp/rng.hpp"

namespace mosp {

enum class DestroyOp { Random = 0, Quality, Energy, Congestion };
enum class RepairOp { Random = 0, Priority, WindowLength, Congestion };

inline constexpr std::array<const char*, 4> kDestroyNames{"R-Destroy", "Q-Destroy", "E-Destroy",
                                                          "C-Destroy"};
inline constexpr std::array<const char*, 4> kRepairNames{"R-Repair", "P-Repair", "L-Repair",
                                                         "C-Repair"};

// One scheduled observation with its evaluation cached at placement time.
struct PlacedObservation {
  int target_index = 0;
  int ow_id = 0;
  ObservationWay way = ObservationWay::Passive;
  double begin_s = 0.0;
  double end_s = 0.0;
  AttitudeTriple begin_attitude;
  AttitudeTriple end_attitude;
  double quality = 0.0;
  double imaging_s = 0.0;
  double intra_slew_s = 0.0;
};

// A feasible schedule under construction, sorted ascending by begin moment.
struct SolutionState {
  std::vector<PlacedObservation> placed;

  bool contains(int target_index) const;
};

ObjectivePair evaluate(const SolutionState& state, const Instance& instance,
                       const ObjectiveParams& params);

// Converts to the serializable schedule form; cached objectives come from a
// full re-evaluation so they are exactly reproducible.
Schedule to_schedule(const SolutionState& state, const Instance& instance,
                     const ObjectiveParams& params);

// The target's candidate windows visible under a partition mode (by way and,
// for Envelope, minimal strip count among the active candidates present).
std::vector<const ObservationWindow*> candidate_view(const GroundTarget& target,
                                                     PartitionMode mode);

// Independent per-target coin flips: a target joins the working set iff the
// draw exceeds the skip rate.
std::vector<int> select_targets(const Instance& instance, double skip_rate, Rng& rng);

// Inserts one target at an explicit candidate/begin moment iff the transition
// constraints against the current neighbors hold.
bool try_insert_at(SolutionState& state, const Instance& instance, int target_index,
                   const ObservationWindow& tmpl, double begin_s, const ObjectiveParams& params);

// Random placement: uniform candidate among those fitting the VTW, uniform
// begin moment inside it, single attempt.
bool try_insert(SolutionState& state, const Instance& instance, int target_index,
                PartitionMode mode, const ObjectiveParams& params, Rng& rng);

// Constructive heuristic: visits the given targets by descending priority and
// places each with a single random attempt, abandoning targets that collide.
SolutionState greedy_construct(std::vector<int> targets, const Instance& instance,
                               PartitionMode mode, const ObjectiveParams& params, Rng& rng);

// Neighborhood bookkeeping for destroy/repair: the taboo set holds targets
// removed this round, excluded from reinsertion until the round ends.
struct SearchState {
  SolutionState solution;
  std::vector<int> universe;  // targets this search may schedule
  std::vector<char> taboo;    // indexed by target, 1 = banned
  std::size_t taboo_count = 0;
  std::size_t taboo_capacity = 0;
};

SearchState make_search_state(SolutionState solution, const Instance& instance,
                              double taboo_rate);

// Observation energy plus the slews from and back to the rest attitude; the
// removal guidance for energy-directed destruction.
double guiding_energy(const PlacedObservation& placed, const ObjectiveParams& params);

// Removes scheduled targets into the taboo set until it is full or the
// solution is empty. Removal order: Random uniform; Quality lowest first;
// Energy highest guiding energy first; Congestion highest congestion first.
void destroy(SearchState& state, DestroyOp op, const Instance& instance,
             const ObjectiveParams& params, Rng& rng);

// Attempts each unscheduled non-taboo target once, in operator order: Random
// shuffled; Priority descending; WindowLength shortest VTW first; Congestion
// lowest congestion first.
void repair(SearchState& state, RepairOp op, const Instance& instance, PartitionMode mode,
            const ObjectiveParams& params, Rng& rng);

}  // namespace mosp
