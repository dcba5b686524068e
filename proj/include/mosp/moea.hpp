#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

#include "mosp/heuristics.hpp"
#include "mosp/metrics.hpp"

namespace mosp {

// a dominates b: at or below in both objectives, strictly below in at least
// one (minimization).
bool dominates(const ObjectivePair& a, const ObjectivePair& b);

// Deb et al. 2002. Front 0 is the nondominated set; front k is nondominated
// after removing fronts < k.
std::vector<std::vector<std::size_t>> fast_nondominated_sort(
    std::span<const ObjectivePair> points);

// Crowding distance within one nondominated front; boundary members get
// +infinity, interior members the normalized neighbor-gap sum per objective.
std::vector<double> crowding_distance(std::span<const ObjectivePair> front);

struct Selection {
  std::vector<std::size_t> chosen;  // indices into the input pool
  std::vector<double> crowding;     // parallel to chosen
};

// NSGA-II survivor selection: deduplicate in objective space, fill whole
// fronts in rank order, split the last front by crowding distance descending.
Selection select_elites(std::span<const ObjectivePair> pool, std::size_t capacity);

// Score of a bred solution against the current frontier, checked in order:
// dominates all, dominates some, mutually nondominated, dominated.
double score_offspring(const ObjectivePair& offspring, std::span<const ObjectivePair> frontier);

// Acceptance filter restricting offspring to the nondominated region of the
// frontier (the open boxes between adjacent frontier points and beyond its
// extremes).
bool box_accept(const ObjectivePair& offspring, std::span<const ObjectivePair> frontier);

// Score and weight bookkeeping for the destroy/repair operator pairs, with a
// recency-weighted update: w <- (1 - lambda) w + lambda * score_fraction.
struct AdaptiveLayer {
  static constexpr double kScoreDominatesAll = 30.0;
  static constexpr double kScoreDominatesSome = 20.0;
  static constexpr double kScoreOnFrontier = 10.0;
  static constexpr double kScoreDominated = 0.0;

  double lambda = 0.5;
  std::array<double, 4> destroy_weights{0.25, 0.25, 0.25, 0.25};
  std::array<double, 4> repair_weights{0.25, 0.25, 0.25, 0.25};
  std::array<double, 4> destroy_scores{};
  std::array<double, 4> repair_scores{};

  void credit(DestroyOp d, RepairOp r, double score);
  // Applies the weight update and resets scores. A zero score total leaves the
  // weights unchanged.
  void update();
};

// Utilization rates: weights normalized to a probability distribution.
std::array<double, 4> utilization(const std::array<double, 4>& weights);

// Index drawn proportionally to weight; uniform when all weights are zero.
std::size_t roulette_select(const std::array<double, 4>& weights, Rng& rng);

struct SolverParams {
  int ns = 100;
  int na = 100;
  int max_iter = 200;
  double rs = 0.2;          // target skip rate during initialization
  double taboo_rate = 0.2;  // taboo bank capacity as a fraction of all targets
  double lambda = 0.5;
  PartitionMode partition = PartitionMode::Envelope;
  std::uint64_t seed = 1;
  // Energy/quality constants; a zero normalizer is computed from the instance.
  ObjectiveParams objectives;
};

struct ArchiveMember {
  Schedule schedule;
  double crowding = 0.0;
};

// Elitist survivor set of capacity ns + na (may span several fronts when the
// frontier is small).
struct ParetoArchive {
  std::vector<ArchiveMember> members;
};

Front extract_front(const ParetoArchive& archive, ObjectivePair reference = {1.0, 1.0});

struct IterationRecord {
  int iter = 0;
  double hv = 0.0;  // hypervolume of the frontier after survivor selection
  std::array<double, 4> weights_destroy{};
  std::array<double, 4> weights_repair{};
  std::size_t archive_size = 0;
};

struct RunTrace {
  std::vector<IterationRecord> iterations;
  std::size_t init_solutions = 0;
  std::size_t init_attempts = 0;
};

struct RunResult {
  ParetoArchive archive;
  RunTrace trace;
};

// Builds the candidate windows for the mode and precomputes congestion; must
// run once before any solver on this instance.
void prepare_instance(Instance& instance, PartitionMode mode, const ObjectiveParams& params);

// Adaptive large neighborhood search with NSGA-II survivor selection.
RunResult run_alns_nsga2(const Instance& instance, const SolverParams& params);

// Control variant: survivors kept uniformly at random instead of by rank.
RunResult run_alns_rsm(const Instance& instance, const SolverParams& params);

// Baseline: differential evolution (rand/1/bin) over a real-valued genome
// decoded through the same constrained placement rules, with NSGA-II
// selection.
RunResult run_hcbmde_lite(const Instance& instance, const SolverParams& params);

void write_trace_jsonl(std::ostream& out, const RunTrace& trace);
RunTrace read_trace_jsonl(std::istream& in);

}  // namespace mosp
