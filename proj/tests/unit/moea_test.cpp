#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include "doctest.h"
#include "mosp/feasibility.hpp"
#include "mosp/json_io.hpp"
#include "mosp/moea.hpp"
#include "support.hpp"

using namespace mosp;
using namespace mosp::test;

namespace {

// Quadratic-time peeling oracle: repeatedly take the set of points not
// dominated by any remaining point.
std::vector<std::vector<std::size_t>> brute_force_fronts(const std::vector<ObjectivePair>& pts) {
  std::vector<std::vector<std::size_t>> fronts;
  std::vector<char> assigned(pts.size(), 0);
  std::size_t left = pts.size();
  while (left > 0) {
    std::vector<std::size_t> front;
    for (std::size_t i = 0; i < pts.size(); ++i) {
      if (assigned[i]) continue;
      bool dominated = false;
      for (std::size_t j = 0; j < pts.size() && !dominated; ++j) {
        if (!assigned[j] && j != i && dominates(pts[j], pts[i])) dominated = true;
      }
      if (!dominated) front.push_back(i);
    }
    for (const std::size_t i : front) assigned[i] = 1;
    left -= front.size();
    fronts.push_back(std::move(front));
  }
  return fronts;
}

std::vector<ObjectivePair> random_points(Rng& rng, std::size_t n) {
  std::vector<ObjectivePair> pts;
  pts.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    pts.push_back({rng.uniform(), rng.uniform()});
  }
  // Occasional exact duplicates exercise the equal-vector paths.
  if (n > 4) {
    pts[n - 1] = pts[0];
    pts[n - 2] = pts[1];
  }
  return pts;
}

Instance small_instance(int n, std::uint64_t seed, PartitionMode mode) {
  Instance inst = generate_instance(default_spec(Distribution::CD, n, seed));
  prepare_instance(inst, mode, params_for(inst));
  return inst;
}

}  // namespace

TEST_CASE("dominance relation") {
  CHECK(dominates({0.2, 0.3}, {0.4, 0.5}));
  CHECK(dominates({0.2, 0.5}, {0.2, 0.6}));
  CHECK(!dominates({0.2, 0.5}, {0.4, 0.3}));
  CHECK(!dominates({0.4, 0.3}, {0.2, 0.5}));
  CHECK(!dominates({0.3, 0.3}, {0.3, 0.3}));
}

TEST_CASE("fast nondominated sort agrees with the peeling oracle") {
  for (int trial = 0; trial < 100; ++trial) {
    Rng rng(mix_seed(4242, static_cast<std::uint64_t>(trial)));
    const auto pts = random_points(rng, 1 + rng.uniform_index(64));
    const auto fast = fast_nondominated_sort(pts);
    const auto brute = brute_force_fronts(pts);
    REQUIRE(fast.size() == brute.size());
    std::size_t total = 0;
    for (std::size_t f = 0; f < fast.size(); ++f) {
      auto a = fast[f];
      auto b = brute[f];
      std::sort(a.begin(), a.end());
      std::sort(b.begin(), b.end());
      CHECK(a == b);
      total += a.size();
    }
    CHECK(total == pts.size());
  }
}

TEST_CASE("degenerate fronts") {
  // Mutually incomparable points form a single front.
  std::vector<ObjectivePair> anti{{0.1, 0.9}, {0.2, 0.8}, {0.3, 0.7}, {0.4, 0.6}};
  CHECK(fast_nondominated_sort(anti).size() == 1);
  // A strict chain gives singleton fronts.
  std::vector<ObjectivePair> chain{{0.1, 0.1}, {0.2, 0.2}, {0.3, 0.3}, {0.4, 0.4}};
  const auto fronts = fast_nondominated_sort(chain);
  REQUIRE(fronts.size() == 4);
  for (const auto& f : fronts) CHECK(f.size() == 1);
}

TEST_CASE("crowding distance") {
  SUBCASE("a front of two is all boundary") {
    std::vector<ObjectivePair> front{{0.1, 0.9}, {0.9, 0.1}};
    const auto d = crowding_distance(front);
    CHECK(std::isinf(d[0]));
    CHECK(std::isinf(d[1]));
  }
  SUBCASE("three equally spaced points") {
    std::vector<ObjectivePair> front{{0.0, 1.0}, {0.5, 0.5}, {1.0, 0.0}};
    const auto d = crowding_distance(front);
    CHECK(std::isinf(d[0]));
    CHECK(std::isinf(d[2]));
    CHECK(d[1] == doctest::Approx(2.0).epsilon(1e-12));  // one full gap per objective
  }
  SUBCASE("permutation invariant") {
    std::vector<ObjectivePair> front{{0.1, 0.8}, {0.4, 0.5}, {0.2, 0.7}, {0.8, 0.1}};
    const auto d = crowding_distance(front);
    std::vector<ObjectivePair> shuffled{front[2], front[0], front[3], front[1]};
    const auto ds = crowding_distance(shuffled);
    CHECK(d[2] == ds[0]);
    CHECK(d[0] == ds[1]);
    CHECK(d[3] == ds[2]);
    CHECK(d[1] == ds[3]);
  }
}

TEST_CASE("elite selection") {
  SUBCASE("small pools survive whole") {
    std::vector<ObjectivePair> pool{{0.3, 0.3}, {0.1, 0.9}};
    const auto sel = select_elites(pool, 10);
    CHECK(sel.chosen.size() == 2);
  }
  SUBCASE("one dominant plus dominated fill by crowding") {
    std::vector<ObjectivePair> pool{{0.6, 0.6}, {0.1, 0.1}, {0.2, 0.9}, {0.9, 0.2}};
    const auto sel = select_elites(pool, 2);
    REQUIRE(sel.chosen.size() == 2);
    CHECK(sel.chosen[0] == 1);  // the dominant point
    // Second front: {0.6,0.6}, {0.2,0.9}, {0.9,0.2}; boundaries win by crowding.
    CHECK((sel.chosen[1] == 2 || sel.chosen[1] == 3));
  }
  SUBCASE("a large frontier is truncated but stays nondominated") {
    std::vector<ObjectivePair> pool;
    for (int i = 0; i < 20; ++i) {
      pool.push_back({i / 19.0, 1.0 - i / 19.0});
    }
    const auto sel = select_elites(pool, 8);
    REQUIRE(sel.chosen.size() == 8);
    for (const std::size_t a : sel.chosen) {
      for (const std::size_t b : sel.chosen) {
        if (a != b) CHECK(!dominates(pool[a], pool[b]));
      }
    }
  }
  SUBCASE("objective-space duplicates are removed first") {
    std::vector<ObjectivePair> pool{{0.2, 0.8}, {0.2, 0.8}, {0.8, 0.2}};
    const auto sel = select_elites(pool, 3);
    CHECK(sel.chosen.size() == 2);
  }
}

TEST_CASE("offspring scoring precedence") {
  std::vector<ObjectivePair> frontier{{0.4, 0.6}, {0.6, 0.4}};
  CHECK(score_offspring({0.0, 0.0}, frontier) == AdaptiveLayer::kScoreDominatesAll);
  CHECK(score_offspring({0.3, 0.5}, frontier) == AdaptiveLayer::kScoreDominatesSome);
  CHECK(score_offspring({0.5, 0.5}, frontier) == AdaptiveLayer::kScoreOnFrontier);
  CHECK(score_offspring({0.4, 0.6}, frontier) == AdaptiveLayer::kScoreOnFrontier);
  CHECK(score_offspring({0.7, 0.7}, frontier) == AdaptiveLayer::kScoreDominated);
}

TEST_CASE("box acceptance") {
  std::vector<ObjectivePair> frontier{{0.4, 0.6}, {0.6, 0.4}};
  CHECK(box_accept({0.3, 0.5}, frontier));   // dominates a member
  CHECK(box_accept({0.45, 0.55}, frontier)); // inside an open box
  CHECK(box_accept({0.1, 0.9}, frontier));   // beyond the extreme
  CHECK(!box_accept({0.7, 0.7}, frontier));  // dominated
  CHECK(box_accept({0.0, 0.0}, {}));         // empty frontier accepts all
}

TEST_CASE("adaptive layer updates") {
  SUBCASE("lambda zero freezes weights") {
    AdaptiveLayer layer;
    layer.lambda = 0.0;
    layer.credit(DestroyOp::Quality, RepairOp::Priority, 30.0);
    layer.update();
    CHECK(layer.destroy_weights == std::array<double, 4>{0.25, 0.25, 0.25, 0.25});
    CHECK(layer.repair_weights == std::array<double, 4>{0.25, 0.25, 0.25, 0.25});
  }
  SUBCASE("lambda one keeps only the score fractions") {
    AdaptiveLayer layer;
    layer.lambda = 1.0;
    layer.destroy_scores = {30.0, 20.0, 0.0, 10.0};
    layer.repair_scores = {0.0, 60.0, 0.0, 0.0};
    layer.update();
    CHECK(layer.destroy_weights[0] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(layer.destroy_weights[1] == doctest::Approx(20.0 / 60.0).epsilon(1e-12));
    CHECK(layer.destroy_weights[2] == 0.0);
    CHECK(layer.destroy_weights[3] == doctest::Approx(10.0 / 60.0).epsilon(1e-12));
    CHECK(layer.repair_weights == std::array<double, 4>{0.0, 1.0, 0.0, 0.0});
  }
  SUBCASE("half-and-half single step") {
    AdaptiveLayer layer;
    layer.lambda = 0.5;
    layer.destroy_scores = {30.0, 0.0, 0.0, 0.0};
    layer.update();
    CHECK(layer.destroy_weights[0] == doctest::Approx(0.625).epsilon(1e-12));
    CHECK(layer.destroy_weights[1] == doctest::Approx(0.125).epsilon(1e-12));
  }
  SUBCASE("zero total score leaves weights unchanged") {
    AdaptiveLayer layer;
    layer.destroy_weights = {0.7, 0.1, 0.1, 0.1};
    layer.update();
    CHECK(layer.destroy_weights == std::array<double, 4>{0.7, 0.1, 0.1, 0.1});
  }
  SUBCASE("scores reset after the update") {
    AdaptiveLayer layer;
    layer.credit(DestroyOp::Random, RepairOp::Random, 10.0);
    layer.update();
    CHECK(layer.destroy_scores == std::array<double, 4>{});
  }
  SUBCASE("weight sums stay one so utilization is a distribution") {
    AdaptiveLayer layer;
    Rng rng(6);
    for (int k = 0; k < 100; ++k) {
      layer.credit(static_cast<DestroyOp>(rng.uniform_index(4)),
                   static_cast<RepairOp>(rng.uniform_index(4)),
                   10.0 * static_cast<double>(rng.uniform_index(4)));
      layer.update();
      const auto r = utilization(layer.destroy_weights);
      CHECK(std::abs(r[0] + r[1] + r[2] + r[3] - 1.0) < 1e-12);
    }
  }
}

TEST_CASE("roulette selection") {
  SUBCASE("a single nonzero weight always wins") {
    Rng rng(8);
    for (int k = 0; k < 100; ++k) {
      CHECK(roulette_select({0.0, 0.0, 3.0, 0.0}, rng) == 2);
    }
  }
  SUBCASE("equal weights draw uniformly") {
    Rng rng(99);
    std::array<int, 4> counts{};
    const int draws = 10000;
    for (int k = 0; k < draws; ++k) {
      ++counts[roulette_select({0.25, 0.25, 0.25, 0.25}, rng)];
    }
    const double sigma = std::sqrt(draws * 0.25 * 0.75);
    for (const int c : counts) {
      CHECK(std::abs(c - draws / 4.0) < 3.0 * sigma);
    }
  }
  SUBCASE("all-zero weights fall back to uniform") {
    Rng rng(2);
    std::set<std::size_t> seen;
    for (int k = 0; k < 200; ++k) seen.insert(roulette_select({0, 0, 0, 0}, rng));
    CHECK(seen.size() == 4);
  }
}

TEST_CASE("solver runs are deterministic and well-formed") {
  const Instance inst = small_instance(15, 77, PartitionMode::Envelope);
  SolverParams params;
  params.ns = 12;
  params.na = 12;
  params.max_iter = 10;
  params.seed = 5;

  const RunResult a = run_alns_nsga2(inst, params);
  const RunResult b = run_alns_nsga2(inst, params);
  REQUIRE(a.archive.members.size() == b.archive.members.size());
  for (std::size_t i = 0; i < a.archive.members.size(); ++i) {
    CHECK(a.archive.members[i].schedule == b.archive.members[i].schedule);
  }
  REQUIRE(a.trace.iterations.size() == 10);
  for (std::size_t i = 0; i < 10; ++i) {
    CHECK(a.trace.iterations[i].hv == b.trace.iterations[i].hv);
  }

  const ObjectiveParams objp = params_for(inst);
  for (const auto& m : a.archive.members) {
    CHECK(check_schedule(m.schedule, inst, objp).empty());
    CHECK(m.schedule.f1 >= 0.0);
    CHECK(m.schedule.f1 <= 1.0);
    CHECK(m.schedule.f2 >= 0.0);
    CHECK(m.schedule.f2 <= 1.0);
    // Cached objectives cohere with a fresh evaluation.
    Schedule fresh = m.schedule;
    recompute_objectives(fresh, inst, objp);
    CHECK(std::abs(fresh.f1 - m.schedule.f1) < 1e-9);
    CHECK(std::abs(fresh.f2 - m.schedule.f2) < 1e-9);
  }
}

TEST_CASE("zero iterations return the initial elites") {
  const Instance inst = small_instance(10, 3, PartitionMode::Envelope);
  SolverParams params;
  params.ns = 8;
  params.na = 8;
  params.max_iter = 0;
  const RunResult r = run_alns_nsga2(inst, params);
  CHECK(r.trace.iterations.empty());
  CHECK(!r.archive.members.empty());
  CHECK(r.trace.init_solutions >= r.archive.members.size());
}

TEST_CASE("lambda zero keeps the weight vector constant over a run") {
  const Instance inst = small_instance(12, 9, PartitionMode::Envelope);
  SolverParams params;
  params.ns = 10;
  params.na = 10;
  params.max_iter = 25;
  params.lambda = 0.0;
  const RunResult r = run_alns_nsga2(inst, params);
  for (const auto& rec : r.trace.iterations) {
    CHECK(rec.weights_destroy == std::array<double, 4>{0.25, 0.25, 0.25, 0.25});
    CHECK(rec.weights_repair == std::array<double, 4>{0.25, 0.25, 0.25, 0.25});
  }
}

TEST_CASE("frontier hypervolume never regresses under elitist selection") {
  const Instance inst = small_instance(20, 31, PartitionMode::Envelope);
  SolverParams params;
  params.ns = 15;
  params.na = 15;
  params.max_iter = 30;
  params.seed = 11;
  const RunResult r = run_alns_nsga2(inst, params);
  double prev = 0.0;
  for (const auto& rec : r.trace.iterations) {
    CHECK(rec.hv >= prev - 1e-12);
    prev = rec.hv;
  }
}

TEST_CASE("random survivor control run") {
  const Instance inst = small_instance(12, 13, PartitionMode::Envelope);
  SolverParams params;
  params.ns = 10;
  params.na = 10;
  params.max_iter = 8;
  const RunResult a = run_alns_rsm(inst, params);
  const RunResult b = run_alns_rsm(inst, params);
  REQUIRE(a.archive.members.size() == b.archive.members.size());
  const ObjectiveParams objp = params_for(inst);
  for (const auto& m : a.archive.members) {
    CHECK(check_schedule(m.schedule, inst, objp).empty());
  }
  const Front front = extract_front(a.archive);
  for (std::size_t i = 0; i + 1 < front.points.size(); ++i) {
    CHECK(front.points[i][0] < front.points[i + 1][0]);
    CHECK(front.points[i][1] > front.points[i + 1][1]);
  }
}

TEST_CASE("differential evolution baseline") {
  const Instance inst = small_instance(12, 19, PartitionMode::Envelope);
  SolverParams params;
  params.ns = 10;
  params.na = 10;
  params.max_iter = 6;
  const RunResult a = run_hcbmde_lite(inst, params);
  const RunResult b = run_hcbmde_lite(inst, params);
  REQUIRE(a.archive.members.size() == b.archive.members.size());
  for (std::size_t i = 0; i < a.archive.members.size(); ++i) {
    CHECK(a.archive.members[i].schedule == b.archive.members[i].schedule);
  }
  const ObjectiveParams objp = params_for(inst);
  for (const auto& m : a.archive.members) {
    CHECK(check_schedule(m.schedule, inst, objp).empty());
  }
}

TEST_CASE("trace round-trips through jsonl") {
  RunTrace trace;
  for (int i = 1; i <= 3; ++i) {
    IterationRecord rec;
    rec.iter = i;
    rec.hv = 0.001 * i;
    rec.weights_destroy = {0.1, 0.2, 0.3, 0.4};
    rec.weights_repair = {0.4, 0.3, 0.2, 0.1};
    rec.archive_size = static_cast<std::size_t>(10 * i);
    trace.iterations.push_back(rec);
  }
  std::stringstream ss;
  write_trace_jsonl(ss, trace);
  const RunTrace back = read_trace_jsonl(ss);
  REQUIRE(back.iterations.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back.iterations[i].iter == trace.iterations[i].iter);
    CHECK(back.iterations[i].hv == trace.iterations[i].hv);
    CHECK(back.iterations[i].weights_destroy == trace.iterations[i].weights_destroy);
    CHECK(back.iterations[i].archive_size == trace.iterations[i].archive_size);
  }
}
