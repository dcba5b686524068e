#include <cmath>

#include "doctest.h"
#include "mosp/feasibility.hpp"
#include "mosp/heuristics.hpp"
#include "mosp/objectives.hpp"
#include "support.hpp"

using namespace mosp;
using namespace mosp::test;

TEST_CASE("instant quality formula") {
  CHECK(instant_quality(0.0, 0.0) == 1.0);
  CHECK(instant_quality(45.0, 0.0) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(instant_quality(45.0, 45.0) == doctest::Approx(0.25).epsilon(1e-12));
  CHECK(instant_quality(90.0, 0.0) == 0.0);
  CHECK_THROWS_AS(instant_quality(91.0, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(instant_quality(0.0, -95.0), std::invalid_argument);
}

TEST_CASE("instant quality peaks only at nadir") {
  Rng rng(3);
  for (int i = 0; i < 500; ++i) {
    const double p = rng.uniform(-90.0, 90.0);
    const double r = rng.uniform(-90.0, 90.0);
    const double q = instant_quality(p, r);
    CHECK(q >= 0.0);
    CHECK(q <= 1.0);
    if (std::abs(p) > 1e-6 || std::abs(r) > 1e-6) CHECK(q < 1.0);
  }
}

namespace {

// Single-strip passive window instantiated at an explicit begin moment; the
// held attitude makes the expected quality exact.
WindowEvaluation passive_at(const GroundTarget& target, double begin_s,
                            const ObjectiveParams& params) {
  const auto tmpl =
      build_observation_window(target, ObservationWay::Passive, 0.0, 0, PseudoOrbitModel{}, {});
  REQUIRE(tmpl.has_value());
  return evaluate_window(target, PseudoOrbitModel{}, *tmpl, begin_s, params);
}

}  // namespace

TEST_CASE("cumulative quality of held-attitude windows equals the instant value") {
  ObjectiveParams params;
  const double mid = 40000.0;

  SUBCASE("nadir, zero roll") {
    const auto target = make_pass_target(0, 5, mid, 0.0, square_km(10.0));
    const auto ev = passive_at(target, mid, params);
    CHECK(ev.quality == doctest::Approx(1.0).epsilon(1e-12));
  }
  SUBCASE("pitch held at 45 degrees") {
    const auto target = make_target(0, 5, mid - 100.0, mid, mid, 0.0, square_km(10.0));
    const auto ev = passive_at(target, mid - 631.0 / 7.0, params);
    CHECK(ev.window.begin_attitude.pitch_deg == doctest::Approx(45.0).epsilon(1e-12));
    CHECK(ev.quality == doctest::Approx(0.5).epsilon(1e-9));
  }
  SUBCASE("roll at 45 degrees") {
    const auto target = make_pass_target(0, 5, mid, 45.0, square_km(10.0));
    const auto ev = passive_at(target, mid, params);
    CHECK(ev.quality == doctest::Approx(0.5).epsilon(1e-9));  // (1)(1 - 45/90)
  }
}

TEST_CASE("sampling refinement changes quality by less than 1e-3") {
  const auto target = make_pass_target(0, 5, 40000.0, 20.0, square_km(20.0));
  const auto tmpl =
      build_observation_window(target, ObservationWay::Active, 90.0, 1, PseudoOrbitModel{}, {});
  REQUIRE(tmpl.has_value());
  ObjectiveParams coarse;
  ObjectiveParams fine;
  fine.quality_sample_step_s = 0.1;
  for (double begin : {target.vtw_begin_s, target.pass_midpoint_s - 10.0,
                       target.vtw_end_s - tmpl->span_s()}) {
    const double qc = evaluate_window(target, PseudoOrbitModel{}, *tmpl, begin, coarse).quality;
    const double qf = evaluate_window(target, PseudoOrbitModel{}, *tmpl, begin, fine).quality;
    CHECK(std::abs(qc - qf) < 1e-3);
  }
}

TEST_CASE("maximum energy normalizer") {
  SUBCASE("single target with a 100 s window") {
    auto t = make_target(0, 5, 1000.0, 1100.0, 1050.0, 0.0, square_km(10.0));
    const Instance inst = make_instance({t});
    ObjectiveParams params;
    CHECK(compute_mec(inst, params) == doctest::Approx(65.0).epsilon(1e-12));
  }
  SUBCASE("scales linearly with the target count") {
    auto t0 = make_target(0, 5, 1000.0, 1100.0, 1050.0, 0.0, square_km(10.0));
    auto t1 = make_target(1, 5, 2000.0, 2080.0, 2040.0, 0.0, square_km(10.0));
    auto t2 = make_target(2, 5, 3000.0, 3100.0, 3050.0, 0.0, square_km(10.0));
    ObjectiveParams params;
    const double one = compute_mec(make_instance({t0}), params);
    const double three = compute_mec(make_instance({t0, t1, t2}), params);
    CHECK(three == doctest::Approx(3.0 * one).epsilon(1e-12));
  }
}

TEST_CASE("energy of a single passive one-strip observation") {
  auto t = make_pass_target(0, 5, 40000.0, 0.0, square_km(10.0));
  Instance inst = prepared_instance({t}, PartitionMode::ATO);
  const ObjectiveParams params = params_for(inst);
  REQUIRE(inst.targets[0].candidate_ows.size() == 1);
  REQUIRE(inst.targets[0].candidate_ows[0].strips.size() == 1);

  Schedule s;
  s.assignments.push_back({0, 0, ObservationWay::Passive, 40000.0});
  const EnergyBreakdown e = energy(s, inst, params);
  CHECK(e.ot_p_s == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(e.ot_a_s == 0.0);
  CHECK(e.at_in_s == 0.0);
  CHECK(e.at_out_s == 0.0);
  CHECK(e.total_W_s == doctest::Approx(0.4).epsilon(1e-12));
}

TEST_CASE("energy of one active two-strip observation") {
  // 20x20 km along dos 0: two strips, both floored to 5 s, adjacent roll step
  // under 2 degrees, so the inter-strip slew sits on the flat minimum branch.
  auto t = make_pass_target(0, 5, 40000.0, 0.0, square_km(20.0));
  Instance inst = prepared_instance({t}, PartitionMode::Complete);
  const ObjectiveParams params = params_for(inst);
  const ObservationWindow* active = nullptr;
  for (const auto& ow : inst.targets[0].candidate_ows) {
    if (ow.way == ObservationWay::Active && ow.dos_deg == 0.0) active = &ow;
  }
  REQUIRE(active != nullptr);
  REQUIRE(active->strips.size() == 2);

  Schedule s;
  s.assignments.push_back({0, active->id, ObservationWay::Active, 40000.0 - 20.0});
  const EnergyBreakdown e = energy(s, inst, params);
  CHECK(e.ot_a_s == doctest::Approx(10.0).epsilon(1e-12));
  CHECK(e.at_in_s == doctest::Approx(35.0 / 3.0).epsilon(1e-12));
  CHECK(e.total_W_s == doctest::Approx(0.1 * 10.0 + 0.05 * 35.0 / 3.0).epsilon(1e-12));
}

TEST_CASE("loss rate evaluations") {
  const double mid = 40000.0;
  SUBCASE("empty schedule loses everything and spends nothing") {
    auto t = make_pass_target(0, 5, mid, 0.0, square_km(10.0));
    Instance inst = prepared_instance({t});
    const ObjectiveParams params = params_for(inst);
    Schedule s;
    recompute_objectives(s, inst, params);
    CHECK(s.f1 == 1.0);
    CHECK(s.f2 == 0.0);
  }
  SUBCASE("one of two equal-priority targets at quality one half") {
    auto a = make_target(0, 5, mid - 100.0, mid, mid, 0.0, square_km(10.0));
    auto b = make_pass_target(1, 5, mid + 5000.0, 0.0, square_km(10.0));
    Instance inst = prepared_instance({a, b}, PartitionMode::ATO);
    const ObjectiveParams params = params_for(inst);
    Schedule s;
    s.assignments.push_back({0, 0, ObservationWay::Passive, mid - 631.0 / 7.0});
    CHECK(loss_rate(s, inst, params) == doctest::Approx(0.75).epsilon(1e-9));
  }
  SUBCASE("all targets at quality one gives zero loss") {
    auto a = make_pass_target(0, 3, mid, 0.0, square_km(10.0));
    auto b = make_pass_target(1, 9, mid + 5000.0, 0.0, square_km(10.0));
    Instance inst = prepared_instance({a, b}, PartitionMode::ATO);
    const ObjectiveParams params = params_for(inst);
    Schedule s;
    s.assignments.push_back({0, 0, ObservationWay::Passive, mid});
    s.assignments.push_back({1, 0, ObservationWay::Passive, mid + 5000.0});
    CHECK(loss_rate(s, inst, params) == doctest::Approx(0.0).epsilon(1e-12));
  }
}

TEST_CASE("recompute is idempotent and errors on unknown windows") {
  auto t = make_pass_target(0, 5, 40000.0, 8.0, square_km(20.0));
  Instance inst = prepared_instance({t});
  const ObjectiveParams params = params_for(inst);
  Schedule s;
  s.assignments.push_back({0, 1, ObservationWay::Active, 40000.0 - 30.0});
  recompute_objectives(s, inst, params);
  Schedule again = s;
  recompute_objectives(again, inst, params);
  CHECK(again.f1 == s.f1);
  CHECK(again.f2 == s.f2);
  CHECK(again.energy == s.energy);

  Schedule bad;
  bad.assignments.push_back({0, 99, ObservationWay::Active, 40000.0});
  CHECK_THROWS_AS(recompute_objectives(bad, inst, params), std::out_of_range);
}

TEST_CASE("energy requires sorted assignments") {
  auto a = make_pass_target(0, 5, 40000.0, 0.0, square_km(10.0));
  auto b = make_pass_target(1, 5, 47000.0, 0.0, square_km(10.0));
  Instance inst = prepared_instance({a, b}, PartitionMode::ATO);
  const ObjectiveParams params = params_for(inst);
  Schedule s;
  s.assignments.push_back({1, 0, ObservationWay::Passive, 47000.0});
  s.assignments.push_back({0, 0, ObservationWay::Passive, 40000.0});
  CHECK_THROWS_AS(energy(s, inst, params), std::invalid_argument);
}

TEST_CASE("energy splits additively at adjacency boundaries") {
  Instance inst = generate_instance(default_spec(Distribution::CD, 30, 21));
  build_all_partition_sets(inst, PartitionMode::Complete);
  const ObjectiveParams params = params_for(inst);
  Rng rng(5);
  auto igt = select_targets(inst, 0.0, rng);
  const SolutionState sol =
      greedy_construct(igt, inst, PartitionMode::Complete, params, rng);
  const Schedule full = to_schedule(sol, inst, params);
  REQUIRE(full.assignments.size() >= 4);

  for (std::size_t split : {std::size_t{1}, full.assignments.size() / 2}) {
    Schedule prefix;
    prefix.assignments.assign(full.assignments.begin(),
                              full.assignments.begin() + static_cast<std::ptrdiff_t>(split));
    Schedule suffix;
    suffix.assignments.assign(full.assignments.begin() + static_cast<std::ptrdiff_t>(split),
                              full.assignments.end());
    const double e_full = energy(full, inst, params).total_W_s;
    const double e_pre = energy(prefix, inst, params).total_W_s;
    const double e_suf = energy(suffix, inst, params).total_W_s;

    // Boundary slew between the two halves, recomputed from the windows.
    const auto& last = prefix.assignments.back();
    const auto& first = suffix.assignments.front();
    const auto& t_last = inst.targets[static_cast<std::size_t>(last.target_index)];
    const auto& t_first = inst.targets[static_cast<std::size_t>(first.target_index)];
    const ObservationWindow* tmpl_last = nullptr;
    const ObservationWindow* tmpl_first = nullptr;
    for (const auto& ow : t_last.candidate_ows) {
      if (ow.id == last.ow_id) tmpl_last = &ow;
    }
    for (const auto& ow : t_first.candidate_ows) {
      if (ow.id == first.ow_id) tmpl_first = &ow;
    }
    REQUIRE(tmpl_last != nullptr);
    REQUIRE(tmpl_first != nullptr);
    const auto w_last = instantiate_window(t_last, inst.orbit, *tmpl_last, last.begin_s);
    const auto w_first = instantiate_window(t_first, inst.orbit, *tmpl_first, first.begin_s);
    const double boundary = params.slew_rate_W * transition_time(attitude_delta_deg(
                                w_last.end_attitude, w_first.begin_attitude));
    CHECK(e_full == doctest::Approx(e_pre + e_suf + boundary).epsilon(1e-9));
  }
}

TEST_CASE("normalizer dominates the energy of random feasible schedules") {
  Instance inst = generate_instance(default_spec(Distribution::CD, 40, 33));
  build_all_partition_sets(inst, PartitionMode::Complete);
  const ObjectiveParams params = params_for(inst);
  for (int trial = 0; trial < 200; ++trial) {
    Rng rng(mix_seed(1234, static_cast<std::uint64_t>(trial)));
    auto igt = select_targets(inst, 0.2, rng);
    const SolutionState sol =
        greedy_construct(std::move(igt), inst, PartitionMode::Complete, params, rng);
    const Schedule s = to_schedule(sol, inst, params);
    CHECK(s.energy.total_W_s <= params.max_energy_W_s);
    CHECK(s.f2 >= 0.0);
    CHECK(s.f2 <= 1.0);
    CHECK(s.f1 >= 0.0);
    CHECK(s.f1 <= 1.0);
  }
}
