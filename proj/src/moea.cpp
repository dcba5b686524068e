#include "mosp/moea.hpp"

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

#include "json.hpp"
#include "mosp/feasibility.hpp"

namespace mosp {

bool dominates(const ObjectivePair& a, const ObjectivePair& b) {
  return a[0] <= b[0] && a[1] <= b[1] && (a[0] < b[0] || a[1] < b[1]);
}

std::vector<std::vector<std::size_t>> fast_nondominated_sort(
    std::span<const ObjectivePair> points) {
  const std::size_t n = points.size();
  std::vector<std::vector<std::size_t>> dominated_by(n);
  std::vector<std::size_t> domination_count(n, 0);
  std::vector<std::vector<std::size_t>> fronts;

  std::vector<std::size_t> current;
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t q = 0; q < n; ++q) {
      if (p == q) continue;
      if (dominates(points[p], points[q])) {
        dominated_by[p].push_back(q);
      } else if (dominates(points[q], points[p])) {
        ++domination_count[p];
      }
    }
    if (domination_count[p] == 0) current.push_back(p);
  }
  while (!current.empty()) {
    fronts.push_back(current);
    std::vector<std::size_t> next;
    for (const std::size_t p : current) {
      for (const std::size_t q : dominated_by[p]) {
        if (--domination_count[q] == 0) next.push_back(q);
      }
    }
    std::sort(next.begin(), next.end());
    current = std::move(next);
  }
  return fronts;
}

std::vector<double> crowding_distance(std::span<const ObjectivePair> front) {
  const std::size_t n = front.size();
  std::vector<double> dist(n, 0.0);
  if (n == 0) return dist;
  constexpr double kInf = std::numeric_limits<double>::infinity();
  for (int m = 0; m < 2; ++m) {
    std::vector<std::size_t> idx(n);
    for (std::size_t i = 0; i < n; ++i) idx[i] = i;
    std::stable_sort(idx.begin(), idx.end(),
                     [&](std::size_t a, std::size_t b) { return front[a][m] < front[b][m]; });
    dist[idx.front()] = kInf;
    dist[idx.back()] = kInf;
    const double range = front[idx.back()][m] - front[idx.front()][m];
    if (range <= 0.0) continue;
    for (std::size_t i = 1; i + 1 < n; ++i) {
      if (dist[idx[i]] == kInf) continue;
      dist[idx[i]] += (front[idx[i + 1]][m] - front[idx[i - 1]][m]) / range;
    }
  }
  return dist;
}

namespace {

constexpr double kObjectiveEps = 1e-9;

bool same_objectives(const ObjectivePair& a, const ObjectivePair& b) {
  return std::abs(a[0] - b[0]) <= kObjectiveEps && std::abs(a[1] - b[1]) <= kObjectiveEps;
}

std::vector<std::size_t> dedup_objectives(std::span<const ObjectivePair> pool) {
  std::vector<std::size_t> kept;
  for (std::size_t i = 0; i < pool.size(); ++i) {
    bool dup = false;
    for (const std::size_t j : kept) {
      if (same_objectives(pool[i], pool[j])) {
        dup = true;
        break;
      }
    }
    if (!dup) kept.push_back(i);
  }
  return kept;
}

}  // namespace

Selection select_elites(std::span<const ObjectivePair> pool, std::size_t capacity) {
  Selection sel;
  if (pool.empty() || capacity == 0) return sel;
  const std::vector<std::size_t> kept = dedup_objectives(pool);
  std::vector<ObjectivePair> objs;
  objs.reserve(kept.size());
  for (const std::size_t i : kept) objs.push_back(pool[i]);

  const auto fronts = fast_nondominated_sort(objs);
  for (const auto& front : fronts) {
    std::vector<ObjectivePair> front_objs;
    front_objs.reserve(front.size());
    for (const std::size_t i : front) front_objs.push_back(objs[i]);
    const std::vector<double> crowd = crowding_distance(front_objs);

    if (sel.chosen.size() + front.size() <= capacity) {
      for (std::size_t k = 0; k < front.size(); ++k) {
        sel.chosen.push_back(kept[front[k]]);
        sel.crowding.push_back(crowd[k]);
      }
      if (sel.chosen.size() == capacity) break;
      continue;
    }
    // Split front: crowded members survive.
    std::vector<std::size_t> order(front.size());
    for (std::size_t k = 0; k < order.size(); ++k) order[k] = k;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return crowd[a] > crowd[b]; });
    for (const std::size_t k : order) {
      if (sel.chosen.size() == capacity) break;
      sel.chosen.push_back(kept[front[k]]);
      sel.crowding.push_back(crowd[k]);
    }
    break;
  }
  return sel;
}

double score_offspring(const ObjectivePair& offspring, std::span<const ObjectivePair> frontier) {
  if (frontier.empty()) return AdaptiveLayer::kScoreOnFrontier;
  bool dominates_all = true;
  bool dominates_some = false;
  bool dominated = false;
  for (const auto& m : frontier) {
    if (dominates(offspring, m)) {
      dominates_some = true;
    } else {
      dominates_all = false;
    }
    if (dominates(m, offspring)) dominated = true;
  }
  if (dominates_all) return AdaptiveLayer::kScoreDominatesAll;
  if (dominates_some) return AdaptiveLayer::kScoreDominatesSome;
  if (!dominated) return AdaptiveLayer::kScoreOnFrontier;
  return AdaptiveLayer::kScoreDominated;
}

bool box_accept(const ObjectivePair& offspring, std::span<const ObjectivePair> frontier) {
  return std::none_of(frontier.begin(), frontier.end(),
                      [&](const ObjectivePair& m) { return dominates(m, offspring); });
}

void AdaptiveLayer::credit(DestroyOp d, RepairOp r, double score) {
  destroy_scores[static_cast<std::size_t>(d)] += score;
  repair_scores[static_cast<std::size_t>(r)] += score;
}

void AdaptiveLayer::update() {
  const auto apply = [this](std::array<double, 4>& weights, std::array<double, 4>& scores) {
    double total = 0.0;
    for (const double s : scores) total += s;
    if (total > 0.0) {
      for (std::size_t i = 0; i < 4; ++i) {
        weights[i] = (1.0 - lambda) * weights[i] + lambda * scores[i] / total;
      }
    }
    scores.fill(0.0);
  };
  apply(destroy_weights, destroy_scores);
  apply(repair_weights, repair_scores);
}

std::array<double, 4> utilization(const std::array<double, 4>& weights) {
  double total = 0.0;
  for (const double w : weights) total += w;
  if (!(total > 0.0)) return {0.25, 0.25, 0.25, 0.25};
  std::array<double, 4> r;
  for (std::size_t i = 0; i < 4; ++i) r[i] = weights[i] / total;
  return r;
}

std::size_t roulette_select(const std::array<double, 4>& weights, Rng& rng) {
  double total = 0.0;
  for (const double w : weights) {
    if (w < 0.0) throw std::invalid_argument("roulette_select: negative weight");
    total += w;
  }
  if (!(total > 0.0)) return rng.uniform_index(4);
  const double u = rng.uniform() * total;
  double acc = 0.0;
  for (std::size_t i = 0; i < 4; ++i) {
    acc += weights[i];
    if (u < acc) return i;
  }
  return 3;
}

Front extract_front(const ParetoArchive& archive, ObjectivePair reference) {
  std::vector<ObjectivePair> points;
  points.reserve(archive.members.size());
  for (const auto& m : archive.members) points.push_back({m.schedule.f1, m.schedule.f2});
  return extract_front(points, reference);
}

void prepare_instance(Instance& instance, PartitionMode mode, const ObjectiveParams& params) {
  build_all_partition_sets(instance, mode);
  compute_all_congestion(instance, params);
}

namespace {

// Destroy/repair cycles per bred offspring; each cycle re-rolls placements,
// so a handful of box-filtered steps compound into a local search.
constexpr int kInnerCycles = 10;

struct Individual {
  SolutionState state;
  ObjectivePair objectives;
};

std::vector<ObjectivePair> objectives_of(const std::vector<Individual>& pop) {
  std::vector<ObjectivePair> out;
  out.reserve(pop.size());
  for (const auto& ind : pop) out.push_back(ind.objectives);
  return out;
}

std::vector<ObjectivePair> frontier_of(const std::vector<Individual>& pop) {
  const auto objs = objectives_of(pop);
  std::vector<ObjectivePair> frontier;
  const auto fronts = fast_nondominated_sort(objs);
  if (!fronts.empty()) {
    frontier.reserve(fronts[0].size());
    for (const std::size_t i : fronts[0]) frontier.push_back(objs[i]);
  }
  return frontier;
}

double frontier_hv(const std::vector<Individual>& pop) {
  return hypervolume(extract_front(objectives_of(pop)));
}

void require_prepared(const Instance& instance) {
  for (const auto& t : instance.targets) {
    if (!t.candidate_ows.empty()) return;
  }
  throw std::invalid_argument("solver: instance has no candidate windows; run prepare_instance");
}

// Shared initialization: randomized greedy constructions kept while their
// objective vectors are new, until the population target or the attempt cap.
std::vector<Individual> initialize_population(const Instance& instance,
                                              const SolverParams& params,
                                              const ObjectiveParams& objp, Rng& rng,
                                              RunTrace& trace) {
  const std::size_t want = static_cast<std::size_t>(params.ns + params.na);
  const std::size_t max_attempts = 50 * want;
  std::vector<Individual> pool;
  std::size_t attempts = 0;
  while (pool.size() < want && attempts < max_attempts) {
    ++attempts;
    auto igt = select_targets(instance, params.rs, rng);
    SolutionState state = greedy_construct(std::move(igt), instance, params.partition, objp, rng);
    const ObjectivePair f = evaluate(state, instance, objp);
    const bool dup = std::any_of(pool.begin(), pool.end(), [&](const Individual& ind) {
      return same_objectives(ind.objectives, f);
    });
    if (!dup) pool.push_back({std::move(state), f});
  }
  trace.init_solutions = pool.size();
  trace.init_attempts = attempts;
  return pool;
}

std::vector<Individual> pick(const std::vector<Individual>& pool,
                             const std::vector<std::size_t>& chosen) {
  std::vector<Individual> out;
  out.reserve(chosen.size());
  for (const std::size_t i : chosen) out.push_back(pool[i]);
  return out;
}

// Capacity-respecting uniform survivor selection for the control algorithm.
std::vector<Individual> random_survivors(std::vector<Individual> pool, std::size_t capacity,
                                         Rng& rng) {
  const auto kept = dedup_objectives(objectives_of(pool));
  std::vector<Individual> dedup;
  dedup.reserve(kept.size());
  for (const std::size_t i : kept) dedup.push_back(std::move(pool[i]));
  if (dedup.size() <= capacity) return dedup;
  std::vector<std::size_t> idx(dedup.size());
  for (std::size_t i = 0; i < idx.size(); ++i) idx[i] = i;
  rng.shuffle(idx);
  idx.resize(capacity);
  std::sort(idx.begin(), idx.end());
  std::vector<Individual> out;
  out.reserve(capacity);
  for (const std::size_t i : idx) out.push_back(std::move(dedup[i]));
  return out;
}

ParetoArchive to_archive(const std::vector<Individual>& elites, const std::vector<double>& crowd,
                         const Instance& instance, const ObjectiveParams& objp) {
  ParetoArchive archive;
  archive.members.reserve(elites.size());
  for (std::size_t i = 0; i < elites.size(); ++i) {
    ArchiveMember m;
    m.schedule = to_schedule(elites[i].state, instance, objp);
    m.crowding = i < crowd.size() ? crowd[i] : 0.0;
    archive.members.push_back(std::move(m));
  }
  return archive;
}

ObjectiveParams resolve_objectives(const Instance& instance, const SolverParams& params) {
  ObjectiveParams objp = params.objectives;
  if (!(objp.max_energy_W_s > 0)) objp.max_energy_W_s = compute_mec(instance, objp);
  return objp;
}

RunResult run_alns(const Instance& instance, const SolverParams& params, bool nsga2_selection) {
  require_prepared(instance);
  const ObjectiveParams objp = resolve_objectives(instance, params);
  Rng master(mix_seed(params.seed, nsga2_selection ? 0xa15a : 0x125a));
  RunTrace trace;

  std::vector<Individual> pool = initialize_population(instance, params, objp, master, trace);
  const std::size_t capacity = static_cast<std::size_t>(params.ns + params.na);

  std::vector<Individual> elites;
  std::vector<double> crowd;
  if (nsga2_selection) {
    const Selection sel = select_elites(objectives_of(pool), capacity);
    elites = pick(pool, sel.chosen);
    crowd = sel.crowding;
  } else {
    elites = random_survivors(std::move(pool), capacity, master);
  }

  AdaptiveLayer layer;
  layer.lambda = params.lambda;

  for (int iter = 1; iter <= params.max_iter; ++iter) {
    const std::vector<ObjectivePair> frontier = frontier_of(elites);
    const auto d_op = static_cast<DestroyOp>(roulette_select(layer.destroy_weights, master));
    const auto r_op = static_cast<RepairOp>(roulette_select(layer.repair_weights, master));

    std::vector<Individual> offspring;
    const int brood = params.ns + params.na;
    for (int j = 0; j < brood; ++j) {
      Rng rng(mix_seed(params.seed, static_cast<std::uint64_t>(iter),
                       static_cast<std::uint64_t>(j)));
      const Individual& parent = elites[rng.uniform_index(elites.size())];
      // Inner local search on one taboo bank: the first cycle fills the bank
      // with the operator's removal picks, later cycles are insertion-only
      // repacking rounds that re-roll the remaining pool with fresh moments.
      SearchState search = make_search_state(parent.state, instance, params.taboo_rate);
      ObjectivePair f = parent.objectives;
      for (int cycle = 0; cycle < kInnerCycles; ++cycle) {
        destroy(search, d_op, instance, objp, rng);
        repair(search, r_op, instance, params.partition, objp, rng);
        f = evaluate(search.solution, instance, objp);
        layer.credit(d_op, r_op, score_offspring(f, frontier));
      }
      if (box_accept(f, frontier)) {
        offspring.push_back({std::move(search.solution), f});
      }
    }

    std::vector<Individual> merged = std::move(elites);
    for (auto& o : offspring) merged.push_back(std::move(o));
    if (nsga2_selection) {
      const Selection sel = select_elites(objectives_of(merged), capacity);
      elites = pick(merged, sel.chosen);
      crowd = sel.crowding;
    } else {
      elites = random_survivors(std::move(merged), capacity, master);
    }
    layer.update();

    if (std::getenv("MOSP_DEBUG") && iter % 20 == 0) {
      std::fprintf(stderr, "iter %3d accepted %3zu elites %3zu frontier %3zu hv %.4f\n", iter,
                   offspring.size(), elites.size(), frontier_of(elites).size(),
                   frontier_hv(elites));
    }

    IterationRecord rec;
    rec.iter = iter;
    rec.hv = frontier_hv(elites);
    rec.weights_destroy = layer.destroy_weights;
    rec.weights_repair = layer.repair_weights;
    rec.archive_size = elites.size();
    trace.iterations.push_back(rec);
  }

  return {to_archive(elites, crowd, instance, objp), std::move(trace)};
}

}  // namespace

RunResult run_alns_nsga2(const Instance& instance, const SolverParams& params) {
  return run_alns(instance, params, true);
}

RunResult run_alns_rsm(const Instance& instance, const SolverParams& params) {
  return run_alns(instance, params, false);
}

namespace {

// Genome layout per target: selection gene, candidate-choice gene, begin gene,
// all in [0,1]. Decoding walks targets by descending priority through the
// same constrained placement as the constructive heuristic.
SolutionState decode_genome(const std::vector<double>& genome, const Instance& instance,
                            PartitionMode mode, const ObjectiveParams& objp,
                            const std::vector<int>& visit_order) {
  SolutionState state;
  for (const int t : visit_order) {
    const std::size_t base = 3 * static_cast<std::size_t>(t);
    if (genome[base] < 0.5) continue;
    const auto& target = instance.targets[static_cast<std::size_t>(t)];
    std::vector<const ObservationWindow*> fitting;
    for (const auto* ow : candidate_view(target, mode)) {
      if (ow->span_s() <= target.vtw_length_s() + 1e-9) fitting.push_back(ow);
    }
    if (fitting.empty()) continue;
    const auto k = std::min(fitting.size() - 1,
                            static_cast<std::size_t>(genome[base + 1] * fitting.size()));
    const auto* tmpl = fitting[k];
    const double slack = target.vtw_end_s - tmpl->span_s() - target.vtw_begin_s;
    const double begin_s = target.vtw_begin_s + genome[base + 2] * slack;
    try_insert_at(state, instance, t, *tmpl, begin_s, objp);
  }
  return state;
}

}  // namespace

RunResult run_hcbmde_lite(const Instance& instance, const SolverParams& params) {
  require_prepared(instance);
  const ObjectiveParams objp = resolve_objectives(instance, params);
  constexpr double kF = 0.5;
  constexpr double kCr = 0.9;

  const std::size_t n = instance.targets.size();
  const std::size_t dim = 3 * n;
  const std::size_t pop_size = static_cast<std::size_t>(params.ns + params.na);

  std::vector<int> visit_order(n);
  for (std::size_t i = 0; i < n; ++i) visit_order[i] = static_cast<int>(i);
  std::stable_sort(visit_order.begin(), visit_order.end(), [&](int a, int b) {
    const int pa = instance.targets[static_cast<std::size_t>(a)].priority;
    const int pb = instance.targets[static_cast<std::size_t>(b)].priority;
    if (pa != pb) return pa > pb;
    return a < b;
  });

  struct DeIndividual {
    std::vector<double> genome;
    SolutionState state;
    ObjectivePair objectives;
  };

  const auto make = [&](std::vector<double> genome) {
    DeIndividual ind;
    ind.state = decode_genome(genome, instance, params.partition, objp, visit_order);
    ind.objectives = evaluate(ind.state, instance, objp);
    ind.genome = std::move(genome);
    return ind;
  };

  Rng master(mix_seed(params.seed, 0xdeb1));
  RunTrace trace;
  std::vector<DeIndividual> pop;
  pop.reserve(pop_size);
  for (std::size_t i = 0; i < pop_size; ++i) {
    std::vector<double> genome(dim);
    for (auto& g : genome) g = master.uniform();
    pop.push_back(make(std::move(genome)));
  }
  trace.init_solutions = pop.size();
  trace.init_attempts = pop.size();

  const auto pop_objectives = [&](const std::vector<DeIndividual>& p) {
    std::vector<ObjectivePair> out;
    out.reserve(p.size());
    for (const auto& ind : p) out.push_back(ind.objectives);
    return out;
  };

  for (int iter = 1; iter <= params.max_iter; ++iter) {
    std::vector<DeIndividual> trials;
    trials.reserve(pop_size);
    for (std::size_t i = 0; i < pop_size; ++i) {
      Rng rng(mix_seed(params.seed ^ 0xde, static_cast<std::uint64_t>(iter), i));
      std::size_t r1 = rng.uniform_index(pop_size);
      while (r1 == i) r1 = rng.uniform_index(pop_size);
      std::size_t r2 = rng.uniform_index(pop_size);
      while (r2 == i || r2 == r1) r2 = rng.uniform_index(pop_size);
      std::size_t r3 = rng.uniform_index(pop_size);
      while (r3 == i || r3 == r1 || r3 == r2) r3 = rng.uniform_index(pop_size);

      const std::size_t j_rand = rng.uniform_index(dim);
      std::vector<double> trial = pop[i].genome;
      for (std::size_t j = 0; j < dim; ++j) {
        if (j == j_rand || rng.uniform() < kCr) {
          const double v =
              pop[r1].genome[j] + kF * (pop[r2].genome[j] - pop[r3].genome[j]);
          trial[j] = std::clamp(v, 0.0, 1.0);
        }
      }
      trials.push_back(make(std::move(trial)));
    }

    std::vector<DeIndividual> merged = std::move(pop);
    for (auto& t : trials) merged.push_back(std::move(t));
    const Selection sel = select_elites(pop_objectives(merged), pop_size);
    pop.clear();
    pop.reserve(sel.chosen.size());
    for (const std::size_t k : sel.chosen) pop.push_back(std::move(merged[k]));

    IterationRecord rec;
    rec.iter = iter;
    rec.hv = hypervolume(extract_front(pop_objectives(pop)));
    rec.weights_destroy = {0.25, 0.25, 0.25, 0.25};  // no adaptive layer in this baseline
    rec.weights_repair = {0.25, 0.25, 0.25, 0.25};
    rec.archive_size = pop.size();
    trace.iterations.push_back(rec);
  }

  ParetoArchive archive;
  archive.members.reserve(pop.size());
  for (const auto& ind : pop) {
    archive.members.push_back({to_schedule(ind.state, instance, objp), 0.0});
  }
  return {std::move(archive), std::move(trace)};
}

void write_trace_jsonl(std::ostream& out, const RunTrace& trace) {
  for (const auto& rec : trace.iterations) {
    nlohmann::json j{
        {"iter", rec.iter},
        {"hv", rec.hv},
        {"weights_destroy", rec.weights_destroy},
        {"weights_repair", rec.weights_repair},
        {"archive_size", rec.archive_size},
    };
    out << j.dump() << '\n';
  }
}

RunTrace read_trace_jsonl(std::istream& in) {
  RunTrace trace;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    IterationRecord rec;
    rec.iter = j.at("iter").get<int>();
    rec.hv = j.at("hv").get<double>();
    rec.weights_destroy = j.at("weights_destroy").get<std::array<double, 4>>();
    rec.weights_repair = j.at("weights_repair").get<std::array<double, 4>>();
    rec.archive_size = j.at("archive_size").get<std::size_t>();
    trace.iterations.push_back(rec);
  }
  return trace;
}

}  // namespace mosp
