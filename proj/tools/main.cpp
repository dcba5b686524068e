// Command-line harness: instance generation, solving, algorithm/partition
// comparisons, reaction-factor sweeps, and instance validation.
//
// Exit codes: 0 success, 1 internal invariant breach, 2 usage or input error.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include <fmt/format.h>

#include "CLI11.hpp"
#include "json.hpp"
#include "mosp/feasibility.hpp"
#include "mosp/json_io.hpp"
#include "mosp/metrics.hpp"
#include "mosp/moea.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace mosp;

namespace {

enum class Algorithm { AlnsNsga2, AlnsRsm, HcbmdeLite };

Algorithm algorithm_from_string(const std::string& s) {
  if (s == "alns-nsga2") return Algorithm::AlnsNsga2;
  if (s == "alns-rsm") return Algorithm::AlnsRsm;
  if (s == "hcbmde-lite") return Algorithm::HcbmdeLite;
  throw CLI::ValidationError("--algo", "unknown algorithm: " + s);
}

const char* to_string(Algorithm a) {
  switch (a) {
    case Algorithm::AlnsNsga2: return "alns-nsga2";
    case Algorithm::AlnsRsm: return "alns-rsm";
    case Algorithm::HcbmdeLite: return "hcbmde-lite";
  }
  return "?";
}

PartitionMode partition_from_string(const std::string& s) {
  if (s == "ato") return PartitionMode::ATO;
  if (s == "nato") return PartitionMode::NATO;
  if (s == "complete") return PartitionMode::Complete;
  if (s == "envelope") return PartitionMode::Envelope;
  throw CLI::ValidationError("--partition", "unknown partition mode: " + s);
}

double seconds_between(std::chrono::steady_clock::time_point a,
                       std::chrono::steady_clock::time_point b) {
  return std::chrono::duration<double>(b - a).count();
}

// Config file values sit between built-in defaults and explicit flags.
struct FileConfig {
  PseudoOrbitModel orbit;
  ObjectiveParams objectives;
};

FileConfig load_config(const std::string& path) {
  FileConfig cfg;
  if (path.empty()) return cfg;
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  const json j = json::parse(in);
  if (j.contains("orbit")) {
    const auto& o = j.at("orbit");
    if (o.contains("altitude_km")) cfg.orbit.altitude_km = o.at("altitude_km").get<double>();
    if (o.contains("ground_speed_km_s")) {
      cfg.orbit.ground_speed_km_s = o.at("ground_speed_km_s").get<double>();
    }
  }
  if (j.contains("obj")) {
    const auto& o = j.at("obj");
    if (o.contains("eo_a")) cfg.objectives.active_rate_W = o.at("eo_a").get<double>();
    if (o.contains("eo_p")) cfg.objectives.passive_rate_W = o.at("eo_p").get<double>();
    if (o.contains("ea")) cfg.objectives.slew_rate_W = o.at("ea").get<double>();
    if (o.contains("sample_step_s")) {
      cfg.objectives.quality_sample_step_s = o.at("sample_step_s").get<double>();
    }
  }
  return cfg;
}

std::size_t worker_count(std::size_t jobs) {
  unsigned hw = std::thread::hardware_concurrency();
  if (hw == 0) hw = 1;
  if (const char* env = std::getenv("MOSP_THREADS")) {
    const unsigned long cap = std::strtoul(env, nullptr, 10);
    if (cap >= 1) hw = static_cast<unsigned>(std::min<unsigned long>(hw, cap));
  }
  return std::min<std::size_t>(hw, jobs);
}

// Runs fn(0..jobs) on a small pool; results must land in pre-sized slots so
// the output does not depend on scheduling.
template <typename Fn>
void parallel_for(std::size_t jobs, Fn&& fn) {
  const std::size_t workers = worker_count(jobs);
  if (workers <= 1) {
    for (std::size_t i = 0; i < jobs; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (std::size_t w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i; (i = next.fetch_add(1)) < jobs;) {
        try {
          fn(i);
        } catch (...) {
          const std::lock_guard<std::mutex> lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

struct SolveOutcome {
  RunResult result;
  double t_partition_s = 0;
  double t_schedule_s = 0;
  double t_wall_s = 0;
};

RunResult dispatch(Algorithm algo, const Instance& inst, const SolverParams& sp) {
  switch (algo) {
    case Algorithm::AlnsNsga2: return run_alns_nsga2(inst, sp);
    case Algorithm::AlnsRsm: return run_alns_rsm(inst, sp);
    case Algorithm::HcbmdeLite: return run_hcbmde_lite(inst, sp);
  }
  throw std::logic_error("dispatch: unreachable");
}

// One full run: per-mode partitioning is part of the measured work, then
// congestion and the solver proper.
SolveOutcome solve_instance(const Instance& raw, Algorithm algo, SolverParams sp) {
  SolveOutcome out;
  Instance inst = raw;
  const auto t0 = std::chrono::steady_clock::now();
  build_all_partition_sets(inst, sp.partition);
  const auto t1 = std::chrono::steady_clock::now();
  ObjectiveParams objp = sp.objectives;
  if (!(objp.max_energy_W_s > 0)) objp.max_energy_W_s = compute_mec(inst, objp);
  sp.objectives = objp;
  compute_all_congestion(inst, objp);
  out.result = dispatch(algo, inst, sp);
  const auto t2 = std::chrono::steady_clock::now();
  out.t_partition_s = seconds_between(t0, t1);
  out.t_schedule_s = seconds_between(t1, t2);
  out.t_wall_s = seconds_between(t0, t2);
  return out;
}

struct Quantiles {
  double min = 0, q1 = 0, median = 0, q3 = 0, max = 0, mean = 0;
};

Quantiles quantiles(std::vector<double> values) {
  Quantiles q;
  if (values.empty()) return q;
  std::sort(values.begin(), values.end());
  const auto at = [&](double p) {
    const double pos = p * static_cast<double>(values.size() - 1);
    const std::size_t lo = static_cast<std::size_t>(pos);
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (pos - static_cast<double>(lo)) * (values[hi] - values[lo]);
  };
  q.min = values.front();
  q.q1 = at(0.25);
  q.median = at(0.5);
  q.q3 = at(0.75);
  q.max = values.back();
  for (const double v : values) q.mean += v;
  q.mean /= static_cast<double>(values.size());
  return q;
}

void write_text_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << content;
}

// ---------------------------------------------------------------------------
// gen

struct GenArgs {
  std::string dist;
  int n = 50;
  std::uint64_t seed = 1;
  std::string out;
  std::string config;
};

int cmd_gen(const GenArgs& args) {
  if (args.dist != "cd" && args.dist != "wd") {
    throw CLI::ValidationError("--dist", "expected cd or wd");
  }
  const FileConfig cfg = load_config(args.config);
  InstanceSpec spec = default_spec(args.dist == "cd" ? Distribution::CD : Distribution::WD,
                                   args.n, args.seed);
  spec.orbit = cfg.orbit;
  const Instance inst = generate_instance(spec);
  const auto violations = validate_instance(inst);
  if (!violations.empty()) {
    for (const auto& v : violations) std::cerr << "invariant breach: " << v << '\n';
    throw std::logic_error("generated instance failed validation");
  }
  save_instance(args.out, inst);

  double len_min = 1e300;
  double len_max = 0;
  double len_sum = 0;
  for (const auto& t : inst.targets) {
    len_min = std::min(len_min, t.vtw_length_s());
    len_max = std::max(len_max, t.vtw_length_s());
    len_sum += t.vtw_length_s();
  }
  fmt::print("wrote {}: {} targets ({}, seed {})\n", args.out, inst.targets.size(),
             args.dist == "cd" ? "CD" : "WD", args.seed);
  fmt::print("vtw length s: min {:.1f} mean {:.1f} max {:.1f}\n", len_min,
             len_sum / static_cast<double>(inst.targets.size()), len_max);
  return 0;
}

// ---------------------------------------------------------------------------
// solve

struct SolveArgs {
  std::string instance;
  std::string algo = "alns-nsga2";
  std::string partition = "envelope";
  std::string out_dir;
  std::string config;
  SolverParams sp;
};

void write_run_outputs(const fs::path& dir, Algorithm algo, const SolverParams& sp,
                       const SolveOutcome& outcome) {
  fs::create_directories(dir);
  const Front front = extract_front(outcome.result.archive);

  std::ofstream front_csv(dir / "front.csv");
  write_front_csv(front_csv, front);

  json schedules = json::array();
  for (const auto& m : outcome.result.archive.members) {
    json member = schedule_to_json(m.schedule);
    member["crowding"] = m.crowding;
    schedules.push_back(std::move(member));
  }
  const json archive_doc{
      {"schema_version", kSchemaVersion},
      {"algorithm", to_string(algo)},
      {"partition", to_string(sp.partition)},
      {"seed", sp.seed},
      {"schedules", std::move(schedules)},
  };
  write_text_file(dir / "archive.json", archive_doc.dump(2) + "\n");

  std::ofstream trace(dir / "trace.jsonl");
  write_trace_jsonl(trace, outcome.result.trace);

  const json summary{
      {"hv_x1000", report_hv(front)},
      {"t_partition_s", outcome.t_partition_s},
      {"t_schedule_s", outcome.t_schedule_s},
      {"t_wall_s", outcome.t_wall_s},
      {"algorithm", to_string(algo)},
      {"partition", to_string(sp.partition)},
      {"seed", sp.seed},
      {"iterations", outcome.result.trace.iterations.size()},
      {"archive_size", outcome.result.archive.members.size()},
      {"front_size", front.points.size()},
      {"init_solutions", outcome.result.trace.init_solutions},
      {"init_attempts", outcome.result.trace.init_attempts},
  };
  write_text_file(dir / "summary.json", summary.dump(2) + "\n");
}

int cmd_solve(SolveArgs args) {
  const FileConfig cfg = load_config(args.config);
  args.sp.objectives = cfg.objectives;
  args.sp.partition = partition_from_string(args.partition);
  const Algorithm algo = algorithm_from_string(args.algo);
  const Instance inst = load_instance(args.instance);

  const SolveOutcome outcome = solve_instance(inst, algo, args.sp);
  if (outcome.result.trace.init_solutions <
      static_cast<std::size_t>(args.sp.ns + args.sp.na)) {
    std::cerr << "warning: initialization found only " << outcome.result.trace.init_solutions
              << " distinct solutions in " << outcome.result.trace.init_attempts
              << " attempts\n";
  }
  write_run_outputs(args.out_dir, algo, args.sp, outcome);

  const Front front = extract_front(outcome.result.archive);
  fmt::print("hv_x1000 {:.4f}  front {}  t_p {:.3f}s  t_s {:.3f}s  t_w {:.3f}s\n",
             report_hv(front), front.points.size(), outcome.t_partition_s,
             outcome.t_schedule_s, outcome.t_wall_s);
  return 0;
}

// ---------------------------------------------------------------------------
// compare

struct CompareArgs {
  std::string instance;
  std::vector<std::string> algos{"alns-nsga2", "alns-rsm", "hcbmde-lite"};
  std::vector<std::string> partitions{"envelope"};
  int restarts = 10;
  std::uint64_t seed_base = 1;
  std::string out_dir;
  std::string config;
  SolverParams sp;
};

int cmd_compare(CompareArgs args) {
  const FileConfig cfg = load_config(args.config);
  args.sp.objectives = cfg.objectives;
  const Instance inst = load_instance(args.instance);
  fs::create_directories(args.out_dir);

  struct Cell {
    Algorithm algo;
    PartitionMode mode;
    std::vector<SolveOutcome> runs;
  };
  std::vector<Cell> cells;
  for (const auto& a : args.algos) {
    for (const auto& p : args.partitions) {
      cells.push_back({algorithm_from_string(a), partition_from_string(p), {}});
    }
  }

  struct Job {
    std::size_t cell;
    int restart;
  };
  std::vector<Job> jobs;
  for (auto& cell : cells) cell.runs.resize(static_cast<std::size_t>(args.restarts));
  for (std::size_t c = 0; c < cells.size(); ++c) {
    for (int r = 0; r < args.restarts; ++r) jobs.push_back({c, r});
  }
  parallel_for(jobs.size(), [&](std::size_t k) {
    const Job job = jobs[k];
    Cell& cell = cells[job.cell];
    SolverParams sp = args.sp;
    sp.partition = cell.mode;
    sp.seed = args.seed_base + static_cast<std::uint64_t>(job.restart);
    cell.runs[static_cast<std::size_t>(job.restart)] = solve_instance(inst, cell.algo, sp);
  });

  std::string csv =
      "algorithm,partition,restarts,hv_x1000_min,hv_x1000_q1,hv_x1000_median,hv_x1000_q3,"
      "hv_x1000_max,t_wall_median_s\n";
  for (const auto& cell : cells) {
    std::vector<double> hvs;
    std::vector<double> walls;
    std::vector<ObjectivePair> merged;
    for (const auto& run : cell.runs) {
      const Front front = extract_front(run.result.archive);
      hvs.push_back(report_hv(front));
      walls.push_back(run.t_wall_s);
      merged.insert(merged.end(), front.points.begin(), front.points.end());
    }
    const Quantiles hq = quantiles(hvs);
    const Quantiles wq = quantiles(walls);
    csv += fmt::format("{},{},{},{:.6g},{:.6g},{:.6g},{:.6g},{:.6g},{:.6g}\n",
                       to_string(cell.algo), to_string(cell.mode), args.restarts, hq.min,
                       hq.q1, hq.median, hq.q3, hq.max, wq.median);

    const Front merged_front = extract_front(merged);
    std::ofstream front_csv(fs::path(args.out_dir) /
                            fmt::format("merged_front_{}_{}.csv", to_string(cell.algo),
                                        to_string(cell.mode)));
    write_front_csv(front_csv, merged_front);
  }
  write_text_file(fs::path(args.out_dir) / "comparison.csv", csv);
  std::cout << csv;
  return 0;
}

// ---------------------------------------------------------------------------
// sweep-lambda

struct SweepArgs {
  std::string instance;
  std::vector<double> lambdas;
  std::string partition = "envelope";
  int restarts = 50;
  std::uint64_t seed_base = 1;
  std::string out_dir;
  std::string config;
  SolverParams sp;
};

int cmd_sweep_lambda(SweepArgs args) {
  const FileConfig cfg = load_config(args.config);
  args.sp.objectives = cfg.objectives;
  args.sp.partition = partition_from_string(args.partition);
  if (args.lambdas.empty()) {
    for (int i = 0; i <= 10; ++i) args.lambdas.push_back(0.1 * i);
  }
  for (const double l : args.lambdas) {
    if (l < 0.0 || l > 1.0) {
      throw CLI::ValidationError("--lambdas", "values must lie in [0,1]");
    }
  }
  const Instance inst = load_instance(args.instance);
  fs::create_directories(args.out_dir);

  // final_weights[lambda][restart] -> 8 operator weights (4 destroy, 4 repair)
  std::vector<std::vector<std::array<double, 8>>> finals(
      args.lambdas.size(),
      std::vector<std::array<double, 8>>(static_cast<std::size_t>(args.restarts)));

  struct Job {
    std::size_t lambda_index;
    int restart;
  };
  std::vector<Job> jobs;
  for (std::size_t li = 0; li < args.lambdas.size(); ++li) {
    for (int r = 0; r < args.restarts; ++r) jobs.push_back({li, r});
  }
  parallel_for(jobs.size(), [&](std::size_t k) {
    const Job job = jobs[k];
    SolverParams sp = args.sp;
    sp.lambda = args.lambdas[job.lambda_index];
    sp.seed = args.seed_base + static_cast<std::uint64_t>(job.restart);
    const SolveOutcome outcome = solve_instance(inst, Algorithm::AlnsNsga2, sp);
    std::array<double, 8> w{0.25, 0.25, 0.25, 0.25, 0.25, 0.25, 0.25, 0.25};
    if (!outcome.result.trace.iterations.empty()) {
      const auto& last = outcome.result.trace.iterations.back();
      for (std::size_t i = 0; i < 4; ++i) {
        w[i] = last.weights_destroy[i];
        w[4 + i] = last.weights_repair[i];
      }
    }
    finals[job.lambda_index][static_cast<std::size_t>(job.restart)] = w;
  });

  std::string csv =
      "lambda,op_kind,op_name,w_mean,w_min,w_q1,w_median,w_q3,w_max\n";
  for (std::size_t li = 0; li < args.lambdas.size(); ++li) {
    for (std::size_t op = 0; op < 8; ++op) {
      std::vector<double> values;
      values.reserve(finals[li].size());
      for (const auto& w : finals[li]) values.push_back(w[op]);
      const Quantiles q = quantiles(values);
      csv += fmt::format("{:.2f},{},{},{:.6g},{:.6g},{:.6g},{:.6g},{:.6g},{:.6g}\n",
                         args.lambdas[li], op < 4 ? "destroy" : "repair",
                         op < 4 ? kDestroyNames[op] : kRepairNames[op - 4], q.mean, q.min,
                         q.q1, q.median, q.q3, q.max);
    }
  }
  write_text_file(fs::path(args.out_dir) / "lambda_sweep.csv", csv);
  std::cout << csv;
  return 0;
}

// ---------------------------------------------------------------------------
// validate

int cmd_validate(const std::string& path) {
  const Instance inst = load_instance(path);
  const auto violations = validate_instance(inst);
  if (violations.empty()) {
    fmt::print("{}: ok ({} targets)\n", path, inst.targets.size());
  } else {
    fmt::print("{}: {} violation(s)\n", path, violations.size());
    for (const auto& v : violations) fmt::print("  {}\n", v);
  }
  return 0;
}

void add_solver_flags(CLI::App* cmd, SolverParams& sp) {
  cmd->add_option("--seed", sp.seed, "solver seed");
  cmd->add_option("--max-iter", sp.max_iter, "evolution iterations")
      ->check(CLI::NonNegativeNumber);
  cmd->add_option("--ns", sp.ns, "population size")->check(CLI::PositiveNumber);
  cmd->add_option("--na", sp.na, "archive population size")->check(CLI::PositiveNumber);
  cmd->add_option("--rs", sp.rs, "target skip rate during initialization")
      ->check(CLI::Range(0.0, 0.999999));
  cmd->add_option("--tr", sp.taboo_rate, "taboo bank size as a fraction of targets")
      ->check(CLI::Range(0.0, 1.0));
  cmd->add_option("--lambda", sp.lambda, "adaptive layer reaction factor")
      ->check(CLI::Range(0.0, 1.0));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"multi-strip observation scheduling: solver and benchmark harness"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* cmd_gen_p = app.add_subcommand("gen", "generate a synthetic instance");
  cmd_gen_p->add_option("--dist", gen.dist, "target distribution: cd or wd")->required();
  cmd_gen_p->add_option("--n", gen.n, "number of ground targets")
      ->required()
      ->check(CLI::PositiveNumber);
  cmd_gen_p->add_option("--seed", gen.seed, "generator seed");
  cmd_gen_p->add_option("--out", gen.out, "output instance json path")->required();
  cmd_gen_p->add_option("--config", gen.config, "json config file (orbit.* keys)");

  SolveArgs solve;
  auto* cmd_solve_p = app.add_subcommand("solve", "run one solver on an instance");
  cmd_solve_p->add_option("--instance", solve.instance, "instance json path")->required();
  cmd_solve_p->add_option("--algo", solve.algo, "alns-nsga2, alns-rsm or hcbmde-lite");
  cmd_solve_p->add_option("--partition", solve.partition,
                          "ato, nato, complete or envelope");
  cmd_solve_p->add_option("--out-dir", solve.out_dir, "output directory")->required();
  cmd_solve_p->add_option("--config", solve.config, "json config file (obj.* keys)");
  add_solver_flags(cmd_solve_p, solve.sp);

  CompareArgs compare;
  auto* cmd_compare_p =
      app.add_subcommand("compare", "run algorithm x partition cells with restarts");
  cmd_compare_p->add_option("--instance", compare.instance, "instance json path")->required();
  cmd_compare_p->add_option("--algos", compare.algos, "algorithms to compare")
      ->delimiter(',');
  cmd_compare_p->add_option("--partitions", compare.partitions, "partition modes")
      ->delimiter(',');
  cmd_compare_p->add_option("--restarts", compare.restarts, "restarts per cell")
      ->check(CLI::PositiveNumber);
  cmd_compare_p->add_option("--seed-base", compare.seed_base,
                            "seed of restart r is seed-base + r");
  cmd_compare_p->add_option("--out-dir", compare.out_dir, "output directory")->required();
  cmd_compare_p->add_option("--config", compare.config, "json config file");
  add_solver_flags(cmd_compare_p, compare.sp);

  SweepArgs sweep;
  auto* cmd_sweep_p =
      app.add_subcommand("sweep-lambda", "final operator weights across reaction factors");
  cmd_sweep_p->add_option("--instance", sweep.instance, "instance json path")->required();
  cmd_sweep_p->add_option("--lambdas", sweep.lambdas,
                          "reaction factors (default 0,0.1,...,1)")
      ->delimiter(',');
  cmd_sweep_p->add_option("--partition", sweep.partition, "partition mode");
  cmd_sweep_p->add_option("--restarts", sweep.restarts, "restarts per factor")
      ->check(CLI::PositiveNumber);
  cmd_sweep_p->add_option("--seed-base", sweep.seed_base,
                          "seed of restart r is seed-base + r");
  cmd_sweep_p->add_option("--out-dir", sweep.out_dir, "output directory")->required();
  cmd_sweep_p->add_option("--config", sweep.config, "json config file");
  add_solver_flags(cmd_sweep_p, sweep.sp);

  std::string validate_path;
  auto* cmd_validate_p = app.add_subcommand("validate", "check instance invariants");
  cmd_validate_p->add_option("--instance", validate_path, "instance json path")->required();

  try {
    app.parse(argc, argv);
    if (app.got_subcommand(cmd_gen_p)) return cmd_gen(gen);
    if (app.got_subcommand(cmd_solve_p)) return cmd_solve(std::move(solve));
    if (app.got_subcommand(cmd_compare_p)) return cmd_compare(std::move(compare));
    if (app.got_subcommand(cmd_sweep_p)) return cmd_sweep_lambda(std::move(sweep));
    if (app.got_subcommand(cmd_validate_p)) return cmd_validate(validate_path);
    return 2;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  } catch (const std::logic_error& e) {
    std::cerr << "internal invariant breach: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
}
