// Command-line front end for the pursuit solvers. Subcommands build labeled
// time matrices from a scenario file, solve the capture-time matrix game,
// assign interceptors to targets, order speed checks, sequence multi-target
// pursuit and evaluate the optimal-stopping rule. Results go to stdout as a
// short human report (4 significant digits) and, with --out, to a machine
// file: full-precision JSON, or CSV where the payload is a matrix/polyline.
//
// Exit codes: 0 success, 2 usage error, 3 domain/infeasibility error.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "pursuit/assignment.hpp"
#include "pursuit/game.hpp"
#include "pursuit/kinematics.hpp"
#include "pursuit/ordering.hpp"
#include "pursuit/scenario_io.hpp"
#include "pursuit/scheduling.hpp"
#include "pursuit/stopping.hpp"

namespace {

using nlohmann::json;
namespace kin = pursuit::kinematics;
namespace gm = pursuit::game;
namespace asg = pursuit::assignment;
namespace ord = pursuit::ordering;
namespace sched = pursuit::scheduling;
namespace stp = pursuit::stopping;
namespace io = pursuit::io;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string scenario_path;
  std::string out_path;
  std::string format = "structured";
  std::string method = "auto";
  std::string algo = "dp";
  std::string objective = "open";
  std::string criterion = "f4";
  std::string kind = "game";
  std::string order_spec;
  std::size_t iters = 1000000;
  double tol = 0.0;
  std::uint64_t seed = 1;
  double dt = 0.0;
  double evader_speed = 0.0;
  double evader_direction = 0.0;
  std::size_t stopping_n = 0;
  std::size_t stopping_trials = 100000;
};

struct LoadedScenario {
  io::ScenarioFile file;
  std::string digest;
};

std::string four_digits(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

LoadedScenario load(const Options& opt) {
  if (opt.scenario_path.empty()) throw UsageError("missing --scenario <path>");
  std::ifstream in(opt.scenario_path, std::ios::binary);
  if (!in) throw UsageError("cannot read scenario file '" + opt.scenario_path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::string text = buffer.str();
  LoadedScenario loaded;
  loaded.digest = io::input_digest(text);
  try {
    loaded.file = io::parse_scenario(text);
  } catch (const pursuit::Error& e) {
    throw UsageError(e.what());
  }
  return loaded;
}

const kin::PursuitScenario& need_pursuit(const io::ScenarioFile& f) {
  if (!f.pursuit) throw UsageError("scenario is missing the required section 'pursuit'");
  return *f.pursuit;
}

json result_skeleton(const std::string& command, const std::string& digest) {
  json doc;
  doc["command"] = command;
  doc["input_digest"] = digest;
  doc["result"] = json::object();
  doc["diagnostics"] = json::object();
  return doc;
}

void finalize(const Options& opt, json& doc, double runtime_seconds,
              const std::optional<std::string>& csv = std::nullopt) {
  doc["diagnostics"]["runtime_seconds"] = runtime_seconds;
  if (opt.out_path.empty()) return;
  std::ofstream out(opt.out_path, std::ios::binary);
  if (!out) throw UsageError("cannot write output file '" + opt.out_path + "'");
  if (opt.format == "csv") {
    if (!csv) throw UsageError("this command has no CSV payload; use --format structured");
    out << *csv;
  } else if (opt.format == "structured") {
    out << doc.dump(2) << '\n';
  } else {
    throw UsageError("--format must be structured or csv");
  }
}

json matrix_to_json(const std::vector<double>& entries, std::size_t rows, std::size_t cols) {
  json out = json::array();
  for (std::size_t i = 0; i < rows; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < cols; ++j) row.push_back(entries[i * cols + j]);
    out.push_back(row);
  }
  return out;
}

json vector_to_json(const std::vector<double>& values) {
  json out = json::array();
  for (double v : values) out.push_back(v);
  return out;
}

std::vector<std::size_t> parse_order_spec(const std::string& spec, std::size_t n) {
  if (spec.empty()) {
    std::vector<std::size_t> identity(n);
    for (std::size_t i = 0; i < n; ++i) identity[i] = i;
    return identity;
  }
  std::vector<std::size_t> order;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      order.push_back(static_cast<std::size_t>(std::stoul(item)));
    } catch (const std::exception&) {
      throw UsageError("--order must be a comma-separated list of speed indices");
    }
  }
  return order;
}

// ---- matrix ---------------------------------------------------------------

int cmd_matrix(const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto loaded = load(opt);
  json doc = result_skeleton("matrix", loaded.digest);
  std::ostringstream csv_stream;

  if (opt.kind == "game") {
    const auto& scenario = need_pursuit(loaded.file);
    const auto a = gm::build_payoff_matrix(scenario);
    std::vector<std::string> rows;
    for (const auto& s : a.row_labels) {
      rows.push_back("dir" + four_digits(s.direction_deg) + "_v" + four_digits(s.speed));
    }
    std::vector<std::string> cols;
    for (const auto& perm : a.col_labels) {
      std::string label = "check";
      for (std::size_t idx : perm) label += "_" + four_digits(scenario.speed_set[idx]);
      cols.push_back(label);
    }
    io::write_matrix_csv(csv_stream, "strategy\\order", rows, cols, a.entries, a.rows, a.cols);
    doc["result"]["kind"] = "game";
    doc["result"]["matrix"] = matrix_to_json(a.entries, a.rows, a.cols);
  } else if (opt.kind == "assignment") {
    if (!loaded.file.fleet) throw UsageError("scenario is missing the required section 'fleet'");
    if (!loaded.file.targets) {
      throw UsageError("scenario is missing the required section 'targets'");
    }
    const auto m = asg::build_efficiency_matrix(*loaded.file.fleet, *loaded.file.targets);
    std::vector<std::string> rows, cols;
    for (std::size_t i = 0; i < m.rows; ++i) rows.push_back("target" + std::to_string(i + 1));
    for (std::size_t j = 0; j < m.cols; ++j) cols.push_back("boat" + std::to_string(j + 1));
    io::write_matrix_csv(csv_stream, "target\\boat", rows, cols, m.entries, m.rows, m.cols);
    doc["result"]["kind"] = "assignment";
    doc["result"]["matrix"] = matrix_to_json(m.entries, m.rows, m.cols);
  } else if (opt.kind == "check") {
    const auto m = kin::check_duration_matrix(need_pursuit(loaded.file));
    std::vector<std::string> labels;
    for (double v : m.labels) labels.push_back("v" + four_digits(v));
    io::write_matrix_csv(csv_stream, "prev\\next", labels, labels, m.entries, m.n, m.n);
    doc["result"]["kind"] = "check";
    doc["result"]["matrix"] = matrix_to_json(m.entries, m.n, m.n);
  } else {
    throw UsageError("matrix kind must be game, assignment or check");
  }

  const std::string csv = csv_stream.str();
  std::cout << csv;
  const double dt_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  finalize(opt, doc, dt_s, csv);
  return 0;
}

// ---- solve-game -------------------------------------------------------------

gm::PayoffMatrix game_matrix_from(const io::ScenarioFile& file) {
  if (file.matrix) {
    return gm::from_entries(file.matrix->rows, file.matrix->cols, file.matrix->entries);
  }
  if (file.pursuit) return gm::build_payoff_matrix(*file.pursuit);
  throw UsageError("scenario needs a 'matrix' or 'pursuit' section");
}

int cmd_solve_game(const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto loaded = load(opt);
  const auto a = game_matrix_from(loaded.file);
  json doc = result_skeleton("solve-game", loaded.digest);

  gm::GameSolution sol;
  std::string method_used;
  const auto scan = gm::pure_saddle(a);
  if (opt.method == "auto" && scan.cell) {
    sol.method = gm::SolveMethod::kSaddle;
    sol.value = scan.cell->value;
    sol.lower_bound = scan.maximin;
    sol.upper_bound = scan.minimax;
    sol.evader_strategy.assign(a.rows, 0.0);
    sol.pursuer_strategy.assign(a.cols, 0.0);
    sol.evader_strategy[scan.cell->row] = 1.0;
    sol.pursuer_strategy[scan.cell->col] = 1.0;
    method_used = "saddle";
    doc["result"]["saddle_row"] = scan.cell->row;
    doc["result"]["saddle_col"] = scan.cell->col;
  } else if (opt.method == "exact" ||
             (opt.method == "auto" && std::min(a.rows, a.cols) <= 10)) {
    sol = gm::exact_value_support_enumeration(a);
    method_used = "exact";
  } else if (opt.method == "fp" || opt.method == "auto") {
    sol = gm::brown_robinson(a, opt.iters, opt.tol);
    method_used = "fp";
  } else {
    throw UsageError("--method must be fp, exact or auto");
  }

  doc["result"]["method"] = method_used;
  doc["result"]["maximin"] = scan.maximin;
  doc["result"]["minimax"] = scan.minimax;
  doc["result"]["lower_bound"] = sol.lower_bound;
  doc["result"]["upper_bound"] = sol.upper_bound;
  if (sol.value) doc["result"]["value"] = *sol.value;
  doc["result"]["evader_strategy"] = vector_to_json(sol.evader_strategy);
  doc["result"]["pursuer_strategy"] = vector_to_json(sol.pursuer_strategy);
  doc["diagnostics"]["iterations"] = sol.iterations;

  std::cout << "method: " << method_used << '\n';
  if (sol.value) std::cout << "value: " << four_digits(*sol.value) << '\n';
  std::cout << "bounds: [" << four_digits(sol.lower_bound) << ", "
            << four_digits(sol.upper_bound) << "]\n";
  const double dt_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  finalize(opt, doc, dt_s);
  return 0;
}

// ---- assign -----------------------------------------------------------------

int cmd_assign(const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto loaded = load(opt);
  json doc = result_skeleton("assign", loaded.digest);

  asg::EfficiencyMatrix m;
  if (loaded.file.matrix) {
    m = asg::from_entries(loaded.file.matrix->rows, loaded.file.matrix->cols,
                          loaded.file.matrix->entries);
  } else if (loaded.file.fleet && loaded.file.targets) {
    m = asg::build_efficiency_matrix(*loaded.file.fleet, *loaded.file.targets);
  } else {
    throw UsageError("scenario needs a 'matrix' section or 'fleet' plus 'targets'");
  }
  const auto balanced = asg::balance(m);
  const auto sol = asg::hungarian(balanced);
  const bool certified = asg::verify_duals(balanced, sol);

  doc["result"]["total_time"] = sol.total_cost;
  doc["result"]["pairs"] = json::array();
  for (std::size_t i = 0; i < sol.pairs.size(); ++i) {
    doc["result"]["pairs"].push_back({{"target", i}, {"interceptor", sol.pairs[i]}});
  }
  doc["result"]["row_duals"] = vector_to_json(sol.row_duals);
  doc["result"]["col_duals"] = vector_to_json(sol.col_duals);
  doc["result"]["dual_certified"] = certified;
  doc["diagnostics"]["dummy_rows"] = balanced.dummy_rows;
  doc["diagnostics"]["dummy_cols"] = balanced.dummy_cols;

  std::cout << "total time: " << four_digits(sol.total_cost) << '\n';
  for (std::size_t i = 0; i < sol.pairs.size(); ++i) {
    if (i < m.rows && sol.pairs[i] < m.cols) {
      std::cout << "target " << (i + 1) << " -> boat " << (sol.pairs[i] + 1) << '\n';
    }
  }
  std::cout << "dual certificate: " << (certified ? "ok" : "FAILED") << '\n';
  const double dt_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  finalize(opt, doc, dt_s);
  return 0;
}

// ---- order ------------------------------------------------------------------

int cmd_order(const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto loaded = load(opt);
  json doc = result_skeleton("order", loaded.digest);

  ord::CheckCostMatrix t;
  if (loaded.file.matrix) {
    if (loaded.file.matrix->rows != loaded.file.matrix->cols) {
      throw UsageError("check matrices must be square");
    }
    t = ord::matrix_from_entries(loaded.file.matrix->rows, loaded.file.matrix->entries);
  } else if (loaded.file.pursuit) {
    const auto& scenario = *loaded.file.pursuit;
    t = kin::check_duration_matrix(scenario);
  } else {
    throw UsageError("scenario needs a 'matrix' or 'pursuit' section");
  }

  ord::Objective objective;
  if (opt.objective == "open") {
    objective = ord::Objective::kOpenPath;
  } else if (opt.objective == "closed") {
    objective = ord::Objective::kClosedTour;
  } else {
    throw UsageError("--objective must be open or closed");
  }

  ord::CheckOrder best;
  if (opt.algo == "dp") {
    best = ord::held_karp(t, objective);
  } else if (opt.algo == "bnb") {
    best = ord::branch_and_bound(t, objective);
  } else if (opt.algo == "brute") {
    best = ord::brute_force_order(t, objective);
  } else {
    throw UsageError("--algo must be dp, bnb or brute");
  }

  doc["result"]["total_time"] = best.total_time;
  doc["result"]["order"] = json::array();
  for (std::size_t idx : best.order) doc["result"]["order"].push_back(idx);
  if (!t.labels.empty()) {
    doc["result"]["speeds"] = json::array();
    for (std::size_t idx : best.order) doc["result"]["speeds"].push_back(t.labels[idx]);
  }
  doc["result"]["objective"] = opt.objective;
  doc["diagnostics"]["algo"] = opt.algo;
  doc["diagnostics"]["nodes"] = best.nodes;

  std::cout << "total time: " << four_digits(best.total_time) << "\norder:";
  for (std::size_t idx : best.order) std::cout << ' ' << idx;
  std::cout << '\n';
  if (!t.labels.empty()) {
    std::cout << "speeds:";
    for (std::size_t idx : best.order) std::cout << ' ' << four_digits(t.labels[idx]);
    std::cout << '\n';
  }
  const double dt_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  finalize(opt, doc, dt_s);
  return 0;
}

// ---- schedule ---------------------------------------------------------------

int cmd_schedule(const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto loaded = load(opt);
  if (!loaded.file.jobs) throw UsageError("scenario is missing the required section 'jobs'");
  json doc = result_skeleton("schedule", loaded.digest);

  sched::Criterion criterion;
  if (opt.criterion == "f1") {
    criterion = sched::Criterion::kF1;
  } else if (opt.criterion == "f2") {
    criterion = sched::Criterion::kF2;
  } else if (opt.criterion == "f3") {
    criterion = sched::Criterion::kF3;
  } else if (opt.criterion == "f4") {
    criterion = sched::Criterion::kF4;
  } else {
    throw UsageError("--criterion must be one of f1, f2, f3, f4");
  }

  const auto s = sched::optimal_order(*loaded.file.jobs, criterion);
  doc["result"]["order"] = json::array();
  for (std::size_t idx : s.order) doc["result"]["order"].push_back(idx);
  doc["result"]["completions"] = vector_to_json(s.completions);
  doc["result"]["f1"] = s.f1;
  doc["result"]["f2"] = s.f2;
  doc["result"]["f3"] = s.f3;
  doc["result"]["f4"] = s.f4;
  doc["result"]["criterion"] = opt.criterion;

  std::cout << "order:";
  for (std::size_t idx : s.order) std::cout << ' ' << idx;
  std::cout << "\nf1=" << four_digits(s.f1) << " f2=" << four_digits(s.f2)
            << " f3=" << four_digits(s.f3) << " f4=" << four_digits(s.f4) << '\n';
  const double dt_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  finalize(opt, doc, dt_s);
  return 0;
}

// ---- stopping ---------------------------------------------------------------

int cmd_stopping(const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  std::size_t n = opt.stopping_n;
  std::string digest;
  if (!opt.scenario_path.empty()) {
    const auto loaded = load(opt);
    if (!loaded.file.stopping_n) {
      throw UsageError("scenario is missing the required section 'stopping'");
    }
    n = *loaded.file.stopping_n;
    digest = loaded.digest;
  } else {
    digest = io::input_digest("stopping n=" + std::to_string(n) +
                              " trials=" + std::to_string(opt.stopping_trials) +
                              " seed=" + std::to_string(opt.seed));
  }
  if (n == 0) throw UsageError("pass --n or a scenario with a 'stopping' section");

  json doc = result_skeleton("stopping", digest);
  const auto choice = stp::optimal_threshold(n);
  const double mc = stp::simulate(n, choice.policy.threshold, opt.stopping_trials, opt.seed);

  doc["result"]["n"] = n;
  doc["result"]["threshold"] = choice.policy.threshold;
  doc["result"]["probability"] = choice.probability;
  doc["result"]["crossing"] = choice.crossing;
  doc["result"]["monte_carlo"] = mc;
  doc["diagnostics"]["trials"] = opt.stopping_trials;
  doc["diagnostics"]["seed"] = opt.seed;

  std::cout << "skip first " << choice.policy.threshold << " of " << n << '\n'
            << "success probability: " << four_digits(choice.probability) << '\n'
            << "monte carlo estimate: " << four_digits(mc) << '\n';
  const double dt_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  finalize(opt, doc, dt_s);
  return 0;
}

// ---- trajectory -------------------------------------------------------------

int cmd_trajectory(const Options& opt) {
  const auto t0 = std::chrono::steady_clock::now();
  const auto loaded = load(opt);
  const auto& scenario = need_pursuit(loaded.file);
  if (!(opt.dt > 0.0)) throw UsageError("--dt must be positive");
  if (!(opt.evader_speed > 0.0)) throw UsageError("--evader-speed must be positive");

  const auto order = parse_order_spec(opt.order_spec, scenario.speed_set.size());
  const kin::EvaderStrategy evader{opt.evader_direction, opt.evader_speed};
  const auto samples = kin::sample_trajectory(scenario, order, evader, opt.dt);

  json doc = result_skeleton("trajectory", loaded.digest);
  doc["result"]["samples"] = samples.size();
  doc["result"]["capture_time"] = samples.back().t;
  doc["result"]["capture_radius"] = samples.back().rho;
  std::ostringstream csv_stream;
  io::write_trajectory_csv(csv_stream, samples);
  const std::string csv = csv_stream.str();

  std::cout << "samples: " << samples.size() << '\n'
            << "capture time: " << four_digits(samples.back().t) << '\n';
  const double dt_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  finalize(opt, doc, dt_s, csv);
  return 0;
}

}  // namespace

namespace {

int run_cli(int argc, char** argv) {
  CLI::App app{"pursuit - spiral interception times, games, assignments, check orders"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--scenario", opt.scenario_path, "scenario JSON file");
    cmd->add_option("--out", opt.out_path, "write the machine-readable result here");
    cmd->add_option("--format", opt.format, "out file format: structured|csv");
  };

  auto* matrix = app.add_subcommand("matrix", "emit a labeled time matrix");
  matrix->add_option("kind", opt.kind, "game|assignment|check");
  add_common(matrix);

  auto* solve = app.add_subcommand("solve-game", "solve the capture-time matrix game");
  add_common(solve);
  solve->add_option("--method", opt.method, "fp|exact|auto");
  solve->add_option("--iters", opt.iters, "fictitious play round limit");
  solve->add_option("--tol", opt.tol, "fictitious play bound-width stop");

  auto* assign = app.add_subcommand("assign", "optimal interceptor-target assignment");
  add_common(assign);

  auto* order = app.add_subcommand("order", "optimal speed-check order");
  add_common(order);
  order->add_option("--algo", opt.algo, "dp|bnb|brute");
  order->add_option("--objective", opt.objective, "open|closed");

  auto* schedule = app.add_subcommand("schedule", "sequence pursuit jobs");
  add_common(schedule);
  schedule->add_option("--criterion", opt.criterion, "f1|f2|f3|f4");

  auto* stopping = app.add_subcommand("stopping", "optimal stopping threshold");
  add_common(stopping);
  stopping->add_option("--n", opt.stopping_n, "number of options");
  stopping->add_option("--trials", opt.stopping_trials, "Monte Carlo trials");
  stopping->add_option("--seed", opt.seed, "Monte Carlo seed");

  auto* trajectory = app.add_subcommand("trajectory", "sampled pursuer path");
  add_common(trajectory);
  trajectory->add_option("--order", opt.order_spec, "comma-separated speed indices");
  trajectory->add_option("--evader-speed", opt.evader_speed, "true evader speed");
  trajectory->add_option("--evader-direction", opt.evader_direction, "bearing, degrees");
  trajectory->add_option("--dt", opt.dt, "sample step");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (matrix->parsed()) return cmd_matrix(opt);
    if (solve->parsed()) return cmd_solve_game(opt);
    if (assign->parsed()) return cmd_assign(opt);
    if (order->parsed()) return cmd_order(opt);
    if (schedule->parsed()) return cmd_schedule(opt);
    if (stopping->parsed()) return cmd_stopping(opt);
    if (trajectory->parsed()) return cmd_trajectory(opt);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const pursuit::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  }
  return 2;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run_cli(argc, argv);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 3;
  } catch (...) {
    std::cerr << "error: unknown failure\n";
    return 3;
  }
}
