// Copyright 2026 The Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line driver: solve-equilibrium | welfare-bounds | allocate |
// estimate | simulate | evaluate-regret | gof | diagnose.
// Exit codes: 0 success, 2 validation error, 3 numeric non-convergence.

#include <chrono>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "netgame/io.hpp"
#include "netgame/parallel.hpp"
#include "netgame/sim_harness.hpp"

namespace fs = std::filesystem;
using namespace netgame;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitNonConvergence = 3;

struct GameArgs {
  std::string network;
  bool directed = false;
  std::string covariates;
  std::string config;
  std::string alloc;  // optional treatment CSV

  void attach(CLI::App* cmd) {
    cmd->add_option("--network", network, "network file (edge CSV or dense matrix)")->required();
    cmd->add_flag("--directed", directed, "treat the network file as directed");
    cmd->add_option("--covariates", covariates, "covariate CSV")->required();
    cmd->add_option("--config", config, "theta + shock JSON")->required();
    cmd->add_option("--alloc", alloc, "treatment CSV (default: all untreated)");
  }

  Game load(std::vector<std::string>* warnings) const {
    return load_game(GamePaths{network, directed, covariates, config}, warnings);
  }

  Allocation load_alloc(const Game& game) const {
    if (alloc.empty()) return Allocation::none(game.size());
    return load_allocation(alloc, game.size());
  }

  void record_inputs(ManifestWriter& manifest) const {
    manifest.add_input(network);
    manifest.add_input(covariates);
    manifest.add_input(config);
    if (!alloc.empty()) manifest.add_input(alloc);
  }
};

struct CommonArgs {
  std::string out_dir = ".";
  double tol = 1e-10;
  int max_iter = 10000;
  int threads = 0;
  std::uint64_t seed = 0;

  void attach(CLI::App* cmd) {
    cmd->add_option("--out-dir", out_dir, "output directory (created if missing)");
    cmd->add_option("--tol", tol, "fixed-point tolerance (sup norm)");
    cmd->add_option("--max-iter", max_iter, "fixed-point iteration cap");
    cmd->add_option("--threads", threads, "worker threads (default: NETGAME_THREADS or cores)");
    cmd->add_option("--seed", seed, "random seed");
  }

  SolveOptions solve_options() const {
    SolveOptions opts;
    opts.tol = tol;
    opts.max_iter = max_iter;
    opts.threads = effective_threads();
    return opts;
  }

  int effective_threads() const { return threads > 0 ? threads : default_thread_count(); }

  std::string path(const std::string& name) const { return (fs::path(out_dir) / name).string(); }

  void prepare() const { fs::create_directories(out_dir); }
};

void print_warnings(const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) std::cerr << "warning: " << w << "\n";
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int run_solve_equilibrium(const GameArgs& game_args, const CommonArgs& common) {
  Stopwatch clock;
  common.prepare();
  std::vector<std::string> warnings;
  Game game = game_args.load(&warnings);
  print_warnings(warnings);
  Allocation alloc = game_args.load_alloc(game);

  SolveOptions opts = common.solve_options();
  FixedPointReport least = solve_least(game, alloc, opts);
  FixedPointReport greatest = solve_greatest(game, alloc, opts);

  ManifestWriter manifest("solve-equilibrium", common.seed);
  game_args.record_inputs(manifest);
  manifest.set_config("tol", format_double(opts.tol));
  manifest.set_config("max_iter", std::to_string(opts.max_iter));

  write_file(common.path("least.csv"), ccp_csv(least.profile));
  write_file(common.path("greatest.csv"), ccp_csv(greatest.profile));
  write_file(common.path("least_report.json"), fixed_point_report_json(least));
  write_file(common.path("greatest_report.json"), fixed_point_report_json(greatest));
  manifest.add_output(common.path("least.csv"));
  manifest.add_output(common.path("greatest.csv"));
  manifest.add_output(common.path("least_report.json"));
  manifest.add_output(common.path("greatest_report.json"));
  manifest.set_wall_clock(clock.seconds());
  manifest.write(common.path("manifest.json"));

  std::cout << "least iterations=" << least.iterations << " residual=" << least.residual
            << "\ngreatest iterations=" << greatest.iterations
            << " residual=" << greatest.residual << "\n";
  if (!least.converged || !greatest.converged) {
    std::cerr << "error: fixed-point iteration did not converge within " << opts.max_iter
              << " iterations\n";
    return kExitNonConvergence;
  }
  return kExitOk;
}

int run_welfare_bounds(const GameArgs& game_args, const CommonArgs& common,
                       const std::string& objective_name, bool strict_corollary) {
  Stopwatch clock;
  common.prepare();
  std::vector<std::string> warnings;
  Game game = game_args.load(&warnings);
  print_warnings(warnings);
  Allocation alloc = game_args.load_alloc(game);
  WelfareObjective objective = objective_from_string(objective_name);

  SolveOptions opts = common.solve_options();
  WelfareBounds bounds = objective == WelfareObjective::utilitarian
                             ? utilitarian_bounds(game, alloc, opts, strict_corollary)
                             : engagement_bounds(game, alloc, opts);

  write_file(common.path("welfare_bounds.json"), welfare_bounds_json(bounds));
  ManifestWriter manifest("welfare-bounds", common.seed);
  game_args.record_inputs(manifest);
  manifest.set_config("objective", objective_name);
  manifest.add_output(common.path("welfare_bounds.json"));
  manifest.set_wall_clock(clock.seconds());
  manifest.write(common.path("manifest.json"));

  std::cout << to_string(objective) << " [" << format_double(bounds.lower) << ", "
            << format_double(bounds.upper) << "]\n";
  if (bounds.literal_upper.has_value())
    std::cout << "literal-upper " << format_double(*bounds.literal_upper) << "\n";
  return kExitOk;
}

int run_allocate(const GameArgs& game_args, const CommonArgs& common, int kappa,
                 const std::string& method_name, const std::string& objective_name, int draws,
                 bool stop_if_nonpositive, bool warm_start, std::uint64_t budget) {
  Stopwatch clock;
  common.prepare();
  std::vector<std::string> warnings;
  Game game = game_args.load(&warnings);
  print_warnings(warnings);

  AllocOptions opts;
  opts.objective = objective_from_string(objective_name);
  opts.solve = common.solve_options();
  opts.solve.threads = 1;
  opts.threads = common.effective_threads();
  opts.stop_if_nonpositive = stop_if_nonpositive;
  opts.warm_start = warm_start;
  opts.budget = budget;

  ManifestWriter manifest("allocate", common.seed);
  game_args.record_inputs(manifest);
  manifest.set_config("kappa", std::to_string(kappa));
  manifest.set_config("method", method_name);
  manifest.set_config("objective", objective_name);

  if (method_name == "random") {
    RandomAllocationReport report = random_allocate(game, kappa, common.seed, draws, opts);
    write_file(common.path("random_draws.json"), random_allocation_json(report));
    manifest.add_output(common.path("random_draws.json"));
    std::cout << "random mean [" << format_double(report.mean_lower) << ", "
              << format_double(report.mean_upper) << "] over " << draws << " draws\n";
  } else {
    AllocationResult result;
    if (method_name == "greedy") {
      result = greedy_allocate(game, kappa, opts);
    } else if (method_name == "exhaustive") {
      result = exhaustive_allocate(game, kappa, opts);
    } else {
      throw ValidationError("unknown allocation method: " + method_name);
    }
    write_file(common.path("allocation.csv"), allocation_csv(result.allocation));
    write_file(common.path("allocation.json"), allocation_result_json(result));
    manifest.add_output(common.path("allocation.csv"));
    manifest.add_output(common.path("allocation.json"));
    std::cout << method_name << " [" << format_double(result.welfare_lower) << ", "
              << format_double(result.welfare_upper) << "] treated "
              << result.allocation.treated_count() << "\n";
  }
  manifest.set_wall_clock(clock.seconds());
  manifest.write(common.path("manifest.json"));
  return kExitOk;
}

int run_estimate(const CommonArgs& common, const std::string& panel_path,
                 const std::string& network_path, bool directed, const std::string& shock_name,
                 const std::string& first_stage_name, int bin_decimals, int gof_column,
                 std::vector<double> gof_cuts) {
  Stopwatch clock;
  common.prepare();
  ObservedPanel panel = load_panel(panel_path, network_path, directed);
  ShockDistribution shock(shock_kind_from_string(shock_name));
  FirstStage first_stage = first_stage_from_string(first_stage_name);
  if (first_stage == FirstStage::oracle)
    throw ValidationError("the oracle first stage is reserved for synthetic experiments");

  FirstStageConfig fs_config;
  fs_config.bin_decimals = bin_decimals;
  FitReport fit = fit_mle(panel, shock, first_stage, fs_config);
  print_warnings(fit.warnings);

  if (gof_cuts.empty()) {
    // Default: quartile cuts of the chosen covariate column.
    std::vector<double> values;
    values.reserve(panel.size());
    for (int i = 0; i < panel.size(); ++i) values.push_back(panel.covariates.at(i, gof_column));
    std::sort(values.begin(), values.end());
    for (double q : {0.25, 0.5, 0.75}) {
      double cut = values[static_cast<std::size_t>(q * (values.size() - 1))];
      if (gof_cuts.empty() || cut > gof_cuts.back()) gof_cuts.push_back(cut);
    }
  }
  GofReport gof = gof_chisq(panel, fit, GofBins{gof_column, gof_cuts}, shock);
  print_warnings(gof.warnings);

  write_file(common.path("fit.json"), fit_report_json(fit, &gof));
  write_file(common.path("sigma_hat.csv"), ccp_csv(fit.sigma_hat));
  write_file(common.path("theta_hat.json"),
             theta_config_json(ThetaConfig{fit.theta_hat, shock.kind()}));

  ManifestWriter manifest("estimate", common.seed);
  manifest.add_input(panel_path);
  manifest.add_input(network_path);
  manifest.set_config("first_stage", first_stage_name);
  manifest.set_config("shock", shock_name);
  manifest.add_output(common.path("fit.json"));
  manifest.add_output(common.path("sigma_hat.csv"));
  manifest.add_output(common.path("theta_hat.json"));
  manifest.set_wall_clock(clock.seconds());
  manifest.write(common.path("manifest.json"));

  std::cout << "loglik=" << format_double(fit.loglik) << " gradient_norm="
            << format_double(fit.gradient_norm) << " iterations=" << fit.iterations << "\n";
  int flagged = 0;
  for (const auto& bin : gof.bins)
    if (bin.flagged) ++flagged;
  std::cout << "gof bins flagged at " << format_double(gof.critical_value) << ": " << flagged
            << "\n";
  if (!fit.converged) {
    std::cerr << "error: quasi-likelihood ascent did not converge\n";
    return kExitNonConvergence;
  }
  return kExitOk;
}

int run_simulate(const GameArgs& game_args, const CommonArgs& common,
                 const std::string& selection_name) {
  Stopwatch clock;
  common.prepare();
  std::vector<std::string> warnings;
  Game game = game_args.load(&warnings);
  print_warnings(warnings);
  Allocation alloc = game_args.load_alloc(game);
  SelectionRule selection = selection_from_string(selection_name);

  std::vector<std::uint8_t> y =
      simulate_play(game, alloc, selection, common.seed, common.solve_options());
  std::string csv = "unit_id,y\n";
  for (std::size_t i = 0; i < y.size(); ++i)
    csv += std::to_string(i) + "," + std::to_string(static_cast<int>(y[i])) + "\n";
  write_file(common.path("choices.csv"), csv);

  ManifestWriter manifest("simulate", common.seed);
  game_args.record_inputs(manifest);
  manifest.set_config("selection", selection_name);
  manifest.add_output(common.path("choices.csv"));
  manifest.set_wall_clock(clock.seconds());
  manifest.write(common.path("manifest.json"));

  int ones = 0;
  for (auto v : y) ones += v;
  std::cout << "adopters " << ones << "/" << y.size() << "\n";
  return kExitOk;
}

DgpSpec parse_dgp(const std::string& path) {
  nlohmann::json j = nlohmann::json::parse(read_file(path));
  DgpSpec dgp;
  std::string generator = j.value("generator", std::string("erdos_renyi"));
  if (generator == "erdos_renyi") {
    dgp.generator = NetworkGenerator::erdos_renyi;
  } else if (generator == "ring") {
    dgp.generator = NetworkGenerator::ring;
  } else if (generator == "path") {
    dgp.generator = NetworkGenerator::path;
  } else if (generator == "from_file") {
    dgp.generator = NetworkGenerator::from_file;
  } else {
    throw ValidationError("unknown network generator: " + generator);
  }
  dgp.edge_probability = j.value("edge_probability", 0.1);
  dgp.ring_degree = j.value("ring_degree", 2);
  dgp.network_file = j.value("network_file", std::string());
  dgp.network_directed = j.value("network_directed", false);
  dgp.n = j.value("n", 0);
  for (const auto& range : j.value("covariate_ranges", nlohmann::json::array()))
    dgp.covariate_ranges.emplace_back(range.at(0).get<double>(), range.at(1).get<double>());
  const auto& jt = j.at("theta");
  dgp.theta.theta0 = jt.value("theta0", 0.0);
  dgp.theta.theta1 = jt.value("theta1", 0.0);
  dgp.theta.theta2 = jt.value("theta2", std::vector<double>{});
  dgp.theta.theta3 = jt.value("theta3", std::vector<double>{});
  dgp.theta.theta4 = jt.value("theta4", 0.0);
  dgp.theta.theta5 = jt.value("theta5", 0.0);
  dgp.theta.theta6 = jt.value("theta6", 0.0);
  if (dgp.theta.theta3.empty()) dgp.theta.theta3.assign(dgp.theta.theta2.size(), 0.0);
  dgp.shock = shock_kind_from_string(j.value("shock", std::string("logistic")));
  dgp.selection = selection_from_string(j.value("selection", std::string("least")));
  dgp.seed = j.value("seed", 0ULL);
  dgp.train_kappa = j.value("train_kappa", 0);
  dgp.forbid_isolated = j.value("forbid_isolated", false);
  return dgp;
}

int run_evaluate_regret(const CommonArgs& common, const std::string& dgp_path,
                        const GameArgs& target_args, int kappa, int reps,
                        std::vector<int> n_train_grid, const std::string& first_stage_name) {
  Stopwatch clock;
  common.prepare();
  DgpSpec dgp = parse_dgp(dgp_path);
  std::vector<std::string> warnings;
  Game target = target_args.load(&warnings);
  print_warnings(warnings);

  RegretOptions opts;
  opts.first_stage = first_stage_from_string(first_stage_name);
  opts.alloc.solve = common.solve_options();
  opts.alloc.solve.threads = 1;
  opts.threads = common.effective_threads();

  std::vector<RegretRow> all_rows;
  for (int n_train : n_train_grid) {
    RegretSummary summary =
        evaluate_regret(dgp, n_train, target, kappa, reps, common.seed, opts);
    all_rows.insert(all_rows.end(), summary.rows.begin(), summary.rows.end());
    std::cout << "n_train=" << n_train << " mean_regret=" << format_double(summary.mean_regret)
              << " max_regret=" << format_double(summary.max_regret) << "\n";
  }
  write_file(common.path("regret.csv"), regret_csv(all_rows));

  ManifestWriter manifest("evaluate-regret", common.seed);
  manifest.add_input(dgp_path);
  target_args.record_inputs(manifest);
  manifest.set_config("kappa", std::to_string(kappa));
  manifest.set_config("reps", std::to_string(reps));
  manifest.add_output(common.path("regret.csv"));
  manifest.set_wall_clock(clock.seconds());
  manifest.write(common.path("manifest.json"));
  return kExitOk;
}

int run_gof(const CommonArgs& common, const std::string& panel_path,
            const std::string& network_path, bool directed, const std::string& fit_path,
            const std::string& shock_name, int column, const std::vector<double>& cuts) {
  Stopwatch clock;
  common.prepare();
  ObservedPanel panel = load_panel(panel_path, network_path, directed);
  FitReport fit = load_fit_report(fit_path);
  ShockDistribution shock(shock_kind_from_string(shock_name));
  GofReport gof = gof_chisq(panel, fit, GofBins{column, cuts}, shock);
  print_warnings(gof.warnings);
  write_file(common.path("gof.json"), gof_report_json(gof));

  ManifestWriter manifest("gof", common.seed);
  manifest.add_input(panel_path);
  manifest.add_input(network_path);
  manifest.add_input(fit_path);
  manifest.add_output(common.path("gof.json"));
  manifest.set_wall_clock(clock.seconds());
  manifest.write(common.path("manifest.json"));

  for (const auto& bin : gof.bins) {
    std::cout << "bin " << bin.bin << " statistic=" << format_double(bin.statistic)
              << (bin.flagged ? " FLAGGED" : "") << (bin.skipped ? " skipped" : "") << "\n";
  }
  return kExitOk;
}

int run_diagnose(const GameArgs& game_args, const CommonArgs& common, int cap) {
  Stopwatch clock;
  common.prepare();
  std::vector<std::string> warnings;
  Game game = game_args.load(&warnings);
  print_warnings(warnings);
  int effective_cap = cap > 0 ? cap : game.size();
  DiagnosticReport report = estimate_submodularity_curvature(
      game, effective_cap, WelfareObjective::engagement, common.solve_options());

  nlohmann::json j{{"gamma_hat", report.gamma_hat},
                   {"xi_hat", report.xi_hat},
                   {"guarantee_factor", report.guarantee_factor},
                   {"n", report.n}};
  write_file(common.path("diagnostics.json"), j.dump(2) + "\n");

  ManifestWriter manifest("diagnose", common.seed);
  game_args.record_inputs(manifest);
  manifest.add_output(common.path("diagnostics.json"));
  manifest.set_wall_clock(clock.seconds());
  manifest.write(common.path("manifest.json"));

  std::cout << "gamma_hat=" << format_double(report.gamma_hat)
            << " xi_hat=" << format_double(report.xi_hat)
            << " guarantee_factor=" << format_double(report.guarantee_factor) << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Robust maximin treatment allocation for binary-action network games"};
  app.require_subcommand(1);

  // solve-equilibrium
  auto* solve_cmd = app.add_subcommand("solve-equilibrium",
                                       "compute the least and greatest equilibrium CCP profiles");
  GameArgs solve_game;
  CommonArgs solve_common;
  solve_game.attach(solve_cmd);
  solve_common.attach(solve_cmd);

  // welfare-bounds
  auto* welfare_cmd =
      app.add_subcommand("welfare-bounds", "identified interval of equilibrium welfare");
  GameArgs welfare_game;
  CommonArgs welfare_common;
  std::string welfare_objective = "engagement";
  bool strict_corollary = false;
  welfare_game.attach(welfare_cmd);
  welfare_common.attach(welfare_cmd);
  welfare_cmd->add_option("--objective", welfare_objective, "engagement|utilitarian");
  welfare_cmd->add_flag("--strict-corollary", strict_corollary,
                        "also report the literal-text utilitarian upper bound");

  // allocate
  auto* alloc_cmd = app.add_subcommand("allocate", "choose a treatment allocation");
  GameArgs alloc_game;
  CommonArgs alloc_common;
  int kappa = 0;
  std::string method = "greedy";
  std::string alloc_objective = "engagement";
  int draws = 500;
  bool stop_if_nonpositive = false;
  bool warm_start = false;
  std::uint64_t budget = 2'000'000;
  alloc_game.attach(alloc_cmd);
  alloc_common.attach(alloc_cmd);
  alloc_cmd->add_option("--kappa", kappa, "treatment capacity")->required();
  alloc_cmd->add_option("--method", method, "greedy|exhaustive|random");
  alloc_cmd->add_option("--objective", alloc_objective, "engagement|utilitarian");
  alloc_cmd->add_option("--draws", draws, "number of random allocations");
  alloc_cmd->add_flag("--stop-if-nonpositive", stop_if_nonpositive,
                      "halt greedy when the best marginal gain is <= 0");
  alloc_cmd->add_flag("--warm-start", warm_start,
                      "screen candidates from the incumbent profile (validated cold)");
  alloc_cmd->add_option("--budget", budget, "exhaustive candidate budget");

  // estimate
  auto* estimate_cmd = app.add_subcommand("estimate", "two-step quasi-ML estimation");
  CommonArgs estimate_common;
  std::string panel_path;
  std::string est_network;
  bool est_directed = false;
  std::string shock_name = "logistic";
  std::string first_stage_name = "flexible_logit";
  int bin_decimals = 1;
  int gof_column = 0;
  std::vector<double> gof_cuts;
  estimate_common.attach(estimate_cmd);
  estimate_cmd->add_option("--panel", panel_path, "panel CSV (unit_id,y,d,x1..xK)")->required();
  estimate_cmd->add_option("--network", est_network, "network file")->required();
  estimate_cmd->add_flag("--directed", est_directed, "treat the network file as directed");
  estimate_cmd->add_option("--shock", shock_name, "logistic|gaussian");
  estimate_cmd->add_option("--first-stage", first_stage_name, "frequency|flexible_logit");
  estimate_cmd->add_option("--bin-decimals", bin_decimals,
                           "covariate binning decimals for the frequency estimator");
  estimate_cmd->add_option("--gof-column", gof_column, "covariate column for the chi-square table");
  estimate_cmd->add_option("--gof-cuts", gof_cuts, "explicit bin cut points");

  // simulate
  auto* simulate_cmd = app.add_subcommand("simulate", "draw one play of the game");
  GameArgs sim_game;
  CommonArgs sim_common;
  std::string selection_name = "least";
  sim_game.attach(simulate_cmd);
  sim_common.attach(simulate_cmd);
  simulate_cmd->add_option("--selection", selection_name,
                           "least|greatest|iterate_from_random");

  // evaluate-regret
  auto* regret_cmd = app.add_subcommand("evaluate-regret",
                                        "Monte Carlo regret of estimate-then-allocate");
  CommonArgs regret_common;
  GameArgs regret_target;
  std::string dgp_path;
  int regret_kappa = 1;
  int regret_reps = 10;
  std::vector<int> n_train_grid;
  std::string regret_first_stage = "flexible_logit";
  regret_common.attach(regret_cmd);
  regret_target.attach(regret_cmd);
  regret_cmd->add_option("--dgp", dgp_path, "DGP spec JSON")->required();
  regret_cmd->add_option("--kappa", regret_kappa, "target capacity")->required();
  regret_cmd->add_option("--reps", regret_reps, "Monte Carlo repetitions");
  regret_cmd->add_option("--n-train", n_train_grid, "training sizes")->required();
  regret_cmd->add_option("--first-stage", regret_first_stage,
                         "frequency|flexible_logit|oracle");

  // gof
  auto* gof_cmd = app.add_subcommand("gof", "chi-square screening table for a saved fit");
  CommonArgs gof_common;
  std::string gof_panel;
  std::string gof_network;
  bool gof_directed = false;
  std::string fit_path;
  std::string gof_shock = "logistic";
  int gof_col = 0;
  std::vector<double> gof_cut_list;
  gof_common.attach(gof_cmd);
  gof_cmd->add_option("--panel", gof_panel, "panel CSV")->required();
  gof_cmd->add_option("--network", gof_network, "network file")->required();
  gof_cmd->add_flag("--directed", gof_directed, "treat the network file as directed");
  gof_cmd->add_option("--fit", fit_path, "fit.json from estimate")->required();
  gof_cmd->add_option("--shock", gof_shock, "logistic|gaussian");
  gof_cmd->add_option("--column", gof_col, "covariate column");
  gof_cmd->add_option("--cuts", gof_cut_list, "bin cut points")->required();

  // diagnose
  auto* diagnose_cmd = app.add_subcommand(
      "diagnose", "submodularity ratio and curvature of the welfare set function");
  GameArgs diag_game;
  CommonArgs diag_common;
  int diag_cap = 0;
  diag_game.attach(diagnose_cmd);
  diag_common.attach(diagnose_cmd);
  diagnose_cmd->add_option("--cap", diag_cap, "largest subset size to enumerate (default N)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (solve_cmd->parsed()) return run_solve_equilibrium(solve_game, solve_common);
    if (welfare_cmd->parsed())
      return run_welfare_bounds(welfare_game, welfare_common, welfare_objective,
                                strict_corollary);
    if (alloc_cmd->parsed())
      return run_allocate(alloc_game, alloc_common, kappa, method, alloc_objective, draws,
                          stop_if_nonpositive, warm_start, budget);
    if (estimate_cmd->parsed())
      return run_estimate(estimate_common, panel_path, est_network, est_directed, shock_name,
                          first_stage_name, bin_decimals, gof_column, gof_cuts);
    if (simulate_cmd->parsed()) return run_simulate(sim_game, sim_common, selection_name);
    if (regret_cmd->parsed())
      return run_evaluate_regret(regret_common, dgp_path, regret_target, regret_kappa,
                                 regret_reps, n_train_grid, regret_first_stage);
    if (gof_cmd->parsed())
      return run_gof(gof_common, gof_panel, gof_network, gof_directed, fit_path, gof_shock,
                     gof_col, gof_cut_list);
    if (diagnose_cmd->parsed()) return run_diagnose(diag_game, diag_common, diag_cap);
    std::cerr << "error: no command given\n";
    return kExitValidation;
  } catch (const ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const InternalConsistencyError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNonConvergence;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
