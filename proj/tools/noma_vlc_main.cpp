// Copyright (c) noma-vlc contributors
// SPDX-License-Identifier: Apache-2.0
//
// Command-line harness: scenario generation, solving, P_max sweeps and
// brute-force validation for the NOMA VLC power-allocation library.
//
// Exit codes: 0 success, 1 usage or input error, 2 solver failure,
// 3 validation failure.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "nomavlc/json_io.hpp"
#include "nomavlc/oracle.hpp"
#include "nomavlc/scenario_gen.hpp"
#include "nomavlc/solver.hpp"
#include "nomavlc/sweep.hpp"

namespace {

constexpr const char* kVersion = "noma-vlc 1.0.0";

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitSolverFailure = 2;
constexpr int kExitValidationFailure = 3;

int run_gen(const nomavlc::RoomConfig& room, const nomavlc::ScenarioDefaults& defaults,
            bool delta_given, const std::string& out_path) {
  if (!delta_given) {
    std::fprintf(stderr,
                 "warning: --delta not given; defaulting pam_coefficient to 1.0\n");
  }
  const nomavlc::GeneratedScenario gen = nomavlc::gen_scenario(room, defaults);
  nomavlc::write_text_file(out_path, nomavlc::scenario_to_json(gen).dump(2) + "\n");
  std::printf("wrote %s (%d users, u_max=%g)\n", out_path.c_str(),
              gen.scenario.num_users(), gen.scenario.u_max);
  return kExitOk;
}

int run_solve(const std::string& scenario_path, const std::string& config_path,
              const std::string& out_path) {
  const nomavlc::Scenario s = nomavlc::load_scenario_file(scenario_path);
  nomavlc::SolverConfig cfg;
  if (!config_path.empty()) cfg = nomavlc::load_solver_config_file(config_path);
  const nomavlc::SolveResult res = nomavlc::solve(s, cfg);
  const std::string text = nomavlc::solve_result_to_json(s, res).dump(2) + "\n";
  if (out_path.empty()) {
    std::fputs(text.c_str(), stdout);
  } else {
    nomavlc::write_text_file(out_path, text);
  }
  if (res.status != nomavlc::SolveStatus::optimal) {
    std::fprintf(stderr, "error: solve finished with status %s\n",
                 std::string(nomavlc::to_string(res.status)).c_str());
    return kExitSolverFailure;
  }
  return kExitOk;
}

int run_sweep_cmd(const std::string& scenario_path, const std::string& config_path,
                  const std::vector<double>& pmax_list, const std::string& csv_path) {
  const nomavlc::Scenario s = nomavlc::load_scenario_file(scenario_path);
  nomavlc::SolverConfig cfg;
  if (!config_path.empty()) cfg = nomavlc::load_solver_config_file(config_path);
  nomavlc::SweepSpec spec;
  if (!pmax_list.empty()) spec.p_max_values_mw = pmax_list;
  const auto rows =
      nomavlc::run_sweep(s, spec, cfg, nomavlc::sweep_threads_from_env());
  nomavlc::write_text_file(csv_path, nomavlc::sweep_to_csv(rows));
  bool all_optimal = true;
  for (const auto& row : rows) {
    all_optimal = all_optimal && row.status == nomavlc::SolveStatus::optimal;
  }
  std::printf("wrote %s (%zu rows)\n", csv_path.c_str(), rows.size());
  if (!all_optimal) {
    std::fprintf(stderr, "error: some sweep rows did not reach optimal status\n");
    return kExitSolverFailure;
  }
  return kExitOk;
}

int run_validate(const std::string& scenario_path, const std::string& config_path,
                 int resolution, int threads) {
  const nomavlc::Scenario s = nomavlc::load_scenario_file(scenario_path);
  nomavlc::SolverConfig cfg;
  if (!config_path.empty()) cfg = nomavlc::load_solver_config_file(config_path);

  const nomavlc::SolveResult sol = nomavlc::solve(s, cfg);
  if (sol.status != nomavlc::SolveStatus::optimal) {
    std::fprintf(stderr, "error: solve finished with status %s\n",
                 std::string(nomavlc::to_string(sol.status)).c_str());
    return kExitSolverFailure;
  }

  nomavlc::GridSpec grid;
  grid.resolution = resolution;
  grid.threads = threads;
  const nomavlc::GridSearchResult oracle = nomavlc::grid_search(s, grid);

  const double rel =
      std::abs(oracle.objective - sol.objective) / std::abs(sol.objective);
  const double tol = std::max(1e-3, oracle.error_bound);
  std::printf("solver objective:  %.12g\n", sol.objective);
  std::printf("oracle objective:  %.12g (resolution %d, bound %.3g)\n",
              oracle.objective, oracle.resolution, oracle.error_bound);
  std::printf("relative gap:      %.3g (tolerance %.3g)\n", rel, tol);
  if (!(rel <= tol)) {
    std::fprintf(stderr, "error: solver and oracle disagree beyond tolerance\n");
    return kExitValidationFailure;
  }
  std::printf("validation passed\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Optimal NOMA downlink power allocation for a single-LED VLC cell"};
  app.set_version_flag("--version", kVersion);
  app.require_subcommand(1);

  // gen-scenario
  auto* gen = app.add_subcommand("gen-scenario", "Generate a random user drop");
  nomavlc::RoomConfig room;
  nomavlc::ScenarioDefaults defaults;
  std::string gen_out;
  double fov_deg = 60.0, semiangle_deg = 60.0;
  gen->add_option("--seed", room.seed, "RNG seed")->capture_default_str();
  gen->add_option("--users", room.num_users, "number of users")->capture_default_str();
  gen->add_option("--out", gen_out, "output scenario JSON path")->required();
  gen->add_option("--pmax", defaults.p_max_mw, "transmit power budget, mW")
      ->capture_default_str();
  auto* delta_opt =
      gen->add_option("--delta", defaults.pam_coefficient, "PAM coefficient")
          ->capture_default_str();
  gen->add_option("--dc-bias", defaults.dc_bias, "DC bias A")->capture_default_str();
  gen->add_option("--peak", defaults.peak_intensity, "peak intensity B")
      ->capture_default_str();
  gen->add_option("--noise-dbm", defaults.noise_dbm, "noise power, dBm")
      ->capture_default_str();
  gen->add_option("--room-x", room.dimensions.x(), "room size x, m")
      ->capture_default_str();
  gen->add_option("--room-y", room.dimensions.y(), "room size y, m")
      ->capture_default_str();
  gen->add_option("--room-z", room.dimensions.z(), "room height, m")
      ->capture_default_str();
  gen->add_option("--fov-deg", fov_deg, "receiver field of view, degrees")
      ->capture_default_str();
  gen->add_option("--semiangle-deg", semiangle_deg, "LED half-power semiangle, degrees")
      ->capture_default_str();

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve one scenario");
  std::string solve_scenario, solve_config, solve_out;
  solve_cmd->add_option("--scenario", solve_scenario, "scenario JSON path")->required();
  solve_cmd->add_option("--config", solve_config, "solver config JSON path");
  solve_cmd->add_option("--out", solve_out, "result JSON path (default stdout)");

  // sweep
  auto* sweep_cmd = app.add_subcommand("sweep", "Sweep P_max over one drop");
  std::string sweep_scenario, sweep_config, sweep_csv;
  std::vector<double> pmax_list;
  sweep_cmd->add_option("--scenario", sweep_scenario, "scenario JSON path")->required();
  sweep_cmd->add_option("--config", sweep_config, "solver config JSON path");
  sweep_cmd->add_option("--pmax-list", pmax_list, "comma-separated budgets, mW")
      ->delimiter(',');
  sweep_cmd->add_option("--csv", sweep_csv, "output CSV path")->required();

  // validate
  auto* val_cmd = app.add_subcommand("validate", "Check the solver against the grid oracle");
  std::string val_scenario, val_config;
  int val_resolution = 0, val_threads = 0;
  val_cmd->add_option("--scenario", val_scenario, "scenario JSON path")->required();
  val_cmd->add_option("--config", val_config, "solver config JSON path");
  val_cmd->add_option("--resolution", val_resolution,
                      "grid points per axis (0 = per-M default)");
  val_cmd->add_option("--threads", val_threads, "oracle worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);  // prints the message; 0 for --help/--version
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      const double deg = std::numbers::pi / 180.0;
      defaults.front_end.fov = fov_deg * deg;
      defaults.semiangle_half_power = semiangle_deg * deg;
      return run_gen(room, defaults, delta_opt->count() > 0, gen_out);
    }
    if (solve_cmd->parsed()) return run_solve(solve_scenario, solve_config, solve_out);
    if (sweep_cmd->parsed()) {
      return run_sweep_cmd(sweep_scenario, sweep_config, pmax_list, sweep_csv);
    }
    if (val_cmd->parsed()) {
      return run_validate(val_scenario, val_config, val_resolution, val_threads);
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitUsage;
  }
  return kExitUsage;
}
