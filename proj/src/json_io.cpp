// Copyright (c) noma-vlc contributors
// SPDX-License-Identifier: Apache-2.0

#include "nomavlc/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace nomavlc {

namespace {

using nlohmann::json;

double require_number(const json& j, const char* field) {
  const auto it = j.find(field);
  if (it == j.end()) {
    throw std::runtime_error(std::string("missing field \"") + field + "\"");
  }
  if (!it->is_number()) {
    throw std::runtime_error(std::string("field \"") + field + "\" must be a number");
  }
  return it->get<double>();
}

void reject_unknown_keys(const json& j, std::initializer_list<const char*> known,
                         const char* what) {
  for (const auto& [key, value] : j.items()) {
    bool ok = false;
    for (const char* k : known) ok = ok || key == k;
    if (!ok) {
      throw std::runtime_error(std::string(what) + " has unknown field \"" + key + "\"");
    }
  }
}

}  // namespace

Scenario scenario_from_json(const json& j) {
  if (!j.is_object()) throw std::runtime_error("scenario must be a JSON object");
  reject_unknown_keys(j,
                      {"gains", "noise_power_mw", "p_max_mw", "dc_bias",
                       "peak_intensity", "pam_coefficient", "geometry"},
                      "scenario");
  const auto it = j.find("gains");
  if (it == j.end()) throw std::runtime_error("missing field \"gains\"");
  if (!it->is_array() || it->empty()) {
    throw std::runtime_error("field \"gains\" must be a non-empty array");
  }
  std::vector<double> gains;
  gains.reserve(it->size());
  for (std::size_t i = 0; i < it->size(); ++i) {
    if (!(*it)[i].is_number()) {
      throw std::runtime_error("field \"gains[" + std::to_string(i) +
                               "]\" must be a number");
    }
    gains.push_back((*it)[i].get<double>());
  }
  const double noise = require_number(j, "noise_power_mw");
  const double p_max = require_number(j, "p_max_mw");
  const double dc_bias = require_number(j, "dc_bias");
  const double peak = require_number(j, "peak_intensity");
  const double pam = require_number(j, "pam_coefficient");
  return build_scenario(gains, noise, p_max, dc_bias, peak, pam);
}

json scenario_to_json(const Scenario& s) {
  const Eigen::VectorXd original = s.to_original_order(s.gains);
  json j;
  j["gains"] = std::vector<double>(original.begin(), original.end());
  j["noise_power_mw"] = s.noise_power_mw;
  j["p_max_mw"] = s.p_max_mw;
  j["dc_bias"] = s.dc_bias;
  j["peak_intensity"] = s.peak_intensity;
  j["pam_coefficient"] = s.pam_coefficient;
  return j;
}

json scenario_to_json(const GeneratedScenario& g) {
  json j = scenario_to_json(g.scenario);
  json geo;
  geo["led_position"] = {g.led.position.x(), g.led.position.y(), g.led.position.z()};
  geo["semiangle_half_power_rad"] = g.led.semiangle_half_power;
  json users = json::array();
  for (const auto& pos : g.user_positions) {
    users.push_back({pos.x(), pos.y(), pos.z()});
  }
  geo["user_positions"] = std::move(users);
  j["geometry"] = std::move(geo);
  return j;
}

SolverConfig solver_config_from_json(const json& j) {
  if (!j.is_object()) throw std::runtime_error("solver config must be a JSON object");
  reject_unknown_keys(j,
                      {"barrier_mu", "t_init", "gap_tol", "newton_tol", "max_outer",
                       "max_newton", "line_search_alpha", "line_search_beta",
                       "feasibility_slack"},
                      "solver config");
  SolverConfig cfg;
  const auto number = [&](const char* field, double& target) {
    if (const auto it = j.find(field); it != j.end()) {
      if (!it->is_number()) {
        throw std::runtime_error(std::string("field \"") + field +
                                 "\" must be a number");
      }
      target = it->get<double>();
    }
  };
  const auto integer = [&](const char* field, int& target) {
    if (const auto it = j.find(field); it != j.end()) {
      if (!it->is_number_integer()) {
        throw std::runtime_error(std::string("field \"") + field +
                                 "\" must be an integer");
      }
      target = it->get<int>();
    }
  };
  number("barrier_mu", cfg.barrier_mu);
  number("t_init", cfg.t_init);
  number("gap_tol", cfg.gap_tol);
  number("newton_tol", cfg.newton_tol);
  integer("max_outer", cfg.max_outer);
  integer("max_newton", cfg.max_newton);
  number("line_search_alpha", cfg.line_search_alpha);
  number("line_search_beta", cfg.line_search_beta);
  number("feasibility_slack", cfg.feasibility_slack);
  try {
    cfg.validate();
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("solver config: ") + e.what());
  }
  return cfg;
}

json solve_result_to_json(const Scenario& s, const SolveResult& r) {
  json j;
  j["status"] = std::string(to_string(r.status));
  j["powers_mw"] =
      std::vector<double>(r.allocation.powers_mw.begin(), r.allocation.powers_mw.end());
  j["harmonic_objective"] = r.objective;
  j["transformed_objective"] = r.transformed_objective;
  j["kkt_residual"] = r.kkt_residual;
  j["outer_iterations"] = r.outer_iterations;
  j["newton_iterations"] = r.newton_iterations;
  const RateReport report =
      rate_report(s, PowerAllocation{s.to_sorted_order(r.allocation.powers_mw)});
  j["sum_rate_nats"] = report.sum_rate;
  const Eigen::VectorXd rates = s.to_original_order(report.rates);
  j["rates_nats"] = std::vector<double>(rates.begin(), rates.end());
  return j;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("scenario file is not valid JSON: " + std::string(e.what()));
  }
  try {
    return scenario_from_json(j);
  } catch (const std::invalid_argument& e) {
    throw std::runtime_error(std::string("scenario file: ") + e.what());
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(std::string("scenario file: ") + e.what());
  }
}

SolverConfig load_solver_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  json j;
  try {
    in >> j;
  } catch (const json::parse_error& e) {
    throw std::runtime_error("config file is not valid JSON: " + std::string(e.what()));
  }
  return solver_config_from_json(j);
}

void write_text_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open output file: " + path);
  out << contents;
  if (!out) throw std::runtime_error("failed writing output file: " + path);
}

}  // namespace nomavlc
