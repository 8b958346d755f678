// Copyright (c) noma-vlc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <json.hpp>
#include <string>

#include "nomavlc/model.hpp"
#include "nomavlc/scenario_gen.hpp"
#include "nomavlc/solver.hpp"

namespace nomavlc {

/// Scenario file schema (flat JSON object):
///   gains              array of positive numbers, original user order
///   noise_power_mw     number > 0
///   p_max_mw           number > 0
///   dc_bias            number > 0
///   peak_intensity     number > dc_bias
///   pam_coefficient    number > 0
///   geometry           optional object, provenance only, ignored on load
/// Unknown fields are errors. All diagnostics are single-line and name the
/// offending field. Serialization uses shortest round-trip floats, so
/// save/load is lossless at full double precision.
Scenario scenario_from_json(const nlohmann::json& j);
nlohmann::json scenario_to_json(const Scenario& s);
nlohmann::json scenario_to_json(const GeneratedScenario& g);  // adds geometry

/// Solver config file: flat JSON with any subset of the SolverConfig
/// fields (barrier_mu, t_init, gap_tol, newton_tol, max_outer, max_newton,
/// line_search_alpha, line_search_beta, feasibility_slack). Unknown keys
/// are errors.
SolverConfig solver_config_from_json(const nlohmann::json& j);

nlohmann::json solve_result_to_json(const Scenario& s, const SolveResult& r);

Scenario load_scenario_file(const std::string& path);
SolverConfig load_solver_config_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace nomavlc
