// Copyright (c) noma-vlc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>
#include <vector>

#include "nomavlc/transform.hpp"

namespace nomavlc {

/// Log-barrier interior-point parameters. Defaults solve every scenario in
/// the test corpus to a 1e-6 KKT certificate.
struct SolverConfig {
  double barrier_mu = 10.0;        // outer multiplier for t, > 1
  double t_init = 1.0;             // initial barrier weight, > 0
  double gap_tol = 1e-8;           // stop when (M+2)/t falls below this
  double newton_tol = 1e-10;       // on the squared Newton decrement
  int max_outer = 60;              // barrier stages
  // The first stage carries the whole damped-Newton journey from the
  // equal-power start, and its length grows with the gain spread and the
  // tightness of the amplitude budget: skewed 20-user drops need ~900
  // steps there, while every centered-to-centered stage needs under 10.
  int max_newton = 5000;           // Newton steps per stage
  double line_search_alpha = 0.25; // Armijo fraction, in (0, 0.5)
  double line_search_beta = 0.5;   // backtracking factor, in (0, 1)
  double feasibility_slack = 0.05; // margin used by initial_point

  void validate() const;  // throws std::invalid_argument on a bad field
};

enum class SolveStatus {
  optimal,
  max_iterations,
  numerical_failure,
  infeasible_input,
};

std::string_view to_string(SolveStatus status);

/// Summary of one barrier stage (one value of t).
struct StageTrace {
  double t = 0.0;
  double transformed_objective = 0.0;  // sum of inv_rate_bound at stage exit
  double max_constraint = 0.0;         // max constraint value at stage exit
  double newton_decrement_sq = 0.0;    // at stage exit
  int newton_steps = 0;
  // Largest amount by which sum(inv_rate_bound) exceeded its stage-start
  // value at any accepted iterate, and the largest single-step increase.
  double max_rise_over_start = 0.0;
  double max_step_rise = 0.0;
};

struct SolveResult {
  PowerAllocation allocation;  // ORIGINAL user order (pre-sort indices)
  double objective = 0.0;      // sum of inverse rates at the solution
  double transformed_objective = 0.0;  // sum of inv_rate_bound
  double kkt_residual = 0.0;
  Eigen::VectorXd rate_binding_gaps;  // |inv_rate_bound - 1/rate|, sorted order
  int outer_iterations = 0;
  int newton_iterations = 0;
  SolveStatus status = SolveStatus::numerical_failure;
  std::vector<StageTrace> trace;
};

/// Strictly feasible start: an equal split of the tighter of the two
/// budgets with a configurable margin, so no phase-1 method is needed.
/// Throws std::runtime_error if a pathologically small gain drives some
/// rate to zero at that split (solve reports infeasible_input).
TransformedPoint initial_point(const Scenario& s, const SolverConfig& cfg);

/// Max of stationarity (inf-norm of grad(sum y) + sum duals_i grad f_i),
/// complementary slackness (max |duals_i * f_i|) and primal infeasibility
/// (max positive constraint value). `duals` holds the M rate rows first,
/// then the power and amplitude rows.
double kkt_residual(const Scenario& s, const TransformedPoint& t,
                    const Eigen::VectorXd& duals);

/// Minimizes the harmonic objective over the feasible allocations by
/// solving the convex reformulation with a damped-Newton log barrier and
/// mapping the optimum back to powers. Deterministic: identical inputs
/// produce bitwise-identical results on a fixed platform.
SolveResult solve(const Scenario& s, const SolverConfig& cfg = {});

}  // namespace nomavlc
