// Copyright (c) noma-vlc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <span>
#include <vector>

namespace nomavlc {

/// A fully specified power-allocation problem instance.
///
/// Users are kept in SIC decode order: channel power gains sorted ascending,
/// ties broken by original index. `order[k]` is the original index of the
/// user at sorted position k; every per-user vector in this library
/// (allocations, rates, SINRs) is in sorted order unless stated otherwise.
///
/// Units: powers in mW, noise power in mW; dc_bias / peak_intensity /
/// pam_coefficient live in an amplitude unit consistent with sqrt(mW), so
/// the budget u_max bounds sum(sqrt(p)).
struct Scenario {
  Eigen::VectorXd gains;         // ascending, strictly positive
  std::vector<int> order;        // sorted position -> original user index
  double noise_power_mw = 0.0;
  double p_max_mw = 0.0;
  double dc_bias = 0.0;          // A
  double peak_intensity = 0.0;   // B
  double pam_coefficient = 0.0;  // delta
  double u_max = 0.0;            // min(A, B - A) / delta, derived

  int num_users() const { return static_cast<int>(gains.size()); }

  /// Reorders a sorted-order per-user vector into original user order.
  Eigen::VectorXd to_original_order(const Eigen::VectorXd& sorted) const;
  /// Reorders an original-order per-user vector into sorted (SIC) order.
  Eigen::VectorXd to_sorted_order(const Eigen::VectorXd& original) const;
};

/// Per-user transmit powers in mW, indexed in the scenario's sorted order.
struct PowerAllocation {
  Eigen::VectorXd powers_mw;
};

/// SINRs, rates and the harmonic objective for one allocation.
struct RateReport {
  Eigen::VectorXd sinrs;        // dimensionless
  Eigen::VectorXd rates;        // nats/s/Hz, unit bandwidth
  double sum_rate = 0.0;        // nats/s/Hz
  double harmonic_objective = 0.0;  // sum of 1/rate; +inf when any rate is 0
};

/// Per-family constraint slacks. Feasible iff every slack >= -tol.
struct FeasibilityReport {
  double min_power = 0.0;        // nonnegativity: min over users of p_m
  double power_slack = 0.0;      // P_max - sum(p)
  double amplitude_slack = 0.0;  // U_max - sum(sqrt(p))
  bool feasible = false;
};

/// Builds a Scenario from gains given in original user order.
///
/// Gains are sorted ascending with stable tie-breaking; the permutation is
/// recorded in `order`. Rejects non-positive gains (a user with zero gain
/// has zero rate at any power, so the harmonic objective cannot be finite),
/// A >= B, and non-positive noise, budget, or PAM coefficient. All throws
/// are std::invalid_argument naming the offending field.
Scenario build_scenario(std::span<const double> gains_original_order,
                        double noise_power_mw, double p_max_mw, double dc_bias,
                        double peak_intensity, double pam_coefficient);

/// SINR of the user at sorted position `user` (0-based). The user decodes
/// and cancels everything below it in the SIC order, so only higher-gain
/// users interfere; for the last user the interference sum is empty.
double sinr(const Scenario& s, const PowerAllocation& p, int user);

/// Rates, sum rate and harmonic objective for an elementwise-nonnegative
/// allocation. A zero rate makes harmonic_objective +inf, never a throw, so
/// sweeps over degenerate allocations stay total.
RateReport rate_report(const Scenario& s, const PowerAllocation& p);

/// Slack of the three constraint families of the allocation problem.
FeasibilityReport check_feasibility(const Scenario& s, const PowerAllocation& p,
                                    double tol = 1e-9);

}  // namespace nomavlc
