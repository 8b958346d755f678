// Copyright (c) noma-vlc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <Eigen/Core>
#include <limits>
#include <optional>
#include <span>

#include "nomavlc/model.hpp"

namespace nomavlc {

/// A point of the convex reformulation.
///
/// The change of variables is log_power = log(p) per user, which turns the
/// power and amplitude budgets into sums of exponentials and makes user
/// positivity implicit, plus one auxiliary bound inv_rate_bound per user
/// with 1/inv_rate_bound <= rate. Minimizing sum(inv_rate_bound) subject to
/// the three transformed constraint families is convex and equivalent to
/// minimizing the harmonic objective.
struct TransformedPoint {
  Eigen::VectorXd inv_rate_bound;  // y, > 0 elementwise
  Eigen::VectorXd log_power;       // log(p)
};

/// Value, gradient and (on demand) Hessian of one constraint function.
/// Variable layout: the first M entries differentiate in inv_rate_bound,
/// the next M in log_power.
struct ConstraintEval {
  double value = 0.0;
  Eigen::VectorXd grad;
  std::optional<Eigen::MatrixXd> hess;
};

/// Smallest inv_rate_bound accepted by the constraint evaluators; smaller
/// values are a caller error (std::domain_error).
inline constexpr double kInvRateBoundFloor = 1e-12;

/// Maps a strictly positive allocation into the transformed space.
///
/// log_power = log(p); inv_rate_bound = (1 + slack)/rate, so the rate rows
/// hold with equality at slack = 0 and with strict margin for slack > 0.
/// Rejects non-positive powers or zero rates (std::invalid_argument).
TransformedPoint to_transformed(const Scenario& s, const PowerAllocation& p,
                                double slack = 0.0);

/// Maps back to powers, p = exp(log_power).
///
/// log_power above `log_power_cap` signals solver divergence and throws
/// std::runtime_error; very negative entries underflow to zero, which the
/// rate report flags as a degenerate allocation (infinite objective).
PowerAllocation from_transformed(
    const TransformedPoint& t,
    double log_power_cap = std::numeric_limits<double>::infinity());

/// Rate row for the user at sorted position `user`:
///
///   log( (n0/g) e^{-log_power_user} + sum_{i>user} e^{log_power_i - log_power_user} )
///     + log(e^{1/inv_rate_bound_user} - 1)  <= 0,
///
/// which holds iff 1/inv_rate_bound_user <= rate_user at p = exp(log_power).
/// The first term is evaluated as a max-shifted log-sum-exp and the second
/// through expm1-based paths, so realistic SNRs never overflow.
ConstraintEval rate_constraint(const Scenario& s, const TransformedPoint& t,
                               int user, bool with_hessian = true);

/// Power budget row: sum(exp(log_power)) - P_max <= 0.
ConstraintEval power_constraint(const Scenario& s, const TransformedPoint& t,
                                bool with_hessian = true);

/// Amplitude budget row: sum(exp(log_power/2)) - U_max <= 0.
ConstraintEval amplitude_constraint(const Scenario& s, const TransformedPoint& t,
                                    bool with_hessian = true);

/// log(e^u - 1), stable for u from denormal scale up to ~1e300.
double log_expm1(double u);

/// Extended-precision constraint values for the same three families.
///
/// Near an optimum the active values sit ~10 orders of magnitude below the
/// terms that form them, so double evaluation leaves only ~1e-5 relative
/// accuracy; barrier duals and KKT certificates need better. The span
/// overloads accept extended-precision points: the solver keeps its iterate
/// in long double because on the double lattice the raw stationarity cannot
/// drop below curvature * ulp, which is above the 1e-6 certificate.
long double rate_constraint_value(const Scenario& s,
                                  std::span<const long double> inv_rate_bound,
                                  std::span<const long double> log_power, int user);
long double power_constraint_value(const Scenario& s,
                                   std::span<const long double> log_power);
long double amplitude_constraint_value(const Scenario& s,
                                       std::span<const long double> log_power);

long double rate_constraint_value(const Scenario& s, const TransformedPoint& t,
                                  int user);
long double power_constraint_value(const Scenario& s, const TransformedPoint& t);
long double amplitude_constraint_value(const Scenario& s,
                                       const TransformedPoint& t);

}  // namespace nomavlc
