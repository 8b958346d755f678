// Copyright (c) noma-vlc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "nomavlc/model.hpp"
#include "nomavlc/solver.hpp"

namespace nomavlc {

/// Transmit-power budgets swept over one user drop.
struct SweepSpec {
  std::vector<double> p_max_values_mw{8.0, 10.0, 12.0, 14.0, 16.0, 18.0, 20.0};

  void validate() const;  // strictly increasing, positive
};

struct SweepRow {
  double p_max_mw = 0.0;
  double sum_rate_nats = 0.0;
  double harmonic_objective = 0.0;
  SolveStatus status = SolveStatus::numerical_failure;
  int outer_iters = 0;
  int newton_iters = 0;
  double kkt_residual = 0.0;
};

/// One cold solve per budget on the same user drop. Rates are recomputed
/// from the returned allocation by the model, and a non-optimal status
/// lands in its row rather than aborting the sweep. `threads` > 1 solves
/// rows concurrently; rows always come back in sweep order.
std::vector<SweepRow> run_sweep(const Scenario& base, const SweepSpec& sweep,
                                const SolverConfig& cfg = {}, int threads = 0);

/// CSV with the fixed header
///   p_max_mw,sum_rate_nats,harmonic_objective,status,outer_iters,newton_iters,kkt_residual
/// and shortest-round-trip float formatting, so identical runs are
/// byte-identical.
std::string sweep_to_csv(const std::vector<SweepRow>& rows);

/// Parallelism cap from the NOMA_VLC_THREADS environment variable;
/// 0 (or unset, or unparsable) means sequential.
int sweep_threads_from_env();

}  // namespace nomavlc
