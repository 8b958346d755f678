// Copyright (c) noma-vlc contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "nomavlc/model.hpp"

namespace nomavlc {

/// Exhaustive-search parameters. The per-axis grid is log-spaced over
/// [p_floor, min(P_max, U_max^2)]: the objective varies over orders of
/// magnitude near p -> 0, so linear spacing wastes resolution.
struct GridSpec {
  int resolution = 0;    // points per axis; 0 picks 2000 (M<=2), 400 (M=3), 100 (M=4)
  double p_floor = 1e-6; // mW, keeps the zero-rate boundary out of the grid
  int threads = 0;       // grid chunks evaluated in parallel; 0 = hardware
};

struct GridSearchResult {
  PowerAllocation best;  // sorted (SIC) user order
  double objective = 0.0;
  /// Relative spread of the objective over the feasible 3^M-neighborhood
  /// of the minimizer; an empirical certificate of grid resolution.
  double error_bound = 0.0;
  int resolution = 0;    // points per axis actually used
};

/// Brute-force minimizer of the harmonic objective over the feasible grid.
///
/// Independent of the interior-point path: rates come straight from the
/// SINR definition per point, feasibility from the budget sums. The result
/// is deterministic for any thread count; exact objective ties are broken
/// by lexicographic grid index. Throws std::invalid_argument for M > 4
/// and std::runtime_error if no grid point is feasible.
GridSearchResult grid_search(const Scenario& s, const GridSpec& spec = {});

}  // namespace nomavlc
