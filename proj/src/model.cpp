// Copyright (c) noma-vlc contributors
// SPDX-License-Identifier: Apache-2.0

#include "nomavlc/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>

namespace nomavlc {

Eigen::VectorXd Scenario::to_original_order(const Eigen::VectorXd& sorted) const {
  Eigen::VectorXd out(sorted.size());
  for (int k = 0; k < static_cast<int>(order.size()); ++k) out[order[k]] = sorted[k];
  return out;
}

Eigen::VectorXd Scenario::to_sorted_order(const Eigen::VectorXd& original) const {
  Eigen::VectorXd out(original.size());
  for (int k = 0; k < static_cast<int>(order.size()); ++k) out[k] = original[order[k]];
  return out;
}

Scenario build_scenario(std::span<const double> gains_original_order,
                        double noise_power_mw, double p_max_mw, double dc_bias,
                        double peak_intensity, double pam_coefficient) {
  const int m = static_cast<int>(gains_original_order.size());
  if (m < 1) throw std::invalid_argument("gains must contain at least one user");
  for (int i = 0; i < m; ++i) {
    const double g = gains_original_order[i];
    if (!(g > 0.0) || !std::isfinite(g)) {
      throw std::invalid_argument("gains[" + std::to_string(i) +
                                  "] must be positive (a zero-gain user has zero "
                                  "rate at any power)");
    }
  }
  if (!(noise_power_mw > 0.0)) throw std::invalid_argument("noise_power_mw must be positive");
  if (!(p_max_mw > 0.0)) throw std::invalid_argument("p_max_mw must be positive");
  if (!(dc_bias > 0.0)) throw std::invalid_argument("dc_bias must be positive");
  if (!(peak_intensity > dc_bias)) {
    throw std::invalid_argument("peak_intensity must exceed dc_bias");
  }
  if (!(pam_coefficient > 0.0)) throw std::invalid_argument("pam_coefficient must be positive");

  Scenario s;
  s.order.resize(m);
  std::iota(s.order.begin(), s.order.end(), 0);
  std::stable_sort(s.order.begin(), s.order.end(), [&](int a, int b) {
    return gains_original_order[a] < gains_original_order[b];
  });
  s.gains.resize(m);
  for (int k = 0; k < m; ++k) s.gains[k] = gains_original_order[s.order[k]];

  s.noise_power_mw = noise_power_mw;
  s.p_max_mw = p_max_mw;
  s.dc_bias = dc_bias;
  s.peak_intensity = peak_intensity;
  s.pam_coefficient = pam_coefficient;
  s.u_max = std::min(dc_bias / pam_coefficient,
                     (peak_intensity - dc_bias) / pam_coefficient);
  return s;
}

double sinr(const Scenario& s, const PowerAllocation& p, int user) {
  const int m = s.num_users();
  if (user < 0 || user >= m) throw std::out_of_range("user index out of range");
  if (p.powers_mw.size() != m) throw std::invalid_argument("allocation size mismatch");
  double interference = 0.0;
  for (int i = user + 1; i < m; ++i) interference += p.powers_mw[i];
  const double g = s.gains[user];
  return g * p.powers_mw[user] / (s.noise_power_mw + g * interference);
}

RateReport rate_report(const Scenario& s, const PowerAllocation& p) {
  const int m = s.num_users();
  if (p.powers_mw.size() != m) throw std::invalid_argument("allocation size mismatch");
  RateReport r;
  r.sinrs.resize(m);
  r.rates.resize(m);
  // Suffix interference sums keep the whole report O(M).
  double tail = 0.0;
  for (int k = m - 1; k >= 0; --k) {
    const double g = s.gains[k];
    r.sinrs[k] = g * p.powers_mw[k] / (s.noise_power_mw + g * tail);
    r.rates[k] = std::log1p(r.sinrs[k]);
    tail += p.powers_mw[k];
  }
  r.sum_rate = r.rates.sum();
  r.harmonic_objective = 0.0;
  for (int k = 0; k < m; ++k) {
    if (r.rates[k] > 0.0) {
      r.harmonic_objective += 1.0 / r.rates[k];
    } else {
      r.harmonic_objective = std::numeric_limits<double>::infinity();
      break;
    }
  }
  return r;
}

FeasibilityReport check_feasibility(const Scenario& s, const PowerAllocation& p,
                                    double tol) {
  const int m = s.num_users();
  if (p.powers_mw.size() != m) throw std::invalid_argument("allocation size mismatch");
  FeasibilityReport rep;
  rep.min_power = p.powers_mw.minCoeff();
  double amp = 0.0;
  for (int k = 0; k < m; ++k) amp += std::sqrt(std::max(p.powers_mw[k], 0.0));
  rep.power_slack = s.p_max_mw - p.powers_mw.sum();
  rep.amplitude_slack = s.u_max - amp;
  rep.feasible = rep.min_power >= -tol && rep.power_slack >= -tol &&
                 rep.amplitude_slack >= -tol;
  return rep;
}

}  // namespace nomavlc
