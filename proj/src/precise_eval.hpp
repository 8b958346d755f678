// Copyright (c) noma-vlc contributors
// SPDX-License-Identifier: Apache-2.0
//
// Extended-precision evaluation of the transformed constraint values,
// templated on the scalar. Near a barrier center the active values sit
// 10+ orders of magnitude below the terms that form them; the certificate
// math needs the headroom (the solver instantiates __float128, the public
// transform API long double).

#pragma once

#include <quadmath.h>

#include <algorithm>
#include <cmath>
#include <span>

#include "nomavlc/model.hpp"

namespace nomavlc::detail {

inline long double exp_r(long double x) { return std::exp(x); }
inline long double log_r(long double x) { return std::log(x); }
inline long double log1p_r(long double x) { return std::log1p(x); }
inline long double expm1_r(long double x) { return std::expm1(x); }

inline __float128 exp_r(__float128 x) { return expq(x); }
inline __float128 log_r(__float128 x) { return logq(x); }
inline __float128 log1p_r(__float128 x) { return log1pq(x); }
inline __float128 expm1_r(__float128 x) { return expm1q(x); }

template <class Real>
Real log_expm1_r(Real u) {
  if (u <= Real(1)) return log_r(expm1_r(u));
  return u + log1p_r(-exp_r(-u));
}

template <class Real>
Real rate_value(const Scenario& s, std::span<const Real> inv_rate_bound,
                std::span<const Real> log_power, int user) {
  const int m = s.num_users();
  const Real noise_exp = log_r(Real(s.noise_power_mw) / Real(s.gains[user]));
  Real shift = noise_exp;
  for (int i = user + 1; i < m; ++i) shift = std::max(shift, log_power[i]);
  Real total = exp_r(noise_exp - shift);
  for (int i = user + 1; i < m; ++i) total += exp_r(log_power[i] - shift);
  return shift + log_r(total) - log_power[user] +
         log_expm1_r(Real(1) / inv_rate_bound[user]);
}

template <class Real>
Real power_value(const Scenario& s, std::span<const Real> log_power) {
  Real sum(0);
  for (const Real rho : log_power) sum += exp_r(rho);
  return sum - Real(s.p_max_mw);
}

template <class Real>
Real amplitude_value(const Scenario& s, std::span<const Real> log_power) {
  Real sum(0);
  for (const Real rho : log_power) sum += exp_r(Real(0.5) * rho);
  return sum - Real(s.u_max);
}

}  // namespace nomavlc::detail
