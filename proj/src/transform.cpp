// Copyright (c) noma-vlc contributors
// SPDX-License-Identifier: Apache-2.0

#include "nomavlc/transform.hpp"

#include "precise_eval.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace nomavlc {

namespace {

// d/du and d2/du2 of log(e^u - 1), via q(u) = 1/(1 - e^{-u}).
struct LogExpm1Derivs {
  double first;   // q
  double second;  // -q^2 e^{-u}
};

LogExpm1Derivs log_expm1_derivs(double u) {
  const double em = std::exp(-u);
  const double q = 1.0 / (-std::expm1(-u));
  return {q, -q * q * em};
}

void check_point(const Scenario& s, const TransformedPoint& t) {
  const int m = s.num_users();
  if (t.inv_rate_bound.size() != m || t.log_power.size() != m) {
    throw std::invalid_argument("transformed point size mismatch");
  }
}

}  // namespace

double log_expm1(double u) {
  if (!(u > 0.0)) throw std::domain_error("log_expm1 requires u > 0");
  if (u <= 1.0) return std::log(std::expm1(u));
  return u + std::log1p(-std::exp(-u));
}

TransformedPoint to_transformed(const Scenario& s, const PowerAllocation& p,
                                double slack) {
  const int m = s.num_users();
  if (p.powers_mw.size() != m) throw std::invalid_argument("allocation size mismatch");
  if (slack < 0.0) throw std::invalid_argument("slack must be nonnegative");
  for (int k = 0; k < m; ++k) {
    if (!(p.powers_mw[k] > 0.0)) {
      throw std::invalid_argument("to_transformed requires strictly positive powers");
    }
  }
  const RateReport r = rate_report(s, p);
  TransformedPoint t;
  t.log_power = p.powers_mw.array().log();
  t.inv_rate_bound.resize(m);
  for (int k = 0; k < m; ++k) {
    if (!(r.rates[k] > 0.0)) {
      throw std::invalid_argument("to_transformed requires strictly positive rates");
    }
    t.inv_rate_bound[k] = (1.0 + slack) / r.rates[k];
  }
  return t;
}

PowerAllocation from_transformed(const TransformedPoint& t, double log_power_cap) {
  PowerAllocation p;
  p.powers_mw.resize(t.log_power.size());
  for (int k = 0; k < t.log_power.size(); ++k) {
    const double rho = t.log_power[k];
    if (!std::isfinite(rho) || rho > log_power_cap) {
      throw std::runtime_error("log power exceeds divergence cap");
    }
    p.powers_mw[k] = std::exp(rho);
  }
  return p;
}

ConstraintEval rate_constraint(const Scenario& s, const TransformedPoint& t,
                               int user, bool with_hessian) {
  check_point(s, t);
  const int m = s.num_users();
  if (user < 0 || user >= m) throw std::out_of_range("user index out of range");
  const double y = t.inv_rate_bound[user];
  if (!(y >= kInvRateBoundFloor)) {
    throw std::domain_error("inv_rate_bound below floor");
  }

  // Max-shifted log-sum-exp over the exponents
  //   { log(n0/g_user), log_power_i for i > user },
  // then subtract log_power_user (that part is linear).
  const int tail = m - 1 - user;
  const double noise_exp = std::log(s.noise_power_mw / s.gains[user]);
  double shift = noise_exp;
  for (int i = user + 1; i < m; ++i) shift = std::max(shift, t.log_power[i]);
  double total = std::exp(noise_exp - shift);
  Eigen::VectorXd w(tail);  // softmax weights of the interfering users
  for (int i = user + 1; i < m; ++i) {
    w[i - user - 1] = std::exp(t.log_power[i] - shift);
    total += w[i - user - 1];
  }
  w /= total;
  const double lse = shift + std::log(total);

  const double u = 1.0 / y;
  ConstraintEval out;
  out.value = lse - t.log_power[user] + log_expm1(u);

  const auto d = log_expm1_derivs(u);
  const double dphi_dy = d.first * (-1.0 / (y * y));

  out.grad = Eigen::VectorXd::Zero(2 * m);
  out.grad[user] = dphi_dy;
  out.grad[m + user] = -1.0;
  for (int i = user + 1; i < m; ++i) out.grad[m + i] = w[i - user - 1];

  if (with_hessian) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    // d2/dy2 of log(e^{1/y} - 1): chain rule through u = 1/y.
    h(user, user) = d.second / (y * y * y * y) + d.first * 2.0 / (y * y * y);
    for (int i = user + 1; i < m; ++i) {
      const double wi = w[i - user - 1];
      for (int j = user + 1; j < m; ++j) {
        const double wj = w[j - user - 1];
        h(m + i, m + j) = (i == j ? wi : 0.0) - wi * wj;
      }
    }
    out.hess = std::move(h);
  }
  return out;
}

long double rate_constraint_value(const Scenario& s,
                                  std::span<const long double> inv_rate_bound,
                                  std::span<const long double> log_power, int user) {
  const int m = s.num_users();
  if (static_cast<int>(inv_rate_bound.size()) != m ||
      static_cast<int>(log_power.size()) != m) {
    throw std::invalid_argument("transformed point size mismatch");
  }
  if (user < 0 || user >= m) throw std::out_of_range("user index out of range");
  if (!(inv_rate_bound[user] >= kInvRateBoundFloor)) {
    throw std::domain_error("inv_rate_bound below floor");
  }
  return detail::rate_value<long double>(s, inv_rate_bound, log_power, user);
}

long double power_constraint_value(const Scenario& s,
                                   std::span<const long double> log_power) {
  if (static_cast<int>(log_power.size()) != s.num_users()) {
    throw std::invalid_argument("transformed point size mismatch");
  }
  return detail::power_value<long double>(s, log_power);
}

long double amplitude_constraint_value(const Scenario& s,
                                       std::span<const long double> log_power) {
  if (static_cast<int>(log_power.size()) != s.num_users()) {
    throw std::invalid_argument("transformed point size mismatch");
  }
  return detail::amplitude_value<long double>(s, log_power);
}

namespace {

struct PointBuffers {
  std::vector<long double> y, rho;
};

PointBuffers widen(const TransformedPoint& t) {
  PointBuffers b;
  b.y.assign(t.inv_rate_bound.begin(), t.inv_rate_bound.end());
  b.rho.assign(t.log_power.begin(), t.log_power.end());
  return b;
}

}  // namespace

long double rate_constraint_value(const Scenario& s, const TransformedPoint& t,
                                  int user) {
  const PointBuffers b = widen(t);
  return rate_constraint_value(s, b.y, b.rho, user);
}

long double power_constraint_value(const Scenario& s, const TransformedPoint& t) {
  const PointBuffers b = widen(t);
  return power_constraint_value(s, b.rho);
}

long double amplitude_constraint_value(const Scenario& s, const TransformedPoint& t) {
  const PointBuffers b = widen(t);
  return amplitude_constraint_value(s, b.rho);
}

ConstraintEval power_constraint(const Scenario& s, const TransformedPoint& t,
                                bool with_hessian) {
  check_point(s, t);
  const int m = s.num_users();
  ConstraintEval out;
  out.grad = Eigen::VectorXd::Zero(2 * m);
  double sum = 0.0;
  for (int k = 0; k < m; ++k) {
    const double e = std::exp(t.log_power[k]);
    sum += e;
    out.grad[m + k] = e;
  }
  out.value = sum - s.p_max_mw;
  if (with_hessian) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    for (int k = 0; k < m; ++k) h(m + k, m + k) = out.grad[m + k];
    out.hess = std::move(h);
  }
  return out;
}

ConstraintEval amplitude_constraint(const Scenario& s, const TransformedPoint& t,
                                    bool with_hessian) {
  check_point(s, t);
  const int m = s.num_users();
  ConstraintEval out;
  out.grad = Eigen::VectorXd::Zero(2 * m);
  double sum = 0.0;
  for (int k = 0; k < m; ++k) {
    const double e = std::exp(0.5 * t.log_power[k]);
    sum += e;
    out.grad[m + k] = 0.5 * e;
  }
  out.value = sum - s.u_max;
  if (with_hessian) {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(2 * m, 2 * m);
    for (int k = 0; k < m; ++k) h(m + k, m + k) = 0.5 * out.grad[m + k];
    out.hess = std::move(h);
  }
  return out;
}

}  // namespace nomavlc
