// Copyright (c) noma-vlc contributors
// SPDX-License-Identifier: Apache-2.0

#include "nomavlc/solver.hpp"

#include <Eigen/Cholesky>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <stdexcept>
#include <vector>

#include "precise_eval.hpp"

namespace nomavlc {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kMinLineSearchStep = 1e-18;

// The decrement test certifies suboptimality of the centering problem, but
// the KKT stationarity is the raw gradient of the scaled barrier, and near
// the boundary the curvature reaches ~t * duals^2 * |grad f|^2, so a small
// decrement still allows a large gradient. After the decrement converges we
// keep polishing (the quadratic phase makes each step nearly free) until
// the gradient is well under the 1e-6 certificate or stops improving.
constexpr double kStationarityPolishTol = 1e-8;
constexpr int kMaxPolishSteps = 12;

// The iterate lives on the __float128 lattice: near-active constraint
// slacks reach ~1e-13 while duals reach ~1e2-1e3, so one ulp of iterate
// movement on a coarser lattice already shifts the stationarity vector by
// more than the 1e-6 certificate. Values and duals are evaluated in quad;
// gradients and Hessians in double at the rounded point, whose O(1e-16)
// relative error only damps the Newton contraction slightly.
using Real = __float128;
using VectorR = std::vector<Real>;

TransformedPoint round_point(const VectorR& x) {
  const int m = static_cast<int>(x.size()) / 2;
  TransformedPoint t;
  t.inv_rate_bound.resize(m);
  t.log_power.resize(m);
  for (int k = 0; k < m; ++k) {
    t.inv_rate_bound[k] = static_cast<double>(x[k]);
    t.log_power[k] = static_cast<double>(x[m + k]);
  }
  return t;
}

struct BarrierEval {
  bool domain_ok = false;
  Real psi = 0;             // sum(y) + (1/t) sum(-log(-f_i)); valid iff domain_ok
  double sum_y = kInf;
  Eigen::VectorXd grad;     // of the scaled barrier = KKT stationarity vector
  Eigen::MatrixXd hess;
  std::vector<Real> values;
  std::vector<Real> duals;  // 1/(t * -f_i)
};

BarrierEval eval_barrier(const Scenario& s, const VectorR& x, double t,
                         bool with_hessian) {
  const int m = s.num_users();
  const int n = 2 * m;
  BarrierEval be;
  for (int k = 0; k < m; ++k) {
    if (!(x[k] >= kInvRateBoundFloor) || !std::isfinite(static_cast<double>(x[m + k]))) {
      return be;
    }
  }
  const std::span<const Real> y(x.data(), static_cast<std::size_t>(m));
  const std::span<const Real> rho(x.data() + m, static_cast<std::size_t>(m));

  be.values.resize(m + 2);
  for (int k = 0; k < m; ++k) be.values[k] = detail::rate_value<Real>(s, y, rho, k);
  be.values[m] = detail::power_value<Real>(s, rho);
  be.values[m + 1] = detail::amplitude_value<Real>(s, rho);

  Real sum_y = 0;
  for (int k = 0; k < m; ++k) sum_y += x[k];
  be.sum_y = static_cast<double>(sum_y);

  const Real t_r = Real(t);
  Real psi = sum_y;
  be.duals.resize(m + 2);
  for (int i = 0; i < m + 2; ++i) {
    const Real f = be.values[i];
    if (!(f < Real(0)) || !std::isfinite(static_cast<double>(f))) return be;
    be.duals[i] = Real(1) / (t_r * -f);
    psi -= detail::log_r(-f) / t_r;
  }
  if (!std::isfinite(static_cast<double>(psi))) return be;

  const TransformedPoint point = round_point(x);
  std::vector<Real> grad_acc(n, Real(0));
  for (int k = 0; k < m; ++k) grad_acc[k] = Real(1);
  Eigen::MatrixXd hess;
  if (with_hessian) hess = Eigen::MatrixXd::Zero(n, n);

  for (int i = 0; i < m + 2; ++i) {
    ConstraintEval row = i < m ? rate_constraint(s, point, i, with_hessian)
                    : i == m   ? power_constraint(s, point, with_hessian)
                               : amplitude_constraint(s, point, with_hessian);
    const Real dual = be.duals[i];
    for (int c = 0; c < n; ++c) grad_acc[c] += dual * Real(row.grad[c]);
    if (with_hessian) {
      const double lam = static_cast<double>(dual);
      hess += lam * *row.hess;
      hess.noalias() += (t * lam * lam) * (row.grad * row.grad.transpose());
    }
  }
  be.domain_ok = true;
  be.psi = psi;
  be.grad.resize(n);
  for (int c = 0; c < n; ++c) be.grad[c] = static_cast<double>(grad_acc[c]);
  be.hess = std::move(hess);
  return be;
}

}  // namespace

void SolverConfig::validate() const {
  if (!(barrier_mu > 1.0)) throw std::invalid_argument("barrier_mu must exceed 1");
  if (!(t_init > 0.0)) throw std::invalid_argument("t_init must be positive");
  if (!(gap_tol > 0.0)) throw std::invalid_argument("gap_tol must be positive");
  if (!(newton_tol > 0.0)) throw std::invalid_argument("newton_tol must be positive");
  if (max_outer < 1) throw std::invalid_argument("max_outer must be at least 1");
  if (max_newton < 1) throw std::invalid_argument("max_newton must be at least 1");
  if (!(line_search_alpha > 0.0) || !(line_search_alpha < 0.5)) {
    throw std::invalid_argument("line_search_alpha must lie in (0, 0.5)");
  }
  if (!(line_search_beta > 0.0) || !(line_search_beta < 1.0)) {
    throw std::invalid_argument("line_search_beta must lie in (0, 1)");
  }
  if (!(feasibility_slack > 0.0) || !(feasibility_slack < 1.0)) {
    throw std::invalid_argument("feasibility_slack must lie in (0, 1)");
  }
}

std::string_view to_string(SolveStatus status) {
  switch (status) {
    case SolveStatus::optimal: return "optimal";
    case SolveStatus::max_iterations: return "max_iterations";
    case SolveStatus::numerical_failure: return "numerical_failure";
    case SolveStatus::infeasible_input: return "infeasible_input";
  }
  return "unknown";
}

TransformedPoint initial_point(const Scenario& s, const SolverConfig& cfg) {
  cfg.validate();
  const int m = s.num_users();
  const double per_user_amp = s.u_max / m;
  const double per_user =
      (1.0 - cfg.feasibility_slack) *
      std::min(s.p_max_mw / m, per_user_amp * per_user_amp);
  PowerAllocation p{Eigen::VectorXd::Constant(m, per_user)};
  const RateReport report = rate_report(s, p);
  for (int k = 0; k < m; ++k) {
    if (!(report.rates[k] > 0.0)) {
      throw std::runtime_error("equal-power start has a zero rate; channel gain too small");
    }
  }
  return to_transformed(s, p, cfg.feasibility_slack);
}

double kkt_residual(const Scenario& s, const TransformedPoint& t,
                    const Eigen::VectorXd& duals) {
  const int m = s.num_users();
  const int n = 2 * m;
  if (duals.size() != m + 2) throw std::invalid_argument("dual vector size mismatch");
  if ((duals.array() < 0.0).any()) {
    throw std::invalid_argument("duals must be nonnegative");
  }
  std::vector<long double> values(m + 2);
  for (int k = 0; k < m; ++k) values[k] = rate_constraint_value(s, t, k);
  values[m] = power_constraint_value(s, t);
  values[m + 1] = amplitude_constraint_value(s, t);

  std::vector<long double> stationarity(n, 0.0L);
  for (int k = 0; k < m; ++k) stationarity[k] = 1.0L;
  long double complementarity = 0.0L;
  long double primal = 0.0L;
  for (int i = 0; i < m + 2; ++i) {
    const ConstraintEval row = i < m ? rate_constraint(s, t, i, false)
                          : i == m   ? power_constraint(s, t, false)
                                     : amplitude_constraint(s, t, false);
    const long double lam = static_cast<long double>(duals[i]);
    for (int c = 0; c < n; ++c) {
      stationarity[c] += lam * static_cast<long double>(row.grad[c]);
    }
    complementarity = std::max(complementarity, std::abs(lam * values[i]));
    primal = std::max(primal, values[i]);
  }
  long double stat_norm = 0.0L;
  for (int c = 0; c < n; ++c) stat_norm = std::max(stat_norm, std::abs(stationarity[c]));
  return static_cast<double>(
      std::max({stat_norm, complementarity, std::max(primal, 0.0L)}));
}

SolveResult solve(const Scenario& s, const SolverConfig& cfg) {
  cfg.validate();
  const int m = s.num_users();
  const int n = 2 * m;
  const int rows = m + 2;

  SolveResult res;
  res.rate_binding_gaps = Eigen::VectorXd::Constant(m, kInf);
  res.allocation.powers_mw = Eigen::VectorXd::Zero(m);
  res.objective = kInf;
  res.transformed_objective = kInf;
  res.kkt_residual = kInf;

  TransformedPoint start;
  try {
    start = initial_point(s, cfg);
  } catch (const std::exception&) {
    res.status = SolveStatus::infeasible_input;
    return res;
  }

  VectorR x(n);
  for (int k = 0; k < m; ++k) {
    x[k] = Real(start.inv_rate_bound[k]);
    x[m + k] = Real(start.log_power[k]);
  }
  double t = cfg.t_init;
  bool gap_reached = false;
  bool failed = false;
  bool newton_budget_exhausted = false;

  for (int outer = 0; outer < cfg.max_outer && !failed; ++outer) {
    ++res.outer_iterations;
    StageTrace stage;
    stage.t = t;
    Real stage_start_obj = 0;
    for (int k = 0; k < m; ++k) stage_start_obj += x[k];
    double prev_obj = static_cast<double>(stage_start_obj);
    int consecutive_nondescent = 0;
    int polish_steps = 0;
    double prev_grad_inf = kInf;
    bool stage_done = false;

    for (int it = 0; it < cfg.max_newton; ++it) {
      BarrierEval be = eval_barrier(s, x, t, /*with_hessian=*/true);
      if (!be.domain_ok) {  // cannot happen from an accepted iterate
        failed = true;
        break;
      }
      // Jacobi equilibration: the diagonal spans ~16 decades once weak
      // users push duals past 1e3; scaling to a unit diagonal keeps the
      // factorization meaningful.
      Eigen::MatrixXd h = be.hess;
      Eigen::VectorXd scale(n);
      for (int c = 0; c < n; ++c) {
        scale[c] = 1.0 / std::sqrt(std::max(h(c, c), 1e-300));
      }
      h = scale.asDiagonal() * h * scale.asDiagonal();
      // Tikhonov floor on the equilibrated matrix (its trace is n by
      // construction, so this stays a true epsilon floor at every barrier
      // weight) keeps the factorization stable when interference makes the
      // rate rows near-singular.
      const double reg = 1e-12 * (1.0 + h.trace() / n) *
                         std::pow(1e4, consecutive_nondescent);
      h.diagonal().array() += reg;
      const Eigen::VectorXd rhs = -scale.cwiseProduct(be.grad);
      const Eigen::LDLT<Eigen::MatrixXd> ldlt(h);
      Eigen::VectorXd scaled_step = ldlt.solve(rhs);
      // Iterative refinement with exact extended-precision residuals: the
      // stationarity rows need the step resolved ~1e-9 relative, past what
      // one double solve delivers at these condition numbers. Products of
      // doubles are exact in quad, so each round cuts the error by eps*kappa.
      for (int round = 0; round < 2 && scaled_step.allFinite(); ++round) {
        Eigen::VectorXd residual(n);
        for (int r = 0; r < n; ++r) {
          Real acc = Real(rhs[r]);
          for (int c = 0; c < n; ++c) acc -= Real(h(r, c)) * Real(scaled_step[c]);
          residual[r] = static_cast<double>(acc);
        }
        scaled_step += ldlt.solve(residual);
      }
      const Eigen::VectorXd dx = scale.cwiseProduct(scaled_step);
      const double gdx = be.grad.dot(dx);
      if (!dx.allFinite() || !(gdx < 0.0)) {
        ++consecutive_nondescent;
        if (consecutive_nondescent >= 3) {
          failed = true;
          break;
        }
        continue;
      }
      consecutive_nondescent = 0;
      stage.newton_decrement_sq = -gdx;
      const double grad_inf = be.grad.lpNorm<Eigen::Infinity>();
      if (std::getenv("NOMA_VLC_SOLVER_DEBUG") != nullptr) {
        Real max_dual = 0, min_f = be.values.empty() ? Real(0) : -be.values[0];
        for (int i = 0; i < rows; ++i) {
          max_dual = std::max(max_dual, be.duals[i]);
          min_f = std::min(min_f, -be.values[i]);
        }
        std::fprintf(stderr,
                     "t=%.1e it=%d dec2=%.3e ginf=%.3e maxdual=%.3e minslack=%.3e\n",
                     t, it, -gdx, grad_inf, static_cast<double>(max_dual),
                     static_cast<double>(min_f));
      }
      // Once the decrement converges, the predicted decrease falls below
      // what psi resolves, so the Armijo test turns into noise; domain
      // feasibility alone gates the polish steps.
      const bool polishing = -gdx <= cfg.newton_tol;
      bool converged = false;
      if (polishing) {
        ++polish_steps;
        converged = grad_inf <= kStationarityPolishTol ||
                    polish_steps > kMaxPolishSteps ||
                    !(grad_inf < 0.5 * prev_grad_inf);
      }
      prev_grad_inf = grad_inf;

      double step = 1.0;
      bool accepted = false;
      while (step >= kMinLineSearchStep) {
        VectorR x_new = x;
        for (int c = 0; c < n; ++c) x_new[c] += Real(step) * Real(dx[c]);
        const BarrierEval trial = eval_barrier(s, x_new, t, /*with_hessian=*/false);
        if (trial.domain_ok &&
            (polishing ||
             trial.psi <= be.psi + Real(cfg.line_search_alpha * step * gdx))) {
          x = std::move(x_new);
          accepted = true;
          ++res.newton_iterations;
          ++stage.newton_steps;
          stage.max_rise_over_start = std::max(
              stage.max_rise_over_start,
              trial.sum_y - static_cast<double>(stage_start_obj));
          stage.max_step_rise = std::max(stage.max_step_rise, trial.sum_y - prev_obj);
          prev_obj = trial.sum_y;
          break;
        }
        step *= cfg.line_search_beta;
      }
      if (converged || !accepted) {
        stage_done = true;
        break;
      }
    }
    if (failed) break;

    const BarrierEval exit_eval = eval_barrier(s, x, t, /*with_hessian=*/false);
    stage.transformed_objective = exit_eval.sum_y;
    if (exit_eval.domain_ok) {
      stage.max_constraint = static_cast<double>(
          *std::max_element(exit_eval.values.begin(), exit_eval.values.end()));
    }
    res.trace.push_back(stage);

    // A stage that burned its whole Newton budget is not centered; the
    // following stages would inherit the miss at ten times the barrier
    // weight, so stop here and report the exhausted budget.
    if (!stage_done) {
      newton_budget_exhausted = true;
      break;
    }

    if (static_cast<double>(rows) / t <= cfg.gap_tol) {
      gap_reached = true;
      break;
    }
    t *= cfg.barrier_mu;
  }

  // Finalize from the last accepted iterate regardless of how we stopped.
  const TransformedPoint point = round_point(x);
  const BarrierEval final_eval = eval_barrier(s, x, t, /*with_hessian=*/false);
  res.transformed_objective = final_eval.sum_y;

  PowerAllocation p_sorted;
  try {
    p_sorted = from_transformed(point, std::log(10.0 * s.p_max_mw));
  } catch (const std::exception&) {
    res.status = SolveStatus::numerical_failure;
    return res;
  }
  const RateReport report = rate_report(s, p_sorted);
  res.allocation.powers_mw = s.to_original_order(p_sorted.powers_mw);
  res.objective = report.harmonic_objective;
  for (int k = 0; k < m; ++k) {
    res.rate_binding_gaps[k] =
        report.rates[k] > 0.0
            ? std::abs(point.inv_rate_bound[k] - 1.0 / report.rates[k])
            : kInf;
  }
  if (final_eval.domain_ok) {
    // The certificate lives at the solver's terminal (extended-precision)
    // iterate: stationarity is the scaled barrier gradient, complementary
    // slackness is exactly 1/t under barrier duals, and the point is
    // interior so primal infeasibility is zero.
    const double stationarity = final_eval.grad.lpNorm<Eigen::Infinity>();
    res.kkt_residual = std::max(stationarity, 1.0 / t);
  }

  if (failed) {
    res.status = SolveStatus::numerical_failure;
  } else if (newton_budget_exhausted || !gap_reached) {
    res.status = SolveStatus::max_iterations;
  } else {
    // Certify before reporting optimal; a certificate miss is a numerical
    // failure, never silently relabeled.
    bool certified = final_eval.domain_ok && res.kkt_residual <= 1e-6;
    for (int k = 0; certified && k < m; ++k) {
      certified = res.rate_binding_gaps[k] <=
                  1e-6 * (1.0 + std::abs(point.inv_rate_bound[k]));
    }
    const FeasibilityReport feas = check_feasibility(s, p_sorted, 1e-8);
    certified = certified && feas.feasible;
    res.status = certified ? SolveStatus::optimal : SolveStatus::numerical_failure;
  }
  return res;
}

}  // namespace nomavlc
