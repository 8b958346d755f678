// Copyright (c) noma-vlc contributors
// SPDX-License-Identifier: Apache-2.0

#include "nomavlc/oracle.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

namespace nomavlc {

namespace {

constexpr int kMaxUsers = 4;
constexpr double kInf = std::numeric_limits<double>::infinity();

struct Candidate {
  double objective = kInf;
  std::array<int, kMaxUsers> idx{};

  bool better_than(const Candidate& other, int m) const {
    if (objective != other.objective) return objective < other.objective;
    for (int l = 0; l < m; ++l) {
      if (idx[l] != other.idx[l]) return idx[l] < other.idx[l];
    }
    return false;
  }
};

// Largest grid index whose power and amplitude both fit the remaining
// budgets, or -1. Both tables are ascending, so this is a prefix.
int max_feasible_index(const std::vector<double>& p, const std::vector<double>& sq,
                       double power_left, double amp_left) {
  const auto ip = std::upper_bound(p.begin(), p.end(), power_left) - p.begin();
  const auto ia = std::upper_bound(sq.begin(), sq.end(), amp_left) - sq.begin();
  return static_cast<int>(std::min(ip, ia)) - 1;
}

// Depth-first enumeration in lexicographic order. Users 0..M-2 are chosen
// on the way down; the innermost loop runs over the last user's axis, where
// that user's inverse rate is a table lookup and every earlier user costs
// one log1p (its interference denominator only shifts by p[k]).
class GridWorker {
 public:
  GridWorker(const Scenario& s, const std::vector<double>& p,
             const std::vector<double>& sq, const std::vector<double>& inv_rate_last)
      : s_(s), p_(p), sq_(sq), inv_rate_last_(inv_rate_last), m_(s.num_users()) {
    for (int l = 0; l < m_; ++l) noise_over_gain_[l] = s.noise_power_mw / s.gains[l];
  }

  void run(int first_begin, int first_end) {
    if (m_ == 1) {
      for (int k = first_begin; k < first_end; ++k) {
        consider(inv_rate_last_[k], k);
      }
      return;
    }
    for (int i = first_begin; i < first_end; ++i) {
      idx_[0] = i;
      chosen_[0] = p_[i];
      descend(1, s_.p_max_mw - p_[i], s_.u_max - sq_[i]);
    }
  }

  const Candidate& best() const { return best_; }

 private:
  void descend(int level, double power_left, double amp_left) {
    const int last = m_ - 1;
    if (level == last) {
      const int kmax = max_feasible_index(p_, sq_, power_left, amp_left);
      // Denominator bases: c_l plus the chosen powers strictly after l
      // (the last user's power is added inside the loop).
      double after = 0.0;
      for (int l = last - 1; l >= 0; --l) {
        denom_base_[l] = noise_over_gain_[l] + after;
        after += chosen_[l];
      }
      for (int k = 0; k <= kmax; ++k) {
        const double pk = p_[k];
        double obj = inv_rate_last_[k];
        for (int l = 0; l < last; ++l) {
          obj += 1.0 / std::log1p(chosen_[l] / (denom_base_[l] + pk));
        }
        consider(obj, k);
      }
      return;
    }
    const int remaining = m_ - 1 - level;
    const int lmax = max_feasible_index(p_, sq_, power_left - remaining * p_[0],
                                        amp_left - remaining * sq_[0]);
    for (int j = 0; j <= lmax; ++j) {
      idx_[level] = j;
      chosen_[level] = p_[j];
      descend(level + 1, power_left - p_[j], amp_left - sq_[j]);
    }
  }

  void consider(double obj, int last_index) {
    if (obj < best_.objective) {
      best_.objective = obj;
      best_.idx = idx_;
      best_.idx[m_ - 1] = last_index;
    }
  }

  const Scenario& s_;
  const std::vector<double>& p_;
  const std::vector<double>& sq_;
  const std::vector<double>& inv_rate_last_;
  const int m_;
  std::array<double, kMaxUsers> noise_over_gain_{};
  std::array<double, kMaxUsers> chosen_{};
  std::array<double, kMaxUsers> denom_base_{};
  std::array<int, kMaxUsers> idx_{};
  Candidate best_;
};

int auto_resolution(int m) {
  if (m <= 2) return 2000;
  if (m == 3) return 400;
  return 100;
}

// Grid objective at an index tuple, or +inf if the point is infeasible.
double objective_at(const Scenario& s, const std::vector<double>& p,
                    const std::vector<double>& sq, const std::array<int, kMaxUsers>& idx) {
  const int m = s.num_users();
  double power = 0.0, amp = 0.0;
  for (int l = 0; l < m; ++l) {
    power += p[idx[l]];
    amp += sq[idx[l]];
  }
  if (power > s.p_max_mw || amp > s.u_max) return kInf;
  double obj = 0.0;
  double tail = 0.0;
  for (int l = m - 1; l >= 0; --l) {
    const double rate = std::log1p(p[idx[l]] / (s.noise_power_mw / s.gains[l] + tail));
    if (!(rate > 0.0)) return kInf;
    obj += 1.0 / rate;
    tail += p[idx[l]];
  }
  return obj;
}

}  // namespace

GridSearchResult grid_search(const Scenario& s, const GridSpec& spec) {
  const int m = s.num_users();
  if (m > kMaxUsers) {
    throw std::invalid_argument("grid_search supports at most 4 users");
  }
  const int n = spec.resolution > 0 ? spec.resolution : auto_resolution(m);
  if (n < 10) throw std::invalid_argument("grid resolution must be at least 10");
  if (!(spec.p_floor > 0.0)) throw std::invalid_argument("p_floor must be positive");

  const double p_hi = std::min(s.p_max_mw, s.u_max * s.u_max);
  if (!(spec.p_floor < p_hi)) {
    throw std::invalid_argument("p_floor must lie below min(P_max, U_max^2)");
  }

  // Log-spaced axis, endpoints pinned so nested refinements reuse points.
  std::vector<double> p(n), sq(n);
  const double lo = std::log(spec.p_floor);
  const double step = (std::log(p_hi) - lo) / (n - 1);
  for (int k = 0; k < n; ++k) p[k] = std::exp(lo + k * step);
  p.front() = spec.p_floor;
  p.back() = p_hi;
  for (int k = 0; k < n; ++k) sq[k] = std::sqrt(p[k]);

  std::vector<double> inv_rate_last(n);
  for (int k = 0; k < n; ++k) {
    inv_rate_last[k] = 1.0 / std::log1p(s.gains[m - 1] * p[k] / s.noise_power_mw);
  }

  int threads = spec.threads > 0
                    ? spec.threads
                    : static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  threads = std::min(threads, n);
  if (m < 2) threads = 1;  // a single axis is one loop

  std::vector<GridWorker> workers;
  workers.reserve(threads);
  for (int w = 0; w < threads; ++w) workers.emplace_back(s, p, sq, inv_rate_last);
  if (threads == 1) {
    workers[0].run(0, n);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(threads);
    for (int w = 0; w < threads; ++w) {
      const int begin = static_cast<int>(static_cast<long long>(n) * w / threads);
      const int end = static_cast<int>(static_cast<long long>(n) * (w + 1) / threads);
      pool.emplace_back([&workers, w, begin, end] { workers[w].run(begin, end); });
    }
    for (auto& th : pool) th.join();
  }

  Candidate best;
  for (const auto& w : workers) {
    if (w.best().better_than(best, m)) best = w.best();
  }
  if (!std::isfinite(best.objective)) {
    throw std::runtime_error("no feasible grid point (p_floor too large?)");
  }

  GridSearchResult res;
  res.resolution = n;
  res.objective = best.objective;
  res.best.powers_mw.resize(m);
  for (int l = 0; l < m; ++l) res.best.powers_mw[l] = p[best.idx[l]];

  // Empirical certificate: objective spread over the feasible neighbors.
  double worst_neighbor = best.objective;
  std::array<int, kMaxUsers> nb{};
  const int combos = static_cast<int>(std::pow(3, m));
  for (int c = 0; c < combos; ++c) {
    int rem = c;
    bool in_grid = true;
    for (int l = 0; l < m; ++l) {
      nb[l] = best.idx[l] + (rem % 3) - 1;
      rem /= 3;
      in_grid = in_grid && nb[l] >= 0 && nb[l] < n;
    }
    if (!in_grid) continue;
    const double obj = objective_at(s, p, sq, nb);
    if (std::isfinite(obj)) worst_neighbor = std::max(worst_neighbor, obj);
  }
  res.error_bound = (worst_neighbor - best.objective) / best.objective;
  return res;
}

}  // namespace nomavlc
