// Copyright (c) noma-vlc contributors
// SPDX-License-Identifier: Apache-2.0

#include "nomavlc/sweep.hpp"

#include <atomic>
#include <charconv>
#include <cstdlib>
#include <stdexcept>
#include <thread>

namespace nomavlc {

namespace {

std::string format_double(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

SweepRow solve_row(const Scenario& base, double p_max, const SolverConfig& cfg) {
  Scenario s = base;
  s.p_max_mw = p_max;
  const SolveResult sol = solve(s, cfg);
  SweepRow row;
  row.p_max_mw = p_max;
  row.status = sol.status;
  row.outer_iters = sol.outer_iterations;
  row.newton_iters = sol.newton_iterations;
  row.kkt_residual = sol.kkt_residual;
  const RateReport report =
      rate_report(s, PowerAllocation{s.to_sorted_order(sol.allocation.powers_mw)});
  row.sum_rate_nats = report.sum_rate;
  row.harmonic_objective = report.harmonic_objective;
  return row;
}

}  // namespace

void SweepSpec::validate() const {
  if (p_max_values_mw.empty()) throw std::invalid_argument("p_max list is empty");
  double prev = 0.0;
  for (double v : p_max_values_mw) {
    if (!(v > prev)) {
      throw std::invalid_argument("p_max values must be positive and strictly increasing");
    }
    prev = v;
  }
}

std::vector<SweepRow> run_sweep(const Scenario& base, const SweepSpec& sweep,
                                const SolverConfig& cfg, int threads) {
  sweep.validate();
  cfg.validate();
  const int count = static_cast<int>(sweep.p_max_values_mw.size());
  std::vector<SweepRow> rows(count);
  if (threads <= 1) {
    for (int i = 0; i < count; ++i) {
      rows[i] = solve_row(base, sweep.p_max_values_mw[i], cfg);
    }
    return rows;
  }
  std::vector<std::thread> pool;
  std::atomic<int> next{0};
  const int workers = std::min(threads, count);
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int i = next.fetch_add(1); i < count; i = next.fetch_add(1)) {
        rows[i] = solve_row(base, sweep.p_max_values_mw[i], cfg);
      }
    });
  }
  for (auto& th : pool) th.join();
  return rows;
}

std::string sweep_to_csv(const std::vector<SweepRow>& rows) {
  std::string csv =
      "p_max_mw,sum_rate_nats,harmonic_objective,status,outer_iters,"
      "newton_iters,kkt_residual\n";
  for (const auto& r : rows) {
    csv += format_double(r.p_max_mw);
    csv += ',';
    csv += format_double(r.sum_rate_nats);
    csv += ',';
    csv += format_double(r.harmonic_objective);
    csv += ',';
    csv += to_string(r.status);
    csv += ',';
    csv += std::to_string(r.outer_iters);
    csv += ',';
    csv += std::to_string(r.newton_iters);
    csv += ',';
    csv += format_double(r.kkt_residual);
    csv += '\n';
  }
  return csv;
}

int sweep_threads_from_env() {
  const char* raw = std::getenv("NOMA_VLC_THREADS");
  if (raw == nullptr) return 0;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (end == raw || *end != '\0' || v < 0) return 0;
  return static_cast<int>(v);
}

}  // namespace nomavlc
