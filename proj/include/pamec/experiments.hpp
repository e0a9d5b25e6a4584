// SPDX-License-Identifier: Apache-2.0
//
// pamec - delay minimization for pinching-antenna NOMA edge offloading
// Copyright (C) 2026 The pamec authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "pamec/baselines.hpp"
#include "pamec/errors.hpp"
#include "pamec/model.hpp"
#include "pamec/optimizer.hpp"

namespace pamec {

// ---------------------------------------------------------------------------
// Counter-based random numbers.
//
// Every draw is a pure function of (seed, trial, dimension): the SplitMix64
// finalizer is chained over the three keys and the top 53 bits become a double
// in [0, 1). Trials can therefore be generated in any order or in parallel.

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t trial, std::uint64_t dimension) {
  return splitmix64(splitmix64(splitmix64(seed) ^ trial) ^ dimension);
}

inline double counter_uniform(std::uint64_t seed, std::uint64_t trial, std::uint64_t dimension) {
  return static_cast<double>(counter_hash(seed, trial, dimension) >> 11) * 0x1.0p-53;
}

// ---------------------------------------------------------------------------

enum class Scheme { NomaPass, Mimo, Fdma };
enum class SweepVariable { NumAntennas, MaxPowerDbm, TaskSizeBits };

inline const char* to_string(Scheme s) {
  switch (s) {
    case Scheme::NomaPass: return "noma_pass";
    case Scheme::Mimo: return "mimo";
    case Scheme::Fdma: return "fdma";
  }
  return "?";
}

inline const char* to_string(SweepVariable v) {
  switch (v) {
    case SweepVariable::NumAntennas: return "num_antennas";
    case SweepVariable::MaxPowerDbm: return "max_power_dbm";
    case SweepVariable::TaskSizeBits: return "task_size_bits";
  }
  return "?";
}

inline std::optional<Scheme> parse_scheme(const std::string& s) {
  if (s == "noma_pass") return Scheme::NomaPass;
  if (s == "mimo") return Scheme::Mimo;
  if (s == "fdma") return Scheme::Fdma;
  return std::nullopt;
}

inline std::optional<SweepVariable> parse_sweep_variable(const std::string& s) {
  if (s == "num_antennas") return SweepVariable::NumAntennas;
  if (s == "max_power_dbm") return SweepVariable::MaxPowerDbm;
  if (s == "task_size_bits") return SweepVariable::TaskSizeBits;
  return std::nullopt;
}

/// Compute profile shared by every generated user.
struct UserProfile {
  double task_size_bits = 1e6;
  double cycles_per_bit = 1e3;
  double local_cpu_hz = 1e9;
  double capacitance_coeff = 1e-27;
};

struct ExperimentConfig {
  SystemParams params = SystemParams::reference_defaults();
  UserProfile profile;
  SolverSettings settings = SolverSettings::for_params(SystemParams::reference_defaults());
  std::size_t num_users = 2;
  std::uint64_t seed = 1;
  int num_trials = 30;
  SweepVariable sweep_variable = SweepVariable::NumAntennas;
  std::vector<double> sweep_values{4.0};
  std::vector<Scheme> schemes{Scheme::NomaPass};
  std::vector<Point2> fixed_positions;  // overrides random placement when non-empty
  std::string output_dir = "out";
  bool record_wall_time = true;
  unsigned threads = 0;  // 0 = hardware concurrency

  void validate() const {
    try {
      params.validate();
      settings.validate();
    } catch (const ModelError& e) {
      throw ConfigError(e.what());
    }
    if (num_users < 1) throw ConfigError("num_users must be >= 1");
    if (num_trials < 1) throw ConfigError("num_trials must be >= 1");
    if (sweep_values.empty()) throw ConfigError("sweep values must be non-empty");
    if (schemes.empty()) throw ConfigError("scheme list must be non-empty");
    if (!(profile.task_size_bits > 0 && profile.cycles_per_bit > 0 && profile.local_cpu_hz > 0 &&
          profile.capacitance_coeff > 0))
      throw ConfigError("user profile values must be positive");
    if (!fixed_positions.empty() && fixed_positions.size() != num_users)
      throw ConfigError("fixed user positions must list exactly num_users entries");
    for (double v : sweep_values) {
      if (!std::isfinite(v)) throw ConfigError("sweep values must be finite");
      if (sweep_variable == SweepVariable::NumAntennas && (v < 1 || v != std::floor(v)))
        throw ConfigError("num_antennas sweep values must be positive integers");
      if (sweep_variable == SweepVariable::TaskSizeBits && !(v > 0)) throw ConfigError("task sizes must be positive");
    }
  }
};

/// Config with one sweep value applied.
inline ExperimentConfig with_sweep_value(ExperimentConfig c, double value) {
  switch (c.sweep_variable) {
    case SweepVariable::NumAntennas: c.params.num_antennas = static_cast<int>(value); break;
    case SweepVariable::MaxPowerDbm: c.params.max_transmit_power_w = dbm_to_watts(value); break;
    case SweepVariable::TaskSizeBits: c.profile.task_size_bits = value; break;
  }
  return c;
}

/// Users i.i.d. uniform over the square [0, L]^2; user k uses dimensions 2k, 2k+1.
inline Scenario generate_scenario(const ExperimentConfig& c, std::uint64_t trial_index) {
  Scenario s;
  s.params = c.params;
  const double side = c.params.waveguide_length_m;
  for (std::size_t k = 0; k < c.num_users; ++k) {
    UserTerminal u;
    if (c.fixed_positions.empty()) {
      u.position_m = {side * counter_uniform(c.seed, trial_index, 2 * k),
                      side * counter_uniform(c.seed, trial_index, 2 * k + 1)};
    } else {
      u.position_m = c.fixed_positions[k];
    }
    u.task_size_bits = c.profile.task_size_bits;
    u.cycles_per_bit = c.profile.cycles_per_bit;
    u.local_cpu_hz = c.profile.local_cpu_hz;
    u.capacitance_coeff = c.profile.capacitance_coeff;
    s.users.push_back(u);
  }
  return s;
}

inline SolveReport solve_scheme(const Scenario& s, Scheme scheme, const SolverSettings& settings) {
  switch (scheme) {
    case Scheme::NomaPass: return global_optimize_over_orders(s, settings);
    case Scheme::Mimo: return mimo_baseline_delay(s, settings);
    case Scheme::Fdma: return fdma_baseline_delay(s, settings);
  }
  throw ModelError("unknown scheme");
}

struct TrialRecord {
  std::uint64_t seed = 0;
  int trial = 0;
  Scheme scheme = Scheme::NomaPass;
  SweepVariable swept_var = SweepVariable::NumAntennas;
  double swept_value = 0.0;
  double delay_s = std::numeric_limits<double>::quiet_NaN();
  bool converged = false;
  int outer_iters = 0;
  double wall_s = 0.0;
  std::vector<double> beta;
  std::vector<double> power_dbm;
  std::vector<double> x_p;
  std::vector<int> order;
  std::optional<double> steering_deg;
  std::string error;
};

struct TrialRun {
  TrialRecord record;
  std::optional<SolveReport> report;
};

/// Solves one (trial, scheme, sweep value) cell. Solver failures land in the
/// record instead of propagating.
inline TrialRun run_trial(const ExperimentConfig& base, int trial, Scheme scheme, double value) {
  const ExperimentConfig c = with_sweep_value(base, value);
  TrialRun run;
  TrialRecord& r = run.record;
  r.seed = c.seed;
  r.trial = trial;
  r.scheme = scheme;
  r.swept_var = c.sweep_variable;
  r.swept_value = value;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    const Scenario s = generate_scenario(c, static_cast<std::uint64_t>(trial));
    SolverSettings st = c.settings;
    SolveReport rep = solve_scheme(s, scheme, st);
    r.delay_s = rep.allocation.delay_s;
    r.converged = true;
    r.outer_iters = rep.outer_iterations();
    r.beta = rep.allocation.beta;
    for (double p : rep.allocation.power_w) r.power_dbm.push_back(p > 0.0 ? watts_to_dbm(p) : -std::numeric_limits<double>::infinity());
    r.x_p = rep.allocation.layout.x_m;
    r.order = rep.order.ranks();
    r.steering_deg = rep.steering_deg;
    run.report = std::move(rep);
  } catch (const Error& e) {
    r.error = e.what();
  }
  if (c.record_wall_time) r.wall_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return run;
}

/// Runs `fn(i)` for i in [0, n) on up to `threads` workers.
template <class Fn>
void parallel_for(std::size_t n, unsigned threads, Fn&& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (unsigned t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++) fn(i);
    });
  for (auto& th : pool) th.join();
}

/// Every (value, trial, scheme) cell. Records come back ordered by trial,
/// then scheme (config order), then sweep value (config order).
inline std::vector<TrialRecord> run_sweep(const ExperimentConfig& c) {
  c.validate();
  const std::size_t n_values = c.sweep_values.size();
  const std::size_t n_schemes = c.schemes.size();
  const auto n_trials = static_cast<std::size_t>(c.num_trials);
  std::vector<TrialRecord> out(n_values * n_schemes * n_trials);
  parallel_for(out.size(), c.threads, [&](std::size_t i) {
    const std::size_t v = i % n_values;
    const std::size_t sc = (i / n_values) % n_schemes;
    const std::size_t t = i / (n_values * n_schemes);
    out[i] = run_trial(c, static_cast<int>(t), c.schemes[sc], c.sweep_values[v]).record;
  });
  return out;
}

struct SummaryRow {
  Scheme scheme = Scheme::NomaPass;
  double swept_value = 0.0;
  double mean_delay_s = std::numeric_limits<double>::quiet_NaN();
  int converged = 0;
  int trials = 0;
};

/// Arithmetic mean of converged delays per (scheme, swept value), in first-seen order.
inline std::vector<SummaryRow> summarize(const std::vector<TrialRecord>& records) {
  std::vector<SummaryRow> rows;
  std::map<std::pair<int, double>, std::size_t> index;
  std::vector<double> sums;
  for (const auto& r : records) {
    const auto key = std::make_pair(static_cast<int>(r.scheme), r.swept_value);
    auto [it, fresh] = index.try_emplace(key, rows.size());
    if (fresh) {
      rows.push_back({r.scheme, r.swept_value});
      sums.push_back(0.0);
    }
    auto& row = rows[it->second];
    ++row.trials;
    if (r.converged) {
      ++row.converged;
      sums[it->second] += r.delay_s;
    }
  }
  for (std::size_t i = 0; i < rows.size(); ++i)
    if (rows[i].converged > 0) rows[i].mean_delay_s = sums[i] / rows[i].converged;
  return rows;
}

struct TraceRun {
  TrialRecord record;
  BisectionTrace trace;
};

/// Single-trial solve of the proposed scheme (first sweep value, trial 0)
/// keeping the bisection trace of the winning decoding order.
inline TraceRun run_convergence_trace(const ExperimentConfig& c) {
  c.validate();
  TrialRun run = run_trial(c, 0, Scheme::NomaPass, c.sweep_values.front());
  TraceRun out{std::move(run.record), {}};
  if (run.report) out.trace = std::move(run.report->trace);
  return out;
}

}  // namespace pamec
