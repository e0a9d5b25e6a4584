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

// Min-max delay solver.
//
// The outer loop bisects on the common delay D. For a fixed D the inner loop
// alternates three blocks until nothing moves:
//
//   offload ratios  - LP, maximize sum(beta) under the cumulative rate rows
//   powers          - LP, minimize sum(P) under the cumulative received-power rows
//   geometry        - antenna positions (or, for the array baseline, the
//                     steering direction), maximizing sum(P_k |v_k|^2)
//
// Everything is parameterized on a Geometry policy so the pinching-antenna
// system and the fixed-array baseline share one code path.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "pamec/bisection.hpp"
#include "pamec/errors.hpp"
#include "pamec/grid_search.hpp"
#include "pamec/lp.hpp"
#include "pamec/model.hpp"

namespace pamec {

struct SolverSettings {
  double epsilon = 1e-4;
  double epsilon_x = 1e-4;
  int max_inner_iters = 20;
  double coarse_grid_step_m = 299792458.0 / 28e9 / 8.0;  // lambda/8 at 28 GHz
  double refine_factor = 10.0;
  double dt_min_s = 1e-6;
  double dt_max_expansion_factor = 2.0;
  int max_expansions = 20;
  int steering_points = 721;
  // Relative slack used when validating a candidate allocation.
  double constraint_tolerance = 1e-6;

  /// Defaults with the coarse grid step tied to the carrier (lambda/8).
  static SolverSettings for_params(const SystemParams& p) {
    SolverSettings s;
    s.coarse_grid_step_m = derive_constants(p).wavelength_m / 8.0;
    return s;
  }

  void validate() const {
    if (!(epsilon > 0.0 && epsilon < 1.0)) throw ModelError("epsilon must lie in (0, 1)");
    if (!(epsilon_x > 0.0 && epsilon_x < 1.0)) throw ModelError("epsilon_x must lie in (0, 1)");
    if (max_inner_iters < 1) throw ModelError("max_inner_iters must be >= 1");
    if (!(coarse_grid_step_m > 0.0)) throw ModelError("coarse_grid_step_m must be positive");
    if (!(refine_factor > 1.0)) throw ModelError("refine_factor must exceed 1");
    if (!(dt_min_s > 0.0)) throw ModelError("dt_min_s must be positive");
    if (!(dt_max_expansion_factor > 1.0)) throw ModelError("dt_max_expansion_factor must exceed 1");
    if (steering_points < 1) throw ModelError("steering_points must be >= 1");
  }
};

// ---------------------------------------------------------------------------
// Rate groups: the rows shared by the offload and power LPs.
//
// NOMA: group m holds the m users of lowest rank, full band, one row per m.
// FDMA: one singleton group per user on a B/K sub-band with its own noise.

enum class MultipleAccess { Noma, Fdma };

inline const char* to_string(MultipleAccess a) { return a == MultipleAccess::Noma ? "noma" : "fdma"; }

struct RateGroup {
  std::vector<std::size_t> members;
  double bandwidth_hz = 0.0;
  double noise_w = 0.0;
};

/// `noise_factor` multiplies the per-band thermal noise (N for the pinching
/// receiver, 1 for a unit-norm combiner).
inline std::vector<RateGroup> rate_groups(const Scenario& s, const DecodingOrder& order, MultipleAccess access,
                                          double noise_factor) {
  const std::size_t k_users = s.num_users();
  const double psd_w = dbm_to_watts(s.params.noise_psd_dbm_per_hz);
  std::vector<RateGroup> groups;
  if (access == MultipleAccess::Noma) {
    const auto by_rank = order.users_by_rank();
    RateGroup g{{}, s.params.bandwidth_hz, noise_factor * psd_w * s.params.bandwidth_hz};
    for (std::size_t m = 0; m < k_users; ++m) {
      g.members.push_back(by_rank[m]);
      groups.push_back(g);
    }
  } else {
    const double sub = s.params.bandwidth_hz / static_cast<double>(k_users);
    for (std::size_t k = 0; k < k_users; ++k) groups.push_back({{k}, sub, noise_factor * psd_w * sub});
  }
  return groups;
}

inline double group_bits(const Scenario& s, const RateGroup& g, std::span<const double> beta) {
  double bits = 0.0;
  for (std::size_t i : g.members) bits += beta[i] * s.users[i].task_size_bits;
  return bits;
}

inline double group_received(const RateGroup& g, std::span<const double> gains, std::span<const double> power) {
  double rx = 0.0;
  for (std::size_t i : g.members) rx += power[i] * gains[i];
  return rx;
}

inline double group_rate(const RateGroup& g, std::span<const double> gains, std::span<const double> power) {
  return g.bandwidth_hz * std::log1p(group_received(g, gains, power) / g.noise_w) / std::numbers::ln2;
}

/// Received power a group needs to carry `bits` within `d_t`.
inline double group_required_power(const RateGroup& g, double bits, double d_t) {
  return g.noise_w * std::expm1(std::numbers::ln2 * bits / (g.bandwidth_hz * d_t));
}

// ---------------------------------------------------------------------------
// Offload-ratio and power subproblems

/// Per-user lower bound on beta from the local-time and energy constraints.
inline double beta_lower_bound(const UserTerminal& u, const SystemParams& p, double power_w, double d_t) {
  const double cycles = u.total_cycles();
  const double by_time = 1.0 - d_t * u.local_cpu_hz / cycles;
  const double by_energy =
      1.0 - (p.energy_budget_j - d_t * power_w) / (u.capacitance_coeff * cycles * u.local_cpu_hz * u.local_cpu_hz);
  return std::max({0.0, by_time, by_energy});
}

/// Maximizes sum(beta) with powers and gains fixed. Empty when infeasible.
inline std::optional<std::vector<double>> solve_beta_subproblem(const Scenario& s, std::span<const double> gains,
                                                                std::span<const double> power,
                                                                const std::vector<RateGroup>& groups, double d_t) {
  const std::size_t k_users = s.num_users();
  LpProblem lp(k_users, LpSense::Maximize);
  double scale = 0.0;
  for (const auto& u : s.users) scale = std::max(scale, u.task_size_bits);
  for (std::size_t k = 0; k < k_users; ++k) {
    lp.objective[k] = 1.0;
    lp.lower[k] = beta_lower_bound(s.users[k], s.params, power[k], d_t);
    lp.upper[k] = 1.0;
    if (lp.lower[k] > 1.0) return std::nullopt;
  }
  for (const auto& g : groups) {
    std::vector<double> row(k_users, 0.0);
    for (std::size_t i : g.members) row[i] = s.users[i].task_size_bits / scale;
    lp.add_row(std::move(row), d_t * group_rate(g, gains, power) / scale);
  }
  const LpOutcome r = solve_lp(lp);
  if (!r.optimal()) return std::nullopt;
  return r.solution;
}

/// Minimizes sum(P) with offload ratios and gains fixed. Empty when infeasible,
/// including when local computation alone exhausts a user's energy budget.
inline std::optional<std::vector<double>> solve_power_subproblem(const Scenario& s, std::span<const double> gains,
                                                                 std::span<const double> beta,
                                                                 const std::vector<RateGroup>& groups, double d_t) {
  const std::size_t k_users = s.num_users();
  const double p_max = s.params.max_transmit_power_w;
  // Variables are P / P_max.
  LpProblem lp(k_users, LpSense::Minimize);
  for (std::size_t k = 0; k < k_users; ++k) {
    const double e_loc = local_delay_energy(s.users[k], beta[k]).joules;
    const double cap = (s.params.energy_budget_j - e_loc) / d_t;
    if (cap < 0.0) return std::nullopt;
    lp.objective[k] = 1.0;
    lp.upper[k] = std::min(p_max, cap) / p_max;
  }
  for (const auto& g : groups) {
    const double need = group_required_power(g, group_bits(s, g, beta), d_t);
    if (!std::isfinite(need)) return std::nullopt;
    if (need <= 0.0) continue;
    double scale = 0.0;
    for (std::size_t i : g.members) scale = std::max(scale, gains[i] * p_max);
    if (!(scale > 0.0)) return std::nullopt;
    std::vector<double> row(k_users, 0.0);
    for (std::size_t i : g.members) row[i] = -gains[i] * p_max / scale;
    lp.add_row(std::move(row), -need / scale);
  }
  const LpOutcome r = solve_lp(lp);
  if (!r.optimal()) return std::nullopt;
  std::vector<double> p(k_users);
  for (std::size_t k = 0; k < k_users; ++k) p[k] = r.solution[k] * p_max;
  return p;
}

// Convenience overloads in terms of a pinching layout and NOMA decoding.
inline std::optional<std::vector<double>> solve_beta_subproblem(const Scenario& s, const PaLayout& layout,
                                                                std::span<const double> power,
                                                                const DecodingOrder& order, double d_t) {
  const auto g = effective_gains(s, layout);
  return solve_beta_subproblem(s, g, power, rate_groups(s, order, MultipleAccess::Noma, s.params.num_antennas), d_t);
}

inline std::optional<std::vector<double>> solve_power_subproblem(const Scenario& s, const PaLayout& layout,
                                                                 std::span<const double> beta,
                                                                 const DecodingOrder& order, double d_t) {
  const auto g = effective_gains(s, layout);
  return solve_power_subproblem(s, g, beta, rate_groups(s, order, MultipleAccess::Noma, s.params.num_antennas), d_t);
}

// ---------------------------------------------------------------------------
// Antenna positions

struct AlwaysAdmissible {
  bool operator()(std::span<const double>) const { return true; }
};

/// Best position of antenna `n` with the others held fixed, maximizing
/// sum_k P_k |v_k|^2 over [x_{n-1} + delta, x_{n+1} - delta] intersected with
/// [0, L]. Candidates whose gain vector fails `admissible` rank below every
/// admissible one.
template <class Admissible = AlwaysAdmissible>
double optimize_pa_position_elementwise(const Scenario& s, const PaLayout& layout, std::span<const double> power,
                                        std::size_t n, const SolverSettings& settings,
                                        Admissible&& admissible = {}) {
  const auto& p = s.params;
  const auto dc = derive_constants(p);
  const std::size_t k_users = s.num_users();
  const double lo = n == 0 ? 0.0 : std::max(0.0, layout.x_m[n - 1] + p.min_antenna_spacing_m);
  const double hi =
      n + 1 == layout.size() ? p.waveguide_length_m : std::min(p.waveguide_length_m, layout.x_m[n + 1] - p.min_antenna_spacing_m);

  std::vector<std::complex<double>> others(k_users);
  for (std::size_t k = 0; k < k_users; ++k)
    for (std::size_t m = 0; m < layout.size(); ++m)
      if (m != n) others[k] += pa_term(s.users[k], layout.x_m[m], p, dc);

  std::vector<double> gains(k_users);
  auto eval = [&](double x) {
    double value = 0.0;
    for (std::size_t k = 0; k < k_users; ++k) {
      gains[k] = std::norm(others[k] + pa_term(s.users[k], x, p, dc));
      value += power[k] * gains[k];
    }
    return GridPoint{value, admissible(std::span<const double>(gains))};
  };
  return grid_argmax(lo, hi, layout.x_m[n], settings.coarse_grid_step_m, settings.refine_factor, settings.epsilon_x,
                     eval)
      .x;
}

/// Pinching-antenna geometry: the layout is the decision variable.
struct PassGeometry {
  PaLayout layout;
  bool movable = true;

  std::vector<double> gains(const Scenario& s) const { return effective_gains(s, layout); }
  double noise_factor(const Scenario& s) const { return static_cast<double>(s.params.num_antennas); }
  std::vector<double> coordinates() const { return layout.x_m; }
  const PaLayout& reported_layout() const { return layout; }
  bool valid(const Scenario& s) const { return layout_feasible(layout, s.params, 1e-9); }
  std::optional<double> steering_deg() const { return std::nullopt; }

  template <class Admissible>
  void improve(const Scenario& s, std::span<const double> power, const SolverSettings& settings,
               Admissible&& admissible) {
    if (!movable) return;
    for (std::size_t n = 0; n < layout.size(); ++n)
      layout.x_m[n] = optimize_pa_position_elementwise(s, layout, power, n, settings, admissible);
  }
};

template <class G>
concept Geometry = requires(G g, const G& cg, const Scenario& s, std::span<const double> p,
                            const SolverSettings& st) {
  { cg.gains(s) } -> std::same_as<std::vector<double>>;
  { cg.noise_factor(s) } -> std::convertible_to<double>;
  { cg.coordinates() } -> std::same_as<std::vector<double>>;
  { cg.reported_layout() } -> std::convertible_to<PaLayout>;
  { cg.valid(s) } -> std::same_as<bool>;
  { cg.steering_deg() } -> std::same_as<std::optional<double>>;
  g.improve(s, p, st, AlwaysAdmissible{});
};

// ---------------------------------------------------------------------------
// Feasibility check for a fixed delay

template <Geometry G>
struct Iterate {
  std::vector<double> beta;
  std::vector<double> power_w;
  G geometry;
};

template <Geometry G>
struct Problem {
  const Scenario* scenario = nullptr;
  DecodingOrder order;
  MultipleAccess access = MultipleAccess::Noma;
};

template <Geometry G>
struct FeasibilityResult {
  bool feasible = false;
  std::optional<Iterate<G>> iterate;
  int inner_iterations = 0;
  std::string reason;  // empty when feasible
};

namespace detail {

inline double relative_change(const std::vector<double>& now, const std::vector<double>& old) {
  double diff = 0.0;
  double base = 0.0;
  for (std::size_t i = 0; i < now.size(); ++i) {
    diff += (now[i] - old[i]) * (now[i] - old[i]);
    base += old[i] * old[i];
  }
  return base > 0.0 ? std::sqrt(diff / base) : std::sqrt(diff);
}

inline bool rows_hold(const Scenario& s, const std::vector<RateGroup>& groups, std::span<const double> gains,
                      std::span<const double> beta, std::span<const double> power, double d_t, double rel_tol) {
  for (const auto& g : groups) {
    const double need = group_required_power(g, group_bits(s, g, beta), d_t);
    if (need <= 0.0) continue;
    if (group_received(g, gains, power) < need * (1.0 - rel_tol)) return false;
  }
  return true;
}

}  // namespace detail

/// Checks every constraint of the reformulated problem at delay `d_t`.
/// Returns an empty string when all hold, else the first violated family.
template <Geometry G>
std::string check_constraints(const Problem<G>& prob, const Iterate<G>& it, double d_t, double rel_tol) {
  const Scenario& s = *prob.scenario;
  const auto gains = it.geometry.gains(s);
  const auto groups = rate_groups(s, prob.order, prob.access, it.geometry.noise_factor(s));
  const double p_max = s.params.max_transmit_power_w;
  for (std::size_t k = 0; k < s.num_users(); ++k) {
    if (!(it.beta[k] >= -1e-12 && it.beta[k] <= 1.0 + 1e-12)) return "beta-box";
    if (!(it.power_w[k] >= -1e-15 && it.power_w[k] <= p_max * (1.0 + 1e-12))) return "power-box";
    const auto local = local_delay_energy(s.users[k], it.beta[k]);
    if (local.seconds > d_t * (1.0 + rel_tol)) return "local-time";
    if (local.joules + d_t * it.power_w[k] > s.params.energy_budget_j * (1.0 + rel_tol)) return "energy";
  }
  for (const auto& g : groups) {
    const double bits = group_bits(s, g, it.beta);
    if (bits <= 0.0) continue;
    const double rate = group_rate(g, gains, it.power_w);
    if (!(rate > 0.0) || bits / rate > d_t * (1.0 + rel_tol)) return "offload-time";
  }
  if (!it.geometry.valid(s)) return "layout";
  if (prob.access == MultipleAccess::Noma && !sic_order_satisfied(gains, prob.order)) return "sic-order";
  return {};
}

/// Alternating optimization for one delay, from one starting point.
template <Geometry G>
FeasibilityResult<G> ao_feasibility_check(const Problem<G>& prob, double d_t, Iterate<G> start,
                                          const SolverSettings& settings) {
  const Scenario& s = *prob.scenario;
  const bool noma = prob.access == MultipleAccess::Noma;
  FeasibilityResult<G> out;

  Iterate<G> cur = std::move(start);
  auto gains = cur.geometry.gains(s);
  const auto groups = rate_groups(s, prob.order, prob.access, cur.geometry.noise_factor(s));
  std::optional<Iterate<G>> last_valid;

  for (int i = 1; i <= settings.max_inner_iters; ++i) {
    out.inner_iterations = i;
    auto beta = solve_beta_subproblem(s, gains, cur.power_w, groups, d_t);
    if (!beta) {
      out.reason = "beta-LP";
      break;
    }
    auto power = solve_power_subproblem(s, gains, *beta, groups, d_t);
    if (!power) {
      out.reason = "power-LP";
      break;
    }

    Iterate<G> next{std::move(*beta), std::move(*power), cur.geometry};
    auto admissible = [&](std::span<const double> g) {
      return (!noma || sic_order_satisfied(g, prob.order)) &&
             detail::rows_hold(s, groups, g, next.beta, next.power_w, d_t, 1e-7);
    };
    next.geometry.improve(s, next.power_w, settings, admissible);
    gains = next.geometry.gains(s);
    if (!admissible(gains)) {
      out.reason = noma && !sic_order_satisfied(gains, prob.order) ? "sic-order" : "position-rate";
      break;
    }

    const bool converged = detail::relative_change(next.beta, cur.beta) < settings.epsilon &&
                           detail::relative_change(next.power_w, cur.power_w) < settings.epsilon &&
                           detail::relative_change(next.geometry.coordinates(), cur.geometry.coordinates()) <
                               settings.epsilon;
    cur = std::move(next);
    last_valid = cur;
    if (converged) break;
  }

  if (!last_valid) return out;

  // Re-maximize beta at the final powers and geometry; this keeps every
  // constraint and makes at least one time constraint tight.
  Iterate<G> final_it = std::move(*last_valid);
  const auto final_gains = final_it.geometry.gains(s);
  if (auto beta = solve_beta_subproblem(s, final_gains, final_it.power_w, groups, d_t)) final_it.beta = std::move(*beta);

  out.reason = check_constraints(prob, final_it, d_t, settings.constraint_tolerance);
  out.feasible = out.reason.empty();
  if (out.feasible) out.iterate = std::move(final_it);
  return out;
}

/// Initial iterate for a geometry: full power (capped so that transmission
/// uses at most half the energy budget), beta at its lower bound.
template <Geometry G>
Iterate<G> cold_iterate(const Scenario& s, G geometry, double d_t) {
  const double p0 = std::min(s.params.max_transmit_power_w, 0.5 * s.params.energy_budget_j / d_t);
  Iterate<G> it{std::vector<double>(s.num_users()), std::vector<double>(s.num_users(), p0), std::move(geometry)};
  for (std::size_t k = 0; k < s.num_users(); ++k)
    it.beta[k] = std::clamp(beta_lower_bound(s.users[k], s.params, p0, d_t), 0.0, 1.0);
  return it;
}

/// Feasibility for the pinching system under NOMA with a layout as warm start.
inline FeasibilityResult<PassGeometry> ao_feasibility_check(const Scenario& s, const DecodingOrder& order, double d_t,
                                                            const PaLayout& warm_layout,
                                                            const SolverSettings& settings) {
  const Problem<PassGeometry> prob{&s, order, MultipleAccess::Noma};
  return ao_feasibility_check(prob, d_t, cold_iterate(s, PassGeometry{warm_layout}, d_t), settings);
}

// ---------------------------------------------------------------------------
// Outer bisection

struct SolveReport {
  Allocation allocation;
  BisectionTrace trace;
  DecodingOrder order;
  double wall_seconds = 0.0;
  double lower_bound_s = 0.0;  // final infeasible end of the bracket
  std::optional<double> steering_deg;

  int outer_iterations() const { return trace.outer_iterations(); }
};

template <Geometry G>
Allocation to_allocation(const Iterate<G>& it, const DecodingOrder& order, double d_t) {
  return {it.beta, it.power_w, it.geometry.reported_layout(), order, d_t};
}

/// Probes one delay from up to three starts: the warm geometry from a cold
/// iterate, the warm iterate as is, and the initial geometry from a cold iterate.
template <Geometry G>
ProbeOutcome<Iterate<G>> probe_delay(const Problem<G>& prob, double d_t, const G& cold,
                                     const std::optional<Iterate<G>>& warm, const SolverSettings& settings) {
  const Scenario& s = *prob.scenario;
  ProbeOutcome<Iterate<G>> out;
  auto attempt = [&](Iterate<G> start, const char* tag) {
    auto r = ao_feasibility_check(prob, d_t, std::move(start), settings);
    out.inner_iterations += r.inner_iterations;
    if (r.feasible) {
      out.payload = std::move(r.iterate);
      out.reason = tag;
      return true;
    }
    out.reason = r.reason;
    return false;
  };
  if (warm) {
    if (attempt(cold_iterate(s, warm->geometry, d_t), "warm")) return out;
    if (attempt(*warm, "warm-iterate")) return out;
  }
  attempt(cold_iterate(s, cold, d_t), "cold");
  return out;
}

/// Minimum delay for one decoding order. Throws NoFeasibleDelay when the
/// expanded upper end of the bracket is still infeasible.
template <Geometry G>
SolveReport minimize_delay(const Problem<G>& prob, const G& initial, const SolverSettings& settings) {
  const auto t0 = std::chrono::steady_clock::now();
  const Scenario& s = *prob.scenario;
  s.validate();
  settings.validate();

  double upper = 0.0;
  for (const auto& u : s.users) upper = std::max(upper, u.total_cycles() / u.local_cpu_hz);
  double lower = std::min(settings.dt_min_s, 0.5 * upper);

  BisectionTrace trace;
  std::optional<Iterate<G>> warm;
  for (int e = 0;; ++e) {
    auto r = probe_delay(prob, upper, initial, warm, settings);
    const bool ok = r.payload.has_value();
    trace.steps.push_back({0, ProbePhase::Bracket, upper, ok, r.inner_iterations, r.reason, lower, upper});
    if (ok) {
      warm = std::move(r.payload);
      break;
    }
    if (e >= settings.max_expansions)
      throw NoFeasibleDelay("no feasible delay up to " + std::to_string(upper) + " s (" + r.reason + ")");
    lower = upper;
    upper *= settings.dt_max_expansion_factor;
    trace.steps.back().lower_s = lower;
    trace.steps.back().upper_s = upper;
  }

  // Warm starts carry the last feasible iterate into the next probe.
  auto probe = [&](double d_t) {
    auto r = probe_delay(prob, d_t, initial, warm, settings);
    if (r.payload) warm = r.payload;
    return r;
  };
  auto result = bisect_min_feasible<Iterate<G>>(lower, upper, settings.epsilon, probe, warm, std::move(trace));

  SolveReport rep;
  rep.allocation = to_allocation(*result.best, prob.order, result.upper_s);
  rep.trace = std::move(result.trace);
  rep.order = prob.order;
  rep.lower_bound_s = result.lower_s;
  rep.steering_deg = result.best->geometry.steering_deg();
  rep.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return rep;
}

/// Pinching-antenna NOMA for a fixed decoding order.
inline SolveReport bisection_minimize(const Scenario& s, const DecodingOrder& order, const SolverSettings& settings) {
  const Problem<PassGeometry> prob{&s, order, MultipleAccess::Noma};
  return minimize_delay(prob, PassGeometry{uniform_layout(s.params)}, settings);
}

inline constexpr std::size_t kMaxEnumeratedUsers = 6;

/// Runs `solve(order)` for every decoding order in lexicographic order of the
/// rank vectors and keeps the smallest delay (first one on ties). Orders with
/// no feasible delay are skipped.
template <class Solve>
SolveReport best_over_orders(std::size_t k_users, Solve&& solve) {
  if (k_users > kMaxEnumeratedUsers)
    throw OrderEnumerationTooLarge("order enumeration too large: K = " + std::to_string(k_users));
  const auto t0 = std::chrono::steady_clock::now();
  std::vector<int> ranks(k_users);
  std::iota(ranks.begin(), ranks.end(), 1);
  std::optional<SolveReport> best;
  std::string last_error;
  do {
    try {
      SolveReport r = solve(DecodingOrder(ranks));
      if (!best || r.allocation.delay_s < best->allocation.delay_s) best = std::move(r);
    } catch (const NoFeasibleDelay& e) {
      last_error = e.what();
    }
  } while (std::next_permutation(ranks.begin(), ranks.end()));
  if (!best) throw NoFeasibleDelay("no decoding order is feasible: " + last_error);
  best->wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return std::move(*best);
}

inline SolveReport global_optimize_over_orders(const Scenario& s, const SolverSettings& settings) {
  return best_over_orders(s.num_users(), [&](const DecodingOrder& o) { return bisection_minimize(s, o, settings); });
}

}  // namespace pamec
