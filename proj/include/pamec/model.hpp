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
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pamec/errors.hpp"

namespace pamec {

/// Physical, radio and compute constants shared by every user of one scenario.
/// All quantities are SI; the only logarithmic quantity is the noise PSD.
struct SystemParams {
  double carrier_frequency_hz = 28e9;
  double speed_of_light_m_per_s = 299792458.0;
  double effective_refractive_index = 1.4;
  double bandwidth_hz = 1e6;
  double noise_psd_dbm_per_hz = -174.0;
  double antenna_height_m = 3.0;
  double waveguide_length_m = 15.0;  // also the side of the square user region
  int num_antennas = 4;
  double min_antenna_spacing_m = 0.0;
  double max_transmit_power_w = 0.01;
  double energy_budget_j = 0.2;

  /// Carrier 28 GHz, n_eff 1.4, 1 MHz, -174 dBm/Hz, d = 3 m, L = 15 m, N = 4,
  /// spacing lambda/2, 10 dBm, 0.2 J.
  static SystemParams reference_defaults() {
    SystemParams p;
    p.min_antenna_spacing_m = 0.5 * p.speed_of_light_m_per_s / p.carrier_frequency_hz;
    return p;
  }

  void validate() const {
    auto positive = [](double v, const char* name) {
      if (!(v > 0.0) || !std::isfinite(v)) throw ModelError(std::string(name) + " must be positive and finite");
    };
    positive(carrier_frequency_hz, "carrier_frequency_hz");
    positive(speed_of_light_m_per_s, "speed_of_light_m_per_s");
    positive(effective_refractive_index, "effective_refractive_index");
    positive(bandwidth_hz, "bandwidth_hz");
    positive(antenna_height_m, "antenna_height_m");
    positive(waveguide_length_m, "waveguide_length_m");
    positive(max_transmit_power_w, "max_transmit_power_w");
    positive(energy_budget_j, "energy_budget_j");
    if (!std::isfinite(noise_psd_dbm_per_hz)) throw ModelError("noise_psd_dbm_per_hz must be finite");
    if (num_antennas < 1) throw ModelError("num_antennas must be >= 1");
    if (!(min_antenna_spacing_m >= 0.0)) throw ModelError("min_antenna_spacing_m must be >= 0");
    if (min_antenna_spacing_m * (num_antennas - 1) > waveguide_length_m)
      throw ModelError("num_antennas at min_antenna_spacing_m do not fit on the waveguide");
  }
};

struct DerivedConstants {
  double eta_m;
  double wavelength_m;
  double guided_wavelength_m;
  double noise_power_w;  // over the full bandwidth
};

inline double dbm_to_watts(double dbm) { return std::pow(10.0, (dbm - 30.0) / 10.0); }
inline double watts_to_dbm(double w) { return 10.0 * std::log10(w) + 30.0; }

inline DerivedConstants derive_constants(const SystemParams& p) {
  const double lambda = p.speed_of_light_m_per_s / p.carrier_frequency_hz;
  return {
      .eta_m = p.speed_of_light_m_per_s / (4.0 * std::numbers::pi * p.carrier_frequency_hz),
      .wavelength_m = lambda,
      .guided_wavelength_m = lambda / p.effective_refractive_index,
      .noise_power_w = dbm_to_watts(p.noise_psd_dbm_per_hz) * p.bandwidth_hz,
  };
}

struct Point2 {
  double x = 0.0;
  double y = 0.0;
};

struct UserTerminal {
  Point2 position_m;
  double task_size_bits = 1e6;
  double cycles_per_bit = 1e3;
  double local_cpu_hz = 1e9;
  double capacitance_coeff = 1e-27;

  /// Cycles needed to run the whole task locally.
  double total_cycles() const { return task_size_bits * cycles_per_bit; }
};

struct Scenario {
  SystemParams params;
  std::vector<UserTerminal> users;

  std::size_t num_users() const { return users.size(); }

  void validate() const {
    params.validate();
    if (users.empty()) throw ModelError("scenario needs at least one user");
    const double side = params.waveguide_length_m;
    for (std::size_t k = 0; k < users.size(); ++k) {
      const auto& u = users[k];
      const std::string tag = "user " + std::to_string(k) + ": ";
      if (!(u.position_m.x >= 0.0 && u.position_m.x <= side && u.position_m.y >= 0.0 && u.position_m.y <= side))
        throw ModelError(tag + "position outside the square region");
      if (!(u.task_size_bits > 0.0 && u.cycles_per_bit > 0.0 && u.local_cpu_hz > 0.0 && u.capacitance_coeff > 0.0))
        throw ModelError(tag + "compute profile values must be positive");
    }
  }
};

/// Pinching-antenna x-coordinates along the waveguide, ascending.
struct PaLayout {
  std::vector<double> x_m;

  std::size_t size() const { return x_m.size(); }
};

/// Membership test for the feasible layout set: inside [0, L] and spaced by at least delta.
inline bool layout_feasible(const PaLayout& layout, const SystemParams& p, double tol = 1e-12) {
  if (static_cast<int>(layout.size()) != p.num_antennas) return false;
  for (std::size_t n = 0; n < layout.size(); ++n) {
    const double x = layout.x_m[n];
    if (!std::isfinite(x) || x < -tol || x > p.waveguide_length_m + tol) return false;
    if (n > 0 && layout.x_m[n] - layout.x_m[n - 1] < p.min_antenna_spacing_m - tol) return false;
  }
  return true;
}

/// Uniform spread L(n - 1/2)/N, pushed right then left so that the spacing holds.
inline PaLayout uniform_layout(const SystemParams& p) {
  const auto n_ant = static_cast<std::size_t>(p.num_antennas);
  const double side = p.waveguide_length_m;
  const double gap = p.min_antenna_spacing_m;
  PaLayout layout{std::vector<double>(n_ant)};
  for (std::size_t n = 0; n < n_ant; ++n)
    layout.x_m[n] = side * (static_cast<double>(n) + 0.5) / static_cast<double>(n_ant);
  for (std::size_t n = 1; n < n_ant; ++n) layout.x_m[n] = std::max(layout.x_m[n], layout.x_m[n - 1] + gap);
  layout.x_m[n_ant - 1] = std::min(layout.x_m[n_ant - 1], side);
  for (std::size_t n = n_ant - 1; n-- > 0;) layout.x_m[n] = std::min(layout.x_m[n], layout.x_m[n + 1] - gap);
  layout.x_m[0] = std::max(layout.x_m[0], 0.0);
  return layout;
}

/// SIC decoding order. rank(k) is in 1..K; the receiver decodes rank K first and
/// treats every user of lower rank as interference.
class DecodingOrder {
 public:
  DecodingOrder() = default;

  explicit DecodingOrder(std::vector<int> ranks) : ranks_(std::move(ranks)) {
    std::vector<int> seen(ranks_.size(), 0);
    for (int r : ranks_) {
      if (r < 1 || r > static_cast<int>(ranks_.size()) || seen[static_cast<std::size_t>(r - 1)]++)
        throw ModelError("decoding order must be a permutation of 1..K");
    }
  }

  static DecodingOrder identity(std::size_t k) {
    std::vector<int> r(k);
    std::iota(r.begin(), r.end(), 1);
    return DecodingOrder(std::move(r));
  }

  std::size_t size() const { return ranks_.size(); }
  int rank(std::size_t user) const { return ranks_[user]; }
  const std::vector<int>& ranks() const { return ranks_; }

  /// Users listed by ascending rank: element 0 is decoded last.
  std::vector<std::size_t> users_by_rank() const {
    std::vector<std::size_t> out(ranks_.size());
    for (std::size_t k = 0; k < ranks_.size(); ++k) out[static_cast<std::size_t>(ranks_[k] - 1)] = k;
    return out;
  }

  friend bool operator==(const DecodingOrder&, const DecodingOrder&) = default;

 private:
  std::vector<int> ranks_;
};

struct Allocation {
  std::vector<double> beta;
  std::vector<double> power_w;
  PaLayout layout;
  DecodingOrder order;
  double delay_s = 0.0;
};

// ---------------------------------------------------------------------------
// Channel

inline double user_pa_distance(const UserTerminal& user, double pa_x, double height) {
  const double dx = user.position_m.x - pa_x;
  return std::sqrt(dx * dx + user.position_m.y * user.position_m.y + height * height);
}

/// Complex coefficient of one pinching antenna for one user: free-space
/// amplitude and phase plus the in-waveguide phase from the feed at x = 0.
/// The phase runs to thousands of cycles, so the cycle count is formed in
/// extended precision and reduced to [0, 1) before the trigonometry.
inline std::complex<double> pa_term(const UserTerminal& user, double pa_x, const SystemParams& p,
                                    const DerivedConstants& dc) {
  using ld = long double;
  const ld dx = static_cast<ld>(user.position_m.x) - pa_x;
  const ld y = user.position_m.y;
  const ld h = p.antenna_height_m;
  const ld r = std::sqrt(dx * dx + y * y + h * h);
  const ld inv_lambda = static_cast<ld>(p.carrier_frequency_hz) / p.speed_of_light_m_per_s;
  const ld cycles = r * inv_lambda + static_cast<ld>(pa_x) * inv_lambda * p.effective_refractive_index;
  const double frac = static_cast<double>(cycles - std::floor(cycles));
  return std::polar(dc.eta_m / static_cast<double>(r), -2.0 * std::numbers::pi * frac);
}

inline std::complex<double> effective_channel(const Scenario& s, const PaLayout& layout, std::size_t k) {
  const auto dc = derive_constants(s.params);
  std::complex<double> v{};
  for (double x : layout.x_m) v += pa_term(s.users[k], x, s.params, dc);
  return v;
}

inline double effective_gain(const Scenario& s, const PaLayout& layout, std::size_t k) {
  return std::norm(effective_channel(s, layout, k));
}

inline std::vector<double> effective_gains(const Scenario& s, const PaLayout& layout) {
  std::vector<double> g(s.num_users());
  for (std::size_t k = 0; k < g.size(); ++k) g[k] = effective_gain(s, layout, k);
  return g;
}

// ---------------------------------------------------------------------------
// Rates. The gain-level overloads take |v_k|^2 directly and the aggregate
// receiver noise (N sigma^2 for the pinching receiver).

/// Received power of users with rank < `rank` (strict) or <= `rank`.
inline double received_below(std::span<const double> gains, std::span<const double> powers,
                             const DecodingOrder& order, int rank, bool inclusive) {
  double acc = 0.0;
  for (std::size_t i = 0; i < gains.size(); ++i) {
    const int r = order.rank(i);
    if (r < rank || (inclusive && r == rank)) acc += powers[i] * gains[i];
  }
  return acc;
}

inline double sinr(std::span<const double> gains, std::span<const double> powers, const DecodingOrder& order,
                   std::size_t k, double noise_w) {
  return powers[k] * gains[k] / (received_below(gains, powers, order, order.rank(k), false) + noise_w);
}

/// B log2 of (interference + own + noise) over (interference + noise).
inline double achievable_rate(std::span<const double> gains, std::span<const double> powers,
                              const DecodingOrder& order, std::size_t k, double bandwidth_hz, double noise_w) {
  const double below = received_below(gains, powers, order, order.rank(k), false) + noise_w;
  const double own = powers[k] * gains[k];
  return bandwidth_hz * std::log1p(own / below) / std::numbers::ln2;
}

/// Sum rate of the m users with the smallest ranks.
inline double prefix_sum_rate(std::span<const double> gains, std::span<const double> powers,
                              const DecodingOrder& order, int m, double bandwidth_hz, double noise_w) {
  const double rx = received_below(gains, powers, order, m, true);
  return bandwidth_hz * std::log1p(rx / noise_w) / std::numbers::ln2;
}

inline double receiver_noise(const SystemParams& p) {
  return static_cast<double>(p.num_antennas) * derive_constants(p).noise_power_w;
}

inline double sinr(const Scenario& s, const PaLayout& layout, std::span<const double> powers,
                   const DecodingOrder& order, std::size_t k) {
  const auto g = effective_gains(s, layout);
  return sinr(g, powers, order, k, receiver_noise(s.params));
}

inline double achievable_rate(const Scenario& s, const PaLayout& layout, std::span<const double> powers,
                              const DecodingOrder& order, std::size_t k) {
  const auto g = effective_gains(s, layout);
  return achievable_rate(g, powers, order, k, s.params.bandwidth_hz, receiver_noise(s.params));
}

inline double prefix_sum_rate(const Scenario& s, const PaLayout& layout, std::span<const double> powers,
                              const DecodingOrder& order, int m) {
  const auto g = effective_gains(s, layout);
  return prefix_sum_rate(g, powers, order, m, s.params.bandwidth_hz, receiver_noise(s.params));
}

// ---------------------------------------------------------------------------
// Delay and energy

struct DelayEnergy {
  double seconds = 0.0;
  double joules = 0.0;
};

inline DelayEnergy offload_delay_energy(const UserTerminal& user, double beta, double rate_bps, double power_w) {
  if (beta <= 0.0) return {};
  if (!(rate_bps > 0.0)) throw ZeroRateOffload("zero-rate offload: beta > 0 with rate 0");
  const double t = beta * user.task_size_bits / rate_bps;
  return {t, t * power_w};
}

inline DelayEnergy local_delay_energy(const UserTerminal& user, double beta) {
  const double cycles = (1.0 - beta) * user.total_cycles();
  return {cycles / user.local_cpu_hz, user.capacitance_coeff * cycles * user.local_cpu_hz * user.local_cpu_hz};
}

inline double task_time(const UserTerminal& user, double beta, double rate_bps, double power_w) {
  return std::max(offload_delay_energy(user, beta, rate_bps, power_w).seconds, local_delay_energy(user, beta).seconds);
}

/// Offloaded bits of the m lowest-rank users over their prefix sum rate.
inline double equivalent_offload_time(const Scenario& s, const Allocation& a, int m) {
  double bits = 0.0;
  for (std::size_t i = 0; i < s.num_users(); ++i)
    if (a.order.rank(i) <= m) bits += a.beta[i] * s.users[i].task_size_bits;
  if (bits <= 0.0) return 0.0;
  const double rate = prefix_sum_rate(s, a.layout, a.power_w, a.order, m);
  if (!(rate > 0.0)) throw ZeroRateOffload("zero-rate offload: prefix " + std::to_string(m) + " carries bits at rate 0");
  return bits / rate;
}

// ---------------------------------------------------------------------------
// SIC ordering: walking from the first-decoded user down, gains never increase.

inline bool sic_order_satisfied(std::span<const double> gains, const DecodingOrder& order) {
  const auto by_rank = order.users_by_rank();
  for (std::size_t i = 1; i < by_rank.size(); ++i)
    if (gains[by_rank[i]] < gains[by_rank[i - 1]]) return false;
  return true;
}

inline bool sic_order_satisfied(const Scenario& s, const PaLayout& layout, const DecodingOrder& order) {
  return sic_order_satisfied(effective_gains(s, layout), order);
}

}  // namespace pamec
