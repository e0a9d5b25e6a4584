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

// Comparison schemes:
//   - a fixed half-wavelength linear array at the feed point with one analog
//     (unit-modulus) combiner, NOMA on top;
//   - the pinching system with orthogonal B/K sub-bands instead of NOMA.

#include <cmath>
#include <complex>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <vector>

#include "pamec/model.hpp"
#include "pamec/optimizer.hpp"

namespace pamec {

enum class BaselineKind { ConventionalMimo, FdmaPass };

/// Element positions of the reference array: lambda/2 spacing along x,
/// centred on x = 0, at the antenna height.
inline std::vector<double> mimo_array_positions(const SystemParams& p) {
  const double half = 0.5 * derive_constants(p).wavelength_m;
  const int n = p.num_antennas;
  std::vector<double> x(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) x[static_cast<std::size_t>(i)] = (i - 0.5 * (n - 1)) * half;
  return x;
}

/// Far-field style combiner for steering angle theta:
/// w_n = exp(j pi n sin(theta)) / sqrt(N).
inline std::vector<std::complex<double>> steering_weights(int num_antennas, double theta_rad) {
  std::vector<std::complex<double>> w(static_cast<std::size_t>(num_antennas));
  const double scale = 1.0 / std::sqrt(static_cast<double>(num_antennas));
  for (int n = 0; n < num_antennas; ++n)
    w[static_cast<std::size_t>(n)] = std::polar(scale, std::numbers::pi * n * std::sin(theta_rad));
  return w;
}

/// Per-element free-space channel of user k (no waveguide phase).
inline std::vector<std::complex<double>> mimo_channel(const Scenario& s, std::size_t k) {
  const auto dc = derive_constants(s.params);
  const auto xs = mimo_array_positions(s.params);
  std::vector<std::complex<double>> h(xs.size());
  for (std::size_t n = 0; n < xs.size(); ++n) {
    const double r = user_pa_distance(s.users[k], xs[n], s.params.antenna_height_m);
    h[n] = std::polar(dc.eta_m / r, -2.0 * std::numbers::pi * r / dc.wavelength_m);
  }
  return h;
}

/// |w^H h|^2
inline double combined_gain(std::span<const std::complex<double>> w, std::span<const std::complex<double>> h) {
  std::complex<double> acc{};
  for (std::size_t n = 0; n < w.size(); ++n) acc += std::conj(w[n]) * h[n];
  return std::norm(acc);
}

/// Fixed array; the decision variable is the index into a uniform grid of
/// steering angles over [-90, 90] degrees.
class MimoGeometry {
 public:
  MimoGeometry(const Scenario& s, int steering_points) : index_(static_cast<std::size_t>(steering_points / 2)) {
    const std::size_t k_users = s.num_users();
    const auto points = static_cast<std::size_t>(steering_points);
    auto table = std::make_shared<Table>();
    table->layout.x_m = mimo_array_positions(s.params);
    table->angles_deg.resize(points);
    table->gains.assign(points, std::vector<double>(k_users));
    std::vector<std::vector<std::complex<double>>> h(k_users);
    for (std::size_t k = 0; k < k_users; ++k) h[k] = mimo_channel(s, k);
    for (std::size_t i = 0; i < points; ++i) {
      const double deg = points == 1 ? 0.0 : -90.0 + 180.0 * static_cast<double>(i) / static_cast<double>(points - 1);
      table->angles_deg[i] = deg;
      const auto w = steering_weights(s.params.num_antennas, deg * std::numbers::pi / 180.0);
      for (std::size_t k = 0; k < k_users; ++k) table->gains[i][k] = combined_gain(w, h[k]);
    }
    table_ = std::move(table);
  }

  std::vector<double> gains(const Scenario&) const { return table_->gains[index_]; }
  double noise_factor(const Scenario&) const { return 1.0; }
  std::vector<double> coordinates() const { return {table_->angles_deg[index_]}; }
  const PaLayout& reported_layout() const { return table_->layout; }
  bool valid(const Scenario&) const { return true; }
  std::optional<double> steering_deg() const { return table_->angles_deg[index_]; }
  std::size_t steering_index() const { return index_; }

  template <class Admissible>
  void improve(const Scenario&, std::span<const double> power, const SolverSettings&, Admissible&& admissible) {
    auto eval = [&](std::size_t i) {
      double value = 0.0;
      for (std::size_t k = 0; k < power.size(); ++k) value += power[k] * table_->gains[i][k];
      return GridPoint{value, admissible(std::span<const double>(table_->gains[i]))};
    };
    GridPoint best = eval(index_);
    for (std::size_t i = 0; i < table_->angles_deg.size(); ++i) {
      const GridPoint p = eval(i);
      if (grid_better(p, best)) {
        best = p;
        index_ = i;
      }
    }
  }

 private:
  struct Table {
    PaLayout layout;
    std::vector<double> angles_deg;
    std::vector<std::vector<double>> gains;  // [angle][user]
  };
  std::shared_ptr<const Table> table_;
  std::size_t index_;
};

static_assert(Geometry<MimoGeometry>);
static_assert(Geometry<PassGeometry>);

/// Array baseline: NOMA with the best steering, minimized over decoding orders.
inline SolveReport mimo_baseline_delay(const Scenario& s, const SolverSettings& settings) {
  s.validate();
  const MimoGeometry initial(s, settings.steering_points);
  return best_over_orders(s.num_users(), [&](const DecodingOrder& o) {
    const Problem<MimoGeometry> prob{&s, o, MultipleAccess::Noma};
    return minimize_delay(prob, initial, settings);
  });
}

/// Orthogonal sub-bands on the pinching system. No SIC, so one order suffices.
inline SolveReport fdma_baseline_delay(const Scenario& s, const SolverSettings& settings) {
  const Problem<PassGeometry> prob{&s, DecodingOrder::identity(s.num_users()), MultipleAccess::Fdma};
  return minimize_delay(prob, PassGeometry{uniform_layout(s.params)}, settings);
}

/// Pinching system with frozen antenna positions (NOMA, all orders).
inline SolveReport pinned_pass_delay(const Scenario& s, const PaLayout& layout, const SolverSettings& settings) {
  return best_over_orders(s.num_users(), [&](const DecodingOrder& o) {
    const Problem<PassGeometry> prob{&s, o, MultipleAccess::Noma};
    return minimize_delay(prob, PassGeometry{layout, false}, settings);
  });
}

/// FDMA rate of user k: (B/K) log2(1 + P_k |v_k|^2 / (N sigma_sub^2)).
inline double fdma_rate(const Scenario& s, std::span<const double> gains, std::span<const double> power,
                        std::size_t k) {
  const auto groups = rate_groups(s, DecodingOrder::identity(s.num_users()), MultipleAccess::Fdma,
                                  static_cast<double>(s.params.num_antennas));
  return group_rate(groups[k], gains, power);
}

}  // namespace pamec
