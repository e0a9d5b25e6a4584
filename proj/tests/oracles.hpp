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

// Test-only reference implementations. None of these call into the library
// code paths they are used to check.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <random>
#include <vector>

#include "pamec/lp.hpp"
#include "pamec/model.hpp"

namespace oracle {

/// Effective gain by explicit real/imaginary accumulation in extended
/// precision, with constants recomputed from the raw parameters.
inline double direct_gain(const pamec::SystemParams& p, double xu, double yu, const std::vector<double>& xs) {
  using ld = long double;
  const ld two_pi = 6.283185307179586476925286766559L;
  const ld c = p.speed_of_light_m_per_s;
  const ld f = p.carrier_frequency_hz;
  const ld eta = c / (2.0L * two_pi * f);
  const ld k0 = two_pi * f / c;
  const ld kg = k0 * p.effective_refractive_index;
  ld re = 0.0L;
  ld im = 0.0L;
  for (double x : xs) {
    const ld dx = static_cast<ld>(xu) - x;
    const ld r = std::sqrt(dx * dx + static_cast<ld>(yu) * yu + static_cast<ld>(p.antenna_height_m) * p.antenna_height_m);
    const ld ph = k0 * r + kg * x;
    re += eta / r * std::cos(ph);
    im -= eta / r * std::sin(ph);
  }
  return static_cast<double>(re * re + im * im);
}

/// Per-user rate from SINR with interference listed explicitly.
inline double rate_by_sinr(const std::vector<double>& g, const std::vector<double>& p, const std::vector<int>& rank,
                           std::size_t k, double bandwidth, double noise) {
  double interference = 0.0;
  for (std::size_t j = 0; j < g.size(); ++j)
    if (rank[j] < rank[k]) interference += p[j] * g[j];
  return bandwidth * std::log2(1.0 + p[k] * g[k] / (interference + noise));
}

struct VertexResult {
  bool feasible = false;
  double objective = 0.0;
  std::vector<double> x;
};

/// Brute-force LP over all basic points of {A x <= b, lower <= x <= upper}
/// (all bounds finite).
inline VertexResult vertex_enumeration(const pamec::LpProblem& lp, double tol = 1e-9) {
  const std::size_t n = lp.num_vars();
  std::vector<std::vector<double>> a;
  std::vector<double> b;
  for (std::size_t i = 0; i < lp.rows.size(); ++i) {
    a.push_back(lp.rows[i]);
    b.push_back(lp.rhs[i]);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<double> lo(n, 0.0), hi(n, 0.0);
    lo[j] = -1.0;
    hi[j] = 1.0;
    a.push_back(lo);
    b.push_back(-lp.lower[j]);
    a.push_back(hi);
    b.push_back(lp.upper[j]);
  }
  const std::size_t m = a.size();
  VertexResult best;
  const double dir = lp.sense == pamec::LpSense::Maximize ? 1.0 : -1.0;

  std::vector<std::size_t> pick(n);
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t depth, std::size_t start) {
    if (depth == n) {
      // Solve the n x n system by Gaussian elimination with partial pivoting.
      std::vector<std::vector<double>> mtx(n, std::vector<double>(n + 1));
      for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t c = 0; c < n; ++c) mtx[r][c] = a[pick[r]][c];
        mtx[r][n] = b[pick[r]];
      }
      for (std::size_t c = 0; c < n; ++c) {
        std::size_t piv = c;
        for (std::size_t r = c + 1; r < n; ++r)
          if (std::abs(mtx[r][c]) > std::abs(mtx[piv][c])) piv = r;
        if (std::abs(mtx[piv][c]) < 1e-12) return;
        std::swap(mtx[piv], mtx[c]);
        for (std::size_t r = 0; r < n; ++r) {
          if (r == c) continue;
          const double f = mtx[r][c] / mtx[c][c];
          for (std::size_t k = c; k <= n; ++k) mtx[r][k] -= f * mtx[c][k];
        }
      }
      std::vector<double> x(n);
      for (std::size_t c = 0; c < n; ++c) x[c] = mtx[c][n] / mtx[c][c];
      for (std::size_t i = 0; i < m; ++i) {
        double ax = 0.0;
        for (std::size_t c = 0; c < n; ++c) ax += a[i][c] * x[c];
        if (ax > b[i] + tol) return;
      }
      double obj = 0.0;
      for (std::size_t c = 0; c < n; ++c) obj += lp.objective[c] * x[c];
      if (!best.feasible || dir * obj > dir * best.objective) best = {true, obj, x};
      return;
    }
    for (std::size_t i = start; i < m; ++i) {
      pick[depth] = i;
      rec(depth + 1, i + 1);
    }
  };
  rec(0, 0);
  return best;
}

/// Random bounded LP with n <= 4 variables and m <= 6 rows.
inline pamec::LpProblem random_bounded_lp(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> nd(1, 4), md(0, 6);
  std::uniform_real_distribution<double> coef(-1.0, 1.0), rhs(-0.5, 1.5), lo(-1.0, 0.0), width(0.1, 2.0);
  const auto n = static_cast<std::size_t>(nd(rng));
  const auto m = static_cast<std::size_t>(md(rng));
  pamec::LpProblem lp(n, rng() % 2 ? pamec::LpSense::Maximize : pamec::LpSense::Minimize);
  for (std::size_t j = 0; j < n; ++j) {
    lp.objective[j] = coef(rng);
    lp.lower[j] = lo(rng);
    lp.upper[j] = lp.lower[j] + width(rng);
  }
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<double> row(n);
    for (auto& v : row) v = coef(rng);
    lp.add_row(std::move(row), rhs(rng));
  }
  return lp;
}

/// Exhaustive grid maximizer of f over [lo, hi] with the given step.
template <class F>
double fine_grid_argmax(double lo, double hi, double step, F&& f) {
  double best_x = lo;
  double best = f(lo);
  for (double x = lo; x <= hi; x += step) {
    const double v = f(x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  return best_x;
}

}  // namespace oracle
