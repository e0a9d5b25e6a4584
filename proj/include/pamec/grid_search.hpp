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
#include <cstddef>

#include "pamec/errors.hpp"

namespace pamec {

struct GridPoint {
  double value = 0.0;
  bool admissible = true;
};

struct GridSearchResult {
  double x = 0.0;
  GridPoint point;
  std::size_t evaluations = 0;
};

/// Orders candidates: admissible beats inadmissible, then larger value wins.
/// Ties keep the earlier candidate.
inline bool grid_better(const GridPoint& a, const GridPoint& b) {
  if (a.admissible != b.admissible) return a.admissible;
  return a.value > b.value;
}

/// Bounded one-dimensional maximization of an oscillatory function.
///
/// A uniform grid with step `coarse_step` covers [lo, hi] (both ends included)
/// and the best point is then refined on a window of +-1 step with the step
/// divided by `refine_factor`, until the step is at most `tol_x`. The incumbent
/// is evaluated first and only replaced on strict improvement, so the result is
/// never worse than the incumbent.
///
/// `eval(x)` returns a GridPoint.
template <class Eval>
GridSearchResult grid_argmax(double lo, double hi, double incumbent, double coarse_step, double refine_factor,
                             double tol_x, Eval&& eval) {
  if (hi < lo) {
    if (lo - hi > 1e-12) throw LayoutError("grid search interval is empty");
    hi = lo;
  }
  incumbent = std::clamp(incumbent, lo, hi);

  GridSearchResult best{incumbent, eval(incumbent), 1};
  auto consider = [&](double x) {
    const GridPoint p = eval(x);
    ++best.evaluations;
    if (grid_better(p, best.point)) {
      best.x = x;
      best.point = p;
    }
  };

  double step = coarse_step;
  const auto count = static_cast<std::size_t>(std::floor((hi - lo) / step));
  for (std::size_t i = 0; i <= count; ++i) consider(lo + static_cast<double>(i) * step);
  if (lo + static_cast<double>(count) * step < hi) consider(hi);

  while (step > tol_x) {
    const double centre = best.x;
    const double fine = step / refine_factor;
    const double a = std::max(lo, centre - step);
    const double b = std::min(hi, centre + step);
    const auto n = static_cast<std::size_t>(std::floor((b - a) / fine));
    for (std::size_t i = 0; i <= n; ++i) consider(a + static_cast<double>(i) * fine);
    step = fine;
  }
  return best;
}

}  // namespace pamec
