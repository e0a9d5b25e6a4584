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

#include <cmath>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace pamec {

enum class ProbePhase { Bracket, Bisect };

struct BisectionStep {
  int iteration = 0;  // 0 for bracket probes, 1.. for bisection iterations
  ProbePhase phase = ProbePhase::Bisect;
  double candidate_s = 0.0;
  bool feasible = false;
  int inner_iterations = 0;
  std::string reason;  // why the probe failed, or which start succeeded
  double lower_s = 0.0;  // bracket after the update
  double upper_s = 0.0;
};

struct BisectionTrace {
  std::vector<BisectionStep> steps;

  int outer_iterations() const {
    int n = 0;
    for (const auto& s : steps)
      if (s.phase == ProbePhase::Bisect) ++n;
    return n;
  }
};

/// Result of one feasibility probe; `payload` is set iff the probe is feasible.
template <class Payload>
struct ProbeOutcome {
  std::optional<Payload> payload;
  int inner_iterations = 0;
  std::string reason;
};

template <class Payload>
struct BisectionResult {
  std::optional<Payload> best;  // payload of the smallest feasible probe
  double lower_s = 0.0;
  double upper_s = 0.0;
  BisectionTrace trace;
};

/// Bisection on a delay bracket: the midpoint replaces the upper end when
/// feasible (and its payload is stored) and the lower end otherwise, while the
/// relative width (upper - lower) / upper exceeds `eps`.
///
/// `probe(d)` returns ProbeOutcome<Payload>. `upper_payload` is a known feasible
/// payload at `upper`, if any.
template <class Payload, class Probe>
BisectionResult<Payload> bisect_min_feasible(double lower, double upper, double eps, Probe&& probe,
                                             std::optional<Payload> upper_payload = std::nullopt,
                                             BisectionTrace trace = {}) {
  BisectionResult<Payload> out;
  out.best = std::move(upper_payload);
  int iteration = 0;
  while ((upper - lower) / upper > eps) {
    const double mid = 0.5 * (lower + upper);
    ProbeOutcome<Payload> r = probe(mid);
    const bool ok = r.payload.has_value();
    if (ok) {
      upper = mid;
      out.best = std::move(r.payload);
    } else {
      lower = mid;
    }
    trace.steps.push_back({++iteration, ProbePhase::Bisect, mid, ok, r.inner_iterations, std::move(r.reason), lower,
                           upper});
  }
  out.lower_s = lower;
  out.upper_s = upper;
  out.trace = std::move(trace);
  return out;
}

/// Upper bound on the number of bisection iterations for a bracket.
inline int bisection_iteration_bound(double lower, double upper, double eps) {
  return static_cast<int>(std::ceil(std::log2((upper - lower) / (eps * lower)))) + 2;
}

}  // namespace pamec
