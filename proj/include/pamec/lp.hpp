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

// Small dense linear programs: two-phase tableau simplex with Bland's rule.
//
//   optimize  c^T x
//   s.t.      A x <= b
//             lower <= x <= upper      (either side may be infinite)
//
// Variables are shifted/reflected onto x' >= 0 and finite ranges become
// explicit rows. Intended for a handful of variables; everything is O(m n)
// per pivot and allocation happens once per solve.

#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "pamec/errors.hpp"

namespace pamec {

enum class LpSense { Minimize, Maximize };
enum class LpStatus { Optimal, Infeasible, Unbounded };

inline const char* to_string(LpStatus s) {
  switch (s) {
    case LpStatus::Optimal: return "optimal";
    case LpStatus::Infeasible: return "infeasible";
    case LpStatus::Unbounded: return "unbounded";
  }
  return "?";
}

struct LpProblem {
  std::vector<double> objective;
  LpSense sense = LpSense::Minimize;
  std::vector<std::vector<double>> rows;  // A, one vector of length n per row
  std::vector<double> rhs;                // b
  std::vector<double> lower;
  std::vector<double> upper;

  std::size_t num_vars() const { return objective.size(); }

  /// Adds a variable with bounds [0, +inf) unless given.
  explicit LpProblem(std::size_t n = 0, LpSense s = LpSense::Minimize)
      : objective(n, 0.0), sense(s), lower(n, 0.0), upper(n, std::numeric_limits<double>::infinity()) {}

  void add_row(std::vector<double> a, double b) {
    rows.push_back(std::move(a));
    rhs.push_back(b);
  }
};

struct LpOutcome {
  LpStatus status = LpStatus::Infeasible;
  std::vector<double> solution;
  double objective = 0.0;

  bool optimal() const { return status == LpStatus::Optimal; }
};

struct LpTolerances {
  double feasibility = 1e-9;
  double optimality = 1e-9;
  double pivot = 1e-12;
  double zero_row = 1e-12;
};

namespace detail {

enum class VarMap { Shift, Reflect, Split };

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : m_(rows), n_(cols), t_((rows + 1) * (cols + 1), 0.0), basis_(rows) {}

  double& at(std::size_t r, std::size_t c) { return t_[r * (n_ + 1) + c]; }
  double at(std::size_t r, std::size_t c) const { return t_[r * (n_ + 1) + c]; }
  double& rhs(std::size_t r) { return at(r, n_); }
  double rhs(std::size_t r) const { return at(r, n_); }
  // Row m_ holds the reduced costs of the current objective (maximization form:
  // a positive entry means increasing that column improves the objective) and
  // minus the objective value in the rhs slot.
  double& cost(std::size_t c) { return at(m_, c); }

  std::size_t rows() const { return m_; }
  std::size_t cols() const { return n_; }
  std::vector<std::size_t>& basis() { return basis_; }

  void pivot(std::size_t pr, std::size_t pc) {
    const double p = at(pr, pc);
    for (std::size_t c = 0; c <= n_; ++c) at(pr, c) /= p;
    at(pr, pc) = 1.0;
    for (std::size_t r = 0; r <= m_; ++r) {
      if (r == pr) continue;
      const double f = at(r, pc);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= n_; ++c) at(r, c) -= f * at(pr, c);
      at(r, pc) = 0.0;
    }
    basis_[pr] = pc;
  }

  /// Loads `obj` (maximize) and prices out the basic columns.
  void set_objective(const std::vector<double>& obj) {
    for (std::size_t c = 0; c <= n_; ++c) cost(c) = c < obj.size() ? obj[c] : 0.0;
    for (std::size_t r = 0; r < m_; ++r) {
      const double f = cost(basis_[r]);
      if (f == 0.0) continue;
      for (std::size_t c = 0; c <= n_; ++c) cost(c) -= f * at(r, c);
    }
  }

  enum class Result { Optimal, Unbounded };

  /// Primal simplex with Bland's rule over columns where `allowed[c]` is set.
  Result run(const std::vector<char>& allowed, const LpTolerances& tol, std::size_t& iterations,
             std::size_t cap) {
    for (;;) {
      std::size_t enter = n_;
      for (std::size_t c = 0; c < n_; ++c) {
        if (allowed[c] && cost(c) > tol.optimality) {
          enter = c;
          break;
        }
      }
      if (enter == n_) return Result::Optimal;

      std::size_t leave = m_;
      double best = std::numeric_limits<double>::infinity();
      for (std::size_t r = 0; r < m_; ++r) {
        const double a = at(r, enter);
        if (a <= tol.pivot) continue;
        const double ratio = std::max(rhs(r), 0.0) / a;
        const double slack = 1e-12 * std::max(1.0, std::abs(best));
        if (leave == m_ || ratio < best - slack) {
          best = ratio;
          leave = r;
        } else if (ratio <= best + slack && basis_[r] < basis_[leave]) {
          leave = r;  // Bland: smallest basic index among ties
        }
      }
      if (leave == m_) return Result::Unbounded;
      if (++iterations > cap) throw LpNumericalFailure("simplex iteration cap exceeded");
      pivot(leave, enter);
    }
  }

 private:
  std::size_t m_;
  std::size_t n_;
  std::vector<double> t_;
  std::vector<std::size_t> basis_;
};

}  // namespace detail

inline LpOutcome solve_lp(const LpProblem& prob, const LpTolerances& tol = {}) {
  const std::size_t n = prob.num_vars();
  const double inf = std::numeric_limits<double>::infinity();
  if (prob.lower.size() != n || prob.upper.size() != n || prob.rows.size() != prob.rhs.size())
    throw ModelError("LpProblem: inconsistent dimensions");
  for (std::size_t j = 0; j < n; ++j) {
    if (!(prob.lower[j] <= prob.upper[j])) return {LpStatus::Infeasible, {}, 0.0};
    if (prob.lower[j] == inf || prob.upper[j] == -inf) return {LpStatus::Infeasible, {}, 0.0};
  }

  // Map x onto z >= 0. Split variables take two columns.
  std::vector<detail::VarMap> map(n);
  std::vector<std::size_t> col(n);
  std::size_t nz = 0;
  for (std::size_t j = 0; j < n; ++j) {
    col[j] = nz;
    if (std::isfinite(prob.lower[j])) {
      map[j] = detail::VarMap::Shift;
      nz += 1;
    } else if (std::isfinite(prob.upper[j])) {
      map[j] = detail::VarMap::Reflect;
      nz += 1;
    } else {
      map[j] = detail::VarMap::Split;
      nz += 2;
    }
  }

  // Collect rows in z-space: a_z z <= b_z.
  std::vector<std::vector<double>> az;
  std::vector<double> bz;
  for (std::size_t i = 0; i < prob.rows.size(); ++i) {
    const auto& a = prob.rows[i];
    if (a.size() != n) throw ModelError("LpProblem: row length mismatch");
    std::vector<double> row(nz, 0.0);
    double b = prob.rhs[i];
    bool all_zero = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (a[j] != 0.0) all_zero = false;
      switch (map[j]) {
        case detail::VarMap::Shift:
          row[col[j]] = a[j];
          b -= a[j] * prob.lower[j];
          break;
        case detail::VarMap::Reflect:
          row[col[j]] = -a[j];
          b -= a[j] * prob.upper[j];
          break;
        case detail::VarMap::Split:
          row[col[j]] = a[j];
          row[col[j] + 1] = -a[j];
          break;
      }
    }
    if (all_zero) {
      if (prob.rhs[i] >= -tol.zero_row) continue;
      return {LpStatus::Infeasible, {}, 0.0};
    }
    az.push_back(std::move(row));
    bz.push_back(b);
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (map[j] == detail::VarMap::Shift && std::isfinite(prob.upper[j])) {
      std::vector<double> row(nz, 0.0);
      row[col[j]] = 1.0;
      az.push_back(std::move(row));
      bz.push_back(prob.upper[j] - prob.lower[j]);
    }
  }

  // Columns: z (nz), slacks (m), artificials (one per negative rhs row).
  const std::size_t m = az.size();
  std::size_t n_art = 0;
  for (double b : bz)
    if (b < 0.0) ++n_art;
  const std::size_t n_cols = nz + m + n_art;
  detail::Tableau tab(m, n_cols);
  std::size_t art = nz + m;
  for (std::size_t i = 0; i < m; ++i) {
    const double sign = bz[i] < 0.0 ? -1.0 : 1.0;
    for (std::size_t c = 0; c < nz; ++c) tab.at(i, c) = sign * az[i][c];
    tab.at(i, nz + i) = sign;
    tab.rhs(i) = sign * bz[i];
    if (bz[i] < 0.0) {
      tab.at(i, art) = 1.0;
      tab.basis()[i] = art++;
    } else {
      tab.basis()[i] = nz + i;
    }
  }

  const std::size_t cap = 50 * (n_cols + m) + 50;
  std::size_t iters = 0;
  std::vector<char> allowed(n_cols, 1);

  if (n_art > 0) {
    std::vector<double> phase1(n_cols, 0.0);
    for (std::size_t c = nz + m; c < n_cols; ++c) phase1[c] = -1.0;
    tab.set_objective(phase1);
    tab.run(allowed, tol, iters, cap);
    // cost(n_cols) holds minus the phase-one objective, i.e. the artificial sum.
    if (tab.cost(n_cols) > tol.feasibility * static_cast<double>(m)) return {LpStatus::Infeasible, {}, 0.0};
    // Drive remaining artificials out of the basis.
    for (std::size_t r = 0; r < m; ++r) {
      if (tab.basis()[r] < nz + m) continue;
      for (std::size_t c = 0; c < nz + m; ++c) {
        if (std::abs(tab.at(r, c)) > 1e-9) {
          tab.pivot(r, c);
          break;
        }
      }
    }
    for (std::size_t c = nz + m; c < n_cols; ++c) allowed[c] = 0;
  }

  // Phase two in maximization form.
  const double dir = prob.sense == LpSense::Maximize ? 1.0 : -1.0;
  std::vector<double> phase2(n_cols, 0.0);
  for (std::size_t j = 0; j < n; ++j) {
    const double cj = dir * prob.objective[j];
    switch (map[j]) {
      case detail::VarMap::Shift: phase2[col[j]] = cj; break;
      case detail::VarMap::Reflect: phase2[col[j]] = -cj; break;
      case detail::VarMap::Split:
        phase2[col[j]] = cj;
        phase2[col[j] + 1] = -cj;
        break;
    }
  }
  tab.set_objective(phase2);
  if (tab.run(allowed, tol, iters, cap) == detail::Tableau::Result::Unbounded)
    return {LpStatus::Unbounded, {}, 0.0};

  std::vector<double> z(n_cols, 0.0);
  for (std::size_t r = 0; r < m; ++r) z[tab.basis()[r]] = std::max(tab.rhs(r), 0.0);

  LpOutcome out;
  out.status = LpStatus::Optimal;
  out.solution.resize(n);
  for (std::size_t j = 0; j < n; ++j) {
    double x = 0.0;
    switch (map[j]) {
      case detail::VarMap::Shift: x = prob.lower[j] + z[col[j]]; break;
      case detail::VarMap::Reflect: x = prob.upper[j] - z[col[j]]; break;
      case detail::VarMap::Split: x = z[col[j]] - z[col[j] + 1]; break;
    }
    x = std::max(x, prob.lower[j]);
    x = std::min(x, prob.upper[j]);
    out.solution[j] = x;
    out.objective += prob.objective[j] * x;
  }
  return out;
}

/// Largest violation of A x <= b and of the bounds.
inline double lp_max_violation(const LpProblem& prob, const std::vector<double>& x) {
  double worst = 0.0;
  for (std::size_t i = 0; i < prob.rows.size(); ++i) {
    double ax = 0.0;
    for (std::size_t j = 0; j < x.size(); ++j) ax += prob.rows[i][j] * x[j];
    worst = std::max(worst, ax - prob.rhs[i]);
  }
  for (std::size_t j = 0; j < x.size(); ++j) {
    worst = std::max(worst, prob.lower[j] - x[j]);
    worst = std::max(worst, x[j] - prob.upper[j]);
  }
  return worst;
}

}  // namespace pamec
