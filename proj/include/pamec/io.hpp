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

// JSON configuration files and CSV/JSON result files.

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "pamec/experiments.hpp"

namespace pamec {

using Json = nlohmann::json;

namespace detail {

/// Shortest round-trip decimal for a double; "nan"/"inf" spelled out.
inline std::string fmt_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

inline Json json_number(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

inline Json json_numbers(const std::vector<double>& v) {
  Json a = Json::array();
  for (double x : v) a.push_back(json_number(x));
  return a;
}

class ObjectReader {
 public:
  ObjectReader(const Json& j, std::string where) : j_(j), where_(std::move(where)) {
    if (!j_.is_object()) throw ConfigError(where_ + ": expected an object");
  }

  template <class T>
  void get(const char* key, T& out) {
    seen_.insert(key);
    if (!j_.contains(key)) return;
    try {
      out = j_.at(key).get<T>();
    } catch (const nlohmann::json::exception& e) {
      throw ConfigError(where_ + "." + key + ": " + e.what());
    }
  }

  bool has(const char* key) {
    seen_.insert(key);
    return j_.contains(key);
  }

  const Json& at(const char* key) const { return j_.at(key); }

  void reject_unknown() const {
    for (const auto& [k, v] : j_.items())
      if (!seen_.count(k)) throw ConfigError(where_ + ": unknown key '" + k + "'");
  }

 private:
  const Json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

}  // namespace detail

/// Builds an ExperimentConfig from JSON. Every key is optional and defaults to
/// the reference setup; unknown keys are errors. Power enters in dBm.
inline ExperimentConfig config_from_json(const Json& j) {
  ExperimentConfig c;
  detail::ObjectReader top(j, "config");

  if (top.has("system")) {
    detail::ObjectReader r(top.at("system"), "system");
    auto& p = c.params;
    r.get("carrier_frequency_hz", p.carrier_frequency_hz);
    r.get("speed_of_light_m_per_s", p.speed_of_light_m_per_s);
    r.get("effective_refractive_index", p.effective_refractive_index);
    r.get("bandwidth_hz", p.bandwidth_hz);
    r.get("noise_psd_dbm_per_hz", p.noise_psd_dbm_per_hz);
    r.get("antenna_height_m", p.antenna_height_m);
    r.get("waveguide_length_m", p.waveguide_length_m);
    r.get("num_antennas", p.num_antennas);
    p.min_antenna_spacing_m = 0.5 * p.speed_of_light_m_per_s / p.carrier_frequency_hz;
    r.get("min_antenna_spacing_m", p.min_antenna_spacing_m);
    double p_dbm = watts_to_dbm(p.max_transmit_power_w);
    r.get("max_power_dbm", p_dbm);
    p.max_transmit_power_w = dbm_to_watts(p_dbm);
    r.get("energy_budget_j", p.energy_budget_j);
    r.reject_unknown();
  }
  c.settings = SolverSettings::for_params(c.params);

  if (top.has("user_profile")) {
    detail::ObjectReader r(top.at("user_profile"), "user_profile");
    r.get("task_size_bits", c.profile.task_size_bits);
    r.get("cycles_per_bit", c.profile.cycles_per_bit);
    r.get("local_cpu_hz", c.profile.local_cpu_hz);
    r.get("capacitance_coeff", c.profile.capacitance_coeff);
    r.reject_unknown();
  }

  if (top.has("solver")) {
    detail::ObjectReader r(top.at("solver"), "solver");
    auto& s = c.settings;
    r.get("epsilon", s.epsilon);
    r.get("epsilon_x", s.epsilon_x);
    r.get("max_inner_iters", s.max_inner_iters);
    r.get("coarse_grid_step_m", s.coarse_grid_step_m);
    r.get("refine_factor", s.refine_factor);
    r.get("dt_min_s", s.dt_min_s);
    r.get("dt_max_expansion_factor", s.dt_max_expansion_factor);
    r.get("max_expansions", s.max_expansions);
    r.get("steering_points", s.steering_points);
    r.get("constraint_tolerance", s.constraint_tolerance);
    r.reject_unknown();
  }

  top.get("num_users", c.num_users);
  top.get("seed", c.seed);
  top.get("num_trials", c.num_trials);
  top.get("output_dir", c.output_dir);
  top.get("record_wall_time", c.record_wall_time);
  top.get("threads", c.threads);

  c.sweep_values = {static_cast<double>(c.params.num_antennas)};
  if (top.has("sweep")) {
    detail::ObjectReader r(top.at("sweep"), "sweep");
    std::string var = "num_antennas";
    r.get("variable", var);
    const auto parsed = parse_sweep_variable(var);
    if (!parsed) throw ConfigError("sweep.variable: unknown variable '" + var + "'");
    c.sweep_variable = *parsed;
    r.get("values", c.sweep_values);
    r.reject_unknown();
  }

  if (top.has("schemes")) {
    std::vector<std::string> names;
    top.get("schemes", names);
    c.schemes.clear();
    for (const auto& n : names) {
      const auto s = parse_scheme(n);
      if (!s) throw ConfigError("schemes: unknown scheme '" + n + "'");
      c.schemes.push_back(*s);
    }
  }

  if (top.has("users")) {
    const Json& users = top.at("users");
    if (!users.is_array()) throw ConfigError("users: expected an array of [x, y] pairs");
    for (const auto& u : users) {
      if (!u.is_array() || u.size() != 2 || !u[0].is_number() || !u[1].is_number())
        throw ConfigError("users: expected an array of [x, y] pairs");
      c.fixed_positions.push_back({u[0].get<double>(), u[1].get<double>()});
    }
    c.num_users = c.fixed_positions.size();
  }

  top.reject_unknown();
  c.validate();
  return c;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file " + path.string());
  Json j;
  try {
    j = Json::parse(in, nullptr, true, true);  // allow comments
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  return config_from_json(j);
}

// ---------------------------------------------------------------------------

inline Json to_json(const BisectionTrace& t) {
  Json a = Json::array();
  for (const auto& s : t.steps) {
    a.push_back({{"iteration", s.iteration},
                 {"phase", s.phase == ProbePhase::Bracket ? "bracket" : "bisect"},
                 {"candidate_s", s.candidate_s},
                 {"feasible", s.feasible},
                 {"inner_iterations", s.inner_iterations},
                 {"reason", s.reason},
                 {"lower_s", s.lower_s},
                 {"upper_s", s.upper_s}});
  }
  return a;
}

inline Json to_json(const SolveReport& r) {
  const auto& a = r.allocation;
  std::vector<double> p_dbm;
  for (double p : a.power_w) p_dbm.push_back(p > 0.0 ? watts_to_dbm(p) : -INFINITY);
  Json j = {{"delay_s", a.delay_s},
            {"lower_bound_s", r.lower_bound_s},
            {"beta", detail::json_numbers(a.beta)},
            {"power_w", detail::json_numbers(a.power_w)},
            {"power_dbm", detail::json_numbers(p_dbm)},
            {"x_p_m", detail::json_numbers(a.layout.x_m)},
            {"decoding_order", r.order.ranks()},
            {"outer_iterations", r.outer_iterations()},
            {"wall_seconds", r.wall_seconds},
            {"trace", to_json(r.trace)}};
  if (r.steering_deg) j["steering_deg"] = *r.steering_deg;
  return j;
}

inline Json to_json(const TrialRecord& r) {
  Json j = {{"seed", r.seed},
            {"trial", r.trial},
            {"scheme", to_string(r.scheme)},
            {"swept_var", to_string(r.swept_var)},
            {"swept_value", r.swept_value},
            {"delay_s", detail::json_number(r.delay_s)},
            {"converged", r.converged},
            {"outer_iters", r.outer_iters},
            {"wall_s", r.wall_s},
            {"beta", detail::json_numbers(r.beta)},
            {"power_dbm", detail::json_numbers(r.power_dbm)},
            {"x_p_m", detail::json_numbers(r.x_p)},
            {"decoding_order", r.order}};
  if (r.steering_deg) j["steering_deg"] = *r.steering_deg;
  if (!r.error.empty()) j["error"] = r.error;
  return j;
}

inline constexpr const char* kResultsCsvHeader = "seed,trial,scheme,swept_var,swept_value,delay_s,converged,outer_iters,wall_s";

inline std::string results_csv(const std::vector<TrialRecord>& records) {
  std::ostringstream os;
  os << kResultsCsvHeader << '\n';
  for (const auto& r : records) {
    os << r.seed << ',' << r.trial << ',' << to_string(r.scheme) << ',' << to_string(r.swept_var) << ','
       << detail::fmt_double(r.swept_value) << ',' << detail::fmt_double(r.delay_s) << ',' << (r.converged ? 1 : 0)
       << ',' << r.outer_iters << ',' << detail::fmt_double(r.wall_s) << '\n';
  }
  return os.str();
}

inline std::string summary_csv(const std::vector<SummaryRow>& rows, SweepVariable var) {
  std::ostringstream os;
  os << "scheme,swept_var,swept_value,mean_delay_s,converged,trials\n";
  for (const auto& r : rows)
    os << to_string(r.scheme) << ',' << to_string(var) << ',' << detail::fmt_double(r.swept_value) << ','
       << detail::fmt_double(r.mean_delay_s) << ',' << r.converged << ',' << r.trials << '\n';
  return os.str();
}

inline std::string trace_csv(const BisectionTrace& t) {
  std::ostringstream os;
  os << "iteration,phase,candidate_s,feasible,inner_iterations,lower_s,upper_s\n";
  for (const auto& s : t.steps)
    os << s.iteration << ',' << (s.phase == ProbePhase::Bracket ? "bracket" : "bisect") << ','
       << detail::fmt_double(s.candidate_s) << ',' << (s.feasible ? 1 : 0) << ',' << s.inner_iterations << ','
       << detail::fmt_double(s.lower_s) << ',' << detail::fmt_double(s.upper_s) << '\n';
  return os.str();
}

inline void write_text(const std::filesystem::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open " + path.string() + " for writing");
  out << text;
  out.flush();
  if (!out) throw IoError("failed writing " + path.string());
}

/// Writes results.csv, results.json (full allocations) and summary.csv into `dir`.
inline void emit_results(const std::vector<TrialRecord>& records, const std::filesystem::path& dir) {
  if (records.empty()) throw IoError("no records to write to " + dir.string());
  Json all = Json::array();
  for (const auto& r : records) all.push_back(to_json(r));
  write_text(dir / "results.csv", results_csv(records));
  write_text(dir / "results.json", all.dump(2) + "\n");
  write_text(dir / "summary.csv", summary_csv(summarize(records), records.front().swept_var));
}

}  // namespace pamec
