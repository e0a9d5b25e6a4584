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

// pamec: solve, trace, sweep and validate-config.
//
// Exit codes: 0 success, 1 config error, 2 no feasible delay on any trial,
// 3 I/O error.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "pamec/io.hpp"
#include "pamec/pamec.hpp"

namespace {

enum Exit { kOk = 0, kConfig = 1, kInfeasible = 2, kIo = 3 };

struct Overrides {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string schemes;
  std::optional<int> trials;
};

pamec::ExperimentConfig load(const Overrides& o) {
  pamec::ExperimentConfig c = o.config.empty() ? pamec::config_from_json(pamec::Json::object())
                                               : pamec::load_config(o.config);
  if (o.seed) c.seed = *o.seed;
  if (o.trials) c.num_trials = *o.trials;
  if (!o.out.empty()) c.output_dir = o.out;
  if (!o.schemes.empty()) {
    c.schemes.clear();
    std::stringstream ss(o.schemes);
    std::string name;
    while (std::getline(ss, name, ',')) {
      const auto s = pamec::parse_scheme(name);
      if (!s) throw pamec::ConfigError("--schemes: unknown scheme '" + name + "'");
      c.schemes.push_back(*s);
    }
  }
  c.validate();
  return c;
}

int cmd_validate(const Overrides& o) {
  const auto c = load(o);
  std::cout << "ok: K=" << c.num_users << " N=" << c.params.num_antennas << " trials=" << c.num_trials
            << " sweep=" << pamec::to_string(c.sweep_variable) << " (" << c.sweep_values.size() << " values)\n";
  return kOk;
}

int cmd_solve(const Overrides& o) {
  const auto c = load(o);
  const auto cfg = pamec::with_sweep_value(c, c.sweep_values.front());
  const auto scenario = pamec::generate_scenario(cfg, 0);
  pamec::Json out = pamec::Json::object();
  pamec::Json users = pamec::Json::array();
  for (const auto& u : scenario.users) users.push_back({u.position_m.x, u.position_m.y});
  out["users"] = users;
  bool any = false;
  for (auto scheme : c.schemes) {
    try {
      out[pamec::to_string(scheme)] = pamec::to_json(pamec::solve_scheme(scenario, scheme, cfg.settings));
      any = true;
    } catch (const pamec::NoFeasibleDelay& e) {
      out[pamec::to_string(scheme)] = {{"error", e.what()}};
    }
  }
  std::cout << out.dump(2) << '\n';
  return any ? kOk : kInfeasible;
}

int cmd_trace(const Overrides& o) {
  const auto c = load(o);
  const auto run = pamec::run_convergence_trace(c);
  const std::filesystem::path dir = c.output_dir;
  pamec::write_text(dir / "trace.csv", pamec::trace_csv(run.trace));
  pamec::emit_results({run.record}, dir);
  std::cout << pamec::trace_csv(run.trace);
  if (!run.record.converged) {
    std::cerr << "no feasible delay: " << run.record.error << '\n';
    return kInfeasible;
  }
  return kOk;
}

int cmd_sweep(const Overrides& o) {
  const auto c = load(o);
  const auto records = pamec::run_sweep(c);
  pamec::emit_results(records, c.output_dir);
  std::cout << pamec::summary_csv(pamec::summarize(records), c.sweep_variable);
  for (const auto& r : records)
    if (r.converged) return kOk;
  return kInfeasible;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Min-max delay solver for pinching-antenna NOMA edge offloading"};
  app.require_subcommand(1);
  Overrides o;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", o.config, "JSON config file")->check(CLI::ExistingFile);
    sub->add_option("--seed", o.seed, "base seed (u64)");
    sub->add_option("--out", o.out, "output directory");
    sub->add_option("--schemes", o.schemes, "comma-separated subset of noma_pass,mimo,fdma");
    sub->add_option("--trials", o.trials, "number of random placements");
  };
  auto* solve = app.add_subcommand("solve", "solve one scenario and print the report as JSON");
  auto* trace = app.add_subcommand("trace", "bisection convergence trace of one scenario");
  auto* sweep = app.add_subcommand("sweep", "Monte Carlo sweep over one parameter");
  auto* validate = app.add_subcommand("validate-config", "parse and check a config file");
  for (auto* s : {solve, trace, sweep, validate}) add_common(s);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfig;
  }

  try {
    if (*solve) return cmd_solve(o);
    if (*trace) return cmd_trace(o);
    if (*sweep) return cmd_sweep(o);
    return cmd_validate(o);
  } catch (const pamec::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const pamec::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return kIo;
  } catch (const pamec::NoFeasibleDelay& e) {
    std::cerr << e.what() << '\n';
    return kInfeasible;
  }
}
