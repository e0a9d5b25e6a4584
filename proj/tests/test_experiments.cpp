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

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "pamec/io.hpp"
#include "pamec/pamec.hpp"

using namespace pamec;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path scratch_dir(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("pamec_test_" + name);
  fs::remove_all(dir);
  return dir;
}

TrialRecord record(int trial, Scheme scheme, double value, double delay) {
  TrialRecord r;
  r.seed = 7;
  r.trial = trial;
  r.scheme = scheme;
  r.swept_var = SweepVariable::MaxPowerDbm;
  r.swept_value = value;
  r.delay_s = delay;
  r.converged = std::isfinite(delay);
  r.outer_iters = 14;
  r.beta = {0.9, 0.91};
  r.power_dbm = {10.0, 9.5};
  r.x_p = {1.0, 2.0};
  r.order = {2, 1};
  return r;
}

std::size_t count_lines(const std::string& s) { return static_cast<std::size_t>(std::count(s.begin(), s.end(), '\n')); }

}  // namespace

// ---------------------------------------------------------------------------
// Random numbers

TEST(CounterRng, SplitMixReferenceValue) {
  // First output of the reference SplitMix64 generator seeded with 0.
  EXPECT_EQ(splitmix64(0), 0xe220a8397b1dcdafULL);
}

TEST(CounterRng, DeterministicAndKeyed) {
  EXPECT_EQ(counter_hash(1, 2, 3), counter_hash(1, 2, 3));
  EXPECT_NE(counter_hash(1, 2, 3), counter_hash(1, 2, 4));
  EXPECT_NE(counter_hash(1, 2, 3), counter_hash(1, 3, 3));
  EXPECT_NE(counter_hash(1, 2, 3), counter_hash(2, 2, 3));
  for (std::uint64_t d = 0; d < 1000; ++d) {
    const double u = counter_uniform(5, 6, d);
    EXPECT_GE(u, 0.0);
    EXPECT_LT(u, 1.0);
  }
}

TEST(CounterRng, UniformMeanWithinThreeStandardErrors) {
  ExperimentConfig c;
  c.num_users = 1;
  const int n = 10000;
  double sum = 0.0;
  for (int t = 0; t < n; ++t) sum += generate_scenario(c, static_cast<std::uint64_t>(t)).users[0].position_m.x;
  const double side = c.params.waveguide_length_m;
  const double se = side / std::sqrt(12.0) / std::sqrt(static_cast<double>(n));
  EXPECT_NEAR(sum / n, side / 2, 3 * se);
}

TEST(GenerateScenario, ReproducibleAndTrialDependent) {
  ExperimentConfig c;
  c.num_users = 3;
  const auto a = generate_scenario(c, 4);
  const auto b = generate_scenario(c, 4);
  const auto d = generate_scenario(c, 5);
  for (std::size_t k = 0; k < 3; ++k) {
    EXPECT_EQ(a.users[k].position_m.x, b.users[k].position_m.x);
    EXPECT_EQ(a.users[k].position_m.y, b.users[k].position_m.y);
    EXPECT_NE(a.users[k].position_m.x, d.users[k].position_m.x);
    EXPECT_GE(a.users[k].position_m.x, 0.0);
    EXPECT_LE(a.users[k].position_m.y, c.params.waveguide_length_m);
  }
  EXPECT_NO_THROW(a.validate());
}

TEST(GenerateScenario, FixedPositionsAndProfile) {
  ExperimentConfig c;
  c.fixed_positions = {{1, 2}, {3, 4}};
  c.profile.task_size_bits = 1.5e6;
  const auto s = generate_scenario(c, 0);
  EXPECT_EQ(s.users[1].position_m.x, 3.0);
  EXPECT_EQ(s.users[0].task_size_bits, 1.5e6);
}

TEST(SweepValue, AppliesToTheNamedParameter) {
  ExperimentConfig c;
  c.sweep_variable = SweepVariable::MaxPowerDbm;
  EXPECT_NEAR(with_sweep_value(c, 20).params.max_transmit_power_w, 0.1, 1e-15);
  c.sweep_variable = SweepVariable::NumAntennas;
  EXPECT_EQ(with_sweep_value(c, 8).params.num_antennas, 8);
  c.sweep_variable = SweepVariable::TaskSizeBits;
  EXPECT_EQ(with_sweep_value(c, 2e6).profile.task_size_bits, 2e6);
}

// ---------------------------------------------------------------------------
// Config files

TEST(Config, EmptyObjectGivesReferenceSetup) {
  const auto c = config_from_json(Json::object());
  EXPECT_EQ(c.num_users, 2u);
  EXPECT_EQ(c.params.num_antennas, 4);
  EXPECT_NEAR(c.params.max_transmit_power_w, 0.01, 1e-15);
  EXPECT_NEAR(c.params.min_antenna_spacing_m, 0.5 * 299792458.0 / 28e9, 1e-15);
  EXPECT_NEAR(c.settings.coarse_grid_step_m, 299792458.0 / 28e9 / 8, 1e-15);
  EXPECT_EQ(c.settings.max_inner_iters, 20);
  EXPECT_EQ(c.settings.epsilon, 1e-4);
}

TEST(Config, ParsesEverySection) {
  const auto j = Json::parse(R"({
    "system": {"num_antennas": 8, "max_power_dbm": 20, "carrier_frequency_hz": 14e9},
    "user_profile": {"task_size_bits": 1.5e6},
    "solver": {"epsilon": 1e-3},
    "num_users": 3, "seed": 18446744073709551615, "num_trials": 5,
    "sweep": {"variable": "max_power_dbm", "values": [0, 10, 20]},
    "schemes": ["noma_pass", "fdma"],
    "record_wall_time": false
  })");
  const auto c = config_from_json(j);
  EXPECT_EQ(c.params.num_antennas, 8);
  EXPECT_NEAR(c.params.max_transmit_power_w, 0.1, 1e-15);
  EXPECT_NEAR(c.params.min_antenna_spacing_m, 0.5 * 299792458.0 / 14e9, 1e-15);
  EXPECT_EQ(c.profile.task_size_bits, 1.5e6);
  EXPECT_EQ(c.settings.epsilon, 1e-3);
  EXPECT_EQ(c.num_users, 3u);
  EXPECT_EQ(c.seed, 18446744073709551615ULL);
  EXPECT_EQ(c.sweep_variable, SweepVariable::MaxPowerDbm);
  EXPECT_EQ(c.sweep_values, (std::vector<double>{0, 10, 20}));
  EXPECT_EQ(c.schemes, (std::vector<Scheme>{Scheme::NomaPass, Scheme::Fdma}));
  EXPECT_FALSE(c.record_wall_time);
}

TEST(Config, Errors) {
  EXPECT_THROW(config_from_json(Json::parse(R"({"schemes": []})")), ConfigError);
  EXPECT_THROW(config_from_json(Json::parse(R"({"schemes": ["tdma"]})")), ConfigError);
  EXPECT_THROW(config_from_json(Json::parse(R"({"num_trials": 0})")), ConfigError);
  EXPECT_THROW(config_from_json(Json::parse(R"({"colour": 1})")), ConfigError);
  EXPECT_THROW(config_from_json(Json::parse(R"({"system": {"antennas": 4}})")), ConfigError);
  EXPECT_THROW(config_from_json(Json::parse(R"({"sweep": {"values": []}})")), ConfigError);
  EXPECT_THROW(config_from_json(Json::parse(R"({"sweep": {"variable": "height"}})")), ConfigError);
  EXPECT_THROW(config_from_json(Json::parse(R"({"sweep": {"values": [2.5]}})")), ConfigError);
  EXPECT_THROW(config_from_json(Json::parse(R"({"system": {"num_antennas": "four"}})")), ConfigError);
  EXPECT_THROW(config_from_json(Json::parse(R"({"users": [[1, 2, 3]]})")), ConfigError);
  EXPECT_THROW(config_from_json(Json::parse(R"([1, 2])")), ConfigError);
}

TEST(Config, LoadsFileWithComments) {
  const auto dir = scratch_dir("cfg");
  write_text(dir / "c.json", "// reference\n{\"num_users\": 1 /* single */}\n");
  EXPECT_EQ(load_config(dir / "c.json").num_users, 1u);
  write_text(dir / "bad.json", "{\"num_users\": }");
  EXPECT_THROW(load_config(dir / "bad.json"), ConfigError);
  EXPECT_THROW(load_config(dir / "missing.json"), ConfigError);
}

// ---------------------------------------------------------------------------
// Output files

TEST(Emit, SingleRecordGivesTwoLineCsv) {
  const auto dir = scratch_dir("one");
  emit_results({record(0, Scheme::NomaPass, 10, 0.1)}, dir);
  const auto csv = slurp(dir / "results.csv");
  EXPECT_EQ(count_lines(csv), 2u);
  EXPECT_EQ(csv.substr(0, csv.find('\n')), "seed,trial,scheme,swept_var,swept_value,delay_s,converged,outer_iters,wall_s");
  EXPECT_EQ(csv.substr(csv.find('\n') + 1), "7,0,noma_pass,max_power_dbm,10,0.1,1,14,0\n");
  const auto js = Json::parse(slurp(dir / "results.json"));
  ASSERT_EQ(js.size(), 1u);
  EXPECT_EQ(js[0]["decoding_order"], Json::parse("[2, 1]"));
}

TEST(Emit, CardinalityAndByteStability) {
  std::vector<TrialRecord> recs;
  for (int t = 0; t < 2; ++t)
    for (auto sc : {Scheme::NomaPass, Scheme::Mimo, Scheme::Fdma})
      for (double v : {0.0, 10.0}) recs.push_back(record(t, sc, v, 0.1 + 0.01 * t + v * 1e-3));
  const auto a = scratch_dir("a"), b = scratch_dir("b");
  emit_results(recs, a);
  emit_results(recs, b);
  EXPECT_EQ(count_lines(slurp(a / "results.csv")), 13u);
  for (const char* f : {"results.csv", "results.json", "summary.csv"}) EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
}

TEST(Emit, UnwritablePathNamesThePath) {
  const auto dir = scratch_dir("blocked");
  write_text(dir / "file", "x");
  try {
    emit_results({record(0, Scheme::Fdma, 1, 0.1)}, dir / "file" / "sub");
    FAIL() << "expected an I/O error";
  } catch (const IoError& e) {
    EXPECT_NE(std::string(e.what()).find("file"), std::string::npos);
  }
  EXPECT_THROW(emit_results({}, dir), IoError);
}

TEST(Emit, NonFiniteValuesStayParseable) {
  auto r = record(0, Scheme::Mimo, 1, std::numeric_limits<double>::quiet_NaN());
  r.power_dbm = {-std::numeric_limits<double>::infinity(), 3.0};
  const auto j = Json::parse(to_json(r).dump());
  EXPECT_TRUE(j["delay_s"].is_null());
  EXPECT_TRUE(j["power_dbm"][0].is_null());
  EXPECT_NE(results_csv({r}).find(",nan,0,"), std::string::npos);
}

// ---------------------------------------------------------------------------
// Aggregation

TEST(Summarize, MeansOfConvergedTrialsOnly) {
  const std::vector<TrialRecord> recs{record(0, Scheme::NomaPass, 1, 0.1), record(1, Scheme::NomaPass, 1, 0.3),
                                      record(2, Scheme::NomaPass, 1, std::nan("")), record(0, Scheme::Fdma, 1, 0.5),
                                      record(0, Scheme::NomaPass, 2, 0.2)};
  const auto rows = summarize(recs);
  ASSERT_EQ(rows.size(), 3u);
  EXPECT_EQ(rows[0].scheme, Scheme::NomaPass);
  EXPECT_EQ(rows[0].swept_value, 1.0);
  EXPECT_NEAR(rows[0].mean_delay_s, 0.2, 1e-15);
  EXPECT_EQ(rows[0].converged, 2);
  EXPECT_EQ(rows[0].trials, 3);
  EXPECT_EQ(rows[1].scheme, Scheme::Fdma);
  EXPECT_EQ(rows[2].swept_value, 2.0);
}

TEST(Summarize, NoConvergedTrialGivesNan) {
  const auto rows = summarize({record(0, Scheme::Mimo, 1, std::nan(""))});
  EXPECT_TRUE(std::isnan(rows[0].mean_delay_s));
}

// ---------------------------------------------------------------------------
// Sweeps

TEST(Sweep, OrderedDeterministicAndScheduleIndependent) {
  ExperimentConfig c;
  c.num_trials = 2;
  c.sweep_variable = SweepVariable::NumAntennas;
  c.sweep_values = {2, 4};
  c.schemes = {Scheme::NomaPass, Scheme::Mimo, Scheme::Fdma};
  c.record_wall_time = false;
  c.threads = 1;
  const auto serial = run_sweep(c);
  c.threads = 3;
  const auto parallel = run_sweep(c);
  ASSERT_EQ(serial.size(), 12u);
  EXPECT_EQ(results_csv(serial), results_csv(parallel));
  EXPECT_EQ(serial[0].trial, 0);
  EXPECT_EQ(serial[0].scheme, Scheme::NomaPass);
  EXPECT_EQ(serial[1].swept_value, 4.0);
  EXPECT_EQ(serial[2].scheme, Scheme::Mimo);
  EXPECT_EQ(serial[6].trial, 1);
  for (const auto& r : serial) {
    EXPECT_TRUE(r.converged) << r.error;
    EXPECT_GT(r.delay_s, 0.0);
  }
  for (const auto& row : summarize(serial)) {
    double sum = 0.0;
    int n = 0;
    for (const auto& r : serial)
      if (r.scheme == row.scheme && r.swept_value == row.swept_value && r.converged) {
        sum += r.delay_s;
        ++n;
      }
    EXPECT_NEAR(row.mean_delay_s, sum / n, 1e-15);
  }
}

TEST(Sweep, FailuresAreRecordedNotThrown) {
  ExperimentConfig c;
  c.num_trials = 1;
  c.params.energy_budget_j = 1e-9;
  c.settings.max_expansions = 2;
  const auto recs = run_sweep(c);
  ASSERT_EQ(recs.size(), 1u);
  EXPECT_FALSE(recs[0].converged);
  EXPECT_FALSE(recs[0].error.empty());
}

TEST(Trace, ConvergesWithinSixtyIterations) {
  ExperimentConfig c;
  c.seed = 3;
  const auto run = run_convergence_trace(c);
  ASSERT_TRUE(run.record.converged) << run.record.error;
  EXPECT_LE(run.trace.outer_iterations(), 60);
  const auto& last = run.trace.steps.back();
  EXPECT_LE((last.upper_s - last.lower_s) / last.upper_s, c.settings.epsilon);
  for (const auto& s : run.trace.steps)
    if (!s.feasible) {
      EXPECT_LT(s.candidate_s, run.record.delay_s);
    }
  const auto csv = trace_csv(run.trace);
  EXPECT_EQ(count_lines(csv), run.trace.steps.size() + 1);
}
