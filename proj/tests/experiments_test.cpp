// Copyright 2026 The fdccr Authors. All Rights Reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "fdccr/experiments.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

namespace fdccr {
namespace {

std::filesystem::path temp_path(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("fdccr_experiments_" + name);
}

SweepSpec small_spec(std::vector<Scheme> schemes, int trials = 40) {
  SweepSpec s;
  s.values = {5.0, 15.0};
  s.schemes = std::move(schemes);
  s.n_trials = trials;
  s.seed = 7;
  return s;
}

TEST(SchemeNames, RoundTrip) {
  for (Scheme s : {Scheme::kHdAf, Scheme::kHdDf, Scheme::kHdAfSameRf, Scheme::kHdDfSameRf, Scheme::kFdAf,
                   Scheme::kFdDf, Scheme::kHybridAf, Scheme::kHybridDf, Scheme::kBestAf, Scheme::kBestDf,
                   Scheme::kOrthogonal, Scheme::kDirect}) {
    EXPECT_EQ(parse_scheme(to_string(s)), s);
  }
  EXPECT_EQ(to_string(Scheme::kHdAf), "HD-AF");
  EXPECT_EQ(to_string(Scheme::kFdDf), "FD-DF");
}

TEST(SchemeNames, UnknownNamesField) {
  try {
    parse_scheme("XD-AF");
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_EQ(e.field(), "schemes");
  }
  EXPECT_THROW(parse_metric("median"), ConfigError);
  EXPECT_THROW(parse_sweep_variable("p0_db"), ConfigError);
  EXPECT_THROW(parse_direct_prelog("quarter"), ConfigError);
}

TEST(SweepSpec, Validation) {
  SweepSpec s = small_spec({Scheme::kFdDf});
  EXPECT_NO_THROW(s.validate());
  s.metric = Metric::kRateRegion;
  EXPECT_THROW(s.validate(), ConfigError);
  s.values = {10.0};
  EXPECT_NO_THROW(s.validate());
  s.schemes.clear();
  EXPECT_THROW(s.validate(), ConfigError);
}

TEST(ApplyVariable, AntennaSplit) {
  const SystemConfig c = apply_variable(SystemConfig{}, SweepVariable::kAntennaSplit, 5);
  EXPECT_EQ(c.n_tx_fd, 5);
  EXPECT_EQ(c.n_rx_fd, 1);
  EXPECT_THROW(apply_variable(SystemConfig{}, SweepVariable::kAntennaSplit, 2.5), ConfigError);
  EXPECT_THROW(apply_variable(SystemConfig{}, SweepVariable::kAntennaSplit, 6), ConfigError);
}

TEST(RunSweep, DeterministicAcrossThreadCounts) {
  SweepSpec s = small_spec({Scheme::kHdAf, Scheme::kFdDf, Scheme::kHybridDf});
  s.threads = 1;
  const ResultTable a = run_sweep(SystemConfig{}, s);
  s.threads = 4;
  const ResultTable b = run_sweep(SystemConfig{}, s);
  EXPECT_EQ(a.rows, b.rows);
  EXPECT_EQ(format_csv(a), format_csv(b));
  ASSERT_EQ(a.rows.size(), 6u);
  EXPECT_EQ(a.rows[0].variable, "pc_db");
  EXPECT_EQ(a.rows[0].n_trials, 40);
  EXPECT_EQ(a.rows[0].seed, 7u);
}

TEST(RunSweep, SeedChangesResults) {
  SweepSpec s = small_spec({Scheme::kFdAf});
  const ResultTable a = run_sweep(SystemConfig{}, s);
  s.seed = 8;
  EXPECT_NE(a.rows, run_sweep(SystemConfig{}, s).rows);
}

TEST(RunSweep, SchemesShareDraws) {
  // A scheme's numbers must not depend on which other schemes run alongside it.
  const ResultTable alone = run_sweep(SystemConfig{}, small_spec({Scheme::kFdDf}));
  const ResultTable mixed = run_sweep(SystemConfig{}, small_spec({Scheme::kHdDf, Scheme::kFdDf}));
  EXPECT_EQ(alone.rows[0].mean, mixed.rows[1].mean);
  EXPECT_EQ(alone.rows[1].mean, mixed.rows[3].mean);
}

TEST(EvaluateScheme, BestDominatesOnEveryDraw) {
  SystemConfig cfg;
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    cfg.r0 = 0.5 + 0.05 * static_cast<double>(seed % 40);
    const ChannelSet ch = sample_network(cfg, seed);
    for (auto [best, hd, fd, hyb] : {std::tuple{Scheme::kBestAf, Scheme::kHdAf, Scheme::kFdAf, Scheme::kHybridAf},
                                     std::tuple{Scheme::kBestDf, Scheme::kHdDf, Scheme::kFdDf, Scheme::kHybridDf}}) {
      const SchemeOutcome b = evaluate_scheme(ch, cfg, best);
      const SchemeOutcome h = evaluate_scheme(ch, cfg, hd);
      const SchemeOutcome f = evaluate_scheme(ch, cfg, fd);
      const SchemeOutcome y = evaluate_scheme(ch, cfg, hyb);
      EXPECT_EQ(b.feasible, h.feasible || f.feasible);
      if (h.feasible) EXPECT_GE(b.r_cu, h.r_cu);
      if (f.feasible) EXPECT_GE(b.r_cu, f.r_cu);
      if (y.feasible) EXPECT_LE(y.r_cu, b.r_cu);
      EXPECT_TRUE(y.r_cu == h.r_cu || y.r_cu == f.r_cu);
    }
  }
}

TEST(EvaluateScheme, DirectAndOrthogonal) {
  SystemConfig cfg;
  const ChannelSet ch = sample_network(cfg, 3);
  const double full = std::log2(1 + cfg.p0() * std::norm(ch.h0));
  EXPECT_DOUBLE_EQ(direct_rate(ch, cfg, DirectPrelog::kFull), full);
  EXPECT_DOUBLE_EQ(direct_rate(ch, cfg, DirectPrelog::kHalf), 0.5 * full);
  cfg.r0 = full * 0.75;
  EXPECT_TRUE(evaluate_scheme(ch, cfg, Scheme::kDirect, DirectPrelog::kFull).feasible);
  EXPECT_FALSE(evaluate_scheme(ch, cfg, Scheme::kDirect, DirectPrelog::kHalf).feasible);
  EXPECT_EQ(evaluate_scheme(ch, cfg, Scheme::kDirect).r_cu, 0.0);
  const SchemeOutcome o = evaluate_scheme(ch, cfg, Scheme::kOrthogonal);
  EXPECT_TRUE(o.feasible);
  EXPECT_GT(o.r_cu, 0.0);
}

TEST(PuOutage, Extremes) {
  SystemConfig cfg;
  cfg.r0 = 0.0;
  for (Scheme s : {Scheme::kHdAf, Scheme::kFdDf, Scheme::kDirect}) EXPECT_EQ(pu_outage(cfg, s, 50, 3), 0.0);
  cfg.r0 = 40.0;
  for (Scheme s : {Scheme::kHdDf, Scheme::kFdAf, Scheme::kDirect}) EXPECT_EQ(pu_outage(cfg, s, 50, 3), 1.0);
}

TEST(PuOutage, DirectIsAllOrNothingUnderFixedPathLoss) {
  // Every draw has |h0|^2 = d^-alpha, so the direct link either always or never meets r0.
  SystemConfig cfg;
  const double rate = std::log2(1 + cfg.p0() * std::pow(cfg.d_pbs_pu, -cfg.pathloss_exp));
  cfg.r0 = rate * 0.99;
  EXPECT_EQ(pu_outage(cfg, Scheme::kDirect, 200, 11), 0.0);
  cfg.r0 = rate * 1.01;
  EXPECT_EQ(pu_outage(cfg, Scheme::kDirect, 200, 11), 1.0);
}

TEST(RateRegion, ParetoAndBounded) {
  SystemConfig cfg;
  cfg.pc_db = 10.0;
  const ChannelSet ch = sample_network(cfg, 5);
  for (Scheme s : {Scheme::kHdAf, Scheme::kHdDf, Scheme::kFdAf, Scheme::kFdDf}) {
    const auto pts = trace_rate_region(ch, cfg, s, 16);
    ASSERT_GE(pts.size(), 2u) << to_string(s);
    for (std::size_t i = 1; i < pts.size(); ++i) {
      EXPECT_GT(pts[i].r_pu, pts[i - 1].r_pu);
      EXPECT_LT(pts[i].r_cu, pts[i - 1].r_cu);
    }
    const double rmax = max_supported_r0(ch, cfg, s);
    EXPECT_LE(pts.back().r_pu, rmax + 1e-9);
    SystemConfig above = cfg;
    above.r0 = rmax * 1.001 + 1e-9;
    EXPECT_FALSE(evaluate_scheme(ch, above, s).feasible);
  }
  EXPECT_THROW(trace_rate_region(ch, cfg, Scheme::kFdAf, 1), std::invalid_argument);
}

TEST(RateRegion, SweepRows) {
  SweepSpec s;
  s.metric = Metric::kRateRegion;
  s.values = {10.0};
  s.schemes = {Scheme::kHdDf, Scheme::kFdDf};
  s.region_points = 8;
  const ResultTable t = run_sweep(SystemConfig{}, s);
  ASSERT_FALSE(t.rows.empty());
  for (const ResultRow& r : t.rows) {
    EXPECT_EQ(r.variable, "r_pu");
    EXPECT_EQ(r.metric, "rate_region");
    EXPECT_EQ(r.n_trials, 1);
  }
}

TEST(Table, EmitReadRoundTrip) {
  SweepSpec s = small_spec({Scheme::kFdAf, Scheme::kOrthogonal}, 10);
  const ResultTable t = run_sweep(SystemConfig{}, s);
  const auto path = temp_path("roundtrip.csv");
  emit_table(t, path.string());
  const ResultTable back = read_table(path.string());
  EXPECT_EQ(format_csv(back), format_csv(t));
  EXPECT_EQ(back.spec.schemes, s.schemes);
  EXPECT_EQ(back.config.pc_db, t.config.pc_db);
  ASSERT_EQ(back.rows.size(), t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    EXPECT_NEAR(back.rows[i].mean, t.rows[i].mean, 1e-9 * std::max(1.0, t.rows[i].mean));
  }
  std::ifstream f(path);
  std::string header;
  std::getline(f, header);
  EXPECT_EQ(header, "variable,value,scheme,metric,mean,stderr,n_trials,seed");
  std::filesystem::remove(path);
  std::filesystem::remove(path.string() + ".meta.json");
}

TEST(Table, HeaderOnly) {
  ResultTable t;
  t.spec = small_spec({Scheme::kDirect});
  const auto path = temp_path("empty.csv");
  emit_table(t, path.string());
  const ResultTable back = read_table(path.string());
  EXPECT_TRUE(back.rows.empty());
  EXPECT_EQ(format_csv(back), "variable,value,scheme,metric,mean,stderr,n_trials,seed\n");
  std::filesystem::remove(path);
  std::filesystem::remove(path.string() + ".meta.json");
}

TEST(Table, BadHeaderRejected) {
  const auto path = temp_path("bad.csv");
  std::ofstream(path) << "a,b\n";
  EXPECT_THROW(read_table(path.string()), std::runtime_error);
  std::filesystem::remove(path);
}

TEST(RunSweep, AntennaSplitRows) {
  SweepSpec s;
  s.variable = SweepVariable::kAntennaSplit;
  s.values = {4, 2};
  s.schemes = {Scheme::kFdAf};
  s.n_trials = 20;
  const ResultTable t = run_sweep(SystemConfig{}, s);
  ASSERT_EQ(t.rows.size(), 2u);
  EXPECT_EQ(t.rows[0].variable, "antenna_split");
  EXPECT_EQ(t.rows[1].value, 2.0);
  EXPECT_GT(t.rows[0].mean, 0.0);
}

}  // namespace
}  // namespace fdccr
