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

#include "fdccr/fd.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include "support/oracles.hpp"

namespace fdccr {
namespace {

using testing::eval_fd_af_matrix;
using testing::eval_fd_df;
using testing::outer;
using testing::rel_diff;
using testing::to_eigen;

testing::HdEval plug_in(const ChannelSet& ch, const SystemConfig& cfg, const LinkSolution& s) {
  const auto g = to_eigen(ch.g_fd());
  const auto h_c0 = to_eigen(ch.h_c0_fd());
  const auto h_c = to_eigen(ch.h_c_fd());
  const auto h = to_eigen(ch.h_loop);
  if (s.protocol == Protocol::kAF) {
    return eval_fd_af_matrix(g, h_c0, h_c, ch.h0, ch.h0c, h, cfg.p0_fd(), s.pt_effective,
                             outer(to_eigen(s.w_relay), g), to_eigen(s.w_c));
  }
  return eval_fd_df(g, h_c0, h_c, ch.h0, ch.h0c, h, cfg.p0_fd(), s.pt_effective, to_eigen(s.w_relay),
                    to_eigen(s.w_c));
}

void zero_loop(ChannelSet& ch) { ch.h_loop = CMat(ch.h_loop.rows(), ch.h_loop.cols()); }

TEST(FdDerived, MatchesDenseEvaluation) {
  const SystemConfig cfg;
  const ChannelSet ch = sample_network(cfg, 21);
  const double pt = 0.3;
  const FdDerived d = fd_derived(ch, cfg, pt);
  const auto g = to_eigen(ch.g_fd());
  const auto h = to_eigen(ch.h_loop);
  const double gg = g.squaredNorm();
  EXPECT_NEAR(d.kappa_fd, cfg.p0_fd() * gg * gg + gg + pt * (g.adjoint() * h).squaredNorm(), 1e-12 * d.kappa_fd);
  EXPECT_NEAR(d.sigma1_sq, 1 + pt * ch.h_c0_fd().norm_sq() + cfg.p0_fd() * std::norm(ch.h0), 1e-12);
  EXPECT_NEAR(d.sigma2_sq, 1 + pt * ch.h_c_fd().norm_sq() + cfg.p0_fd() * std::norm(ch.h0c), 1e-12);
  EXPECT_DOUBLE_EQ(d.gamma0_fd, 3.0);
  EXPECT_LE(d.pbar_c_fd, cfg.pc_fd());
  EXPECT_GE(d.pbar_c_fd, 0.0);
}

TEST(MapFd, ZeroLoopMatchesHalvedHdMapping) {
  SystemConfig fd_cfg;
  fd_cfg.pt_mode = PtMode::kFixed;
  fd_cfg.pt_fixed = 0.2;
  fd_cfg.r0 = 2.4;
  ChannelSet ch = sample_network(fd_cfg, 31);
  zero_loop(ch);
  ch.h0 = 0.0;
  ch.h0c = 0.0;
  SystemConfig hd_cfg = fd_cfg;
  hd_cfg.hd_antenna_policy = HdAntennaPolicy::kSameRf;
  hd_cfg.p0_db = fd_cfg.p0_db + 10 * std::log10(0.5);
  hd_cfg.pc_db = fd_cfg.pc_db + 10 * std::log10(0.5);
  hd_cfg.r0 = fd_cfg.r0 / 2;
  const FdMapping f = map_fd_af_to_canonical(ch, fd_cfg, fd_cfg.pt_fixed, fd_cfg.pc_fd());
  const HdMapping h = map_hd_to_canonical(ch, hd_cfg, Protocol::kAF);
  ASSERT_TRUE(f.feasible && h.feasible);
  EXPECT_LE(rel_diff(f.problem.gamma1, h.problem.gamma1), 1e-12);
  EXPECT_LE(rel_diff(f.problem.p_total, h.problem.p_total), 1e-12);
  EXPECT_LE(rel_diff(f.relay_cost, h.relay_cost), 1e-12);
  for (std::size_t i = 0; i < 4; ++i) {
    EXPECT_NEAR(std::abs(f.problem.h1[i] - h.problem.h1[i]), 0.0, 1e-14);
    EXPECT_NEAR(std::abs(f.problem.h2[i] - h.problem.h2[i]), 0.0, 1e-14);
  }
}

TEST(MapFd, NoBackhaulIsInfeasible) {
  SystemConfig cfg;
  ChannelSet ch = sample_network(cfg, 2);
  ch.g = CVec(6);
  EXPECT_FALSE(map_fd_af_to_canonical(ch, cfg, 1e-3, cfg.pc_fd()).feasible);
  EXPECT_FALSE(solve_fd(ch, cfg, Protocol::kAF).feasible);
  EXPECT_FALSE(solve_fd(ch, cfg, Protocol::kDF).feasible);
  cfg.pt_mode = PtMode::kFixed;
  EXPECT_FALSE(solve_fd(ch, cfg, Protocol::kAF).feasible);
  EXPECT_FALSE(solve_fd(ch, cfg, Protocol::kDF).feasible);
}

TEST(SolveFdFixed, DfDecodeFailure) {
  SystemConfig cfg;
  cfg.pt_mode = PtMode::kFixed;
  cfg.pt_fixed = 10.0;
  const ChannelSet ch = sample_network(cfg, 3);
  const double decode = cfg.p0_fd() * ch.g_fd().norm_sq() / (cfg.pt_fixed * ch.h_loop.frobenius_sq() + 1);
  ASSERT_LT(decode, std::exp2(cfg.r0) - 1);
  const LinkSolution s = solve_fd_fixed(ch, cfg, Protocol::kDF);
  EXPECT_FALSE(s.feasible);
  EXPECT_EQ(s.r_cu, 0.0);
}

TEST(SolveFd, PlugInAudit) {
  for (PtMode mode : {PtMode::kFixed, PtMode::kScalable}) {
    SystemConfig cfg;
    cfg.pt_mode = mode;
    cfg.eps2 = 1e-2;
    cfg.pt_fixed = 1e-2;
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
      cfg.r0 = 0.5 + 0.1 * static_cast<double>(seed % 30);
      const ChannelSet ch = sample_network(cfg, seed);
      for (Protocol p : {Protocol::kAF, Protocol::kDF}) {
        const LinkSolution s = solve_fd(ch, cfg, p);
        if (!s.feasible) continue;
        const auto e = plug_in(ch, cfg, s);
        EXPECT_GE(std::log2(1 + e.sinr_pu), cfg.r0 - 1e-9) << "seed " << seed;
        EXPECT_GE(s.r_pu, cfg.r0 - 1e-9);
        EXPECT_LE(rel_diff(e.sinr_cu, s.sinr_cu), 1e-7);
        EXPECT_LE(rel_diff(e.power, s.power_used), 1e-9);
        EXPECT_LE(e.power, cfg.pc_fd() * (1 + 1e-9));
        EXPECT_NEAR(s.r_cu, std::log2(1 + s.sinr_cu), 1e-12);
        const RatePair r = fd_rates(ch, cfg, p, s.w_c, s.w_relay, s.pt_effective);
        EXPECT_LE(rel_diff(r.sinr_cu, e.sinr_cu), 1e-10);
        EXPECT_LE(rel_diff(r.sinr_pu, e.sinr_pu), 1e-10);
        if (mode == PtMode::kScalable) EXPECT_LE(rel_diff(s.pt_effective, cfg.eps2 * s.power_used), 1e-8);
      }
    }
  }
}

TEST(SolveFdFixed, NearOracle) {
  SystemConfig cfg;
  cfg.pt_mode = PtMode::kFixed;
  for (std::uint64_t seed = 40; seed < 48; ++seed) {
    const ChannelSet ch = sample_network(cfg, seed);
    const FdMapping m = map_fd_af_to_canonical(ch, cfg, cfg.pt_fixed, cfg.pc_fd());
    const LinkSolution s = solve_fd_fixed(ch, cfg, Protocol::kAF);
    ASSERT_EQ(m.feasible, s.feasible);
    if (!s.feasible) continue;
    const double oracle_rate = std::log2(1 + oracle_canonical(m.problem, 24));
    EXPECT_LE(oracle_rate, s.r_cu + 1e-9);
    EXPECT_GE(oracle_rate, s.r_cu * 0.98);
  }
}

TEST(FdAfPhi, ZeroBudgetAndMonotoneWithoutNoise) {
  SystemConfig cfg;
  const ChannelSet ch = sample_network(cfg, 5);
  EXPECT_EQ(fd_af_phi(ch, cfg, 0.0), 0.0);
  cfg.eps2 = 0.0;
  double prev = 0.0;
  for (int i = 1; i <= 50; ++i) {
    const double phi = fd_af_phi(ch, cfg, cfg.pc_fd() * i / 50.0);
    EXPECT_GE(phi, prev * (1 - 1e-12));
    prev = phi;
  }
}

TEST(SolveFdScalable, NoNoiseEqualsFixedWithoutNoise) {
  SystemConfig scal;
  scal.eps2 = 0.0;
  SystemConfig fixed = scal;
  fixed.pt_mode = PtMode::kFixed;
  fixed.pt_fixed = 0.0;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    const ChannelSet ch = sample_network(scal, seed);
    for (Protocol p : {Protocol::kAF, Protocol::kDF}) {
      const LinkSolution a = solve_fd_scalable(ch, scal, p);
      const LinkSolution b = solve_fd_fixed(ch, fixed, p);
      ASSERT_EQ(a.feasible, b.feasible);
      if (a.feasible) EXPECT_LE(rel_diff(a.sinr_cu, b.sinr_cu), 1e-9);
    }
  }
}

TEST(SolveFdScalable, GridRefineVersusDenseGrid) {
  SystemConfig cfg;
  cfg.eps2 = 0.05;
  for (std::uint64_t seed = 0; seed < 6; ++seed) {
    const ChannelSet ch = sample_network(cfg, seed);
    const LinkSolution s = solve_fd_scalable(ch, cfg, Protocol::kAF);
    double dense = 0.0;
    for (int i = 0; i <= 1024; ++i) dense = std::max(dense, fd_af_phi(ch, cfg, cfg.pc_fd() * i / 1024.0));
    if (dense == 0.0) {
      EXPECT_EQ(s.sinr_cu, 0.0);
      continue;
    }
    ASSERT_TRUE(s.feasible);
    EXPECT_GE(s.sinr_cu, dense * (1 - 5e-3));
  }
}

TEST(DfPowerCap, MonotoneInNoiseAndLoop) {
  SystemConfig cfg;
  cfg.r0 = 3.0;
  ChannelSet ch = sample_network(cfg, 17);
  double prev = std::numeric_limits<double>::infinity();
  for (double e : {1e-4, 1e-3, 1e-2, 1e-1, 1.0}) {
    cfg.eps2 = e;
    const double cap = fd_df_power_cap(ch, cfg);
    EXPECT_LE(cap, prev);
    prev = cap;
  }
  cfg.eps2 = 1e-2;
  prev = std::numeric_limits<double>::infinity();
  double first = 0.0;
  const CMat base = ch.h_loop;
  for (double scale : {0.1, 1.0, 10.0, 100.0}) {
    for (std::size_t r = 0; r < base.rows(); ++r) {
      for (std::size_t c = 0; c < base.cols(); ++c) ch.h_loop(r, c) = base(r, c) * scale;
    }
    const double cap = fd_df_power_cap(ch, cfg);
    EXPECT_LE(cap, prev);
    if (first == 0.0) first = cap;
    prev = cap;
  }
  // The cap decays like 1 / |H|^2 but never reaches zero while the backhaul decodes.
  EXPECT_LT(prev, 1e-3 * first);
  EXPECT_FALSE(solve_fd_scalable(ch, cfg, Protocol::kDF).feasible);
}

TEST(FdRates, ZeroBeamformers) {
  const SystemConfig cfg;
  const ChannelSet ch = sample_network(cfg, 1);
  for (Protocol p : {Protocol::kAF, Protocol::kDF}) {
    const RatePair r = fd_rates(ch, cfg, p, CVec(4), CVec(4), 0.01);
    EXPECT_EQ(r.r_cu, 0.0);
    EXPECT_EQ(r.sinr_pu, 0.0);
  }
}

TEST(FdRates, DfWithoutResidualTerms) {
  const SystemConfig cfg;
  ChannelSet ch = sample_network(cfg, 1);
  zero_loop(ch);
  ch.h0 = 0.0;
  const CVec w0 = ch.h_c0_fd() * cplx(2.0, 0.0);
  const RatePair r = fd_rates(ch, cfg, Protocol::kDF, CVec(4), w0, 0.0);
  const double fwd = std::norm(herm_inner(ch.h_c0_fd(), w0));
  EXPECT_NEAR(r.sinr_pu, std::min(cfg.p0_fd() * ch.g_fd().norm_sq(), fwd), 1e-12);
}

TEST(HdFdConsistency, DoubledPowersWithoutResidualTerms) {
  SystemConfig fd_cfg;
  fd_cfg.pt_mode = PtMode::kFixed;
  fd_cfg.pt_fixed = 0.0;
  fd_cfg.fd_power_share = 1.0;
  fd_cfg.r0 = 3.0;
  SystemConfig hd_cfg = fd_cfg;
  hd_cfg.hd_antenna_policy = HdAntennaPolicy::kSameRf;
  hd_cfg.r0 = fd_cfg.r0 / 2;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    ChannelSet ch = sample_network(fd_cfg, seed);
    zero_loop(ch);
    ch.h0 = 0.0;
    ch.h0c = 0.0;
    for (Protocol p : {Protocol::kAF, Protocol::kDF}) {
      const LinkSolution f = solve_fd(ch, fd_cfg, p);
      const LinkSolution h = solve_hd(ch, hd_cfg, p);
      ASSERT_EQ(f.feasible, h.feasible);
      if (!f.feasible) continue;
      EXPECT_LE(rel_diff(f.sinr_cu, h.sinr_cu), 1e-9);
      EXPECT_LE(rel_diff(f.r_cu, 2 * h.r_cu), 1e-9);
    }
  }
}

TEST(SolveFd, DfNeverBelowAfWithoutDirectLink) {
  SystemConfig cfg;
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    cfg.r0 = 0.5 + 0.05 * static_cast<double>(seed % 50);
    ChannelSet ch = sample_network(cfg, seed);
    ch.h0 = 0.0;
    const LinkSolution af = solve_fd(ch, cfg, Protocol::kAF);
    const LinkSolution df = solve_fd(ch, cfg, Protocol::kDF);
    EXPECT_GE(df.r_cu, af.r_cu - 1e-6) << "seed " << seed;
  }
}

}  // namespace
}  // namespace fdccr
