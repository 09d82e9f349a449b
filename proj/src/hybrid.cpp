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

#include "fdccr/hybrid.hpp"

#include <algorithm>
#include <cmath>

#include "fdccr/fd.hpp"

namespace fdccr {
namespace {

double decorrelation(const CVec& a, const CVec& b) {
  if (!(a.norm_sq() > 0.0) || !(b.norm_sq() > 0.0)) return 0.0;
  return 1.0 - correlation(a, b);
}

// log2(1 + max(0, budget (1-rho^2) - gamma (pt + n1/|h1|^2)) / (pt + n2/|h2|^2))
double zf_log_term(double budget, double decor, double gamma, double pt, double n1, double gain1, double n2,
                   double gain2) {
  if (!(gain2 > 0.0)) return 0.0;
  double spent = 0.0;
  if (gamma > 0.0) {
    if (!(gain1 > 0.0)) return 0.0;
    spent = gamma * (pt + n1 / gain1);
  }
  const double left = std::max(0.0, budget * decor - spent);
  return std::log2(1.0 + left / (pt + n2 / gain2));
}

}  // namespace

double zf_rate_hd_df(const ChannelSet& ch, const SystemConfig& cfg) {
  const HdChannels v = hd_view(ch, cfg);
  const double gamma = std::exp2(2.0 * cfg.r0) - 1.0 - cfg.p0() * std::norm(v.h0);
  if (cfg.p0() * v.g.norm_sq() < gamma) return 0.0;
  return 0.5 * zf_log_term(cfg.pc(), decorrelation(v.h_c, v.h_c0), std::max(gamma, 0.0), hd_pt(cfg), 1.0,
                           v.h_c0.norm_sq(), 1.0, v.h_c.norm_sq());
}

double zf_rate_fd_df(const ChannelSet& ch, const SystemConfig& cfg) {
  const CVec h_c0 = ch.h_c0_fd();
  const CVec h_c = ch.h_c_fd();
  const double gamma0 = std::max(std::exp2(cfg.r0) - 1.0, 0.0);
  double budget = cfg.pc_fd();
  double pt = cfg.pt_fixed;
  if (cfg.pt_mode == PtMode::kScalable) {
    budget = fd_df_power_cap(ch, cfg);
    pt = cfg.eps2 * budget;
  } else {
    const double decode = cfg.p0_fd() * ch.g_fd().norm_sq() / (pt * ch.h_loop.frobenius_sq() + 1.0);
    if (decode < gamma0) return 0.0;
  }
  if (!(budget > 0.0)) return 0.0;
  const double p0 = cfg.p0_fd();
  return zf_log_term(budget, decorrelation(h_c, h_c0), gamma0, pt, p0 * std::norm(ch.h0) + 1.0, h_c0.norm_sq(),
                     p0 * std::norm(ch.h0c) + 1.0, h_c.norm_sq());
}

ModeDecision select_mode(const ChannelSet& ch, const SystemConfig& cfg) {
  ModeDecision d;
  d.r_zf_hd = zf_rate_hd_df(ch, cfg);
  d.r_zf_fd = zf_rate_fd_df(ch, cfg);
  const NoiseThresholds t = tolerable_noise_thresholds(ch, cfg);
  d.eps2_max_hd = t.eps2_hd;
  d.eps2_max_fd = t.eps2_fd;
  d.chosen = d.r_zf_fd > d.r_zf_hd ? DuplexMode::kFD : DuplexMode::kHD;
  return d;
}

NoiseThresholds tolerable_noise_thresholds(const ChannelSet& ch, const SystemConfig& cfg) {
  const CVec h_c0 = ch.h_c0_fd();
  const CVec h_c = ch.h_c_fd();
  const double decor = decorrelation(h_c, h_c0);
  const double pc = cfg.pc();
  const double inv_snr = 1.0 / (pc * h_c0.norm_sq());
  const double t1 = std::exp2(cfg.r0) - 1.0;
  const double t2 = std::exp2(2.0 * cfg.r0) - 1.0;

  NoiseThresholds out;
  out.eps2_fd = decor / t1 - 2.0 * inv_snr;
  out.eps2_hd = decor / t2 - inv_snr;
  out.relative_gap = std::exp2(cfg.r0) + t1 * inv_snr / out.eps2_hd;
  if (cfg.r0 > 1.0) {
    const HdChannels v = hd_view(ch, cfg);
    out.eps2_fd_asymptotic = decor / (std::exp2(cfg.r0) - 2.0);
    out.eps2_hd_asymptotic = decorrelation(v.h_c, v.h_c0) / (std::exp2(2.0 * cfg.r0) - 2.0);
  }
  return out;
}

double approx_rate_hd_same_rf(const ChannelSet& ch, const SystemConfig& cfg) {
  const CVec h_c0 = ch.h_c0_fd();
  const CVec h_c = ch.h_c_fd();
  const double pc = cfg.pc();
  const double num = decorrelation(h_c, h_c0) - (std::exp2(2.0 * cfg.r0) - 1.0) * (cfg.eps2 + 1.0 / (pc * h_c0.norm_sq()));
  return 0.5 * std::log2(1.0 + std::max(0.0, num) / (cfg.eps2 + 1.0 / (pc * h_c.norm_sq())));
}

double approx_rate_fd_same_rf(const ChannelSet& ch, const SystemConfig& cfg) {
  const CVec h_c0 = ch.h_c0_fd();
  const CVec h_c = ch.h_c_fd();
  const double pc = cfg.pc();
  const double num = decorrelation(h_c, h_c0) - (std::exp2(cfg.r0) - 1.0) * (cfg.eps2 + 2.0 / (pc * h_c0.norm_sq()));
  return std::log2(1.0 + std::max(0.0, num) / (cfg.eps2 + 2.0 / (pc * h_c.norm_sq())));
}

double orthogonal_rate(const ChannelSet& ch, const SystemConfig& cfg) {
  const CVec& h_c = ch.h_c;
  if (!(h_c.norm_sq() > 0.0)) return 0.0;
  const double gain = ch.h_c0.norm_sq() > 0.0 ? project_orthogonal(h_c, ch.h_c0).norm_sq() : h_c.norm_sq();
  return std::log2(1.0 + cfg.pc() * gain / (hd_pt(cfg) * h_c.norm_sq() + 1.0));
}

}  // namespace fdccr
